#include "wormnoc/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

#include "wormnoc/parallel.hpp"
#include "wormnoc/rng.hpp"

namespace wormnoc {

using nlohmann::json;

std::vector<Cycles> resolve_releases(const ReleaseSpec& spec, const Flow& flow,
                                     Cycles horizon) {
  std::vector<Cycles> out;
  if (!spec.times.empty()) {
    out = spec.times;
    std::sort(out.begin(), out.end());
    if (out.front() < 0)
      throw std::invalid_argument("flow " + flow.id +
                                  ": negative release time");
    return out;
  }
  if (!spec.phase) return out;
  if (*spec.phase < 0)
    throw std::invalid_argument("flow " + flow.id + ": negative phase");
  const std::int64_t limit =
      spec.count ? *spec.count : std::numeric_limits<std::int64_t>::max();
  Cycles t = *spec.phase;
  for (std::int64_t k = 0; k < limit && t < horizon; ++k, t += flow.period)
    out.push_back(t);
  return out;
}

Scenario load_scenario(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario: ") + e.what());
  }
  try {
    Scenario s;
    s.horizon = j.at("horizon").get<Cycles>();
    for (const auto& [id, spec] : j.at("releases").items()) {
      ReleaseSpec rs;
      if (spec.is_array()) {
        rs.times = spec.get<std::vector<Cycles>>();
      } else {
        rs.phase = spec.at("phase").get<Cycles>();
        if (spec.contains("count")) rs.count = spec.at("count").get<int>();
      }
      s.releases[id] = std::move(rs);
    }
    return s;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return load_scenario(in);
}

void save_scenario(const Scenario& s, std::ostream& out) {
  json j;
  j["horizon"] = s.horizon;
  j["releases"] = json::object();
  for (const auto& [id, spec] : s.releases) {
    if (!spec.times.empty()) {
      j["releases"][id] = spec.times;
    } else {
      json g;
      g["phase"] = spec.phase.value_or(0);
      if (spec.count) g["count"] = *spec.count;
      j["releases"][id] = g;
    }
  }
  out << j.dump(2) << '\n';
}

void save_scenario_file(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  save_scenario(s, out);
}

Scenario synchronous_scenario(const FlowSet& fs, Cycles horizon) {
  Scenario s;
  s.horizon = horizon;
  for (const Flow& f : fs.flows) {
    ReleaseSpec spec;
    spec.phase = 0;
    s.releases[f.id] = spec;
  }
  return s;
}

namespace {

struct FlowState {
  const Flow* flow = nullptr;
  Route route;
  std::vector<Cycles> releases;
  std::int64_t total_flits = 0;
  std::int64_t next_inject = 0;  // next flit to cross the injection link
  // stage[p]: per-flow VC buffer behind route link p+1 (FIFO of flit ids).
  std::vector<std::deque<std::int64_t>> stage;
};

struct LinkState {
  Link link;
  std::vector<std::pair<int, int>> users;  // (flow index, route position)
  Cycles busy_until = 0;
  // At most one flit is on the wire: the link serializes at link_latency.
  bool in_flight = false;
  int fl_flow = -1;
  int fl_pos = -1;
  std::int64_t fl_flit = -1;
  Cycles fl_arrive = -1;
};

struct Move {
  int link = -1;
  int flow = -1;
  int pos = -1;
  std::int64_t flit = -1;
};

}  // namespace

SimResult simulate(const FlowSet& fs, const Scenario& scenario,
                   SimObserver* observer) {
  const auto problems = validate(fs);
  if (!problems.empty())
    throw std::invalid_argument("flow set is not analyzable: " +
                                problems.front());
  if (scenario.horizon < 0)
    throw std::invalid_argument("scenario horizon must be nonnegative");
  const Topology& topo = fs.topology;
  const int n = static_cast<int>(fs.flows.size());

  std::vector<FlowState> flows(n);
  for (int i = 0; i < n; ++i) {
    flows[i].flow = &fs.flows[i];
    flows[i].route = xy_route(topo, fs.flows[i].src, fs.flows[i].dst);
    flows[i].stage.resize(flows[i].route.size() - 1);
  }
  for (const auto& [id, spec] : scenario.releases) {
    const int idx = fs.index_of(id);
    if (idx < 0)
      throw std::invalid_argument("scenario references unknown flow id '" +
                                  id + "'");
    flows[idx].releases =
        resolve_releases(spec, fs.flows[idx], scenario.horizon);
    if (!flows[idx].releases.empty() &&
        flows[idx].releases.back() >= scenario.horizon)
      throw std::invalid_argument("flow " + id + ": release at cycle " +
                                  std::to_string(flows[idx].releases.back()) +
                                  " does not fit the horizon");
    flows[idx].total_flits =
        static_cast<std::int64_t>(flows[idx].releases.size()) *
        fs.flows[idx].length;
  }

  // Physical links referenced by at least one route, with their users.
  std::vector<LinkState> links;
  {
    std::map<Link, int> ids;
    for (int i = 0; i < n; ++i) {
      for (std::size_t p = 0; p < flows[i].route.size(); ++p) {
        const Link& l = flows[i].route[p];
        auto [it, inserted] = ids.emplace(l, static_cast<int>(links.size()));
        if (inserted) links.push_back(LinkState{l, {}, 0, false, -1, -1, -1, -1});
        links[it->second].users.emplace_back(i, static_cast<int>(p));
      }
    }
  }

  SimResult result;
  std::int64_t remaining = 0;
  for (const FlowState& f : flows) remaining += f.total_flits;

  std::vector<Move> moves;
  std::vector<ArbCandidate> candidates;
  Cycles t = 0;
  for (;; ++t) {
    // Arrivals land before arbitration, so a flit advances one link per
    // link_latency cycles and a delivery at the horizon still counts.
    for (LinkState& ls : links) {
      if (!ls.in_flight || ls.fl_arrive != t) continue;
      ls.in_flight = false;
      FlowState& f = flows[ls.fl_flow];
      if (ls.fl_pos + 1 == static_cast<int>(f.route.size())) {
        --remaining;
        if ((ls.fl_flit + 1) % f.flow->length == 0) {
          const std::int64_t packet = ls.fl_flit / f.flow->length;
          const Cycles release = f.releases[packet];
          result.records.push_back(
              {ls.fl_flow, f.flow->id, release, t, t - release});
        }
      } else {
        f.stage[ls.fl_pos].push_back(ls.fl_flit);
        assert(static_cast<int>(f.stage[ls.fl_pos].size()) <= topo.buf);
      }
    }
    if (remaining == 0) break;
    if (t >= scenario.horizon) {
      result.complete = false;
      break;
    }

    // Each link grants its highest-priority ready head flit that has a
    // credit downstream; all grants commit against start-of-cycle state.
    moves.clear();
    for (std::size_t li = 0; li < links.size(); ++li) {
      LinkState& ls = links[li];
      if (ls.busy_until > t) continue;
      int best_flow = -1, best_pos = -1;
      std::int64_t best_flit = -1;
      candidates.clear();
      for (const auto& [fi, p] : ls.users) {
        FlowState& f = flows[fi];
        std::int64_t flit = -1;
        if (p == 0) {
          if (f.next_inject < f.total_flits &&
              f.releases[f.next_inject / f.flow->length] <= t)
            flit = f.next_inject;
        } else if (!f.stage[p - 1].empty()) {
          flit = f.stage[p - 1].front();
        }
        if (flit < 0) continue;
        const bool credit =
            p + 1 == static_cast<int>(f.route.size()) ||
            static_cast<int>(f.stage[p].size()) < topo.buf;
        if (observer) candidates.push_back({fi, flit, credit});
        if (credit && (best_flow < 0 ||
                       f.flow->priority < fs.flows[best_flow].priority)) {
          best_flow = fi;
          best_pos = p;
          best_flit = flit;
        }
      }
      if (best_flow >= 0) {
        moves.push_back({static_cast<int>(li), best_flow, best_pos, best_flit});
        if (observer)
          observer->on_transmit(t, ls.link, best_flow, best_flit, candidates);
      }
    }

    for (const Move& m : moves) {
      LinkState& ls = links[m.link];
      FlowState& f = flows[m.flow];
      if (m.pos == 0)
        ++f.next_inject;
      else
        f.stage[m.pos - 1].pop_front();
      ls.busy_until = t + topo.link_latency;
      ls.in_flight = true;
      ls.fl_flow = m.flow;
      ls.fl_pos = m.pos;
      ls.fl_flit = m.flit;
      ls.fl_arrive = t + topo.link_latency;
    }
  }
  result.cycles_run = t;
  return result;
}

namespace {

Cycles default_window(const FlowSet& fs) {
  Cycles max_period = 1;
  for (const Flow& f : fs.flows) max_period = std::max(max_period, f.period);
  return 4 * max_period;
}

// Horizon with room to drain: everything released inside the window can
// demand at most its total service on top of the window itself.
Cycles drain_horizon(const FlowSet& fs, Cycles window) {
  Cycles horizon = window;
  for (const Flow& f : fs.flows) {
    const Cycles packets = (window + f.period - 1) / f.period + 1;
    horizon += packets * no_load_latency(f, fs.topology);
  }
  return horizon;
}

Scenario random_offset_scenario(const FlowSet& fs, Cycles window,
                                std::uint64_t seed) {
  Scenario s;
  s.horizon = drain_horizon(fs, window);
  SplitMix64 rng(seed);
  for (const Flow& f : fs.flows) {
    const Cycles phase =
        static_cast<Cycles>(rng.below(static_cast<std::uint64_t>(f.period)));
    ReleaseSpec spec;
    for (Cycles t = phase; t < window; t += f.period) spec.times.push_back(t);
    s.releases[f.id] = std::move(spec);
  }
  return s;
}

}  // namespace

WorstCaseResult worst_observed(const FlowSet& fs,
                               const std::vector<Scenario>& pinned,
                               const WorstCaseParams& params) {
  if (params.trials < 0)
    throw std::invalid_argument("trial count must be nonnegative");
  if (params.trials == 0 && pinned.empty())
    throw std::invalid_argument(
        "no scenarios: give pinned scenarios or a positive trial count");
  const Cycles window =
      params.window > 0 ? params.window : default_window(fs);

  const std::size_t runs = pinned.size() + static_cast<std::size_t>(params.trials);
  struct RunMax {
    std::vector<Cycles> max_latency;
    std::vector<std::int64_t> packets;
    bool complete = true;
  };
  std::vector<RunMax> per_run(runs);

  parallel_for(runs, params.threads, [&](std::size_t r) {
    const Scenario scenario =
        r < pinned.size()
            ? pinned[r]
            : random_offset_scenario(
                  fs, window,
                  mix_seed({params.seed,
                            static_cast<std::uint64_t>(r - pinned.size())}));
    const SimResult sim = simulate(fs, scenario, nullptr);
    RunMax& rm = per_run[r];
    rm.max_latency.assign(fs.flows.size(), -1);
    rm.packets.assign(fs.flows.size(), 0);
    rm.complete = sim.complete;
    for (const LatencyRecord& rec : sim.records) {
      rm.max_latency[rec.flow] = std::max(rm.max_latency[rec.flow], rec.latency);
      ++rm.packets[rec.flow];
    }
  });

  WorstCaseResult result;
  result.per_flow.resize(fs.flows.size());
  for (std::size_t i = 0; i < fs.flows.size(); ++i)
    result.per_flow[i].flow_id = fs.flows[i].id;
  for (const RunMax& rm : per_run) {
    if (!rm.complete) result.complete = false;
    for (std::size_t i = 0; i < fs.flows.size(); ++i) {
      result.per_flow[i].max_latency =
          std::max(result.per_flow[i].max_latency, rm.max_latency[i]);
      result.per_flow[i].packets += rm.packets[i];
    }
  }
  return result;
}

TraceWriter::TraceWriter(const FlowSet& fs, std::ostream& out)
    : fs_(&fs), out_(&out) {
  (*out_) << "cycle,link,flow,flit\n";
}

void TraceWriter::on_transmit(Cycles cycle, const Link& link, int flow,
                              std::int64_t flit,
                              const std::vector<ArbCandidate>&) {
  (*out_) << cycle << ',' << to_string(link) << ',' << fs_->flows[flow].id
          << ',' << flit << '\n';
}

}  // namespace wormnoc
