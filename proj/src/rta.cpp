#include "wormnoc/rta.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace wormnoc {

std::string to_string(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::SB:
      return "sb";
    case AnalysisKind::XLWX:
      return "xlwx";
    case AnalysisKind::IBN:
      break;
  }
  return "ibn";
}

Cycles buffered_interference(int buf, int link_latency, int shared_links) {
  return static_cast<Cycles>(buf) * link_latency * shared_links;
}

Cycles buffered_interference(const Topology& topo, const Route& cd) {
  return buffered_interference(topo.buf, topo.link_latency,
                               static_cast<int>(cd.size()));
}

const FlowBound* AnalysisReport::find(std::string_view flow_id) const {
  for (const FlowBound& b : flows)
    if (b.flow_id == flow_id) return &b;
  return nullptr;
}

namespace {

struct FixedPoint {
  Cycles value = -1;
  bool converged = false;
  std::vector<Cycles> iterates;
};

// Iterates R <- rhs(R) from `start` for a recurrence of the shape
// R = C + sum_j ceil((R + A_j)/T_j) * B_j with nonnegative constants.
// rhs is monotone, so the iterates are nondecreasing: they either repeat
// (least fixed point) or grow without bound. A fixed point exists exactly
// when `utilization` = sum_j B_j/T_j is below one, so divergence is decided
// up front instead of by capping the iterates; published bounds can exceed
// the victim's own period, so the period is no cutoff.
template <typename Rhs>
FixedPoint solve_fixed_point(Cycles start, long double utilization,
                             const Rhs& rhs) {
  // Backstop for utilizations within rounding error of one; a bound this
  // large is far beyond any deadline the model admits.
  constexpr Cycles kBackstop = Cycles{1} << 50;
  FixedPoint fp;
  Cycles r = start;
  fp.iterates.push_back(r);
  if (utilization >= 1.0L) return fp;
  for (;;) {
    const Cycles next = rhs(r);
    fp.iterates.push_back(next);
    if (next == r) {
      fp.value = r;
      fp.converged = true;
      return fp;
    }
    if (next > kBackstop) return fp;
    r = next;
  }
}

std::vector<int> priority_order(const FlowSet& fs) {
  std::vector<int> order(fs.flows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return fs.flows[a].priority < fs.flows[b].priority;
  });
  return order;
}

// Shared per-analysis state: bounds of already-solved higher-priority flows.
struct Solver {
  const FlowSet& fs;
  const InterferenceGraph& g;
  std::vector<Cycles> C;
  std::vector<Cycles> R;
  std::vector<char> solved;

  explicit Solver(const FlowSet& fset, const InterferenceGraph& graph)
      : fs(fset), g(graph), R(fset.flows.size(), -1),
        solved(fset.flows.size(), 0) {
    C.reserve(fs.flows.size());
    for (const Flow& f : fs.flows) C.push_back(no_load_latency(f, fs.topology));
  }

  void start_bound(AnalysisReport& rep, int i) const {
    FlowBound& b = rep.flows[i];
    b.flow_id = fs.flows[i].id;
    b.priority = fs.flows[i].priority;
    b.no_load = C[i];
  }

  void finish_bound(AnalysisReport& rep, int i, const FixedPoint& fp) {
    FlowBound& b = rep.flows[i];
    b.iterates = fp.iterates;
    b.iterations = static_cast<int>(fp.iterates.size()) - 1;
    b.converged = fp.converged;
    if (fp.converged) {
      R[i] = fp.value;
      solved[i] = 1;
      b.response = fp.value;
      b.interference_jitter = fp.value - C[i];
      b.schedulable = fp.value <= fs.flows[i].deadline;
    }
  }
};

void finalize(AnalysisReport& rep) {
  rep.schedulable = true;
  for (const FlowBound& b : rep.flows)
    if (!b.schedulable) rep.schedulable = false;
}

}  // namespace

AnalysisReport sb_analysis(const FlowSet& fs, const InterferenceGraph& g) {
  Solver s(fs, g);
  AnalysisReport rep;
  rep.kind = AnalysisKind::SB;
  rep.flows.resize(fs.flows.size());
  for (int i : priority_order(fs)) {
    s.start_bound(rep, i);
    const auto& direct = g.direct_set(i);
    bool blocked = false;
    for (int j : direct)
      if (!s.solved[j]) blocked = true;
    if (blocked) {
      rep.flows[i].deps_diverged = true;
      continue;
    }
    long double util = 0.0L;
    for (int j : direct) {
      rep.flows[i].terms.push_back({j, 0, 0, 0});
      util += static_cast<long double>(s.C[j]) / fs.flows[j].period;
    }
    const auto rhs = [&](Cycles r) {
      Cycles total = s.C[i];
      for (int j : direct) {
        const Flow& fj = fs.flows[j];
        // Indirect delays widen j's release window as extra jitter R_j - C_j.
        total += ceil_div(r + fj.jitter + (s.R[j] - s.C[j]), fj.period) *
                 s.C[j];
      }
      return total;
    };
    s.finish_bound(rep, i, solve_fixed_point(s.C[i], util, rhs));
  }
  finalize(rep);
  return rep;
}

AnalysisReport xlwx_analysis(const FlowSet& fs, const InterferenceGraph& g) {
  Solver s(fs, g);
  AnalysisReport rep;
  rep.kind = AnalysisKind::XLWX;
  rep.flows.resize(fs.flows.size());
  for (int i : priority_order(fs)) {
    s.start_bound(rep, i);
    const auto& direct = g.direct_set(i);
    std::vector<Cycles> per_hit(direct.size());  // C_j plus downstream part
    std::vector<Cycles> numerator(direct.size());  // upstream part
    bool blocked = false;
    for (std::size_t dj = 0; dj < direct.size() && !blocked; ++dj) {
      const int j = direct[dj];
      if (!s.solved[j]) {
        blocked = true;
        break;
      }
      const auto part = g.updown_partition(i, j);
      for (int k : part.upstream)
        if (!s.solved[k]) blocked = true;
      for (int k : part.downstream)
        if (!s.solved[k]) blocked = true;
      if (blocked) break;
      // Interference of k on j, evaluated at j's solved bound; charged in
      // the numerator when k meets j upstream of the victim, and once per
      // hit when it meets j downstream.
      Cycles up = 0, down = 0;
      for (int k : part.upstream) {
        const Flow& fk = fs.flows[k];
        up += ceil_div(s.R[j] + fk.jitter + (s.R[k] - s.C[k]), fk.period) *
              s.C[k];
      }
      for (int k : part.downstream) {
        const Flow& fk = fs.flows[k];
        down += ceil_div(s.R[j] + fk.jitter + (s.R[k] - s.C[k]), fk.period) *
                s.C[k];
      }
      per_hit[dj] = s.C[j] + down;
      numerator[dj] = up;
      rep.flows[i].terms.push_back({j, up, down, 0});
    }
    if (blocked) {
      rep.flows[i].deps_diverged = true;
      rep.flows[i].terms.clear();
      continue;
    }
    long double util = 0.0L;
    for (std::size_t dj = 0; dj < direct.size(); ++dj)
      util += static_cast<long double>(per_hit[dj]) /
              fs.flows[direct[dj]].period;
    const auto rhs = [&](Cycles r) {
      Cycles total = s.C[i];
      for (std::size_t dj = 0; dj < direct.size(); ++dj) {
        const Flow& fj = fs.flows[direct[dj]];
        total += ceil_div(r + fj.jitter + numerator[dj], fj.period) *
                 per_hit[dj];
      }
      return total;
    };
    s.finish_bound(rep, i, solve_fixed_point(s.C[i], util, rhs));
  }
  finalize(rep);
  return rep;
}

namespace {

Cycles ibn_down_cached(const FlowSet& fs, const InterferenceGraph& g,
                       const std::vector<Cycles>& C, int i, int j, int buf,
                       Cycles response_j) {
  const Cycles backlog = buffered_interference(
      buf, fs.topology.link_latency, g.contention_size(i, j));
  const auto part = g.updown_partition(i, j);
  Cycles down = 0;
  for (int k : part.downstream) {
    const Flow& fk = fs.flows[k];
    // Each downstream hit on j can re-expose at most the flits j already
    // has buffered across the links it shares with i.
    down += ceil_div(response_j + fk.jitter, fk.period) *
            std::min(backlog, C[k]);
  }
  return down;
}

}  // namespace

Cycles ibn_down(const FlowSet& fs, const InterferenceGraph& g, int i, int j,
                int buf, Cycles response_j) {
  std::vector<Cycles> C;
  C.reserve(fs.flows.size());
  for (const Flow& f : fs.flows) C.push_back(no_load_latency(f, fs.topology));
  return ibn_down_cached(fs, g, C, i, j, buf, response_j);
}

AnalysisReport ibn_analysis(const FlowSet& fs, const InterferenceGraph& g,
                            std::optional<int> buf) {
  const int depth = buf.value_or(fs.topology.buf);
  if (depth < 1)
    throw std::invalid_argument("buffer depth must be at least one flit");
  Solver s(fs, g);
  AnalysisReport rep;
  rep.kind = AnalysisKind::IBN;
  rep.buf = depth;
  rep.flows.resize(fs.flows.size());
  for (int i : priority_order(fs)) {
    s.start_bound(rep, i);
    const auto& direct = g.direct_set(i);
    std::vector<Cycles> per_hit(direct.size());
    bool blocked = false;
    for (std::size_t dj = 0; dj < direct.size(); ++dj) {
      const int j = direct[dj];
      if (!s.solved[j]) {
        blocked = true;
        break;
      }
      const Cycles down = ibn_down_cached(fs, g, s.C, i, j, depth, s.R[j]);
      per_hit[dj] = s.C[j] + down;
      rep.flows[i].terms.push_back(
          {j, 0, down,
           buffered_interference(depth, fs.topology.link_latency,
                                 g.contention_size(i, j))});
    }
    if (blocked) {
      rep.flows[i].deps_diverged = true;
      rep.flows[i].terms.clear();
      continue;
    }
    long double util = 0.0L;
    for (std::size_t dj = 0; dj < direct.size(); ++dj)
      util += static_cast<long double>(per_hit[dj]) /
              fs.flows[direct[dj]].period;
    const auto rhs = [&](Cycles r) {
      Cycles total = s.C[i];
      for (std::size_t dj = 0; dj < direct.size(); ++dj) {
        const int j = direct[dj];
        const Flow& fj = fs.flows[j];
        total += ceil_div(r + fj.jitter + (s.R[j] - s.C[j]), fj.period) *
                 per_hit[dj];
      }
      return total;
    };
    s.finish_bound(rep, i, solve_fixed_point(s.C[i], util, rhs));
  }
  finalize(rep);
  return rep;
}

AnalysisReport analyze(const FlowSet& fs, const InterferenceGraph& g,
                       AnalysisKind kind, std::optional<int> buf) {
  switch (kind) {
    case AnalysisKind::SB:
      return sb_analysis(fs, g);
    case AnalysisKind::XLWX:
      return xlwx_analysis(fs, g);
    case AnalysisKind::IBN:
      break;
  }
  return ibn_analysis(fs, g, buf);
}

Verdict schedulability(const AnalysisReport& report, const FlowSet& fs) {
  Verdict v;
  v.schedulable = true;
  for (const FlowBound& b : report.flows) {
    const Flow* f = fs.find(b.flow_id);
    if (!f)
      throw std::invalid_argument("report flow " + b.flow_id +
                                  " is not in the flow set");
    const bool ok = b.converged && b.response <= f->deadline;
    v.per_flow.emplace_back(b.flow_id, ok);
    if (!ok) v.schedulable = false;
  }
  return v;
}

void write_report_csv(std::ostream& out,
                      const std::vector<AnalysisReport>& reports) {
  out << "flow_id,analysis,buf,R,converged,schedulable\n";
  for (const AnalysisReport& rep : reports) {
    const std::string kind = to_string(rep.kind);
    const std::string buf =
        rep.buf ? std::to_string(*rep.buf) : std::string("-");
    for (const FlowBound& b : rep.flows) {
      out << b.flow_id << ',' << kind << ',' << buf << ',';
      if (b.converged)
        out << b.response;
      else
        out << "diverged";
      out << ',' << (b.converged ? "true" : "false") << ','
          << (b.schedulable ? "true" : "false") << '\n';
    }
  }
}

}  // namespace wormnoc
