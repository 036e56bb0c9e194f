#include "wormnoc/traffic.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wormnoc {

using nlohmann::json;

const Flow* FlowSet::find(std::string_view id) const {
  for (const Flow& f : flows)
    if (f.id == id) return &f;
  return nullptr;
}

int FlowSet::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < flows.size(); ++i)
    if (flows[i].id == id) return static_cast<int>(i);
  return -1;
}

Cycles no_load_latency(const Flow& flow, const Topology& topo) {
  const Route route = xy_route(topo, flow.src, flow.dst);
  return (flow.length + static_cast<Cycles>(route.size()) - 1) *
         topo.link_latency;
}

std::vector<std::string> validate(const FlowSet& fs) {
  std::vector<std::string> problems;
  const Topology& topo = fs.topology;
  if (topo.columns < 1 || topo.rows < 1 || topo.buf < 1 ||
      topo.vc_count < 1 || topo.link_latency < 1) {
    problems.push_back("topology: every parameter must be at least 1");
    return problems;  // nothing below is meaningful on a broken topology
  }

  std::set<std::string> ids;
  std::map<int, std::vector<std::string>> by_priority;
  for (const Flow& f : fs.flows) {
    if (!ids.insert(f.id).second)
      problems.push_back("flow " + f.id + ": duplicate id");
    if (f.priority < 1)
      problems.push_back("flow " + f.id + ": priority must be at least 1");
    if (f.period <= 0)
      problems.push_back("flow " + f.id + ": nonpositive period");
    if (f.length <= 0)
      problems.push_back("flow " + f.id + ": nonpositive packet length");
    if (f.deadline <= 0)
      problems.push_back("flow " + f.id + ": nonpositive deadline");
    else if (f.period > 0 && f.deadline > f.period)
      problems.push_back("flow " + f.id + ": deadline exceeds period");
    if (f.jitter < 0)
      problems.push_back("flow " + f.id + ": negative jitter");
    if (!topo.contains(f.src) || !topo.contains(f.dst))
      problems.push_back("flow " + f.id + ": endpoint outside the mesh");
    else if (f.src == f.dst)
      problems.push_back("flow " + f.id + ": src equals dst");
    by_priority[f.priority].push_back(f.id);
  }
  for (const auto& [p, members] : by_priority) {
    if (members.size() > 1) {
      std::string list = members.front();
      for (std::size_t i = 1; i < members.size(); ++i) list += ", " + members[i];
      problems.push_back("duplicate priority " + std::to_string(p) + " (" +
                         list + ")");
    }
  }
  if (static_cast<int>(by_priority.size()) > topo.vc_count)
    problems.push_back("flows use " + std::to_string(by_priority.size()) +
                       " distinct priorities but the topology has only " +
                       std::to_string(topo.vc_count) + " virtual channels");
  return problems;
}

FlowSet load_flowset(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("flowset: ") + e.what());
  }
  try {
    FlowSet fs;
    const json& t = j.at("topology");
    fs.topology.columns = t.at("cols").get<int>();
    fs.topology.rows = t.at("rows").get<int>();
    fs.topology.buf = t.at("buf").get<int>();
    fs.topology.vc_count = t.at("vc").get<int>();
    fs.topology.link_latency = t.value("linkl", 1);
    for (const json& jf : j.at("flows")) {
      Flow f;
      f.id = jf.at("id").get<std::string>();
      f.priority = jf.at("priority").get<int>();
      f.length = jf.at("length_flits").get<Cycles>();
      f.period = jf.at("period").get<Cycles>();
      f.deadline = jf.at("deadline").get<Cycles>();
      f.jitter = jf.value("jitter", Cycles{0});
      f.src = {jf.at("src").at(0).get<int>(), jf.at("src").at(1).get<int>()};
      f.dst = {jf.at("dst").at(0).get<int>(), jf.at("dst").at(1).get<int>()};
      fs.flows.push_back(std::move(f));
    }
    return fs;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("flowset: ") + e.what());
  }
}

FlowSet load_flowset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open flowset file: " + path);
  return load_flowset(in);
}

void save_flowset(const FlowSet& fs, std::ostream& out) {
  json j;
  j["topology"] = {{"cols", fs.topology.columns},
                   {"rows", fs.topology.rows},
                   {"buf", fs.topology.buf},
                   {"vc", fs.topology.vc_count},
                   {"linkl", fs.topology.link_latency}};
  j["flows"] = json::array();
  for (const Flow& f : fs.flows) {
    j["flows"].push_back({{"id", f.id},
                          {"priority", f.priority},
                          {"length_flits", f.length},
                          {"period", f.period},
                          {"deadline", f.deadline},
                          {"jitter", f.jitter},
                          {"src", {f.src.x, f.src.y}},
                          {"dst", {f.dst.x, f.dst.y}}});
  }
  out << j.dump(2) << '\n';
}

void save_flowset_file(const FlowSet& fs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write flowset file: " + path);
  save_flowset(fs, out);
}

}  // namespace wormnoc
