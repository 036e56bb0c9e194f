#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wormnoc/topology.hpp"

namespace wormnoc {

// Sporadic packet flow. Priority 1 is the highest; a numerically smaller
// value always preempts a larger one.
struct Flow {
  std::string id;
  int priority = 1;
  Cycles length = 1;    // maximum packet length, flits
  Cycles period = 1;    // minimum inter-release time, cycles
  Cycles deadline = 1;  // relative deadline, cycles (<= period)
  Cycles jitter = 0;    // maximum release jitter, cycles
  Coord src;
  Coord dst;
};

struct FlowSet {
  Topology topology;
  std::vector<Flow> flows;

  const Flow* find(std::string_view id) const;
  int index_of(std::string_view id) const;  // -1 when absent
};

// Latency of one packet crossing an otherwise idle network: pipeline fill
// plus payload drain, one flit per link per link_latency cycles.
Cycles no_load_latency(const Flow& flow, const Topology& topo);

// Model-assumption diagnostics; empty means the set is analyzable.
std::vector<std::string> validate(const FlowSet& fs);

FlowSet load_flowset(std::istream& in);
FlowSet load_flowset_file(const std::string& path);
void save_flowset(const FlowSet& fs, std::ostream& out);
void save_flowset_file(const FlowSet& fs, const std::string& path);

}  // namespace wormnoc
