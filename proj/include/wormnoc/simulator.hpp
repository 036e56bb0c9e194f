#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wormnoc/traffic.hpp"

namespace wormnoc {

// Release plan for one flow: explicit instants, or a phase plus period
// steps (count defaults to filling the horizon).
struct ReleaseSpec {
  std::vector<Cycles> times;  // used when non-empty
  std::optional<Cycles> phase;
  std::optional<int> count;
};

struct Scenario {
  Cycles horizon = 0;  // cycles simulated; all releases must fit inside
  std::map<std::string, ReleaseSpec> releases;
};

std::vector<Cycles> resolve_releases(const ReleaseSpec& spec, const Flow& flow,
                                     Cycles horizon);
Scenario load_scenario(std::istream& in);
Scenario load_scenario_file(const std::string& path);
void save_scenario(const Scenario& s, std::ostream& out);
void save_scenario_file(const Scenario& s, const std::string& path);
// Every flow released at phase 0 and then periodically until the horizon.
Scenario synchronous_scenario(const FlowSet& fs, Cycles horizon);

struct LatencyRecord {
  int flow = -1;
  std::string flow_id;
  Cycles release = 0;
  Cycles delivery = 0;  // arrival of the packet's last flit at the core
  Cycles latency = 0;   // delivery - release
};

// One contender seen by a link arbiter: the head flit of a flow, plus
// whether the downstream buffer had a free slot this cycle.
struct ArbCandidate {
  int flow = -1;
  std::int64_t flit = -1;
  bool has_credit = false;
};

class SimObserver {
 public:
  virtual ~SimObserver() = default;
  virtual void on_transmit(Cycles cycle, const Link& link, int flow,
                           std::int64_t flit,
                           const std::vector<ArbCandidate>& candidates) = 0;
};

struct SimResult {
  std::vector<LatencyRecord> records;  // delivery order
  bool complete = true;  // false: horizon exhausted with flits pending
  Cycles cycles_run = 0;
};

// Cycle-accurate flit-level simulation. Per cycle, every link independently
// grants its highest-priority ready head flit that has a downstream credit
// (ejection needs none); grants commit simultaneously against start-of-cycle
// state, so a buffer slot freed in cycle t is visible in t+1. One VC per
// priority level means per-flow FIFO buffers throughout.
SimResult simulate(const FlowSet& fs, const Scenario& scenario,
                   SimObserver* observer = nullptr);

struct WorstCaseParams {
  int trials = 0;           // random release-offset scenarios
  std::uint64_t seed = 1;
  Cycles window = 0;        // release window; 0 = 4x the largest period
  int threads = 0;          // 0 = hardware concurrency
};

struct FlowWorst {
  std::string flow_id;
  Cycles max_latency = -1;  // -1 when no packet was observed
  std::int64_t packets = 0;
};

struct WorstCaseResult {
  std::vector<FlowWorst> per_flow;  // flow-set order
  bool complete = true;
};

// Per-flow maxima over the pinned scenarios plus `trials` random-offset
// scenarios (per-flow phases uniform in [0, T)). Trials run in parallel and
// merge by max, so results are deterministic for a given seed.
WorstCaseResult worst_observed(const FlowSet& fs,
                               const std::vector<Scenario>& pinned,
                               const WorstCaseParams& params);

// CSV per transmitted flit: cycle,link,flow,flit.
class TraceWriter : public SimObserver {
 public:
  TraceWriter(const FlowSet& fs, std::ostream& out);
  void on_transmit(Cycles cycle, const Link& link, int flow, std::int64_t flit,
                   const std::vector<ArbCandidate>& candidates) override;

 private:
  const FlowSet* fs_;
  std::ostream* out_;
};

}  // namespace wormnoc
