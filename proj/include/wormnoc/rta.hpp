#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wormnoc/interference.hpp"

namespace wormnoc {

// The three response-time analyses. sb: direct interference with
// back-to-back jitter from indirect delays. xlwx: splits each direct
// interferer's indirect interference into upstream/downstream parts and
// charges the downstream part once per hit. ibn: sb's jitter treatment
// plus a per-hit downstream surcharge capped by the backlog the shared
// links can buffer.
enum class AnalysisKind { SB, XLWX, IBN };

std::string to_string(AnalysisKind kind);

// Ceiling of a/b for a >= 0, b > 0.
constexpr Cycles ceil_div(Cycles a, Cycles b) { return (a + b - 1) / b; }

// Worst-case extra service a downstream-stalled interferer can impose
// through flits already buffered along the shared links.
Cycles buffered_interference(int buf, int link_latency, int shared_links);
Cycles buffered_interference(const Topology& topo, const Route& cd);

// Per-direct-interferer terms, kept for explanation output.
struct InterferenceTerm {
  int flow = -1;          // index of the direct interferer
  Cycles upstream = 0;    // xlwx: added inside the hit-count numerator
  Cycles downstream = 0;  // xlwx/ibn: added to C_j once per hit
  Cycles buffered = 0;    // ibn: backlog cap over the shared links
};

struct FlowBound {
  std::string flow_id;
  int priority = 0;
  Cycles no_load = 0;    // C
  Cycles response = -1;  // R; meaningful only when converged
  bool converged = false;
  bool deps_diverged = false;  // a required higher-priority bound diverged
  int iterations = 0;
  std::vector<Cycles> iterates;    // R0 .. fixed point (last value repeated)
  Cycles interference_jitter = 0;  // R - C once converged
  bool schedulable = false;        // converged && R <= D
  std::vector<InterferenceTerm> terms;
};

struct AnalysisReport {
  AnalysisKind kind = AnalysisKind::SB;
  std::optional<int> buf;        // set for ibn
  std::vector<FlowBound> flows;  // in flow-set order
  bool schedulable = false;      // every flow converged with R <= D

  const FlowBound* find(std::string_view flow_id) const;
};

// Flows are solved in ascending priority value; each analysis uses only its
// own bounds for the jitter and indirect terms. Iteration starts at C_i and
// runs to the least fixed point, which may exceed the flow's period and
// deadline; a flow diverges when its interference utilization reaches one,
// so no fixed point exists. Divergence of a required bound propagates.
AnalysisReport sb_analysis(const FlowSet& fs, const InterferenceGraph& g);
AnalysisReport xlwx_analysis(const FlowSet& fs, const InterferenceGraph& g);
// buf overrides the topology's buffer depth (same flow set analyzed at
// several depths); must be >= 1.
AnalysisReport ibn_analysis(const FlowSet& fs, const InterferenceGraph& g,
                            std::optional<int> buf = std::nullopt);
AnalysisReport analyze(const FlowSet& fs, const InterferenceGraph& g,
                       AnalysisKind kind,
                       std::optional<int> buf = std::nullopt);

// Downstream indirect interference charged to every hit of j on i under
// ibn, given j's converged bound.
Cycles ibn_down(const FlowSet& fs, const InterferenceGraph& g, int i, int j,
                int buf, Cycles response_j);

// Recomputes per-flow and set-level verdicts from a report's bounds.
struct Verdict {
  std::vector<std::pair<std::string, bool>> per_flow;
  bool schedulable = false;
};
Verdict schedulability(const AnalysisReport& report, const FlowSet& fs);

// Columns: flow_id,analysis,buf,R,converged,schedulable. R prints as
// "diverged" for non-converged flows; buf prints as "-" for sb/xlwx.
void write_report_csv(std::ostream& out,
                      const std::vector<AnalysisReport>& reports);

}  // namespace wormnoc
