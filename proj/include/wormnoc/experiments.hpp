#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wormnoc/flowgen.hpp"
#include "wormnoc/rta.hpp"

namespace wormnoc {

struct MeshDims {
  int columns = 4;
  int rows = 4;
  friend bool operator==(const MeshDims&, const MeshDims&) = default;
};

std::string to_string(const MeshDims& m);

// One schedulability-vs-load sweep cell key: which analysis, and for ibn at
// which buffer depth (buf is 0 and unused for sb/xlwx).
struct AnalysisSpec {
  AnalysisKind kind = AnalysisKind::SB;
  int buf = 0;
  friend bool operator==(const AnalysisSpec&, const AnalysisSpec&) = default;
};

std::string to_string(const AnalysisSpec& a);

struct ExperimentConfig {
  std::vector<MeshDims> meshes;
  std::vector<int> sweep;  // flow counts, one point each
  int flowsets_per_point = 100;
  std::vector<AnalysisSpec> analyses;  // evaluated on the same flowsets
  std::uint64_t base_seed = 1;
  int threads = 0;
  GenParams gen;  // period/length ranges and buf; dims/count set per cell

  // Desk-scale defaults sized so the full sweep finishes within half an
  // hour on one core while still reaching the load where xlwx collapses.
  static ExperimentConfig defaults();
};

// Seed for flowset `rep` of a sweep cell, derived from the values rather
// than container positions so any cell can be regenerated standalone.
std::uint64_t flowset_seed(std::uint64_t base_seed, MeshDims mesh,
                           int n_flows, int rep);

struct ExperimentCell {
  MeshDims mesh;
  int n_flows = 0;
  AnalysisSpec analysis;
  int schedulable_count = 0;
  int flowsets = 0;  // completed flowsets; < configured when workers failed

  // Percentage in hundredths, rounded half up (9700 = 97.00%).
  int pct_centi() const;
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;  // mesh-major, then sweep, then analysis
  bool complete = true;

  const ExperimentCell* find(MeshDims mesh, int n_flows,
                             const AnalysisSpec& a) const;
};

// Evaluates every analysis on every generated flowset. Cells already
// complete in `prior` (same mesh/n/analysis with full flowset count) are
// reused, which makes interrupted runs resumable. A worker failure drops
// that flowset from its cell counts and flags the result incomplete.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const ExperimentResult* prior = nullptr);

struct DiffPoint {
  MeshDims mesh;
  int n_flows = 0;
  int pct_centi_delta = 0;  // pct(a) - pct(b), hundredths
};

// Pointwise schedulability-percentage difference a - b over the sweep.
// Throws when either analysis is missing from some point of the table.
std::vector<DiffPoint> diff(const ExperimentResult& result,
                            const AnalysisSpec& a, const AnalysisSpec& b);

// Columns: mesh,n_flows,analysis,buf,schedulable_pct,flowsets.
void write_experiment_csv(std::ostream& out, const ExperimentResult& result);
ExperimentResult read_experiment_csv(std::istream& in);

// Line charts (SVG text): schedulability per analysis over one mesh's
// sweep, and the sb-minus-ibn differences.
std::string schedulability_chart_svg(const ExperimentResult& result,
                                     MeshDims mesh);
std::string difference_chart_svg(const ExperimentResult& result,
                                 MeshDims mesh, const AnalysisSpec& base);

}  // namespace wormnoc
