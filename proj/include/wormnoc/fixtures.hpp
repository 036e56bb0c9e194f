#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wormnoc/rta.hpp"
#include "wormnoc/simulator.hpp"

namespace wormnoc {

// Bundled regression examples: small flow sets with hand-frozen reference
// bounds for every analysis, plus pinned scenarios that exercise the
// behaviors the analyses disagree about. These anchor the golden tests and
// the files emitted by the `examples` CLI command.
struct ExpectedBound {
  std::string flow_id;
  std::string analysis;  // "sb" | "xlwx" | "ibn"
  int buf = 0;           // 0 for sb/xlwx
  Cycles response = 0;
};

struct ExampleBundle {
  std::string name;
  FlowSet flowset;
  std::vector<std::pair<std::string, Scenario>> scenarios;
  std::vector<ExpectedBound> expected;  // grouped by analysis, flow order
};

const std::vector<std::string>& example_names();
// Throws std::invalid_argument for an unknown name.
ExampleBundle example_bundle(const std::string& name);

// Writes <name>.json, <name>_<scenario>.json and <name>_bounds.csv into
// dir; returns the paths written. The bounds CSV uses the analysis-report
// column layout so regression runs can diff against it directly.
std::vector<std::string> write_example_files(const ExampleBundle& bundle,
                                             const std::string& dir);

}  // namespace wormnoc
