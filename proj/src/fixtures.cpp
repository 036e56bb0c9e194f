#include "wormnoc/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace wormnoc {

namespace {

Flow make_flow(std::string id, int priority, Cycles length, Cycles period,
               Cycles deadline, Coord src, Coord dst) {
  Flow f;
  f.id = std::move(id);
  f.priority = priority;
  f.length = length;
  f.period = period;
  f.deadline = deadline;
  f.jitter = 0;
  f.src = src;
  f.dst = dst;
  return f;
}

ReleaseSpec phased(Cycles phase, int count) {
  ReleaseSpec spec;
  spec.phase = phase;
  spec.count = count;
  return spec;
}

ExampleBundle example1() {
  ExampleBundle b;
  b.name = "example1";
  b.flowset.topology = build_mesh(3, 1, 2, 8, 1);
  b.flowset.flows = {
      make_flow("t6", 1, 12, 1000, 1000, {0, 0}, {1, 0}),
      make_flow("t7", 2, 50, 208, 208, {1, 0}, {2, 0}),
      make_flow("t8", 3, 100, 257, 257, {0, 0}, {2, 0}),
      make_flow("t9", 4, 50, 1000, 250, {1, 0}, {2, 0}),
  };
  // Staggered periodic releases that drive the lowest-priority flow far
  // past the xlwx bound while staying within the ibn bound.
  Scenario cx;
  cx.horizon = 3100;
  cx.releases["t7"] = phased(0, 14);
  cx.releases["t8"] = phased(0, 12);
  cx.releases["t6"] = phased(50, 3);
  cx.releases["t9"] = phased(61, 3);
  b.scenarios.emplace_back("counterexample", cx);
  b.expected = {
      {"t6", "sb", 0, 14},    {"t7", "sb", 0, 52},
      {"t8", "sb", 0, 169},   {"t9", "sb", 0, 362},
      {"t6", "xlwx", 0, 14},  {"t7", "xlwx", 0, 52},
      {"t8", "xlwx", 0, 169}, {"t9", "xlwx", 0, 207},
      {"t6", "ibn", 2, 14},   {"t7", "ibn", 2, 52},
      {"t8", "ibn", 2, 169},  {"t9", "ibn", 2, 362},
      {"t6", "ibn", 10, 14},  {"t7", "ibn", 10, 52},
      {"t8", "ibn", 10, 169}, {"t9", "ibn", 10, 362},
  };
  return b;
}

ExampleBundle example2() {
  ExampleBundle b;
  b.name = "example2";
  b.flowset.topology = build_mesh(4, 4, 2, 8, 1);
  b.flowset.flows = {
      make_flow("t1", 1, 27, 150, 100, {0, 0}, {1, 1}),
      make_flow("t2", 2, 28, 150, 100, {3, 1}, {3, 2}),
      make_flow("t3", 3, 144, 400, 300, {0, 0}, {3, 2}),
      make_flow("t4", 4, 98, 600, 550, {2, 2}, {3, 2}),
      make_flow("t5", 5, 96, 300, 250, {1, 0}, {3, 1}),
  };
  Scenario sync;
  sync.horizon = 4000;
  sync.releases["t1"] = phased(0, 16);
  sync.releases["t2"] = phased(0, 16);
  sync.releases["t3"] = phased(0, 6);
  sync.releases["t4"] = phased(0, 4);
  sync.releases["t5"] = phased(0, 8);
  b.scenarios.emplace_back("sync", sync);
  b.expected = {
      {"t1", "sb", 0, 30},     {"t2", "sb", 0, 30},
      {"t3", "sb", 0, 270},    {"t4", "sb", 0, 520},
      {"t5", "sb", 0, 250},    {"t1", "xlwx", 0, 30},
      {"t2", "xlwx", 0, 30},   {"t3", "xlwx", 0, 270},
      {"t4", "xlwx", 0, 340},  {"t5", "xlwx", 0, 310},
      {"t1", "ibn", 2, 30},    {"t2", "ibn", 2, 30},
      {"t3", "ibn", 2, 270},   {"t4", "ibn", 2, 520},
      {"t5", "ibn", 2, 262},   {"t1", "ibn", 10, 30},
      {"t2", "ibn", 10, 30},   {"t3", "ibn", 10, 270},
      {"t4", "ibn", 10, 520},  {"t5", "ibn", 10, 520},
  };
  return b;
}

ExampleBundle example3() {
  ExampleBundle b;
  b.name = "example3";
  b.flowset.topology = build_mesh(4, 4, 2, 8, 1);
  b.flowset.flows = {
      make_flow("t2", 1, 60, 200, 200, {3, 1}, {3, 2}),
      make_flow("t3", 2, 198, 4000, 4000, {0, 0}, {3, 2}),
      make_flow("t5", 3, 128, 6000, 6000, {1, 0}, {3, 1}),
  };
  Scenario sync;
  sync.horizon = 13000;
  sync.releases["t2"] = phased(0, 60);
  sync.releases["t3"] = phased(0, 3);
  sync.releases["t5"] = phased(0, 2);
  b.scenarios.emplace_back("sync", sync);
  b.expected = {
      {"t2", "sb", 0, 62},    {"t3", "sb", 0, 328},
      {"t5", "sb", 0, 336},   {"t2", "xlwx", 0, 62},
      {"t3", "xlwx", 0, 328}, {"t5", "xlwx", 0, 460},
      {"t2", "ibn", 2, 62},   {"t3", "ibn", 2, 328},
      {"t5", "ibn", 2, 348},  {"t2", "ibn", 10, 62},
      {"t3", "ibn", 10, 328}, {"t5", "ibn", 10, 396},
  };
  return b;
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"example1", "example2",
                                                 "example3"};
  return names;
}

ExampleBundle example_bundle(const std::string& name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "example3") return example3();
  throw std::invalid_argument("unknown example '" + name +
                              "' (expected example1, example2 or example3)");
}

std::vector<std::string> write_example_files(const ExampleBundle& bundle,
                                             const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;

  const std::string flowset_path =
      (fs::path(dir) / (bundle.name + ".json")).string();
  save_flowset_file(bundle.flowset, flowset_path);
  written.push_back(flowset_path);

  for (const auto& [scenario_name, scenario] : bundle.scenarios) {
    const std::string path =
        (fs::path(dir) / (bundle.name + "_" + scenario_name + ".json"))
            .string();
    save_scenario_file(scenario, path);
    written.push_back(path);
  }

  const std::string bounds_path =
      (fs::path(dir) / (bundle.name + "_bounds.csv")).string();
  std::ofstream out(bounds_path);
  if (!out) throw std::runtime_error("cannot write " + bounds_path);
  out << "flow_id,analysis,buf,R,converged,schedulable\n";
  for (const ExpectedBound& e : bundle.expected) {
    const Flow* f = bundle.flowset.find(e.flow_id);
    const bool sched = f && e.response <= f->deadline;
    out << e.flow_id << ',' << e.analysis << ','
        << (e.buf > 0 ? std::to_string(e.buf) : std::string("-")) << ','
        << e.response << ",true," << (sched ? "true" : "false") << '\n';
  }
  written.push_back(bounds_path);
  return written;
}

}  // namespace wormnoc
