#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wormnoc/experiments.hpp"
#include "wormnoc/fixtures.hpp"
#include "wormnoc/flowgen.hpp"
#include "wormnoc/interference.hpp"
#include "wormnoc/rta.hpp"
#include "wormnoc/simulator.hpp"
#include "wormnoc/traffic.hpp"

namespace {

using namespace wormnoc;

std::string topo_summary(const FlowSet& fs) {
  std::ostringstream out;
  out << fs.topology.columns << 'x' << fs.topology.rows << " mesh, buf "
      << fs.topology.buf << ", vc " << fs.topology.vc_count << ", linkl "
      << fs.topology.link_latency << ", " << fs.flows.size() << " flows";
  return out.str();
}

std::string report_label(const AnalysisReport& rep) {
  std::string label = to_string(rep.kind);
  if (rep.buf) label += " b=" + std::to_string(*rep.buf);
  return label;
}

std::string pct_string(int centi) {
  std::ostringstream out;
  out << centi / 100 << '.' << std::setw(2) << std::setfill('0')
      << centi % 100;
  return out.str();
}

FlowSet load_validated(const std::string& path) {
  FlowSet fs = load_flowset_file(path);
  const std::vector<std::string> violations = validate(fs);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << path << ": invalid flow set";
    for (const std::string& v : violations) msg << "\n  " << v;
    throw std::runtime_error(msg.str());
  }
  return fs;
}

int run_validate(const std::string& path) {
  const FlowSet fs = load_flowset_file(path);
  const std::vector<std::string> violations = validate(fs);
  if (violations.empty()) {
    std::cout << "ok: " << topo_summary(fs) << '\n';
    return 0;
  }
  for (const std::string& v : violations)
    std::cout << "violation: " << v << '\n';
  return 2;
}

struct AnalyzeOpts {
  std::string path;
  std::string analysis = "all";
  std::vector<int> bufs;
  std::string out_csv;
};

int run_analyze(const AnalyzeOpts& opt) {
  const FlowSet fs = load_validated(opt.path);
  const InterferenceGraph graph(fs);
  const std::vector<int> bufs =
      opt.bufs.empty() ? std::vector<int>{fs.topology.buf} : opt.bufs;

  std::vector<AnalysisReport> reports;
  if (opt.analysis == "sb" || opt.analysis == "all")
    reports.push_back(sb_analysis(fs, graph));
  if (opt.analysis == "xlwx" || opt.analysis == "all")
    reports.push_back(xlwx_analysis(fs, graph));
  if (opt.analysis == "ibn" || opt.analysis == "all")
    for (int b : bufs) reports.push_back(ibn_analysis(fs, graph, b));

  if (!opt.out_csv.empty()) {
    std::ofstream out(opt.out_csv);
    if (!out) throw std::runtime_error("cannot write " + opt.out_csv);
    write_report_csv(out, reports);
    std::cerr << "wrote " << opt.out_csv << '\n';
  }

  if (fs.flows.empty()) {
    std::cout << "schedulable (vacuous)\n";
    return 0;
  }

  std::cout << "flowset " << opt.path << ": " << topo_summary(fs) << "\n\n";

  std::size_t id_w = 4;
  for (const Flow& f : fs.flows) id_w = std::max(id_w, f.id.size());
  std::cout << std::left << std::setw(static_cast<int>(id_w)) << "flow"
            << std::right << std::setw(4) << "P" << std::setw(10) << "C"
            << std::setw(10) << "D";
  for (const AnalysisReport& rep : reports)
    std::cout << std::setw(10) << report_label(rep);
  std::cout << '\n';
  for (std::size_t i = 0; i < fs.flows.size(); ++i) {
    const Flow& f = fs.flows[i];
    std::cout << std::left << std::setw(static_cast<int>(id_w)) << f.id
              << std::right << std::setw(4) << f.priority << std::setw(10)
              << reports.front().flows[i].no_load << std::setw(10)
              << f.deadline;
    for (const AnalysisReport& rep : reports) {
      const FlowBound& b = rep.flows[i];
      std::string cell =
          b.converged ? std::to_string(b.response) : std::string("diverged");
      if (b.converged && !b.schedulable) cell += '!';
      std::cout << std::setw(10) << cell;
    }
    std::cout << '\n';
  }
  std::cout << '\n';

  bool all_ok = true;
  for (const AnalysisReport& rep : reports) {
    std::cout << "verdict " << report_label(rep) << ": "
              << (rep.schedulable ? "schedulable" : "not schedulable") << '\n';
    if (!rep.schedulable) all_ok = false;
  }
  return all_ok ? 0 : 2;
}

struct SimulateOpts {
  std::string flowset;
  std::string scenario;
  int trials = 0;
  std::uint64_t seed = 1;
  int buf = 0;
  Cycles window = 0;
  int threads = 0;
  std::string out_csv;
  std::string trace;
};

int run_simulate(const SimulateOpts& opt) {
  FlowSet fs = load_validated(opt.flowset);
  if (opt.buf > 0) fs.topology.buf = opt.buf;

  std::vector<Scenario> pinned;
  if (!opt.scenario.empty())
    pinned.push_back(load_scenario_file(opt.scenario));

  if (!opt.trace.empty()) {
    if (pinned.empty())
      throw std::runtime_error("--trace needs a pinned --scenario");
    std::ofstream tout(opt.trace);
    if (!tout) throw std::runtime_error("cannot write " + opt.trace);
    TraceWriter tracer(fs, tout);
    simulate(fs, pinned.front(), &tracer);
    std::cerr << "wrote " << opt.trace << '\n';
  }

  WorstCaseParams params;
  params.trials = opt.trials;
  params.seed = opt.seed;
  params.window = opt.window;
  params.threads = opt.threads;
  const WorstCaseResult wc = worst_observed(fs, pinned, params);

  std::size_t id_w = 4;
  for (const Flow& f : fs.flows) id_w = std::max(id_w, f.id.size());
  std::cout << std::left << std::setw(static_cast<int>(id_w)) << "flow"
            << std::right << std::setw(10) << "packets" << std::setw(13)
            << "max_latency" << '\n';
  for (const FlowWorst& fw : wc.per_flow)
    std::cout << std::left << std::setw(static_cast<int>(id_w)) << fw.flow_id
              << std::right << std::setw(10) << fw.packets << std::setw(13)
              << fw.max_latency << '\n';
  if (!wc.complete)
    std::cerr << "warning: at least one run exhausted its horizon with flits"
                 " in flight\n";

  if (!opt.out_csv.empty()) {
    std::ofstream out(opt.out_csv);
    if (!out) throw std::runtime_error("cannot write " + opt.out_csv);
    out << "flow_id,packets,max_latency\n";
    for (const FlowWorst& fw : wc.per_flow)
      out << fw.flow_id << ',' << fw.packets << ',' << fw.max_latency << '\n';
    std::cerr << "wrote " << opt.out_csv << '\n';
  }
  return 0;
}

struct GenOpts {
  GenParams params;
  std::string out;
};

int run_gen(const GenOpts& opt) {
  const FlowSet fs = generate(opt.params);
  if (opt.out.empty()) {
    save_flowset(fs, std::cout);
  } else {
    save_flowset_file(fs, opt.out);
    std::cerr << "wrote " << opt.out << " (" << fs.flows.size()
              << " flows)\n";
  }
  return 0;
}

MeshDims parse_mesh(const std::string& token) {
  const auto sep = token.find('x');
  std::size_t a = 0;
  std::size_t b = 0;
  MeshDims mesh;
  try {
    mesh.columns = std::stoi(token.substr(0, sep), &a);
    mesh.rows = std::stoi(token.substr(sep + 1), &b);
  } catch (const std::exception&) {
    a = std::string::npos;
  }
  if (sep == std::string::npos || a != sep ||
      b != token.size() - sep - 1 || mesh.columns < 1 || mesh.rows < 1)
    throw std::runtime_error("bad mesh '" + token +
                             "' (expected CxR, e.g. 4x4)");
  return mesh;
}

AnalysisSpec parse_analysis(const std::string& token, int default_buf) {
  if (token == "sb") return {AnalysisKind::SB, 0};
  if (token == "xlwx") return {AnalysisKind::XLWX, 0};
  if (token == "ibn") return {AnalysisKind::IBN, default_buf};
  if (token.rfind("ibn:", 0) == 0) {
    int buf = 0;
    try {
      buf = std::stoi(token.substr(4));
    } catch (const std::exception&) {
    }
    if (buf < 1)
      throw std::runtime_error("bad buffer depth in '" + token + "'");
    return {AnalysisKind::IBN, buf};
  }
  throw std::runtime_error("unknown analysis '" + token +
                           "' (expected sb, xlwx, ibn or ibn:N)");
}

std::string chart_path(const std::string& base, MeshDims mesh, bool multi) {
  if (!multi) return base;
  const auto dot = base.rfind('.');
  const std::string tag = "_" + to_string(mesh);
  if (dot == std::string::npos) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

struct ExperimentOpts {
  std::vector<std::string> meshes;
  std::vector<int> sweep;
  int flowsets = 100;
  std::vector<std::string> analyses;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string resume;
  std::string out = "experiment.csv";
  std::string chart;
  std::string diff_chart;
  int buf = 2;
  Cycles period_min = 50'000;
  Cycles period_max = 50'000'000;
  Cycles length_min = 128;
  Cycles length_max = 4096;
};

int run_experiment_cmd(const ExperimentOpts& opt) {
  ExperimentConfig cfg = ExperimentConfig::defaults();
  if (!opt.meshes.empty()) {
    cfg.meshes.clear();
    for (const std::string& m : opt.meshes)
      cfg.meshes.push_back(parse_mesh(m));
  }
  if (!opt.sweep.empty()) cfg.sweep = opt.sweep;
  cfg.flowsets_per_point = opt.flowsets;
  cfg.base_seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.gen.buf = opt.buf;
  cfg.gen.period_min = opt.period_min;
  cfg.gen.period_max = opt.period_max;
  cfg.gen.length_min = opt.length_min;
  cfg.gen.length_max = opt.length_max;
  if (!opt.analyses.empty()) {
    cfg.analyses.clear();
    for (const std::string& a : opt.analyses)
      cfg.analyses.push_back(parse_analysis(a, cfg.gen.buf));
  }

  ExperimentResult prior;
  const ExperimentResult* prior_ptr = nullptr;
  if (!opt.resume.empty()) {
    std::ifstream in(opt.resume);
    if (!in) throw std::runtime_error("cannot open " + opt.resume);
    prior = read_experiment_csv(in);
    prior_ptr = &prior;
  }

  const ExperimentResult result = run_experiment(cfg, prior_ptr);

  {
    std::ofstream out(opt.out);
    if (!out) throw std::runtime_error("cannot write " + opt.out);
    write_experiment_csv(out, result);
    std::cerr << "wrote " << opt.out << '\n';
  }

  std::cout << std::left << std::setw(6) << "mesh" << std::right
            << std::setw(8) << "n"
            << "  " << std::left << std::setw(10) << "analysis" << std::right
            << std::setw(8) << "pct" << std::setw(10) << "flowsets" << '\n';
  for (const ExperimentCell& c : result.cells)
    std::cout << std::left << std::setw(6) << to_string(c.mesh) << std::right
              << std::setw(8) << c.n_flows << "  " << std::left
              << std::setw(10) << to_string(c.analysis) << std::right
              << std::setw(8) << pct_string(c.pct_centi()) << std::setw(10)
              << c.flowsets << '\n';

  const bool multi = cfg.meshes.size() > 1;
  if (!opt.chart.empty()) {
    for (MeshDims mesh : cfg.meshes) {
      const std::string path = chart_path(opt.chart, mesh, multi);
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << schedulability_chart_svg(result, mesh);
      std::cerr << "wrote " << path << '\n';
    }
  }
  if (!opt.diff_chart.empty()) {
    for (MeshDims mesh : cfg.meshes) {
      const std::string path = chart_path(opt.diff_chart, mesh, multi);
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write " + path);
      out << difference_chart_svg(result, mesh, {AnalysisKind::SB, 0});
      std::cerr << "wrote " << path << '\n';
    }
  }

  if (!result.complete)
    std::cerr << "warning: incomplete result; rerun with --resume " << opt.out
              << '\n';
  return 0;
}

int run_examples(const std::string& name, const std::string& dir) {
  std::vector<std::string> names;
  if (name == "all")
    names = example_names();
  else
    names.push_back(name);
  for (const std::string& n : names) {
    const ExampleBundle bundle = example_bundle(n);
    for (const std::string& path : write_example_files(bundle, dir))
      std::cout << path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "schedulability toolkit for hard real-time priority-preemptive "
      "wormhole NoCs"};
  app.require_subcommand(1);

  std::string validate_path;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "check a flow-set file against the model's assumptions");
  validate_cmd->add_option("flowset", validate_path, "flow-set JSON file")
      ->required();

  AnalyzeOpts an;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "bound worst-case packet latencies");
  analyze_cmd->add_option("flowset", an.path, "flow-set JSON file")
      ->required();
  analyze_cmd->add_option("--analysis", an.analysis, "sb, xlwx, ibn or all")
      ->check(CLI::IsMember({"sb", "xlwx", "ibn", "all"}))
      ->capture_default_str();
  analyze_cmd
      ->add_option("--buf", an.bufs,
                   "buffer depth(s) for ibn; default: the flow set's depth")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("-o,--output", an.out_csv,
                          "also write the report as CSV");

  SimulateOpts sim;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "measure latencies in the cycle-accurate simulator");
  simulate_cmd->add_option("flowset", sim.flowset, "flow-set JSON file")
      ->required();
  simulate_cmd->add_option("--scenario", sim.scenario,
                           "pinned release-scenario JSON file");
  simulate_cmd
      ->add_option("--trials", sim.trials,
                   "random release-offset scenarios to run")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "seed for the random trials")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--buf", sim.buf, "override the flow set's buffer depth")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option(
      "--window", sim.window,
      "release window for random trials; 0 = 4x the largest period");
  simulate_cmd->add_option("--threads", sim.threads,
                           "worker threads; 0 = hardware concurrency");
  simulate_cmd->add_option("-o,--output", sim.out_csv,
                           "write per-flow maxima as CSV");
  simulate_cmd->add_option(
      "--trace", sim.trace,
      "write a per-flit trace of the pinned scenario as CSV");

  GenOpts gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random flow set");
  gen_cmd->add_option("-n,--flows", gen.params.flows, "number of flows")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--cols", gen.params.columns, "mesh columns")
      ->capture_default_str();
  gen_cmd->add_option("--rows", gen.params.rows, "mesh rows")
      ->capture_default_str();
  gen_cmd->add_option("--buf", gen.params.buf, "buffer depth in flits")
      ->capture_default_str();
  gen_cmd
      ->add_option("--vc", gen.params.vc_count,
                   "virtual channels per link; 0 = one per flow")
      ->capture_default_str();
  gen_cmd->add_option("--linkl", gen.params.link_latency, "link latency")
      ->capture_default_str();
  gen_cmd->add_option("--period-min", gen.params.period_min, "cycles")
      ->capture_default_str();
  gen_cmd->add_option("--period-max", gen.params.period_max, "cycles")
      ->capture_default_str();
  gen_cmd->add_option("--length-min", gen.params.length_min, "flits")
      ->capture_default_str();
  gen_cmd->add_option("--length-max", gen.params.length_max, "flits")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.params.seed, "generator seed")
      ->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.out,
                      "output file; stdout when omitted");

  ExperimentOpts exp;
  CLI::App* experiment_cmd = app.add_subcommand(
      "experiment", "schedulability-vs-load sweep over random flow sets");
  experiment_cmd->add_option("--mesh", exp.meshes,
                             "mesh dims CxR, repeatable; default 4x4 8x8");
  experiment_cmd
      ->add_option("--sweep", exp.sweep,
                   "flow counts, one point each; "
                   "default 100,200,400,800,1200,1600")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  experiment_cmd
      ->add_option("--flowsets", exp.flowsets, "flow sets per sweep point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment_cmd
      ->add_option("--analyses", exp.analyses,
                   "sb, xlwx or ibn:N; default sb,xlwx,ibn:2,ibn:10")
      ->delimiter(',');
  experiment_cmd->add_option("--seed", exp.seed, "base seed")
      ->capture_default_str();
  experiment_cmd->add_option("--threads", exp.threads,
                             "worker threads; 0 = hardware concurrency");
  experiment_cmd->add_option(
      "--resume", exp.resume,
      "reuse complete cells from a previous result CSV");
  experiment_cmd->add_option("-o,--output", exp.out, "result CSV path")
      ->capture_default_str();
  experiment_cmd->add_option("--chart", exp.chart,
                             "write schedulability SVG chart(s)");
  experiment_cmd->add_option("--diff-chart", exp.diff_chart,
                             "write sb-minus-others SVG chart(s)");
  experiment_cmd
      ->add_option("--buf", exp.buf, "buffer depth of generated flow sets")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  experiment_cmd->add_option("--period-min", exp.period_min, "cycles")
      ->capture_default_str();
  experiment_cmd->add_option("--period-max", exp.period_max, "cycles")
      ->capture_default_str();
  experiment_cmd->add_option("--length-min", exp.length_min, "flits")
      ->capture_default_str();
  experiment_cmd->add_option("--length-max", exp.length_max, "flits")
      ->capture_default_str();

  std::string examples_name;
  std::string examples_dir = ".";
  CLI::App* examples_cmd =
      app.add_subcommand("examples", "write the bundled example fixtures");
  examples_cmd
      ->add_option("name", examples_name,
                   "example1, example2, example3 or all")
      ->required();
  examples_cmd->add_option("--dir", examples_dir, "output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*validate_cmd) return run_validate(validate_path);
    if (*analyze_cmd) return run_analyze(an);
    if (*simulate_cmd) return run_simulate(sim);
    if (*gen_cmd) return run_gen(gen);
    if (*experiment_cmd) return run_experiment_cmd(exp);
    if (*examples_cmd) return run_examples(examples_name, examples_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
