#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wormnoc/experiments.hpp"
#include "wormnoc/fixtures.hpp"
#include "wormnoc/flowgen.hpp"
#include "wormnoc/interference.hpp"
#include "wormnoc/rta.hpp"
#include "wormnoc/simulator.hpp"
#include "wormnoc/traffic.hpp"

namespace py = pybind11;

namespace {

using namespace wormnoc;

AnalysisKind kind_from_name(const std::string& name) {
  if (name == "sb") return AnalysisKind::SB;
  if (name == "xlwx") return AnalysisKind::XLWX;
  if (name == "ibn") return AnalysisKind::IBN;
  throw std::invalid_argument("unknown analysis '" + name +
                              "' (expected sb, xlwx or ibn)");
}

AnalysisSpec spec_from_token(const std::string& token, int default_buf) {
  if (token == "sb") return {AnalysisKind::SB, 0};
  if (token == "xlwx") return {AnalysisKind::XLWX, 0};
  if (token == "ibn") return {AnalysisKind::IBN, default_buf};
  if (token.rfind("ibn:", 0) == 0) {
    const int buf = std::stoi(token.substr(4));
    if (buf < 1) throw std::invalid_argument("bad buffer depth in '" + token + "'");
    return {AnalysisKind::IBN, buf};
  }
  throw std::invalid_argument("unknown analysis '" + token +
                              "' (expected sb, xlwx, ibn or ibn:N)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "schedulability toolkit for hard real-time priority-preemptive "
      "wormhole NoCs";
  m.attr("__version__") = "0.1.0";

  py::class_<Coord>(m, "Coord")
      .def(py::init<>())
      .def(py::init([](int x, int y) { return Coord{x, y}; }), py::arg("x"),
           py::arg("y"))
      .def_readwrite("x", &Coord::x)
      .def_readwrite("y", &Coord::y)
      .def("__eq__",
           [](const Coord& a, const Coord& b) { return a == b; })
      .def("__repr__", [](const Coord& c) { return to_string(c); });

  py::enum_<LinkKind>(m, "LinkKind")
      .value("core_to_router", LinkKind::CoreToRouter)
      .value("router_to_router", LinkKind::RouterToRouter)
      .value("router_to_core", LinkKind::RouterToCore);

  py::class_<Link>(m, "Link")
      .def_readonly("kind", &Link::kind)
      .def_readonly("src", &Link::src)
      .def_readonly("dst", &Link::dst)
      .def("__eq__", [](const Link& a, const Link& b) { return a == b; })
      .def("__repr__", [](const Link& l) { return to_string(l); });

  py::class_<Topology>(m, "Topology")
      .def(py::init<>())
      .def_readwrite("columns", &Topology::columns)
      .def_readwrite("rows", &Topology::rows)
      .def_readwrite("buf", &Topology::buf)
      .def_readwrite("vc_count", &Topology::vc_count)
      .def_readwrite("link_latency", &Topology::link_latency)
      .def("node_count", &Topology::node_count);

  m.def("build_mesh", &build_mesh, py::arg("columns"), py::arg("rows"),
        py::arg("buf"), py::arg("vc_count"), py::arg("link_latency"));
  m.def("xy_route", &xy_route, py::arg("topology"), py::arg("src"),
        py::arg("dst"));
  m.def("mesh_links", &mesh_links, py::arg("topology"));

  py::class_<Flow>(m, "Flow")
      .def(py::init<>())
      .def_readwrite("id", &Flow::id)
      .def_readwrite("priority", &Flow::priority)
      .def_readwrite("length", &Flow::length)
      .def_readwrite("period", &Flow::period)
      .def_readwrite("deadline", &Flow::deadline)
      .def_readwrite("jitter", &Flow::jitter)
      .def_readwrite("src", &Flow::src)
      .def_readwrite("dst", &Flow::dst);

  py::class_<FlowSet>(m, "FlowSet")
      .def(py::init<>())
      .def_readwrite("topology", &FlowSet::topology)
      .def_readwrite("flows", &FlowSet::flows)
      .def_static("from_json",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return load_flowset(in);
                  },
                  py::arg("text"))
      .def("to_json", [](const FlowSet& fs) {
        std::ostringstream out;
        save_flowset(fs, out);
        return out.str();
      });

  m.def("load_flowset_file", &load_flowset_file, py::arg("path"));
  m.def("save_flowset_file", &save_flowset_file, py::arg("flowset"),
        py::arg("path"));
  m.def("validate", &validate, py::arg("flowset"));
  m.def("no_load_latency", &no_load_latency, py::arg("flow"),
        py::arg("topology"));

  py::class_<InterferenceGraph>(m, "InterferenceGraph")
      .def(py::init<const FlowSet&>(), py::arg("flowset"),
           py::keep_alive<1, 2>())
      .def("size", &InterferenceGraph::size)
      .def("route", &InterferenceGraph::route, py::arg("i"))
      .def("direct_set", &InterferenceGraph::direct_set, py::arg("i"))
      .def("indirect_set", &InterferenceGraph::indirect_set, py::arg("i"))
      .def("contention", &InterferenceGraph::contention, py::arg("i"),
           py::arg("j"))
      .def("contention_size", &InterferenceGraph::contention_size,
           py::arg("i"), py::arg("j"))
      .def("first_shared_order", &InterferenceGraph::first_shared_order,
           py::arg("i"), py::arg("j"))
      .def("updown_partition",
           [](const InterferenceGraph& g, int i, int j) {
             const auto p = g.updown_partition(i, j);
             return py::make_tuple(p.upstream, p.downstream);
           },
           py::arg("i"), py::arg("j"));

  py::class_<FlowBound>(m, "FlowBound")
      .def_readonly("flow_id", &FlowBound::flow_id)
      .def_readonly("priority", &FlowBound::priority)
      .def_readonly("no_load", &FlowBound::no_load)
      .def_readonly("response", &FlowBound::response)
      .def_readonly("converged", &FlowBound::converged)
      .def_readonly("deps_diverged", &FlowBound::deps_diverged)
      .def_readonly("iterations", &FlowBound::iterations)
      .def_readonly("iterates", &FlowBound::iterates)
      .def_readonly("interference_jitter", &FlowBound::interference_jitter)
      .def_readonly("schedulable", &FlowBound::schedulable);

  py::class_<AnalysisReport>(m, "AnalysisReport")
      .def_property_readonly(
          "analysis",
          [](const AnalysisReport& r) { return to_string(r.kind); })
      .def_readonly("buf", &AnalysisReport::buf)
      .def_readonly("flows", &AnalysisReport::flows)
      .def_readonly("schedulable", &AnalysisReport::schedulable)
      .def("find",
           [](const AnalysisReport& r, const std::string& id) {
             const FlowBound* b = r.find(id);
             if (!b) throw std::out_of_range("no flow '" + id + "'");
             return *b;
           },
           py::arg("flow_id"));

  m.def("analyze",
        [](const FlowSet& fs, const std::string& analysis,
           std::optional<int> buf) {
          const InterferenceGraph g(fs);
          return analyze(fs, g, kind_from_name(analysis), buf);
        },
        py::arg("flowset"), py::arg("analysis"),
        py::arg("buf") = std::nullopt);
  m.def("report_csv", [](const std::vector<AnalysisReport>& reports) {
    std::ostringstream out;
    write_report_csv(out, reports);
    return out.str();
  });

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("horizon", &Scenario::horizon)
      .def_static("from_json",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return load_scenario(in);
                  },
                  py::arg("text"))
      .def("to_json", [](const Scenario& s) {
        std::ostringstream out;
        save_scenario(s, out);
        return out.str();
      });

  m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
  m.def("synchronous_scenario", &synchronous_scenario, py::arg("flowset"),
        py::arg("horizon"));

  py::class_<LatencyRecord>(m, "LatencyRecord")
      .def_readonly("flow_id", &LatencyRecord::flow_id)
      .def_readonly("release", &LatencyRecord::release)
      .def_readonly("delivery", &LatencyRecord::delivery)
      .def_readonly("latency", &LatencyRecord::latency);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("records", &SimResult::records)
      .def_readonly("complete", &SimResult::complete)
      .def_readonly("cycles_run", &SimResult::cycles_run);

  m.def("simulate",
        [](const FlowSet& fs, const Scenario& s) {
          return simulate(fs, s, nullptr);
        },
        py::arg("flowset"), py::arg("scenario"));

  py::class_<FlowWorst>(m, "FlowWorst")
      .def_readonly("flow_id", &FlowWorst::flow_id)
      .def_readonly("max_latency", &FlowWorst::max_latency)
      .def_readonly("packets", &FlowWorst::packets);

  py::class_<WorstCaseResult>(m, "WorstCaseResult")
      .def_readonly("per_flow", &WorstCaseResult::per_flow)
      .def_readonly("complete", &WorstCaseResult::complete);

  m.def("worst_observed",
        [](const FlowSet& fs, const std::vector<Scenario>& pinned, int trials,
           std::uint64_t seed, Cycles window, int threads) {
          WorstCaseParams params;
          params.trials = trials;
          params.seed = seed;
          params.window = window;
          params.threads = threads;
          return worst_observed(fs, pinned, params);
        },
        py::arg("flowset"), py::arg("pinned") = std::vector<Scenario>{},
        py::arg("trials") = 0, py::arg("seed") = 1, py::arg("window") = 0,
        py::arg("threads") = 0);

  m.def("generate",
        [](int flows, int columns, int rows, int buf, int link_latency,
           int vc_count, Cycles period_min, Cycles period_max,
           Cycles length_min, Cycles length_max, std::uint64_t seed) {
          GenParams p;
          p.flows = flows;
          p.columns = columns;
          p.rows = rows;
          p.buf = buf;
          p.link_latency = link_latency;
          p.vc_count = vc_count;
          p.period_min = period_min;
          p.period_max = period_max;
          p.length_min = length_min;
          p.length_max = length_max;
          p.seed = seed;
          return generate(p);
        },
        py::arg("flows"), py::arg("columns") = 4, py::arg("rows") = 4,
        py::arg("buf") = 2, py::arg("link_latency") = 1,
        py::arg("vc_count") = 0, py::arg("period_min") = 50'000,
        py::arg("period_max") = 50'000'000, py::arg("length_min") = 128,
        py::arg("length_max") = 4096, py::arg("seed") = 1);

  py::class_<ExpectedBound>(m, "ExpectedBound")
      .def_readonly("flow_id", &ExpectedBound::flow_id)
      .def_readonly("analysis", &ExpectedBound::analysis)
      .def_readonly("buf", &ExpectedBound::buf)
      .def_readonly("response", &ExpectedBound::response);

  py::class_<ExampleBundle>(m, "ExampleBundle")
      .def_readonly("name", &ExampleBundle::name)
      .def_readonly("flowset", &ExampleBundle::flowset)
      .def_readonly("scenarios", &ExampleBundle::scenarios)
      .def_readonly("expected", &ExampleBundle::expected);

  m.def("example_names",
        []() { return example_names(); });
  m.def("example_bundle", &example_bundle, py::arg("name"));
  m.def("write_example_files", &write_example_files, py::arg("bundle"),
        py::arg("dir"));

  py::class_<ExperimentCell>(m, "ExperimentCell")
      .def_property_readonly(
          "mesh", [](const ExperimentCell& c) { return to_string(c.mesh); })
      .def_readonly("n_flows", &ExperimentCell::n_flows)
      .def_property_readonly(
          "analysis",
          [](const ExperimentCell& c) { return to_string(c.analysis); })
      .def_readonly("schedulable_count", &ExperimentCell::schedulable_count)
      .def_readonly("flowsets", &ExperimentCell::flowsets)
      .def_property_readonly("pct_centi", &ExperimentCell::pct_centi);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("cells", &ExperimentResult::cells)
      .def_readonly("complete", &ExperimentResult::complete)
      .def("to_csv", [](const ExperimentResult& r) {
        std::ostringstream out;
        write_experiment_csv(out, r);
        return out.str();
      });

  m.def("run_experiment",
        [](std::vector<std::pair<int, int>> meshes, std::vector<int> sweep,
           int flowsets, std::vector<std::string> analyses,
           std::uint64_t base_seed, int threads, int buf, Cycles period_min,
           Cycles period_max, Cycles length_min, Cycles length_max) {
          ExperimentConfig cfg = ExperimentConfig::defaults();
          if (!meshes.empty()) {
            cfg.meshes.clear();
            for (const auto& [c, r] : meshes) cfg.meshes.push_back({c, r});
          }
          if (!sweep.empty()) cfg.sweep = sweep;
          if (flowsets > 0) cfg.flowsets_per_point = flowsets;
          cfg.base_seed = base_seed;
          cfg.threads = threads;
          cfg.gen.buf = buf;
          cfg.gen.period_min = period_min;
          cfg.gen.period_max = period_max;
          cfg.gen.length_min = length_min;
          cfg.gen.length_max = length_max;
          if (!analyses.empty()) {
            cfg.analyses.clear();
            for (const std::string& a : analyses)
              cfg.analyses.push_back(spec_from_token(a, cfg.gen.buf));
          }
          return run_experiment(cfg, nullptr);
        },
        py::arg("meshes") = std::vector<std::pair<int, int>>{},
        py::arg("sweep") = std::vector<int>{}, py::arg("flowsets") = 0,
        py::arg("analyses") = std::vector<std::string>{},
        py::arg("base_seed") = 1, py::arg("threads") = 0, py::arg("buf") = 2,
        py::arg("period_min") = 50'000, py::arg("period_max") = 50'000'000,
        py::arg("length_min") = 128, py::arg("length_max") = 4096);
}
