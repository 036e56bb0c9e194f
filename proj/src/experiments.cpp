#include "wormnoc/experiments.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wormnoc/parallel.hpp"
#include "wormnoc/rng.hpp"
#include "wormnoc/svg.hpp"

namespace wormnoc {

std::string to_string(const MeshDims& m) {
  return std::to_string(m.columns) + "x" + std::to_string(m.rows);
}

std::string to_string(const AnalysisSpec& a) {
  std::string s = to_string(a.kind);
  if (a.kind == AnalysisKind::IBN) s += " b=" + std::to_string(a.buf);
  return s;
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.meshes = {{4, 4}, {8, 8}};
  cfg.sweep = {100, 200, 400, 800, 1200, 1600};
  cfg.flowsets_per_point = 100;
  cfg.analyses = {{AnalysisKind::SB, 0},
                  {AnalysisKind::XLWX, 0},
                  {AnalysisKind::IBN, 2},
                  {AnalysisKind::IBN, 10}};
  cfg.base_seed = 1;
  return cfg;
}

std::uint64_t flowset_seed(std::uint64_t base_seed, MeshDims mesh, int n_flows,
                           int rep) {
  return mix_seed({base_seed, static_cast<std::uint64_t>(mesh.columns),
                   static_cast<std::uint64_t>(mesh.rows),
                   static_cast<std::uint64_t>(n_flows),
                   static_cast<std::uint64_t>(rep)});
}

int ExperimentCell::pct_centi() const {
  if (flowsets == 0) return 0;
  return static_cast<int>((static_cast<std::int64_t>(schedulable_count) *
                               10000 + flowsets / 2) / flowsets);
}

const ExperimentCell* ExperimentResult::find(MeshDims mesh, int n_flows,
                                             const AnalysisSpec& a) const {
  for (const ExperimentCell& c : cells)
    if (c.mesh == mesh && c.n_flows == n_flows && c.analysis == a) return &c;
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const ExperimentResult* prior) {
  if (config.meshes.empty() || config.sweep.empty())
    throw std::invalid_argument("experiment needs meshes and a sweep");
  if (config.flowsets_per_point < 1)
    throw std::invalid_argument("flowsets per point must be at least 1");
  if (config.analyses.empty())
    throw std::invalid_argument("experiment needs at least one analysis");

  struct Point {
    MeshDims mesh;
    int n_flows = 0;
    bool reused = false;
  };
  std::vector<Point> points;
  for (const MeshDims& mesh : config.meshes)
    for (int n : config.sweep) points.push_back({mesh, n, false});

  ExperimentResult result;
  const int na = static_cast<int>(config.analyses.size());

  // Reuse sweep points that a prior run already finished in full.
  for (Point& pt : points) {
    if (!prior) break;
    bool all = true;
    for (const AnalysisSpec& a : config.analyses) {
      const ExperimentCell* c = prior->find(pt.mesh, pt.n_flows, a);
      if (!c || c->flowsets != config.flowsets_per_point) all = false;
    }
    pt.reused = all;
  }

  struct Job {
    int point = 0;
    int rep = 0;
  };
  std::vector<Job> jobs;
  for (std::size_t pi = 0; pi < points.size(); ++pi)
    if (!points[pi].reused)
      for (int rep = 0; rep < config.flowsets_per_point; ++rep)
        jobs.push_back({static_cast<int>(pi), rep});

  // verdicts[job][analysis]: 1 schedulable, 0 not, -1 worker failed.
  std::vector<std::vector<signed char>> verdicts(
      jobs.size(), std::vector<signed char>(na, -1));
  parallel_for(jobs.size(), config.threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    const Point& pt = points[job.point];
    try {
      GenParams gp = config.gen;
      gp.columns = pt.mesh.columns;
      gp.rows = pt.mesh.rows;
      gp.flows = pt.n_flows;
      gp.vc_count = 0;  // one VC per flow keeps any priority count legal
      gp.seed = flowset_seed(config.base_seed, pt.mesh, pt.n_flows, job.rep);
      const FlowSet fs = generate(gp);
      const InterferenceGraph g(fs);
      for (int a = 0; a < na; ++a) {
        const AnalysisSpec& spec = config.analyses[a];
        const AnalysisReport rep =
            spec.kind == AnalysisKind::IBN
                ? ibn_analysis(fs, g, spec.buf)
                : analyze(fs, g, spec.kind);
        verdicts[k][a] = rep.schedulable ? 1 : 0;
      }
    } catch (...) {
      // leave the verdicts at -1: the flowset drops out of its cell
    }
  });

  std::size_t job_cursor = 0;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const Point& pt = points[pi];
    for (int a = 0; a < na; ++a) {
      ExperimentCell cell;
      cell.mesh = pt.mesh;
      cell.n_flows = pt.n_flows;
      cell.analysis = config.analyses[a];
      if (pt.reused) {
        const ExperimentCell* c =
            prior->find(pt.mesh, pt.n_flows, config.analyses[a]);
        cell.schedulable_count = c->schedulable_count;
        cell.flowsets = c->flowsets;
      }
      result.cells.push_back(cell);
    }
    if (pt.reused) continue;
    for (int rep = 0; rep < config.flowsets_per_point; ++rep) {
      const std::vector<signed char>& v = verdicts[job_cursor++];
      for (int a = 0; a < na; ++a) {
        ExperimentCell& cell = result.cells[pi * na + a];
        if (v[a] < 0) {
          result.complete = false;
          continue;
        }
        ++cell.flowsets;
        if (v[a] > 0) ++cell.schedulable_count;
      }
    }
  }
  return result;
}

std::vector<DiffPoint> diff(const ExperimentResult& result,
                            const AnalysisSpec& a, const AnalysisSpec& b) {
  std::vector<DiffPoint> out;
  std::vector<std::pair<MeshDims, int>> keys;
  for (const ExperimentCell& c : result.cells) {
    const std::pair<MeshDims, int> key{c.mesh, c.n_flows};
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      keys.push_back(key);
  }
  for (const auto& [mesh, n] : keys) {
    const ExperimentCell* ca = result.find(mesh, n, a);
    const ExperimentCell* cb = result.find(mesh, n, b);
    if (!ca || !cb)
      throw std::invalid_argument(
          "difference needs both analyses at every sweep point (" +
          to_string(mesh) + ", n=" + std::to_string(n) + ")");
    out.push_back({mesh, n, ca->pct_centi() - cb->pct_centi()});
  }
  return out;
}

namespace {

std::string centi_to_string(int centi) {
  std::string sign = centi < 0 ? "-" : "";
  if (centi < 0) centi = -centi;
  return sign + std::to_string(centi / 100) + "." +
         (centi % 100 < 10 ? "0" : "") + std::to_string(centi % 100);
}

std::string analysis_csv_name(const AnalysisSpec& a) { return to_string(a.kind); }

std::string analysis_csv_buf(const AnalysisSpec& a) {
  return a.kind == AnalysisKind::IBN ? std::to_string(a.buf) : std::string("-");
}

}  // namespace

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  out << "mesh,n_flows,analysis,buf,schedulable_pct,flowsets\n";
  for (const ExperimentCell& c : result.cells) {
    out << to_string(c.mesh) << ',' << c.n_flows << ','
        << analysis_csv_name(c.analysis) << ',' << analysis_csv_buf(c.analysis)
        << ',' << centi_to_string(c.pct_centi()) << ',' << c.flowsets << '\n';
  }
}

ExperimentResult read_experiment_csv(std::istream& in) {
  ExperimentResult result;
  std::string line;
  if (!std::getline(in, line) ||
      line != "mesh,n_flows,analysis,buf,schedulable_pct,flowsets")
    throw std::runtime_error("experiment csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string mesh, n, analysis, buf, pct, sets;
    if (!std::getline(row, mesh, ',') || !std::getline(row, n, ',') ||
        !std::getline(row, analysis, ',') || !std::getline(row, buf, ',') ||
        !std::getline(row, pct, ',') || !std::getline(row, sets))
      throw std::runtime_error("experiment csv: malformed row: " + line);
    ExperimentCell cell;
    const auto x = mesh.find('x');
    if (x == std::string::npos)
      throw std::runtime_error("experiment csv: bad mesh: " + mesh);
    cell.mesh = {std::stoi(mesh.substr(0, x)), std::stoi(mesh.substr(x + 1))};
    cell.n_flows = std::stoi(n);
    if (analysis == "sb") {
      cell.analysis = {AnalysisKind::SB, 0};
    } else if (analysis == "xlwx") {
      cell.analysis = {AnalysisKind::XLWX, 0};
    } else if (analysis == "ibn") {
      cell.analysis = {AnalysisKind::IBN, std::stoi(buf)};
    } else {
      throw std::runtime_error("experiment csv: unknown analysis: " + analysis);
    }
    cell.flowsets = std::stoi(sets);
    // reconstruct the count from the rounded percentage
    const double pct_val = std::stod(pct);
    cell.schedulable_count =
        static_cast<int>(pct_val * cell.flowsets / 100.0 + 0.5);
    result.cells.push_back(cell);
  }
  return result;
}

namespace {

const char* series_color(std::size_t i) {
  static const char* colors[] = {"#000000", "#d62728", "#1f77b4", "#2ca02c",
                                 "#9467bd", "#ff7f0e"};
  return colors[i % (sizeof colors / sizeof colors[0])];
}

}  // namespace

std::string schedulability_chart_svg(const ExperimentResult& result,
                                     MeshDims mesh) {
  std::vector<AnalysisSpec> specs;
  std::vector<int> ns;
  for (const ExperimentCell& c : result.cells) {
    if (!(c.mesh == mesh)) continue;
    if (std::find(specs.begin(), specs.end(), c.analysis) == specs.end())
      specs.push_back(c.analysis);
    if (std::find(ns.begin(), ns.end(), c.n_flows) == ns.end())
      ns.push_back(c.n_flows);
  }
  std::sort(ns.begin(), ns.end());
  std::vector<svg::Series> series;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    svg::Series s;
    s.label = to_string(specs[i]);
    s.color = series_color(i);
    for (int n : ns)
      if (const ExperimentCell* c = result.find(mesh, n, specs[i]))
        s.points.emplace_back(n, c->pct_centi() / 100.0);
    series.push_back(std::move(s));
  }
  svg::ChartSpec spec;
  spec.title = "schedulable flow sets, " + to_string(mesh) + " mesh";
  spec.x_label = "flows per set";
  spec.y_label = "% schedulable";
  return svg::line_chart(spec, series);
}

std::string difference_chart_svg(const ExperimentResult& result, MeshDims mesh,
                                 const AnalysisSpec& base) {
  std::vector<AnalysisSpec> specs;
  for (const ExperimentCell& c : result.cells)
    if (c.mesh == mesh && !(c.analysis == base) &&
        c.analysis.kind == AnalysisKind::IBN &&
        std::find(specs.begin(), specs.end(), c.analysis) == specs.end())
      specs.push_back(c.analysis);
  std::vector<svg::Series> series;
  double max_delta = 1.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    svg::Series s;
    s.label = to_string(base) + " - " + to_string(specs[i]);
    s.color = series_color(i + 2);
    for (const DiffPoint& d : diff(result, base, specs[i])) {
      if (!(d.mesh == mesh)) continue;
      s.points.emplace_back(d.n_flows, d.pct_centi_delta / 100.0);
      max_delta = std::max(max_delta, d.pct_centi_delta / 100.0);
    }
    series.push_back(std::move(s));
  }
  svg::ChartSpec spec;
  spec.title = "schedulability difference, " + to_string(mesh) + " mesh";
  spec.x_label = "flows per set";
  spec.y_label = "percentage points";
  spec.y_max = max_delta * 1.2;
  return svg::line_chart(spec, series);
}

}  // namespace wormnoc
