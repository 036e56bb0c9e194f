#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wormnoc::svg {

// Minimal deterministic line-chart emitter for experiment output. No
// timestamps or float-locale dependence, so repeated runs are byte-equal.
struct Series {
  std::string label;
  std::string color;  // e.g. "#1f77b4"
  std::vector<std::pair<double, double>> points;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  double y_min = 0.0;
  double y_max = 100.0;
  int width = 640;
  int height = 420;
};

std::string line_chart(const ChartSpec& spec, const std::vector<Series>& data);

}  // namespace wormnoc::svg
