#include "wormnoc/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace wormnoc::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::string line_chart(const ChartSpec& spec, const std::vector<Series>& data) {
  const double ml = 62, mr = 150, mt = 36, mb = 46;  // margins; legend right
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;

  double x_min = 0, x_max = 1;
  bool have_x = false;
  for (const Series& s : data) {
    for (const auto& [x, y] : s.points) {
      if (!have_x) {
        x_min = x_max = x;
        have_x = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
      (void)y;
    }
  }
  if (x_max <= x_min) x_max = x_min + 1;
  const double y_min = spec.y_min;
  const double y_max = spec.y_max > spec.y_min ? spec.y_max : spec.y_min + 1;

  const auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
      << " " << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(ml + pw / 2) << "\" y=\"20\" font-family=\"sans-serif\""
      << " font-size=\"14\" text-anchor=\"middle\">" << spec.title << "</text>\n";

  // axes
  out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt + ph) << "\" x2=\""
      << num(ml + pw) << "\" y2=\"" << num(mt + ph)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt) << "\" x2=\""
      << num(ml) << "\" y2=\"" << num(mt + ph) << "\" stroke=\"black\"/>\n";

  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fy = y_min + (y_max - y_min) * i / ticks;
    out << "<line x1=\"" << num(ml - 4) << "\" y1=\"" << num(py(fy))
        << "\" x2=\"" << num(ml) << "\" y2=\"" << num(py(fy))
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(py(fy) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"end\">" << num(fy) << "</text>\n";
    const double fx = x_min + (x_max - x_min) * i / ticks;
    out << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(mt + ph)
        << "\" x2=\"" << num(px(fx)) << "\" y2=\"" << num(mt + ph + 4)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(mt + ph + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"middle\">" << num(fx) << "</text>\n";
  }
  out << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(mt + ph + 36)
      << "\" font-family=\"sans-serif\" font-size=\"12\""
      << " text-anchor=\"middle\">" << spec.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(mt + ph / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
      << " transform=\"rotate(-90 16 " << num(mt + ph / 2) << ")\">"
      << spec.y_label << "</text>\n";

  int legend_row = 0;
  for (const Series& s : data) {
    if (!s.points.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) out << ' ';
        out << num(px(s.points[i].first)) << ',' << num(py(s.points[i].second));
      }
      out << "\"/>\n";
      for (const auto& [x, y] : s.points)
        out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
            << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
    }
    const double ly = mt + 10 + 18 * legend_row++;
    out << "<line x1=\"" << num(ml + pw + 12) << "\" y1=\"" << num(ly)
        << "\" x2=\"" << num(ml + pw + 34) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << num(ml + pw + 40) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wormnoc::svg
