#include "xsect/svg.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace xsect {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kMargin = 48;

struct Frame {
  double x_max;
  double y_max;
  double px(double x) const { return kMargin + x / x_max * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - y / y_max * (kHeight - 2 * kMargin); }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

// Polyline through the graph of a right-continuous step function given as
// (breakpoints, values) with breakpoints.size() == values.size() + 1.
std::string step_path(const Frame& fr, const std::vector<double>& bps, const std::vector<double>& vals) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    os << (i == 0 ? "M" : "L") << fmt(fr.px(bps[i])) << ',' << fmt(fr.py(vals[i])) << ' ';
    os << "L" << fmt(fr.px(bps[i + 1])) << ',' << fmt(fr.py(vals[i])) << ' ';
  }
  return os.str();
}

void axes(std::ostream& os, const Frame& fr) {
  os << "<line x1=\"" << fmt(fr.px(0)) << "\" y1=\"" << fmt(fr.py(0)) << "\" x2=\"" << fmt(fr.px(fr.x_max))
     << "\" y2=\"" << fmt(fr.py(0)) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt(fr.px(0)) << "\" y1=\"" << fmt(fr.py(0)) << "\" x2=\"" << fmt(fr.px(0))
     << "\" y2=\"" << fmt(fr.py(fr.y_max)) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = fr.x_max * i / 4;
    const double y = fr.y_max * i / 4;
    os << "<text x=\"" << fmt(fr.px(x)) << "\" y=\"" << fmt(fr.py(0) + 16)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    os << "<text x=\"" << fmt(fr.px(0) - 6) << "\" y=\"" << fmt(fr.py(y) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
}

std::pair<std::vector<double>, std::vector<double>> as_doubles(const StepFunction& f) {
  std::vector<double> b;
  std::vector<double> v;
  for (const auto& x : f.breakpoints()) b.push_back(x.to_double());
  for (const auto& x : f.values()) v.push_back(x.to_double());
  return {b, v};
}

}  // namespace

void write_marginal_svg(std::ostream& os, const StepFunction& f) {
  const double top = std::max(1.0, f.max_value().to_double());
  const Frame fr{top, top};

  // lambda_f is a step function on [0, max f] with jumps at the values of f.
  std::vector<Dyadic> levels{Dyadic(0)};
  levels.insert(levels.end(), f.values().begin(), f.values().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<double> lb;
  std::vector<double> lv;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    lb.push_back(levels[i].to_double());
    lv.push_back(distribution(f, levels[i]).to_double());
  }
  lb.push_back(levels.back().to_double());

  auto [fb, fv] = as_doubles(f);
  auto [rb, rv] = as_doubles(rearrange(f));

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  axes(os, fr);
  os << "<path d=\"" << step_path(fr, fb, fv) << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  os << "<path d=\"" << step_path(fr, rb, rv)
     << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6 3\"/>\n";
  if (!lv.empty()) {
    os << "<path d=\"" << step_path(fr, lb, lv)
       << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\" stroke-dasharray=\"2 3\"/>\n";
  }
  const double lx = kWidth - kMargin - 120;
  const char* names[] = {"f", "f* (rearrangement)", "distribution of f"};
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  for (int i = 0; i < 3; ++i) {
    const double ly = kMargin + 16.0 * i;
    os << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 20) << "\" y2=\""
       << fmt(ly) << "\" stroke=\"" << colors[i] << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fmt(lx + 26) << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"11\">" << names[i]
       << "</text>\n";
  }
  os << "</svg>\n";
}

void write_set_svg(std::ostream& os, const DyadicSet& e) {
  const auto& p = e.params();
  const double side = 512;
  const double cell = side / static_cast<double>(p.cells());
  const double unit = cell / p.units_per_cell();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
     << "\" viewBox=\"0 0 " << side << ' ' << side << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";
  for (Eigen::Index r = 0; r < p.cells(); ++r) {
    const double y = side - static_cast<double>(r + 1) * cell;
    for (Eigen::Index c = 0; c < p.cells(); ++c) {
      if (e(r, c) == 0) continue;
      os << "<rect x=\"" << fmt(static_cast<double>(c) * cell) << "\" y=\"" << fmt(y) << "\" width=\""
         << fmt(e(r, c) * unit) << "\" height=\"" << fmt(cell) << "\" fill=\"black\"/>\n";
    }
  }
  os << "</svg>\n";
}

}  // namespace xsect
