#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mgedge/errors.hpp"
#include "csv.hpp"

namespace mgedge {

namespace {

constexpr double kWidth = 880, kHeight = 540;
constexpr double kLeft = 80, kRight = 860, kTop = 50, kBottom = 460;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) { return format_real(v); }

struct SvgFile {
  std::ofstream out;

  explicit SvgFile(const std::string& path) : out(path, std::ios::binary) {
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"13\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  void title(const std::string& text) {
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-size=\"17\">" << text << "</text>\n";
  }

  void axes(const std::string& x_label, const std::string& y_label) {
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 14
        << "\" text-anchor=\"middle\">" << x_label << "</text>\n"
        << "<text x=\"20\" y=\"" << (kTop + kBottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << (kTop + kBottom) / 2
        << ")\">" << y_label << "</text>\n";
  }

  void y_tick(double y, double value) {
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kRight
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << kLeft - 9 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">" << fmt(value) << "</text>\n";
  }

  void x_tick(double x, const std::string& label) {
    out << "<line x1=\"" << x << "\" y1=\"" << kBottom << "\" x2=\"" << x << "\" y2=\""
        << kBottom + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << kBottom + 20
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }

  void close() { out << "</svg>\n"; }
};

double nice_step(double span, int ticks) {
  const double raw = span / std::max(ticks, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

void write_volatility_plot(const std::string& path,
                           const std::vector<ExperimentReport>& reports) {
  double x_min = 1e300, x_max = -1e300, y_max = 0.0;
  for (const ExperimentReport& r : reports) {
    for (const SweepPoint& p : r.points) {
      if (!std::isnan(p.alpha)) {
        x_min = std::min(x_min, p.alpha);
        x_max = std::max(x_max, p.alpha);
      }
      y_max = std::max(y_max, p.aggregate.volatility_mean);
    }
  }
  if (x_min >= x_max) {  // no swept policy: synthesize a range for flat lines
    x_min = 0.05;
    x_max = 2.0;
  }
  const double lx0 = std::log(x_min), lx1 = std::log(x_max);
  y_max *= 1.1;
  if (y_max <= 0.0) y_max = 1.0;

  auto x_of = [&](double alpha) {
    return kLeft + (std::log(alpha) - lx0) / (lx1 - lx0) * (kRight - kLeft);
  };
  auto y_of = [&](double v) { return kBottom - v / y_max * (kBottom - kTop); };

  SvgFile svg(path);
  svg.title("Volatility vs alpha = 2^s / M");
  svg.axes("alpha (log scale)", "volatility (var attendance / M)");

  const double step = nice_step(y_max, 6);
  for (double v = 0.0; v <= y_max + 1e-12; v += step) svg.y_tick(y_of(v), v);

  std::vector<double> keys;
  for (const ExperimentReport& r : reports) {
    for (const SweepPoint& p : r.points) {
      if (!std::isnan(p.alpha)) keys.push_back(p.alpha);
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (double k : keys) svg.x_tick(x_of(k), fmt(k));

  int color = 0;
  double legend_y = kTop + 8;
  for (const ExperimentReport& r : reports) {
    const char* stroke = kPalette[color % 10];
    const bool flat = !r.points.empty() && r.points.front().flat;
    std::string points_attr;
    if (flat) {
      const double y = y_of(r.points.front().aggregate.volatility_mean);
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f %.2f,%.2f", kLeft, y, kRight, y);
      points_attr = buf;
    } else {
      for (const SweepPoint& p : r.points) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x_of(p.alpha),
                      y_of(p.aggregate.volatility_mean));
        points_attr += buf;
        svg.out << "<circle cx=\"" << x_of(p.alpha) << "\" cy=\""
                << y_of(p.aggregate.volatility_mean) << "\" r=\"3\" fill=\"" << stroke
                << "\"/>\n";
      }
    }
    svg.out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.8\""
            << (flat ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << points_attr
            << "\"/>\n";
    svg.out << "<line x1=\"" << kRight - 210 << "\" y1=\"" << legend_y << "\" x2=\""
            << kRight - 185 << "\" y2=\"" << legend_y << "\" stroke=\"" << stroke
            << "\" stroke-width=\"2\"" << (flat ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n<text x=\"" << kRight - 178 << "\" y=\"" << legend_y + 4 << "\">"
            << r.policy.name << (flat ? " (flat)" : "") << "</text>\n";
    legend_y += 18;
    ++color;
  }
  svg.close();
}

namespace {

void write_bar_chart(const std::string& path, const std::string& title,
                     const std::string& y_label,
                     const std::vector<std::pair<std::string, double>>& bars,
                     double reference) {
  double y_max = reference;
  for (const auto& [label, value] : bars) y_max = std::max(y_max, value);
  y_max = std::max(y_max * 1.15, 1e-9);

  auto y_of = [&](double v) { return kBottom - v / y_max * (kBottom - kTop); };

  SvgFile svg(path);
  svg.title(title);
  svg.axes("policy", y_label);

  const double step = nice_step(y_max, 6);
  for (double v = 0.0; v <= y_max + 1e-12; v += step) svg.y_tick(y_of(v), v);

  const auto n = static_cast<double>(bars.size());
  const double slot = (kRight - kLeft) / std::max(n, 1.0);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double x = kLeft + slot * (static_cast<double>(i) + 0.2);
    const double w = slot * 0.6;
    const double y = y_of(bars[i].second);
    const char* fill = kPalette[i % 10];
    svg.out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
            << kBottom - y << "\" fill=\"" << fill << "\"/>\n"
            << "<text x=\"" << x + w / 2 << "\" y=\"" << y - 5
            << "\" text-anchor=\"middle\">" << fmt(bars[i].second) << "</text>\n"
            << "<text x=\"" << x + w / 2 << "\" y=\"" << kBottom + 20
            << "\" text-anchor=\"middle\" transform=\"rotate(-18 " << x + w / 2 << ' '
            << kBottom + 20 << ")\">" << bars[i].first << "</text>\n";
  }
  if (reference > 0.0) {
    const double y = y_of(reference);
    svg.out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kRight
            << "\" y2=\"" << y << "\" stroke=\"black\" stroke-dasharray=\"4 4\"/>\n"
            << "<text x=\"" << kRight - 4 << "\" y=\"" << y - 5
            << "\" text-anchor=\"end\">" << fmt(reference) << "</text>\n";
  }
  svg.close();
}

std::vector<std::pair<std::string, double>> best_point_values(
    const std::vector<ExperimentReport>& reports, double Aggregate::* field) {
  std::vector<std::pair<std::string, double>> bars;
  bars.reserve(reports.size());
  for (const ExperimentReport& r : reports) {
    bars.emplace_back(r.policy.name, r.best_volatility_point().aggregate.*field);
  }
  return bars;
}

}  // namespace

void write_utility_plot(const std::string& path,
                        const std::vector<ExperimentReport>& reports, double optimum) {
  write_bar_chart(path, "Mean utility per server (best sweep point)",
                  "mean utility per round", best_point_values(reports, &Aggregate::utility_mean),
                  optimum);
}

void write_qoe_plot(const std::string& path, const std::vector<ExperimentReport>& reports) {
  write_bar_chart(path, "Deadline-satisfaction probability (best sweep point)",
                  "Pr[tau <= T]", best_point_values(reports, &Aggregate::qoe_mean), 0.0);
}

}  // namespace mgedge
