#include "pwr/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace pwr {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 220.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

} // namespace

std::string render_convergence_svg(const PwrTrace& trace, const std::string& title) {
  const int k_max = trace.k_max();
  if (k_max < 2) throw std::invalid_argument("a convergence plot needs k_max >= 2");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    const auto& r = trace.ratio_at(k);
    const auto& undefined = trace.undefined[static_cast<std::size_t>(k - 1)];
    for (Index i = 0; i < trace.size(); ++i) {
      if (undefined[i]) continue;
      lo = std::min(lo, r[i]);
      hi = std::max(hi, r[i]);
    }
  }
  if (!std::isfinite(lo)) throw std::invalid_argument("trace holds no defined ratio to plot");
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](int k) { return kLeft + plot_w * static_cast<double>(k - 1) / static_cast<double>(k_max - 1); };
  auto y_of = [&](double r) { return kTop + plot_h * (hi - r) / (hi - lo); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
         fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(kLeft) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" +
         escape_xml(title) + "</text>\n";

  // Axes.
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop + plot_h) + "\" x2=\"" + fixed(kLeft + plot_w) +
         "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
         fixed(kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const int x_step = std::max(1, (k_max + 9) / 10);
  for (int k = 1; k <= k_max; k += x_step) {
    const double x = x_of(k);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop + plot_h) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
           fixed(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           std::to_string(k) + "</text>\n";
  }
  constexpr int kYTicks = 5;
  for (int t = 0; t <= kYTicks; ++t) {
    const double r = lo + (hi - lo) * t / kYTicks;
    const double y = y_of(r);
    svg += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft) + "\" y2=\"" +
           fixed(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(y + 4) + "\" text-anchor=\"end\">" + fixed(r) +
           "</text>\n";
  }
  svg += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 10) +
         "\" text-anchor=\"middle\">iteration k</text>\n";
  svg += "<text x=\"14\" y=\"" + fixed(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
         fixed(kTop + plot_h / 2) + ")\">PWR r(k)</text>\n";
  svg += "</g>\n";

  for (Index i = 0; i < trace.size(); ++i) {
    std::string points;
    for (int k = 1; k <= k_max; ++k) {
      if (trace.undefined[static_cast<std::size_t>(k - 1)][i]) continue;
      if (!points.empty()) points += ' ';
      points += fixed(x_of(k)) + "," + fixed(y_of(trace.ratio_at(k)[i]));
    }
    if (points.empty()) continue;
    const char* colour = kPalette[static_cast<std::size_t>(i) % kPalette.size()];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" + points +
           "\"><title>" + escape_xml(trace.labels[static_cast<std::size_t>(i)]) + "</title></polyline>\n";
  }

  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (Index i = 0; i < trace.size(); ++i) {
    const double y = kTop + 10 + 16.0 * static_cast<double>(i);
    const double x = kLeft + plot_w + 16;
    const char* colour = kPalette[static_cast<std::size_t>(i) % kPalette.size()];
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(x + 18) + "\" y2=\"" + fixed(y) +
           "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(x + 24) + "\" y=\"" + fixed(y + 4) + "\">" +
           escape_xml(trace.labels[static_cast<std::size_t>(i)]) + "</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

} // namespace pwr
