#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "gmreslab/report_io.hpp"

namespace gmreslab {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 70, kRight = 180, kTop = 20, kBottom = 50;

struct Series {
  const char* name;
  const char* color;
  const char* dash;
  std::optional<double> (*get)(const BoundsReport&);
};

const Series kSeries[] = {
    {"gmres_min", "#9ecae1", "", [](const BoundsReport& r) -> std::optional<double> { return r.gmres_min; }},
    {"gmres_median", "#4292c6", "", [](const BoundsReport& r) -> std::optional<double> { return r.gmres_median; }},
    {"gmres_max", "#08519c", "", [](const BoundsReport& r) -> std::optional<double> { return r.gmres_max; }},
    {"worst_case", "#e6550d", "", [](const BoundsReport& r) -> std::optional<double> { return r.worst_case; }},
    {"ideal", "#31a354", "", [](const BoundsReport& r) -> std::optional<double> { return r.ideal; }},
    {"starke_rhs", "#756bb1", "6,3", [](const BoundsReport& r) -> std::optional<double> { return r.starke_rhs; }},
    {"elman_rhs", "#636363", "2,3", [](const BoundsReport& r) { return r.elman_rhs; }},
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string curves_svg(std::span<const BoundsReport> reports) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  double kmin = lo, kmax = -lo;
  for (const auto& r : reports) {
    kmin = std::min(kmin, static_cast<double>(r.k));
    kmax = std::max(kmax, static_cast<double>(r.k));
    for (const auto& s : kSeries)
      if (auto v = s.get(r); v && *v > 0.0 && std::isfinite(*v)) {
        lo = std::min(lo, std::log10(*v));
        hi = std::max(hi, std::log10(*v));
      }
  }
  if (!std::isfinite(lo)) lo = -1.0, hi = 0.0;
  lo = std::floor(lo);
  hi = std::max(std::ceil(hi), lo + 1.0);
  if (!std::isfinite(kmin)) kmin = 0.0, kmax = 1.0;
  if (kmax == kmin) kmin -= 0.5, kmax += 0.5;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double k) { return kLeft + (k - kmin) / (kmax - kmin) * pw; };
  auto sy = [&](double e) { return kTop + (hi - e) / (hi - lo) * ph; };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                  num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double e = lo; e <= hi + 0.5; e += 1.0) {
    const double y = sy(e);
    s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(y) +
         "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">1e" +
         std::to_string(static_cast<int>(e)) + "</text>\n";
  }
  for (const auto& r : reports) {
    const double x = sx(static_cast<double>(r.k));
    s += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
         std::to_string(r.k) + "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 10) + "\" text-anchor=\"middle\">k</text>\n";
  s += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       num(kTop + ph / 2) + ")\">relative residual (log10)</text>\n";

  double ly = kTop + 10;
  for (const auto& ser : kSeries) {
    // Zero or absent values break the line.
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        s += "<polyline fill=\"none\" stroke=\"" + std::string(ser.color) + "\" stroke-width=\"1.5\"" +
             (*ser.dash ? " stroke-dasharray=\"" + std::string(ser.dash) + "\"" : "") + " points=\"" + pts +
             "\"/>\n";
      pts.clear();
    };
    for (const auto& r : reports) {
      const auto v = ser.get(r);
      if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
        flush();
        continue;
      }
      pts += (pts.empty() ? "" : " ") + num(sx(static_cast<double>(r.k))) + "," + num(sy(std::log10(*v)));
    }
    flush();
    const double lx = kLeft + pw + 12;
    s += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
         "\" stroke=\"" + ser.color + "\" stroke-width=\"1.5\"" +
         (*ser.dash ? " stroke-dasharray=\"" + std::string(ser.dash) + "\"" : "") + "/>\n";
    s += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) + "\">" + ser.name + "</text>\n";
    ly += 18;
  }
  return s + "</svg>\n";
}

}  // namespace gmreslab
