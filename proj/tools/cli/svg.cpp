#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "format.hpp"

namespace sbcli {
namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string escape(const std::string& s) {
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

std::string px(double v) { return format_number(std::round(v * 100.0) / 100.0, 7); }

// 1, 2 or 5 times a power of ten, giving about `target` intervals.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double m = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
    return m * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void settle() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

}  // namespace

std::string render_svg(const Plot& plot) {
    Range xr;
    Range yr;
    for (const auto& s : plot.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    if (plot.zero_line) yr.add(0.0);
    xr.settle();
    yr.settle();
    const double xstep = nice_step(xr.hi - xr.lo, 8);
    const double ystep = nice_step(yr.hi - yr.lo, 6);
    const double x0 = std::floor(xr.lo / xstep) * xstep;
    const double x1 = std::ceil(xr.hi / xstep) * xstep;
    const double y0 = std::floor(yr.lo / ystep) * ystep;
    const double y1 = std::ceil(yr.hi / ystep) * ystep;

    const double w = plot.width;
    const double h = plot.height;
    const double pw = w - kLeft - kRight;
    const double ph = h - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!plot.title.empty()) {
        o << "<text x=\"" << px(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(plot.title)
          << "</text>\n";
    }

    o << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double t = x0; t <= x1 + 0.5 * xstep; t += xstep) {
        o << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(sx(t)) << "\" y2=\""
          << px(kTop + ph) << "\"/>\n";
    }
    for (double t = y0; t <= y1 + 0.5 * ystep; t += ystep) {
        o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\""
          << px(sy(t)) << "\"/>\n";
    }
    o << "</g>\n";
    if (plot.zero_line && y0 < 0.0 && y1 > 0.0) {
        o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(0)) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\""
          << px(sy(0)) << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    }
    o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(pw) << "\" height=\"" << px(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    o << "<g text-anchor=\"middle\">\n";
    for (double t = x0; t <= x1 + 0.5 * xstep; t += xstep) {
        const double v = std::abs(t) < 1e-9 * xstep ? 0.0 : t;
        o << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(kTop + ph + 16) << "\">" << format_number(v, 6)
          << "</text>\n";
    }
    o << "</g>\n<g text-anchor=\"end\">\n";
    for (double t = y0; t <= y1 + 0.5 * ystep; t += ystep) {
        const double v = std::abs(t) < 1e-9 * ystep ? 0.0 : t;
        o << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(sy(t) + 4) << "\">" << format_number(v, 6)
          << "</text>\n";
    }
    o << "</g>\n";
    if (!plot.x_label.empty()) {
        o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(h - 12) << "\" text-anchor=\"middle\">"
          << escape(plot.x_label) << "</text>\n";
    }
    if (!plot.y_label.empty()) {
        o << "<text x=\"16\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
          << px(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";
    }

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        const std::string color = s.color.empty() ? kPalette[i % kPalette.size()] : s.color;
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.style != SeriesStyle::Markers && n > 1) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t k = 0; k < n; ++k) {
                if (k > 0) o << ' ';
                o << px(sx(s.x[k])) << ',' << px(sy(s.y[k]));
            }
            o << "\"/>\n";
        }
        if (s.style != SeriesStyle::Line || n == 1) {
            o << "<g fill=\"" << color << "\">\n";
            for (std::size_t k = 0; k < n; ++k) {
                if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
                o << "<circle cx=\"" << px(sx(s.x[k])) << "\" cy=\"" << px(sy(s.y[k])) << "\" r=\"3\"/>\n";
            }
            o << "</g>\n";
        }
        const double ly = kTop + 14 + 16.0 * static_cast<double>(i);
        const double lx = kLeft + 12;
        o << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(lx + 18) << "\" y2=\""
          << px(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << px(lx + 24) << "\" y=\"" << px(ly) << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace sbcli
