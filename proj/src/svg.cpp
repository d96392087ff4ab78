#include "qent/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qent::svg {

namespace {

std::string escape(const std::string& s)
{
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

std::string num(double v, int prec = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

struct Axis {
    double lo, hi;
    bool log;
    double map(double v) const
    {
        const double a = log ? std::log10(v) : v;
        return (a - lo) / (hi - lo);
    }
};

Axis make_axis(double lo, double hi, bool log)
{
    if (log) {
        lo = std::log10(lo);
        hi = std::log10(hi);
    }
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    return {lo, hi, log};
}

std::vector<double> ticks(const Axis& ax)
{
    std::vector<double> t;
    if (ax.log) {
        for (int e = static_cast<int>(std::floor(ax.lo)); e <= static_cast<int>(std::ceil(ax.hi)); ++e) {
            if (e >= ax.lo - 1e-9 && e <= ax.hi + 1e-9) t.push_back(std::pow(10.0, e));
        }
        return t;
    }
    const double span = ax.hi - ax.lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    for (double v = std::ceil(ax.lo / step) * step; v <= ax.hi + 1e-12 * span; v += step) t.push_back(v);
    return t;
}

}  // namespace

LineChart::LineChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label))
{
}

LineChart& LineChart::log_x(bool on)
{
    log_x_ = on;
    return *this;
}

LineChart& LineChart::log_y(bool on)
{
    log_y_ = on;
    return *this;
}

LineChart& LineChart::add(Series s)
{
    series_.push_back(std::move(s));
    return *this;
}

LineChart& LineChart::add(HorizontalLine h)
{
    hlines_.push_back(std::move(h));
    return *this;
}

std::string LineChart::render(int width, int height) const
{
    const double inf = std::numeric_limits<double>::infinity();
    double xlo = inf, xhi = -inf, ylo = inf, yhi = -inf;
    auto usable_x = [&](double v) { return std::isfinite(v) && (!log_x_ || v > 0.0); };
    auto usable_y = [&](double v) { return std::isfinite(v) && (!log_y_ || v > 0.0); };
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable_x(s.x[i]) || !usable_y(s.y[i])) continue;
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    for (const auto& h : hlines_) {
        if (!usable_y(h.y)) continue;
        ylo = std::min(ylo, h.y);
        yhi = std::max(yhi, h.y);
    }
    if (!(xlo <= xhi)) xlo = log_x_ ? 1.0 : 0.0, xhi = log_x_ ? 10.0 : 1.0;
    if (!(ylo <= yhi)) ylo = log_y_ ? 1.0 : 0.0, yhi = log_y_ ? 10.0 : 1.0;
    const Axis ax = make_axis(xlo, xhi, log_x_);
    const Axis ay = make_axis(ylo, yhi, log_y_);

    const double ml = 80, mr = 170, mt = 40, mb = 60;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double v) { return ml + ax.map(v) * pw; };
    auto py = [&](double v) { return mt + (1.0 - ay.map(v)) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title_)
      << "</text>\n";
    o << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(ax)) {
        const double x = px(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << mt + ph << "\" x2=\"" << num(x) << "\" y2=\"" << mt + ph + 5
          << "\" stroke=\"black\"/><text x=\"" << num(x) << "\" y=\"" << mt + ph + 18
          << "\" text-anchor=\"middle\">" << num(t, 4) << "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = py(t);
        o << "<line x1=\"" << ml - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << ml << "\" y2=\"" << num(y)
          << "\" stroke=\"black\"/><text x=\"" << ml - 8 << "\" y=\"" << num(y + 4)
          << "\" text-anchor=\"end\">" << num(t, 4) << "</text>\n";
    }
    o << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">" << escape(x_label_)
      << "</text>\n";
    o << "<text x=\"18\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
      << ")\">" << escape(y_label_) << "</text>\n";

    o << "<clipPath id=\"plot\"><rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\"/></clipPath>\n";
    int legend = 0;
    auto legend_entry = [&](const std::string& name, const std::string& color, bool dashed) {
        const double y = mt + 14 + 18 * legend++;
        o << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << y << "\" x2=\"" << ml + pw + 30 << "\" y2=\"" << y
          << "\" stroke=\"" << color << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"5,3\"" : "")
          << "/><text x=\"" << ml + pw + 35 << "\" y=\"" << y + 4 << "\">" << escape(name) << "</text>\n";
    };
    for (const auto& h : hlines_) {
        if (!usable_y(h.y)) continue;
        const double y = py(h.y);
        o << "<line class=\"hline\" data-name=\"" << escape(h.name) << "\" data-y=\"" << num(h.y, 17) << "\" x1=\""
          << ml << "\" y1=\"" << num(y) << "\" x2=\"" << ml + pw << "\" y2=\"" << num(y) << "\" stroke=\"" << h.color
          << "\" stroke-dasharray=\"6,4\"/>\n";
        legend_entry(h.name, h.color, true);
    }
    for (const auto& s : series_) {
        int count = 0;
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable_x(s.x[i]) || !usable_y(s.y[i])) continue;
            pts << (count ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
            ++count;
        }
        o << "<polyline class=\"series\" data-name=\"" << escape(s.name) << "\" data-count=\"" << count
          << "\" clip-path=\"url(#plot)\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"" << pts.str() << "\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!usable_x(s.x[i]) || !usable_y(s.y[i])) continue;
                o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"3\" fill=\""
                  << s.color << "\"/>\n";
            }
        }
        legend_entry(s.name, s.color, s.dashed);
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace qent::svg
