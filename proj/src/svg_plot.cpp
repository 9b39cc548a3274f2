#include "maoa/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "maoa/error.hpp"

namespace maoa {

namespace {

constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
constexpr const char* kDashes[] = {"", "6,4", "2,3", "8,3,2,3"};

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

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Axis
{
    double lo;
    double hi;
    bool log;

    double map(double v, double a, double b) const
    {
        const double f = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                             : (v - lo) / (hi - lo);
        return a + f * (b - a);
    }

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }

    std::vector<double> ticks() const
    {
        std::vector<double> out;
        if (log) {
            for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
                const double v = std::pow(10.0, e);
                if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12))
                    out.push_back(v);
            }
            return out;
        }
        const double raw = (hi - lo) / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0})
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
            out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
        return out;
    }
};

Axis fit(const std::vector<double>& values, bool log)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values)
        if (std::isfinite(v) && (!log || v > 0.0)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(lo <= hi))
        throw ValidationError("no plottable values");
    if (lo == hi) {
        if (log) {
            lo /= 10.0;
            hi *= 10.0;
        } else {
            lo -= 0.5;
            hi += 0.5;
        }
    }
    return {lo, hi, log};
}

}  // namespace

std::string plot_svg(const CsvTable& table, const PlotOptions& opts)
{
    if (table.rows.empty())
        throw ValidationError("CSV has no data rows");
    const int xc = opts.x_column.empty() ? 0 : table.column(opts.x_column);
    if (xc < 0)
        throw ValidationError("unknown x column '" + opts.x_column + "'");

    std::vector<int> ys;
    if (opts.y_columns.empty()) {
        for (int c = 0; c < static_cast<int>(table.header.size()); ++c) {
            if (c == xc)
                continue;
            const bool any = std::any_of(table.rows.begin(), table.rows.end(), [&](const auto& row) {
                return std::isfinite(row[static_cast<std::size_t>(c)]);
            });
            if (any)
                ys.push_back(c);
        }
    } else {
        for (const auto& name : opts.y_columns) {
            const int c = table.column(name);
            if (c < 0)
                throw ValidationError("unknown y column '" + name + "'");
            ys.push_back(c);
        }
    }
    if (ys.empty())
        throw ValidationError("no y columns to plot");

    std::vector<double> xs, yv;
    for (const auto& row : table.rows) {
        xs.push_back(row[static_cast<std::size_t>(xc)]);
        for (int c : ys)
            yv.push_back(row[static_cast<std::size_t>(c)]);
    }
    const Axis ax = fit(xs, opts.log_x);
    const Axis ay = fit(yv, opts.log_y);

    const double left = 70, right = opts.width - 150.0, top = 40, bottom = opts.height - 50.0;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        svg << "<text x=\"" << opts.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
            << escape(opts.title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ax.ticks()) {
        const double px = ax.map(t, left, right);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << bottom << "\" x2=\"" << num(px)
            << "\" y2=\"" << top << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << num(px) << "\" y=\"" << bottom + 16
            << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double py = ay.map(t, bottom, top);
        svg << "<line x1=\"" << left << "\" y1=\"" << num(py) << "\" x2=\"" << right << "\" y2=\""
            << num(py) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
            << num(t) << "</text>\n";
    }
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << opts.height - 12
        << "\" text-anchor=\"middle\">" << escape(table.header[static_cast<std::size_t>(xc)])
        << "</text>\n";

    for (std::size_t s = 0; s < ys.size(); ++s) {
        const char* colour = kColours[s % std::size(kColours)];
        const char* dash = kDashes[s % std::size(kDashes)];
        std::ostringstream pts;
        for (const auto& row : table.rows) {
            const double x = row[static_cast<std::size_t>(xc)];
            const double y = row[static_cast<std::size_t>(ys[s])];
            if (ax.usable(x) && ay.usable(y))
                pts << num(ax.map(x, left, right)) << ',' << num(ay.map(y, bottom, top)) << ' ';
        }
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (*dash)
            svg << " stroke-dasharray=\"" << dash << "\"";
        svg << " points=\"" << pts.str() << "\"/>\n";
        const double ly = top + 14.0 + 18.0 * static_cast<double>(s);
        svg << "<line x1=\"" << right + 10 << "\" y1=\"" << ly << "\" x2=\"" << right + 34
            << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (*dash)
            svg << " stroke-dasharray=\"" << dash << "\"";
        svg << "/>\n<text x=\"" << right + 40 << "\" y=\"" << ly + 4 << "\">"
            << escape(table.header[static_cast<std::size_t>(ys[s])]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace maoa
