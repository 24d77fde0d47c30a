#include "asmbench/io/svg.hpp"

#include "asmbench/core/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace asmbench::io {

std::string_view to_string(ChartKind kind) {
    switch (kind) {
        case ChartKind::timeseries: return "timeseries";
        case ChartKind::ecdf: return "ecdf";
        case ChartKind::morris_scatter: return "morris_scatter";
        case ChartKind::heatmap: return "heatmap";
    }
    return "";
}

ChartKind parse_chart_kind(std::string_view name) {
    for (auto k : {ChartKind::timeseries, ChartKind::ecdf, ChartKind::morris_scatter, ChartKind::heatmap})
        if (to_string(k) == name) return k;
    throw ConfigError("unknown chart kind '" + std::string(name) + "'");
}

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 55.0;
constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

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

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    Range padded() const {
        Range r = *this;
        if (!std::isfinite(r.lo)) return {0.0, 1.0};
        if (r.hi == r.lo) {
            const double d = r.lo == 0.0 ? 1.0 : 0.05 * std::abs(r.lo);
            return {r.lo - d, r.hi + d};
        }
        return r;
    }
};

class Canvas {
public:
    Canvas(Range x, Range y) : x_(x.padded()), y_(y.padded()) {}

    double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
    double py(double y) const { return kHeight - kBottom - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }
    const Range& x() const { return x_; }
    const Range& y() const { return y_; }

    void frame(const ChartSpec& spec) {
        os_ << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
            << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"#000\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double xv = x_.lo + (x_.hi - x_.lo) * i / 4.0;
            const double yv = y_.lo + (y_.hi - y_.lo) * i / 4.0;
            text(px(xv), kHeight - kBottom + 16.0, tick(xv), "middle");
            text(kLeft - 6.0, py(yv) + 4.0, tick(yv), "end");
        }
        if (!spec.x_label.empty()) text(kLeft + (kWidth - kLeft - kRight) / 2.0, kHeight - 12.0, spec.x_label, "middle");
        if (!spec.y_label.empty()) {
            os_ << "<text x=\"16.000\" y=\"" << num(kTop + (kHeight - kTop - kBottom) / 2.0)
                << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16.000 "
                << num(kTop + (kHeight - kTop - kBottom) / 2.0) << ")\">" << escape(spec.y_label) << "</text>\n";
        }
        if (!spec.title.empty()) text(kWidth / 2.0, 22.0, spec.title, "middle");
    }

    void text(double x, double y, const std::string& s, const char* anchor) {
        os_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"12\" text-anchor=\"" << anchor << "\">"
            << escape(s) << "</text>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* color, const char* extra = "") {
        if (pts.empty()) return;
        os_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << extra << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) os_ << (i ? " " : "") << num(px(pts[i].first)) << ',' << num(py(pts[i].second));
        os_ << "\"/>\n";
    }

    void line(double x0, double y0, double x1, double y1, const char* color, const char* extra = "") {
        os_ << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(y0)) << "\" x2=\"" << num(px(x1)) << "\" y2=\""
            << num(py(y1)) << "\" stroke=\"" << color << "\" stroke-width=\"1\"" << extra << "/>\n";
    }

    void circle(double x, double y, const char* color) {
        os_ << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }

    void rect(double x0, double y0, double x1, double y1, const std::string& fill) {
        const double a = px(std::min(x0, x1)), b = py(std::max(y0, y1));
        os_ << "<rect x=\"" << num(a) << "\" y=\"" << num(b) << "\" width=\"" << num(std::abs(px(x1) - px(x0)))
            << "\" height=\"" << num(std::abs(py(y1) - py(y0))) << "\" fill=\"" << fill << "\"/>\n";
    }

    void raw(const std::string& s) { os_ << s; }

    std::string finish() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
            << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n"
            << os_.str() << "</svg>\n";
        return out.str();
    }

private:
    Range x_, y_;
    std::ostringstream os_;
};

std::vector<std::string> required_columns(const ChartSpec& spec, const CsvTable& table) {
    switch (spec.kind) {
        case ChartKind::timeseries: {
            std::vector<std::string> need{spec.x_column.empty() ? (table.header.empty() ? "t_d" : table.header.front())
                                                                : spec.x_column};
            need.insert(need.end(), spec.columns.begin(), spec.columns.end());
            return need;
        }
        case ChartKind::ecdf:
            if (spec.columns.size() != 1) throw ConfigError("ecdf chart needs exactly one column");
            return spec.columns;
        case ChartKind::morris_scatter: return {"parameter", "metric", "mu_star_norm", "sigma_norm"};
        case ChartKind::heatmap:
            if (spec.columns.size() != 3) throw ConfigError("heatmap chart needs x, y, and value columns");
            return spec.columns;
    }
    return {};
}

std::string render_timeseries(const ChartSpec& spec, const CsvTable& t) {
    const auto xc = spec.x_column.empty() ? std::size_t{0} : t.column(spec.x_column);
    std::vector<std::size_t> ys;
    if (spec.columns.empty()) {
        for (std::size_t j = 0; j < t.header.size(); ++j)
            if (j != xc) ys.push_back(j);
    } else {
        for (const auto& c : spec.columns) ys.push_back(t.column(c));
    }
    const auto x = t.numeric(xc);
    Range rx, ry;
    for (double v : x) rx.add(v);
    std::vector<std::vector<double>> cols;
    for (auto j : ys) {
        cols.push_back(t.numeric(j));
        for (double v : cols.back()) ry.add(v);
    }
    Canvas c(rx, ry);
    c.frame(spec);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::isfinite(x[i]) && std::isfinite(cols[k][i])) pts.emplace_back(x[i], cols[k][i]);
        c.polyline(pts, kPalette[k % kPalette.size()]);
    }
    return c.finish();
}

std::string render_ecdf(const ChartSpec& spec, const CsvTable& t) {
    std::vector<double> v;
    for (double x : t.numeric(spec.columns.front()))
        if (std::isfinite(x)) v.push_back(x);
    if (v.empty()) throw ConfigError("ecdf: column '" + spec.columns.front() + "' has no finite values");
    std::sort(v.begin(), v.end());
    Range rx;
    rx.add(v.front());
    rx.add(v.back());
    if (spec.threshold) rx.add(*spec.threshold);
    Canvas c(rx, Range{0.0, 1.0});
    c.frame(spec);
    const double n = static_cast<double>(v.size());
    std::vector<std::pair<double, double>> pts{{c.x().lo, 0.0}};
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        pts.emplace_back(v[i], static_cast<double>(i) / n);
        pts.emplace_back(v[i], static_cast<double>(j) / n);
        i = j;
    }
    pts.emplace_back(c.x().hi, 1.0);
    c.polyline(pts, kPalette[0]);
    if (spec.threshold) c.line(*spec.threshold, 0.0, *spec.threshold, 1.0, "#d62728", " stroke-dasharray=\"4 3\"");
    return c.finish();
}

std::string render_morris(const ChartSpec& spec, const CsvTable& t) {
    const auto pc = t.column("parameter"), mc = t.column("metric");
    const auto mu = t.numeric("mu_star_norm"), sg = t.numeric("sigma_norm");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (spec.metric.empty() || t.rows[i][mc] == spec.metric) rows.push_back(i);
    if (rows.empty()) throw ConfigError("morris_scatter: no rows for metric '" + spec.metric + "'");
    Range rx{0.0, 1.0}, ry{0.0, 1.0};
    for (auto i : rows) {
        rx.add(mu[i]);
        ry.add(sg[i]);
    }
    Canvas c(rx, ry);
    c.frame(spec);
    // guide lines sigma = mu* and sigma = 0.1 mu*, drawn in data coordinates
    const double top = c.x().hi;
    c.raw("<g class=\"guide\" data-slope=\"1\">\n");
    c.line(0.0, 0.0, std::min(top, c.y().hi), std::min(top, c.y().hi), "#555");
    c.raw("</g>\n<g class=\"guide\" data-slope=\"0.1\">\n");
    c.line(0.0, 0.0, top, 0.1 * top, "#555", " stroke-dasharray=\"5 4\"");
    c.raw("</g>\n");
    std::map<std::string, std::size_t> metric_color;
    for (auto i : rows) {
        const auto& m = t.rows[i][mc];
        const auto it = metric_color.emplace(m, metric_color.size()).first;
        if (!std::isfinite(mu[i]) || !std::isfinite(sg[i])) continue;
        c.circle(mu[i], sg[i], kPalette[it->second % kPalette.size()]);
        c.raw("<title>" + escape(t.rows[i][pc] + " / " + m) + "</title>\n");
    }
    return c.finish();
}

std::string colormap(double f) {
    if (!std::isfinite(f)) return "#cccccc";
    f = std::clamp(f, 0.0, 1.0);
    // white to dark blue
    const int r = static_cast<int>(std::lround(247 - f * (247 - 8)));
    const int g = static_cast<int>(std::lround(251 - f * (251 - 48)));
    const int b = static_cast<int>(std::lround(255 - f * (255 - 107)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string render_heatmap(const ChartSpec& spec, const CsvTable& t) {
    const auto x = t.numeric(spec.columns[0]), y = t.numeric(spec.columns[1]), z = t.numeric(spec.columns[2]);
    std::vector<double> xs(x), ys(y);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto edges = [](const std::vector<double>& c) {
        std::vector<double> e(c.size() + 1);
        if (c.size() == 1) return std::vector<double>{c[0] - 0.5, c[0] + 0.5};
        for (std::size_t i = 1; i < c.size(); ++i) e[i] = 0.5 * (c[i - 1] + c[i]);
        e.front() = c.front() - (e[1] - c.front());
        e.back() = c.back() + (c.back() - e[c.size() - 1]);
        return e;
    };
    const auto ex = edges(xs), ey = edges(ys);
    Range rz;
    for (double v : z) rz.add(v);
    const Range pz = rz.padded();
    Canvas c(Range{ex.front(), ex.back()}, Range{ey.front(), ey.back()});
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto ix = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x[i]) - xs.begin());
        const auto iy = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y[i]) - ys.begin());
        c.rect(ex[ix], ey[iy], ex[ix + 1], ey[iy + 1], colormap((z[i] - pz.lo) / (pz.hi - pz.lo)));
    }
    c.frame(spec);
    c.text(kWidth - kRight, 22.0, spec.columns[2] + ": " + tick(rz.lo) + " to " + tick(rz.hi), "end");
    return c.finish();
}

}  // namespace

void check_columns(const ChartSpec& spec, const CsvTable& table) {
    const auto miss = table.missing(required_columns(spec, table));
    if (miss.empty()) return;
    std::string msg = std::string(to_string(spec.kind)) + " chart: missing columns:";
    for (const auto& m : miss) msg += " " + m;
    throw ConfigError(msg);
}

std::string render_chart(const ChartSpec& spec, const CsvTable& table) {
    check_columns(spec, table);
    switch (spec.kind) {
        case ChartKind::timeseries: return render_timeseries(spec, table);
        case ChartKind::ecdf: return render_ecdf(spec, table);
        case ChartKind::morris_scatter: return render_morris(spec, table);
        case ChartKind::heatmap: return render_heatmap(spec, table);
    }
    throw ConfigError("unsupported chart kind");
}

void write_chart(const ChartSpec& spec) { write_text(spec.output, render_chart(spec, read_csv(spec.input))); }

}  // namespace asmbench::io
