#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "ssmt/csv.hpp"
#include "ssmt/error.hpp"

namespace ssmt::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw InvalidDataError("CSV lacks column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    }
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

Table parse_csv(const std::string& csv) {
    Table t;
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw InvalidDataError("empty CSV");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split(line));
    }
    return t;
}

double num(const std::string& s) {
    if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(s);
}

std::string color_for(const std::string& proc) {
    static const std::map<std::string, std::string> colors{
        {"oracle_bh", "#1b7837"}, {"ss_bh", "#2166ac"},  {"naive_bh", "#d6604d"}, {"by", "#762a83"},
        {"split_bh", "#8c510a"},  {"blackbox_bh", "#01665e"}, {"randomized_bh", "#c51b7d"}, {"locfdr", "#4d4d4d"},
        {"lower bound", "#000000"}};
    const auto it = colors.find(proc);
    return it == colors.end() ? "#999999" : it->second;
}

struct Axis {
    double lo, hi;
    bool log;

    double map(double v, double a, double b) const {
        const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo)) : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }
};

class Canvas {
public:
    Canvas(std::string title, Axis x, Axis y, std::string xlabel, std::string ylabel)
        : x_(x), y_(y) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
             << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out_ << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
             << "</text>\n";
        out_ << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
             << "\" height=\"" << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
        ticks();
        out_ << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 10
             << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
        out_ << "<text x=\"15\" y=\"" << (kTop + kHeight - kBottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15,"
             << (kTop + kHeight - kBottom) / 2 << ")\">" << ylabel << "</text>\n";
    }

    double px(double v) const { return x_.map(v, kLeft, kWidth - kRight); }
    double py(double v) const { return y_.map(v, kHeight - kBottom, kTop); }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, bool dashed = false) {
        if (pts.empty()) return;
        out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
             << (dashed ? " stroke-dasharray=\"5,4\"" : "") << " points=\"";
        for (const auto& [x, y] : pts) out_ << format_double(px(x)) << ',' << format_double(py(y)) << ' ';
        out_ << "\"/>\n";
    }

    void band(const std::vector<std::pair<double, double>>& upper, const std::vector<std::pair<double, double>>& lower,
              const std::string& color) {
        if (upper.empty()) return;
        out_ << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
        for (const auto& [x, y] : upper) out_ << format_double(px(x)) << ',' << format_double(py(y)) << ' ';
        for (auto it = lower.rbegin(); it != lower.rend(); ++it) {
            out_ << format_double(px(it->first)) << ',' << format_double(py(it->second)) << ' ';
        }
        out_ << "\"/>\n";
    }

    void star(double x, double y, const std::string& label) {
        out_ << "<text x=\"" << format_double(px(x)) << "\" y=\"" << format_double(py(y) + 5)
             << "\" text-anchor=\"middle\" font-size=\"18\" fill=\"#b2182b\">*</text>\n";
        out_ << "<text x=\"" << format_double(px(x) + 8) << "\" y=\"" << format_double(py(y) - 6)
             << "\" font-size=\"10\">" << label << "</text>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
        double y = kTop + 10;
        for (const auto& [name, color] : entries) {
            const double x = kWidth - kRight + 10;
            out_ << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 20 << "\" y2=\"" << y << "\" stroke=\""
                 << color << "\" stroke-width=\"2\"/>\n";
            out_ << "<text x=\"" << x + 25 << "\" y=\"" << y + 4 << "\">" << name << "</text>\n";
            y += 18;
        }
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    void ticks() {
        for (const auto& [axis, horizontal] : {std::pair{x_, true}, std::pair{y_, false}}) {
            std::vector<double> marks;
            if (axis.log) {
                for (double p = std::floor(std::log10(axis.lo)); p <= std::ceil(std::log10(axis.hi)); p += 1.0) {
                    const double v = std::pow(10.0, p);
                    if (v >= axis.lo * (1 - 1e-9) && v <= axis.hi * (1 + 1e-9)) marks.push_back(v);
                }
            } else {
                for (int i = 0; i <= 5; ++i) marks.push_back(axis.lo + (axis.hi - axis.lo) * i / 5.0);
            }
            for (const double v : marks) {
                std::ostringstream label;
                label.precision(3);
                label << v;
                if (horizontal) {
                    out_ << "<text x=\"" << format_double(px(v)) << "\" y=\"" << kHeight - kBottom + 16
                         << "\" text-anchor=\"middle\">" << label.str() << "</text>\n";
                } else {
                    out_ << "<text x=\"" << kLeft - 6 << "\" y=\"" << format_double(py(v) + 4)
                         << "\" text-anchor=\"end\">" << label.str() << "</text>\n";
                }
            }
        }
    }

    Axis x_, y_;
    std::ostringstream out_;
};

using Series = std::vector<std::pair<double, double>>;

}  // namespace

std::string panel_chart_svg(const std::string& csv, const std::string& metric) {
    if (metric != "fdr" && metric != "tdr") throw ParameterError("metric must be fdr or tdr");
    const Table t = parse_csv(csv);
    const auto c_panel = t.column("panel"), c_n = t.column("n"), c_proc = t.column("procedure"),
               c_alpha = t.column("alpha"), c_lower = t.column("fdr_lower");
    const auto c_val = t.column(metric + "_hat");
    const auto c_sd = t.column(metric == "fdr" ? "sd_fdp" : "sd_tdp");

    std::vector<std::string> order;
    std::map<std::string, Series> mean, hi, lo;
    Series lower;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, alpha = 0.0;
    std::string title;
    for (const auto& row : t.rows) {
        const double n = num(row[c_n]);
        const double v = num(row[c_val]);
        const double sd = num(row[c_sd]);
        const std::string& proc = row[c_proc];
        title = row[c_panel];
        alpha = num(row[c_alpha]);
        xmin = std::min(xmin, n);
        xmax = std::max(xmax, n);
        if (std::find(order.begin(), order.end(), proc) == order.end()) order.push_back(proc);
        if (std::isnan(v)) continue;
        mean[proc].emplace_back(n, v);
        hi[proc].emplace_back(n, std::min(1.0, v + sd / 10.0));
        lo[proc].emplace_back(n, std::max(0.0, v - sd / 10.0));
        if (proc == order.front()) {
            const double lb = num(row[c_lower]);
            if (!std::isnan(lb)) lower.emplace_back(n, lb);
        }
    }
    if (order.empty()) throw InvalidDataError("panel CSV has no rows");
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    const bool logx = xmin >= 1.0 && xmax / xmin >= 1000.0;

    double ymax = metric == "fdr" ? alpha : 0.0;
    for (const auto& [_, s] : hi) for (const auto& p : s) ymax = std::max(ymax, p.second);
    ymax = std::min(1.0, std::max(0.1, std::ceil(ymax * 11.0) / 10.0));

    Canvas canvas(title + " " + (metric == "fdr" ? "FDR" : "TDR"), Axis{xmin, xmax, logx}, Axis{0.0, ymax, false}, "n",
                  metric == "fdr" ? "FDR" : "TDR");
    for (const auto& proc : order) canvas.band(hi[proc], lo[proc], color_for(proc));
    for (const auto& proc : order) canvas.polyline(mean[proc], color_for(proc));
    std::vector<std::pair<std::string, std::string>> legend;
    for (const auto& proc : order) legend.emplace_back(proc, color_for(proc));
    if (metric == "fdr") {
        canvas.polyline(Series{{xmin, alpha}, {xmax, alpha}}, "#666666", true);
        if (!lower.empty()) {
            canvas.polyline(lower, color_for("lower bound"), true);
            legend.emplace_back("lower bound", color_for("lower bound"));
        }
    }
    canvas.legend(legend);
    return canvas.finish();
}

std::string phase_chart_svg(const std::string& csv) {
    const Table t = parse_csv(csv);
    const auto c_n = t.column("n"), c_m = t.column("m"), c_alpha = t.column("alpha"), c_k = t.column("k"),
               c_rule = t.column("rule_of_thumb_n"), c_region = t.column("region");
    Series boundary, general, one_over_alpha;
    std::vector<std::pair<std::pair<double, double>, std::string>> stars;
    double mmin = std::numeric_limits<double>::infinity(), mmax = 0.0, alpha = 0.0;
    std::string k;
    for (const auto& row : t.rows) {
        const double n = num(row[c_n]), m = num(row[c_m]), rule = num(row[c_rule]);
        alpha = num(row[c_alpha]);
        k = row[c_k];
        if (std::fabs(n - rule) <= 1e-9 * rule) {
            boundary.emplace_back(m, n);
            mmin = std::min(mmin, m);
            mmax = std::max(mmax, m);
        } else {
            stars.push_back({{m, n}, row[c_region]});
        }
    }
    if (boundary.empty()) throw InvalidDataError("phase CSV has no boundary rows");
    for (const auto& [m, _] : boundary) {
        general.emplace_back(m, m / alpha);
        one_over_alpha.emplace_back(m, 1.0 / alpha);
    }
    double nmin = 1.0 / alpha, nmax = mmax / alpha;
    for (const auto& [m, n] : boundary) nmin = std::min(nmin, n);
    for (const auto& s : stars) nmax = std::max(nmax, s.first.second);
    nmin = std::pow(10.0, std::floor(std::log10(nmin)));
    nmax = std::pow(10.0, std::ceil(std::log10(nmax)));

    Canvas canvas("phase diagram, alpha = " + format_double(alpha) + ", k = " + k, Axis{mmin, mmax, true},
                  Axis{nmin, nmax, true}, "m", "n");
    canvas.polyline(general, "#1b7837");
    canvas.polyline(boundary, "#2166ac");
    canvas.polyline(one_over_alpha, "#000000", true);
    for (const auto& [pt, region] : stars) canvas.star(pt.first, pt.second, region);
    canvas.legend({{"n = m/alpha", "#1b7837"}, {"n = m/(alpha k)", "#2166ac"}, {"n = 1/alpha", "#000000"}});
    return canvas.finish();
}

}  // namespace ssmt::cli
