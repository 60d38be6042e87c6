#include "polyurn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "polyurn/errors.hpp"

namespace polyurn {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string flow_csv(const std::vector<FlowSample>& trajectory) {
    std::ostringstream out;
    if (trajectory.empty()) return "";
    const int m = trajectory.front().point.dim();
    out << "t";
    for (int i = 0; i < m; ++i) out << ",v" << i;
    out << ",L\n";
    for (const auto& s : trajectory) {
        out << format_double(s.t);
        for (int i = 0; i < m; ++i) out << ',' << format_double(s.point[i]);
        out << ',' << format_double(s.lyapunov_value) << '\n';
    }
    return out.str();
}

std::string replica_csv(const std::vector<ReplicaResult>& results) {
    std::ostringstream out;
    if (results.empty()) return "";
    size_t m = results.front().terminal.size();
    out << "replica,n";
    for (size_t i = 0; i < m; ++i) out << ",x" << i;
    out << '\n';
    for (const auto& result : results) {
        for (const auto& sample : result.samples) {
            out << result.replica << ',' << sample.n;
            for (double c : sample.x) out << ',' << format_double(c);
            out << '\n';
        }
    }
    return out.str();
}

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#8c6d31"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1/2/5 ladder ticks covering [lo, hi]
std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
    if (!(hi > lo)) return {lo};
    double span = hi - lo;
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * mult >= raw) {
            step = mag * mult;
            break;
        }
    }
    std::vector<double> ticks;
    double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 1e-9 * span; t += step) ticks.push_back(t);
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    int start = static_cast<int>(std::floor(std::log10(std::max(lo, 1e-300))));
    int stop = static_cast<int>(std::ceil(std::log10(std::max(hi, 1e-300))));
    for (int p = start; p <= stop; ++p) {
        double t = std::pow(10.0, p);
        if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) ticks.push_back(t);
    }
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

}  // namespace

std::string line_chart_svg(const std::vector<Series>& series, const ChartOptions& options) {
    if (series.empty()) {
        throw error(errc::invalid_argument, "chart needs at least one series");
    }
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            double xv = s.x[i];
            if (options.log_x && !(xv > 0)) continue;
            x_min = std::min(x_min, xv);
            x_max = std::max(x_max, xv);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (!std::isfinite(x_min) || !std::isfinite(y_min)) {
        throw error(errc::invalid_argument, "chart series contain no plottable points");
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) {
        y_max += 0.5;
        y_min -= 0.5;
    } else {
        double pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;
    }

    const double left = 70, right = 150, top = 40, bottom = 55;
    const double pw = options.width - left - right;
    const double ph = options.height - top - bottom;

    auto tx = [&](double x) {
        double u = options.log_x ? (std::log10(x) - std::log10(x_min)) /
                                       (std::log10(x_max) - std::log10(x_min))
                                 : (x - x_min) / (x_max - x_min);
        return left + u * pw;
    };
    auto ty = [&](double y) { return top + (1.0 - (y - y_min) / (y_max - y_min)) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << " " << options.height
        << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (!options.title.empty()) {
        svg << "  <text x=\"" << fmt(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\" font-weight=\"bold\">" << options.title
            << "</text>\n";
    }

    // frame and ticks
    svg << "  <rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw)
        << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#000\"/>\n";
    svg << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    auto xticks = options.log_x ? log_ticks(x_min, x_max) : linear_ticks(x_min, x_max);
    for (double t : xticks) {
        double px = tx(t);
        svg << "    <line x1=\"" << fmt(px) << "\" y1=\"" << fmt(top + ph) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(top + ph + 5) << "\" stroke=\"#000\"/>\n";
        svg << "    <text x=\"" << fmt(px) << "\" y=\"" << fmt(top + ph + 18)
            << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    for (double t : linear_ticks(y_min, y_max)) {
        double py = ty(t);
        svg << "    <line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(py) << "\" x2=\""
            << fmt(left) << "\" y2=\"" << fmt(py) << "\" stroke=\"#000\"/>\n";
        svg << "    <text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    if (!options.x_label.empty()) {
        svg << "    <text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(top + ph + 40)
            << "\" text-anchor=\"middle\" font-size=\"13\">" << options.x_label << "</text>\n";
    }
    if (!options.y_label.empty()) {
        svg << "    <text x=\"18\" y=\"" << fmt(top + ph / 2)
            << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90,18,"
            << fmt(top + ph / 2) << ")\">" << options.y_label << "</text>\n";
    }
    svg << "  </g>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.2\" points=\"";
        bool first = true;
        for (size_t i = 0; i < series[s].x.size(); ++i) {
            double xv = series[s].x[i];
            if (options.log_x && !(xv > 0)) continue;
            if (!first) svg << ' ';
            svg << fmt(tx(xv)) << ',' << fmt(ty(series[s].y[i]));
            first = false;
        }
        svg << "\"/>\n";
    }

    // legend in the right margin
    svg << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        double ly = top + 12 + 16 * static_cast<double>(s);
        if (ly > top + ph) break;
        svg << "    <line x1=\"" << fmt(left + pw + 10) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(left + pw + 28) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "    <text x=\"" << fmt(left + pw + 33) << "\" y=\"" << fmt(ly + 4) << "\">"
            << series[s].label << "</text>\n";
    }
    svg << "  </g>\n</svg>\n";
    return svg.str();
}

std::string limit_statistics_markdown(const LimitStatistics& stats) {
    std::ostringstream out;
    out << "| replica | terminal distance to limit set | max edge-sum deviation |\n";
    out << "|---:|---:|---:|\n";
    for (const auto& r : stats.replicas) {
        out << "| " << r.replica << " | " << format_double(r.terminal_distance) << " | "
            << format_double(r.terminal_max_edge_dev) << " |\n";
    }
    out << "\n";
    out << "| aggregate | distance | max edge-sum deviation |\n";
    out << "|---|---:|---:|\n";
    out << "| mean | " << format_double(stats.mean_distance) << " | "
        << format_double(stats.mean_max_edge_dev) << " |\n";
    out << "| median | " << format_double(stats.median_distance) << " | "
        << format_double(stats.median_max_edge_dev) << " |\n";
    out << "| max | " << format_double(stats.max_distance) << " | "
        << format_double(stats.max_max_edge_dev) << " |\n";
    return out.str();
}

ParsedCsv parse_csv(const std::string& text) {
    ParsedCsv parsed;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (first) {
            parsed.header = fields;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            try {
                row.push_back(std::stod(f));
            } catch (const std::exception&) {
                throw error(errc::parse_error, "CSV field '" + f + "' is not a number");
            }
        }
        parsed.rows.push_back(std::move(row));
    }
    return parsed;
}

}  // namespace polyurn
