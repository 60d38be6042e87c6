#ifndef POLYURN_REPORT_HPP
#define POLYURN_REPORT_HPP

#include <string>
#include <vector>

#include "polyurn/dynamics.hpp"
#include "polyurn/simulate.hpp"

namespace polyurn {

/// Floats serialized with 17 significant digits so CSV round-trips exactly.
std::string format_double(double value);

/// Header `t,v0,...,v{m-1},L`, one row per sample.
std::string flow_csv(const std::vector<FlowSample>& trajectory);

/// Header `replica,n,x0,...,x{m-1}`, one row per sample per replica.
std::string replica_csv(const std::vector<ReplicaResult>& results);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    int width = 900;
    int height = 540;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

/// Self-contained SVG line chart, one polyline per series.
std::string line_chart_svg(const std::vector<Series>& series, const ChartOptions& options);

/// Markdown table of terminal statistics per replica plus aggregates.
std::string limit_statistics_markdown(const LimitStatistics& stats);

struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

ParsedCsv parse_csv(const std::string& text);

}  // namespace polyurn

#endif  // POLYURN_REPORT_HPP
