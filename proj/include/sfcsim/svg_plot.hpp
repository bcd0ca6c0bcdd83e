#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfcsim {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

// Self-contained SVG line chart (share-over-time style). Returns false when
// every series is empty or identically zero, so the caller can warn.
bool write_line_chart_svg(std::ostream& out, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<Series>& series);

struct BoxStat {
    std::string label;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

void write_boxplot_svg(std::ostream& out, const std::string& title,
                       const std::string& y_label,
                       const std::vector<BoxStat>& boxes);

}  // namespace sfcsim
