#include "sfcsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sfcsim/metrics.hpp"

namespace sfcsim {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

double nice_ceil(double v) {
    if (v <= 0) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (v <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

void chart_frame(std::ostream& out, const std::string& title,
                 const std::string& x_label, const std::string& y_label) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">"
        << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

bool write_line_chart_svg(std::ostream& out, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<Series>& series) {
    double x_max = 0.0;
    double y_max = 0.0;
    bool any_data = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            x_max = std::max(x_max, x);
            y_max = std::max(y_max, y);
            if (y != 0.0) any_data = true;
        }
    }
    x_max = std::max(x_max, 1.0);
    y_max = nice_ceil(y_max);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + x / x_max * plot_w; };
    auto py = [&](double y) { return kMarginTop + (1.0 - y / y_max) * plot_h; };

    chart_frame(out, title, x_label, y_label);

    // Axes and gridlines.
    for (int i = 0; i <= 5; ++i) {
        const double y = y_max * i / 5.0;
        out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(y) << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << py(y)
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << format_double(y) << "</text>\n";
    }
    for (int i = 0; i <= 6; ++i) {
        const double x = x_max * i / 6.0;
        out << "<text x=\"" << px(x) << "\" y=\"" << kMarginTop + plot_h + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << format_double(std::round(x)) << "</text>\n";
    }
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    int color = 0;
    for (const auto& s : series) {
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(char*))];
        if (!s.points.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << stroke
                << "\" stroke-width=\"1.6\" points=\"";
            for (const auto& [x, y] : s.points) {
                out << px(x) << ',' << py(y) << ' ';
            }
            out << "\"/>\n";
        }
        const double ly = kMarginTop + 14 + 18 * color;
        out << "<line x1=\"" << kMarginLeft + plot_w + 10 << "\" y1=\"" << ly
            << "\" x2=\"" << kMarginLeft + plot_w + 34 << "\" y2=\"" << ly
            << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kMarginLeft + plot_w + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
            << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return any_data;
}

void write_boxplot_svg(std::ostream& out, const std::string& title,
                       const std::string& y_label,
                       const std::vector<BoxStat>& boxes) {
    double y_max = 0.0;
    for (const auto& b : boxes) y_max = std::max(y_max, b.max);
    y_max = nice_ceil(y_max);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto py = [&](double y) { return kMarginTop + (1.0 - y / y_max) * plot_h; };

    chart_frame(out, title, "", y_label);
    for (int i = 0; i <= 5; ++i) {
        const double y = y_max * i / 5.0;
        out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(y) << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << py(y)
            << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << format_double(y) << "</text>\n";
    }
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double slot = plot_w / std::max<std::size_t>(boxes.size(), 1);
    const double box_w = std::min(60.0, slot * 0.5);
    int color = 0;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& b = boxes[i];
        const double cx = kMarginLeft + slot * (static_cast<double>(i) + 0.5);
        const char* stroke = kPalette[color++ % (sizeof(kPalette) / sizeof(char*))];
        // Whiskers.
        out << "<line x1=\"" << cx << "\" y1=\"" << py(b.min) << "\" x2=\"" << cx
            << "\" y2=\"" << py(b.q1) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx << "\" y1=\"" << py(b.q3) << "\" x2=\"" << cx
            << "\" y2=\"" << py(b.max) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - box_w / 2 << "\" y1=\"" << py(b.min)
            << "\" x2=\"" << cx + box_w / 2 << "\" y2=\"" << py(b.min)
            << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - box_w / 2 << "\" y1=\"" << py(b.max)
            << "\" x2=\"" << cx + box_w / 2 << "\" y2=\"" << py(b.max)
            << "\" stroke=\"black\"/>\n";
        // Interquartile box and median.
        out << "<rect x=\"" << cx - box_w / 2 << "\" y=\"" << py(b.q3)
            << "\" width=\"" << box_w << "\" height=\"" << py(b.q1) - py(b.q3)
            << "\" fill=\"" << stroke << "\" fill-opacity=\"0.35\" "
               "stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - box_w / 2 << "\" y1=\"" << py(b.median)
            << "\" x2=\"" << cx + box_w / 2 << "\" y2=\"" << py(b.median)
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << cx << "\" y=\"" << kMarginTop + plot_h + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << b.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace sfcsim
