#include "airoas/harness/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace airoas::harness {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;

const char* kColors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad"};

std::string num(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

}  // namespace

std::string render_ablation_svg(const std::vector<SummaryRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("render_ablation_svg: no rows");

    std::map<std::string, std::vector<const SummaryRow*>> by_solver;
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const SummaryRow& row : rows) {
        by_solver[row.solver].push_back(&row);
        const double x = std::log10(static_cast<double>(row.particles));
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, row.mean_return - row.sem);
        y_max = std::max(y_max, row.mean_return + row.sem);
    }
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    const double y_pad = std::max(0.05 * (y_max - y_min), 0.1);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double particles) {
        return kMarginLeft + plot_w * (std::log10(particles) - x_min) / (x_max - x_min);
    };
    auto sy = [&](double value) {
        return kMarginTop + plot_h * (1.0 - (value - y_min) / (y_max - y_min));
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2
        << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" font-family=\"sans-serif\">"
        << "Mean discounted return vs particle count</text>\n";

    // Axes.
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

    // Y ticks.
    for (int i = 0; i <= 5; ++i) {
        const double value = y_min + (y_max - y_min) * i / 5.0;
        const double y = sy(value);
        svg << "<line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << y << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
            << num(value) << "</text>\n";
    }

    // X ticks at the observed particle counts.
    std::vector<int> counts;
    for (const SummaryRow& row : rows) counts.push_back(row.particles);
    std::sort(counts.begin(), counts.end());
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    for (const int count : counts) {
        const double x = sx(count);
        svg << "<line x1=\"" << x << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << x
            << "\" y2=\"" << kMarginTop + plot_h + 4 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << count << "</text>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
        << "particles (log scale)</text>\n";

    int color_index = 0;
    double legend_y = kMarginTop + 10;
    for (auto& [solver, cells] : by_solver) {
        const char* color = kColors[color_index % 4];
        std::sort(cells.begin(), cells.end(),
                  [](const SummaryRow* a, const SummaryRow* b) {
                      return a->particles < b->particles;
                  });
        std::ostringstream points;
        for (const SummaryRow* cell : cells) {
            const double x = sx(cell->particles);
            points << x << ',' << sy(cell->mean_return) << ' ';
            svg << "<line x1=\"" << x << "\" y1=\"" << sy(cell->mean_return - cell->sem)
                << "\" x2=\"" << x << "\" y2=\"" << sy(cell->mean_return + cell->sem)
                << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
            svg << "<circle cx=\"" << x << "\" cy=\"" << sy(cell->mean_return)
                << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
        }
        svg << "<polyline points=\"" << points.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<rect x=\"" << kMarginLeft + plot_w - 130 << "\" y=\"" << legend_y - 9
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << kMarginLeft + plot_w - 112 << "\" y=\"" << legend_y + 2
            << "\" font-size=\"12\" font-family=\"sans-serif\">" << solver << "</text>\n";
        legend_y += 20;
        ++color_index;
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_ablation_svg(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ablation_svg: cannot open '" + path + "'");
    out << render_ablation_svg(rows);
}

}  // namespace airoas::harness
