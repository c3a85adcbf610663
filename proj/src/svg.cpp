#include "igo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace igo {

void write_polyline_svg(std::ostream& os, const std::vector<std::pair<double, double>>& points,
                        const std::string& x_label, const std::string& y_label) {
    const int W = 800, H = 500, margin = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!points.empty()) {
        xmin = xmax = points[0].first;
        ymin = ymax = points[0].second;
        for (const auto& [x, y] : points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
    auto sy = [&](double y) { return H - margin - (y - ymin) / (ymax - ymin) * (H - 2 * margin); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << W - 2 * margin
       << "\" height=\"" << H - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << x_label
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << H / 2 << ")\">" << y_label << "</text>\n";

    os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    char buf[64];
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(x), sy(y));
        os << buf;
    }
    os << "\"/>\n</svg>\n";
}

} // namespace igo
