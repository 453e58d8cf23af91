#include "ridgesplit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ridgesplit {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series) {
    const double width = 640.0, height = 480.0;
    const double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!std::isfinite(x_min) || !std::isfinite(y_min)) {
        throw std::invalid_argument("chart needs at least one finite point");
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;
    // Pad the y range a little so curves do not sit on the frame.
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const auto map_x = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto map_y = [&](double y) {
        return top + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n"
        << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "  <text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << xml_escape(title)
        << "</text>\n";

    // Grid and tick labels, 5 divisions per axis.
    svg << "  <g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        svg << "    <line x1=\"" << fmt(map_x(fx)) << "\" y1=\"" << fmt(top) << "\" x2=\""
            << fmt(map_x(fx)) << "\" y2=\"" << fmt(top + plot_h) << "\"/>\n";
        svg << "    <line x1=\"" << fmt(left) << "\" y1=\"" << fmt(map_y(fy)) << "\" x2=\""
            << fmt(left + plot_w) << "\" y2=\"" << fmt(map_y(fy)) << "\"/>\n";
    }
    svg << "  </g>\n  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        svg << "    <text x=\"" << fmt(map_x(fx)) << "\" y=\"" << fmt(top + plot_h + 16)
            << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
        svg << "    <text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(map_y(fy) + 4)
            << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
    }
    svg << "  </g>\n"
        << "  <rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "  <text x=\"" << width / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(x_label) << "</text>\n"
        << "  <text x=\"16\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << height / 2 << ")\">" << xml_escape(y_label)
        << "</text>\n";

    for (const auto& s : series) {
        svg << "  <polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : s.points) {
            svg << fmt(map_x(x)) << "," << fmt(map_y(y)) << " ";
        }
        svg << "\"/>\n";
        for (const auto& [x, y] : s.points) {
            svg << "  <circle cx=\"" << fmt(map_x(x)) << "\" cy=\"" << fmt(map_y(y))
                << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
    }

    double legend_y = top + 14.0;
    for (const auto& s : series) {
        svg << "  <line x1=\"" << left + plot_w - 150 << "\" y1=\"" << legend_y - 4
            << "\" x2=\"" << left + plot_w - 126 << "\" y2=\"" << legend_y - 4
            << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
            << "  <text x=\"" << left + plot_w - 120 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(s.label)
            << "</text>\n";
        legend_y += 16.0;
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << svg.str();
}

}  // namespace ridgesplit
