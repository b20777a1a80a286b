// SPDX-License-Identifier: Apache-2.0
#include "nomalab/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nomalab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void SvgPlot::add_series(const std::string& name,
                         std::vector<std::pair<double, double>> xy) {
    series_.push_back({name, std::move(xy)});
}

std::string SvgPlot::render() const {
    const double width = 720, height = 480;
    const double ml = 70, mr = 160, mt = 40, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series_) {
        for (auto [x, y] : s.xy) {
            if (log_y_ && y <= 0) continue;
            const double yy = log_y_ ? std::log10(y) : y;
            if (first) {
                xmin = xmax = x;
                ymin = ymax = yy;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, yy);
                ymax = std::max(ymax, yy);
            }
        }
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    if (log_y_) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    }
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) {
        const double yy = log_y_ ? std::log10(y) : y;
        return mt + ph - (yy - ymin) / (ymax - ymin) * ph;
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(width / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"15\">" + title_ + "</text>\n";

    svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
           fmt(pw) + "\" height=\"" + fmt(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    const int xticks = 6;
    for (int i = 0; i <= xticks; ++i) {
        const double x = xmin + (xmax - xmin) * i / xticks;
        svg += "<line x1=\"" + fmt(px(x)) + "\" y1=\"" + fmt(mt + ph) +
               "\" x2=\"" + fmt(px(x)) + "\" y2=\"" + fmt(mt + ph + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + fmt(x) +
               "</text>\n";
    }
    const int yticks = log_y_ ? int(ymax - ymin) : 6;
    for (int i = 0; i <= yticks; ++i) {
        const double yy = ymin + (ymax - ymin) * i / std::max(yticks, 1);
        const double y = log_y_ ? std::pow(10.0, yy) : yy;
        svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(py(y)) +
               "\" x2=\"" + fmt(ml) + "\" y2=\"" + fmt(py(y)) +
               "\" stroke=\"black\"/>\n";
        const std::string label = log_y_ ? "1e" + fmt(yy) : fmt(yy);
        svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py(y) + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">" + label +
               "</text>\n";
        svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" +
               fmt(ml + pw) + "\" y2=\"" + fmt(py(y)) +
               "\" stroke=\"#dddddd\" stroke-dasharray=\"3,3\"/>\n";
    }
    svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(height - 12) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + xlabel_ +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
           "16 " + fmt(mt + ph / 2) + ")\">" + ylabel_ + "</text>\n";

    for (size_t si = 0; si < series_.size(); ++si) {
        const auto& s = series_[si];
        const char* color = kPalette[si % 8];
        std::string path;
        bool pen_down = false;
        for (auto [x, y] : s.xy) {
            if (log_y_ && y <= 0) {
                pen_down = false;
                continue;
            }
            path += pen_down ? "L" : "M";
            path += fmt(px(x)) + " " + fmt(py(y)) + " ";
            pen_down = true;
        }
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.6\"/>\n";
        for (auto [x, y] : s.xy) {
            if (log_y_ && y <= 0) continue;
            svg += "<circle cx=\"" + fmt(px(x)) + "\" cy=\"" + fmt(py(y)) +
                   "\" r=\"2.6\" fill=\"" + color + "\"/>\n";
        }
        const double ly = mt + 16 + 18 * double(si);
        svg += "<line x1=\"" + fmt(ml + pw + 10) + "\" y1=\"" + fmt(ly) +
               "\" x2=\"" + fmt(ml + pw + 34) + "\" y2=\"" + fmt(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(ml + pw + 40) + "\" y=\"" + fmt(ly + 4) +
               "\" font-size=\"11\">" + s.name + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void SvgPlot::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << render();
}

}  // namespace nomalab
