// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nomalab {

// Minimal self-contained SVG line plotter, enough for SER curves and
// distance sweeps. Log-scale y skips non-positive samples.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel,
            bool log_y = false)
        : title_(std::move(title)), xlabel_(std::move(xlabel)),
          ylabel_(std::move(ylabel)), log_y_(log_y) {}

    void add_series(const std::string& name,
                    std::vector<std::pair<double, double>> xy);

    std::string render() const;
    void write(const std::string& path) const;

  private:
    std::string title_, xlabel_, ylabel_;
    bool log_y_;
    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> xy;
    };
    std::vector<Series> series_;
};

}  // namespace nomalab
