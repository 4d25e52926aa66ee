#pragma once

#include <string>
#include <vector>

namespace pdolab {

/// Self-contained static line/scatter plot.  Optional log10 axes; an optional
/// straight fit line (slope/intercept in plot coordinates).
struct SvgPlot {
    struct Series {
        std::string label;
        std::vector<std::pair<double, double>> points;
        bool line = true;
    };

    std::string title, xlabel, ylabel;
    bool logx = false, logy = false;
    std::vector<Series> series;
    bool with_fit = false;
    double fit_slope = 0.0, fit_intercept = 0.0;

    void write(const std::string& path) const;
};

}  // namespace pdolab
