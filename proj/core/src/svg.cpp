#include "pdolab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pdolab/common.hpp"
#include "pdolab/csv.hpp"

namespace pdolab {

namespace {

constexpr double W = 640, H = 420;
constexpr double ML = 70, MR = 20, MT = 36, MB = 46;

const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f6fb4", "#c44e52", "#55a868", "#8172b2", "#937860", "#64b5cd"};
    return colors[i % 6];
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void SvgPlot::write(const std::string& path) const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto tx = [&](double x) { return logx ? std::log10(x) : x; };
    auto ty = [&](double y) { return logy ? std::log10(y) : y; };
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (logx && !(x > 0)) continue;
            if (logy && !(y > 0)) continue;
            xmin = std::min(xmin, tx(x));
            xmax = std::max(xmax, tx(x));
            ymin = std::min(ymin, ty(y));
            ymax = std::max(ymax, ty(y));
        }
    if (!(xmin < xmax)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymin < ymax)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.08 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ML + (tx(x) - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (ty(y) - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"14\">" << title << "</text>\n";
    os << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR << "\" height=\""
       << H - MT - MB << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // axis ticks: 5 per axis, labels in data coordinates
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double gx = ML + (W - ML - MR) * i / 4.0;
        const double gy = H - MB - (H - MT - MB) * i / 4.0;
        os << "<line x1=\"" << gx << "\" y1=\"" << H - MB << "\" x2=\"" << gx << "\" y2=\""
           << H - MB + 5 << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << gx << "\" y=\"" << H - MB + 18
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << num(logx ? std::pow(10.0, fx) : fx) << "</text>\n";
        os << "<line x1=\"" << ML - 5 << "\" y1=\"" << gy << "\" x2=\"" << ML << "\" y2=\"" << gy
           << "\" stroke=\"#333\"/>\n";
        os << "<text x=\"" << ML - 8 << "\" y=\"" << gy + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << num(logy ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    os << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 8
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel
       << "</text>\n";
    os << "<text x=\"14\" y=\"" << (MT + H - MB) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
       << (MT + H - MB) / 2 << ")\">" << ylabel << "</text>\n";

    if (with_fit) {
        const double y0 = fit_intercept + fit_slope * xmin;
        const double y1 = fit_intercept + fit_slope * xmax;
        os << "<line x1=\"" << ML << "\" y1=\"" << H - MB - (y0 - ymin) / (ymax - ymin) * (H - MT - MB)
           << "\" x2=\"" << W - MR << "\" y2=\""
           << H - MB - (y1 - ymin) / (ymax - ymin) * (H - MT - MB)
           << "\" stroke=\"#999\" stroke-dasharray=\"6,4\"/>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette(si);
        if (s.line && s.points.size() > 1) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points) os << px(x) << "," << py(y) << " ";
            os << "\"/>\n";
        }
        for (const auto& [x, y] : s.points)
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
               << "\"/>\n";
        os << "<text x=\"" << W - MR - 8 << "\" y=\"" << MT + 16 + 16 * si
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color
           << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open SVG output '" + path + "'");
    out << os.str();
}

}  // namespace pdolab
