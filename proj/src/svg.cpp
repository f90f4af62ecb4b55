#include "heavyhex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heavyhex {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginL = 64.0;
constexpr double kMarginR = 24.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 48.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

}  // namespace

std::string sweep_svg(const std::vector<std::vector<CurvePoint>>& curves,
                      const std::string& title) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool any = false;
    for (const auto& curve : curves) {
        for (const auto& pt : curve) {
            if (pt.p_step <= 0.0 || pt.rate <= 0.0) continue;
            double x = std::log10(pt.p_step);
            double ylo = std::log10(pt.rate);
            double yhi = pt.q_effective > 0.0 ? std::log10(pt.q_effective) : ylo;
            if (!any) {
                xmin = xmax = x;
                ymin = std::min(ylo, yhi);
                ymax = std::max(ylo, yhi);
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, std::min(ylo, yhi));
                ymax = std::max(ymax, std::max(ylo, yhi));
            }
        }
    }
    if (!any) throw std::invalid_argument("sweep_svg: no plottable points");
    if (xmax - xmin < 1e-9) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-9) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    auto px = [&](double logx) {
        return kMarginL + (logx - xmin) / (xmax - xmin) * (kWidth - kMarginL - kMarginR);
    };
    auto py = [&](double logy) {
        return kHeight - kMarginB -
               (logy - ymin) / (ymax - ymin) * (kHeight - kMarginT - kMarginB);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // Decade grid lines and tick labels.
    for (int e = static_cast<int>(std::floor(xmin)); e <= static_cast<int>(std::ceil(xmax));
         ++e) {
        if (e < xmin - 1e-9 || e > xmax + 1e-9) continue;
        double x = px(e);
        svg << "<line x1=\"" << x << "\" y1=\"" << py(ymin) << "\" x2=\"" << x << "\" y2=\""
            << py(ymax) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << kHeight - kMarginB + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
            << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(ymin)); e <= static_cast<int>(std::ceil(ymax));
         ++e) {
        if (e < ymin - 1e-9 || e > ymax + 1e-9) continue;
        double y = py(e);
        svg << "<line x1=\"" << px(xmin) << "\" y1=\"" << y << "\" x2=\"" << px(xmax)
            << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << kMarginL - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
            << "</text>\n";
    }
    svg << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
        << kWidth - kMarginL - kMarginR << "\" height=\"" << kHeight - kMarginT - kMarginB
        << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // Identity reference from the first curve with q values.
    for (const auto& curve : curves) {
        std::ostringstream pl;
        bool has = false;
        for (const auto& pt : curve) {
            if (pt.p_step <= 0.0 || pt.q_effective <= 0.0) continue;
            pl << (has ? " " : "") << px(std::log10(pt.p_step)) << ","
               << py(std::log10(pt.q_effective));
            has = true;
        }
        if (has) {
            svg << "<polyline fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"5 4\" "
                << "points=\"" << pl.str() << "\"/>\n";
            svg << "<text x=\"" << kWidth - kMarginR - 4 << "\" y=\"" << kMarginT + 14
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
                << "fill=\"#888888\">identity</text>\n";
            break;
        }
    }

    std::size_t color = 0;
    for (const auto& curve : curves) {
        std::ostringstream pl;
        bool has = false;
        int d = curve.empty() ? 0 : curve.front().d;
        for (const auto& pt : curve) {
            if (pt.p_step <= 0.0 || pt.rate <= 0.0) continue;
            pl << (has ? " " : "") << px(std::log10(pt.p_step)) << ","
               << py(std::log10(pt.rate));
            has = true;
        }
        if (!has) continue;
        const char* c = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\""
            << pl.str() << "\"/>\n";
        svg << "<text x=\"" << kMarginL + 8 << "\" y=\"" << kMarginT + 14 + 16.0 * color
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << c << "\">d = "
            << d << "</text>\n";
        ++color;
    }

    svg << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "p per step</text>\n";
    svg << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">logical error rate</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void write_sweep_svg(const std::string& path,
                     const std::vector<std::vector<CurvePoint>>& curves,
                     const std::string& title) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << sweep_svg(curves, title);
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace heavyhex
