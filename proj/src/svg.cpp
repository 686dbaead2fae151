#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quboprune/harness.hpp"

namespace quboprune {

namespace {

struct Panel {
    double x0, y0, w, h;          // pixel frame
    double ymin, ymax;            // data range

    double px(double p) const { return x0 + p * w; }
    double py(double y) const {
        const double t = (y - ymin) / (ymax - ymin);
        return y0 + h - t * h;
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

void draw_frame(std::ostream& out, const Panel& panel, const std::string& title,
                const std::string& ylabel) {
    out << "  <rect x=\"" << num(panel.x0) << "\" y=\"" << num(panel.y0) << "\" width=\""
        << num(panel.w) << "\" height=\"" << num(panel.h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << num(panel.x0 + panel.w / 2) << "\" y=\""
        << num(panel.y0 - 10) << "\" text-anchor=\"middle\" font-size=\"13\">" << title
        << "</text>\n";
    out << "  <text x=\"" << num(panel.x0 + panel.w / 2) << "\" y=\""
        << num(panel.y0 + panel.h + 32) << "\" text-anchor=\"middle\" font-size=\"11\">"
        << "pruning fraction p</text>\n";
    out << "  <text x=\"" << num(panel.x0 - 40) << "\" y=\""
        << num(panel.y0 + panel.h / 2) << "\" text-anchor=\"middle\" font-size=\"11\" "
        << "transform=\"rotate(-90 " << num(panel.x0 - 40) << ' '
        << num(panel.y0 + panel.h / 2) << ")\">" << ylabel << "</text>\n";
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        out << "  <text x=\"" << num(panel.px(p)) << "\" y=\""
            << num(panel.y0 + panel.h + 16)
            << "\" text-anchor=\"middle\" font-size=\"10\">" << num(p) << "</text>\n";
    }
    for (double f : {0.0, 0.5, 1.0}) {
        const double y = panel.ymin + f * (panel.ymax - panel.ymin);
        out << "  <text x=\"" << num(panel.x0 - 6) << "\" y=\"" << num(panel.py(y) + 3)
            << "\" text-anchor=\"end\" font-size=\"10\">" << num(y) << "</text>\n";
    }
}

void draw_polyline(std::ostream& out, const Panel& panel,
                   const std::vector<std::pair<double, double>>& points,
                   const std::string& stroke, bool dashed) {
    if (points.empty()) return;
    out << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
    if (dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (const auto& [p, y] : points) {
        out << num(panel.px(p)) << ',' << num(panel.py(y)) << ' ';
    }
    out << "\"/>\n";
    for (const auto& [p, y] : points) {
        if (!dashed) {
            out << "  <circle cx=\"" << num(panel.px(p)) << "\" cy=\"" << num(panel.py(y))
                << "\" r=\"2.5\" fill=\"" << stroke << "\"/>\n";
        }
    }
}

}  // namespace

void emit_plot(std::ostream& out, const ExperimentConfig& cfg,
               const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("emit_plot: no rows");

    std::vector<std::pair<double, double>> quality, baseline, footprint;
    bool footprint_is_ratio = false;
    for (const ResultRow& r : rows) {
        quality.emplace_back(r.p, r.mean_ratio);
        baseline.emplace_back(r.p, r.baseline_ratio);
        if (!std::isnan(r.embeddable_ratio)) {
            footprint.emplace_back(r.p, r.embeddable_ratio);
            footprint_is_ratio = true;
        }
    }
    if (!footprint_is_ratio) {
        for (const ResultRow& r : rows) {
            if (!std::isnan(r.physical_qubits)) {
                footprint.emplace_back(r.p, r.physical_qubits);
            }
        }
    }

    auto y_range = [](const std::vector<std::pair<double, double>>& a,
                      const std::vector<std::pair<double, double>>& b) {
        double lo = 0.0, hi = 0.0;
        for (const auto& [p, y] : a) hi = std::max(hi, y);
        for (const auto& [p, y] : b) hi = std::max(hi, y);
        if (hi <= lo) hi = lo + 1.0;
        return std::pair<double, double>{lo, hi * 1.1};
    };

    const auto [qlo, qhi] = y_range(quality, baseline);
    const auto [flo, fhi] = y_range(footprint, {});

    Panel left{70, 40, 360, 280, qlo, qhi};
    Panel right{560, 40, 360, 280, flo, fhi};

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"990\" height=\"380\" "
           "viewBox=\"0 0 990 380\">\n";
    out << "  <rect width=\"990\" height=\"380\" fill=\"white\"/>\n";

    draw_frame(out, left,
               kind_name(cfg.problem) + " / " + cfg.strategy + " (quality)",
               "quality ratio v / v_ref");
    draw_polyline(out, left, quality, "#1f77b4", false);
    draw_polyline(out, left, baseline, "#888888", true);

    draw_frame(out, right,
               footprint_is_ratio ? "embeddable instance size" : "embedding footprint",
               footprint_is_ratio ? "size ratio v / v_ref" : "physical qubits (median)");
    draw_polyline(out, right, footprint, "#d62728", false);

    out << "</svg>\n";
}

}  // namespace quboprune
