#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "scl/curve.hpp"
#include "scl/scan.hpp"

namespace scl {

struct SvgOptions {
    enum class Projection { orthographic, stereographic };
    Projection projection = Projection::orthographic;
    Vec3 view{0, 0, 1};   // view axis (orthographic) or projection pole (stereographic)
    int samples = 512;
    int size = 480;
};

namespace svgdetail {

inline std::string fmt(double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct Mapped {
    double x, y;
    bool front;
};

inline Mapped project(const Vec3& p, const SvgOptions& o) {
    Vec3 n = normalized(o.view);
    Vec3 b1 = normalized(std::abs(n.x) < 0.9 ? cross(n, e1) : cross(n, e2));
    Vec3 b2 = cross(n, b1);
    double u = dot(p, b1), v = dot(p, b2), w = dot(p, n);
    if (o.projection == SvgOptions::Projection::orthographic) return {u, v, w >= 0};
    double d = 1.0 - w; // stereographic from the pole n
    if (d < 1e-6) d = 1e-6;
    return {2 * u / d, 2 * v / d, true};
}

inline void to_pixel(const Mapped& m, const SvgOptions& o, double scale, double& px, double& py) {
    px = o.size / 2.0 + m.x * scale;
    py = o.size / 2.0 - m.y * scale;
}

} // namespace svgdetail

// Renders a curve (plus optional diagnostics) as a polyline; in orthographic
// mode the hidden hemisphere is dashed; double points are marked and the base
// point e1 carries the fat dot.
inline std::string render_svg(const CurvePtr& c, const CurveDiagnostics* diag = nullptr,
                              SvgOptions o = {}) {
    if (o.samples < 512) o.samples = 512;
    std::vector<svgdetail::Mapped> pts(o.samples + 1);
    double extent = 1.0;
    for (int i = 0; i <= o.samples; ++i) {
        pts[i] = svgdetail::project(position(c, double(i) / o.samples), o);
        extent = std::max({extent, std::abs(pts[i].x), std::abs(pts[i].y)});
    }
    double scale = (o.size / 2.0 - 8.0) / extent;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(o.size) +
           "\" height=\"" + std::to_string(o.size) + "\" viewBox=\"0 0 " + std::to_string(o.size) +
           " " + std::to_string(o.size) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (o.projection == SvgOptions::Projection::orthographic) {
        svg += "<circle cx=\"" + svgdetail::fmt(o.size / 2.0) + "\" cy=\"" +
               svgdetail::fmt(o.size / 2.0) + "\" r=\"" + svgdetail::fmt(scale) +
               "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    }

    // split the polyline into visibility runs
    auto emit_run = [&](const std::vector<std::pair<double, double>>& run, bool front) {
        if (run.size() < 2) return;
        svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"";
        if (!front) svg += " stroke-dasharray=\"4 3\" stroke-opacity=\"0.55\"";
        svg += " points=\"";
        for (auto& [x, y] : run) svg += svgdetail::fmt(x) + "," + svgdetail::fmt(y) + " ";
        svg += "\"/>\n";
    };
    std::vector<std::pair<double, double>> run;
    bool front = pts[0].front;
    for (int i = 0; i <= o.samples; ++i) {
        double px, py;
        svgdetail::to_pixel(pts[i], o, scale, px, py);
        if (pts[i].front != front) {
            run.emplace_back(px, py);
            emit_run(run, front);
            run.clear();
            front = pts[i].front;
        }
        run.emplace_back(px, py);
    }
    emit_run(run, front);

    if (diag) {
        for (auto& dp : diag->double_points) {
            auto m = svgdetail::project(dp.image, o);
            double px, py;
            svgdetail::to_pixel(m, o, scale, px, py);
            svg += "<circle cx=\"" + svgdetail::fmt(px) + "\" cy=\"" + svgdetail::fmt(py) +
                   "\" r=\"3\" fill=\"none\" stroke=\"red\" stroke-width=\"1.2\"/>\n";
        }
    }

    // the fat dot at e1
    {
        auto m = svgdetail::project(e1, o);
        double px, py;
        svgdetail::to_pixel(m, o, scale, px, py);
        svg += "<circle cx=\"" + svgdetail::fmt(px) + "\" cy=\"" + svgdetail::fmt(py) +
               "\" r=\"4.5\" fill=\"black\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace scl
