#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scl/classify.hpp"
#include "scl/curve.hpp"
#include "scl/frame.hpp"
#include "scl/scan.hpp"

namespace scl {

using json = nlohmann::ordered_json;

inline json to_json(const Quat& q) { return json::array({q.a, q.b, q.c, q.d}); }
inline json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

inline json to_json(const Mat3& m) {
    json a = json::array();
    for (double x : m.m) a.push_back(x);
    return a;
}

inline Quat quat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) fail(errc::schema_error, "quaternion must be [a,b,c,d]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

inline Vec3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) fail(errc::schema_error, "vector must be [x,y,z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// ---- curve AST --------------------------------------------------------------

json curve_to_json(const CurvePtr& c);

namespace iodetail {

inline json pa_to_json(const PiecewiseAffine& m) {
    json a = json::array();
    for (auto& [t, v] : m.pts) a.push_back(json::array({t, v}));
    return a;
}

inline PiecewiseAffine pa_from_json(const json& j) {
    PiecewiseAffine m;
    for (auto& p : j) m.pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    if (m.pts.size() < 2) fail(errc::schema_error, "piecewise map needs two breakpoints");
    return m;
}

struct Serializer {
    json operator()(const node::NuTheta& n) const {
        return {{"node", "nu_theta"}, {"theta", n.theta}};
    }
    json operator()(const node::NuPow& n) const {
        if (n.theta == pi / 4) return {{"node", "nu_k"}, {"k", n.laps}};
        return {{"node", "nu_pow"}, {"theta", n.theta}, {"laps", n.laps}};
    }
    json operator()(const node::GeneratorG& n) const { return {{"node", "g"}, {"s", n.s}}; }
    json operator()(const node::GeneratorF1& n) const {
        return {{"node", "f1"}, {"s1", n.s1}, {"s2", n.s2}};
    }
    json operator()(const node::GeodesicArc& n) const {
        return {{"node", "geodesic"}, {"p", to_json(n.p)}, {"q", to_json(n.q)}};
    }
    json operator()(const node::Constant& n) const {
        return {{"node", "constant"}, {"p", to_json(n.p)}};
    }
    json operator()(const node::Sampled& n) const {
        json pts = json::array(), d1 = json::array(), d2 = json::array();
        for (int i = 0; i < n.n; ++i) {
            pts.push_back(to_json(n.p[i]));
            d1.push_back(to_json(n.d1[i]));
            d2.push_back(to_json(n.d2[i]));
        }
        return {{"node", "sampled"}, {"n", n.n}, {"points", pts}, {"d1", d1}, {"d2", d2}};
    }
    json operator()(const node::Concat& n) const {
        return {{"node", "concat"}, {"left", curve_to_json(n.left)},
                {"right", curve_to_json(n.right)}};
    }
    json operator()(const node::Rotate& n) const {
        Quat q = rot_to_quat(Rotation(n.q)).first;
        return {{"node", "rotate"}, {"q", to_json(q)}, {"inner", curve_to_json(n.inner)}};
    }
    json operator()(const node::FrameProduct& n) const {
        return {{"node", "frame_product"}, {"base", curve_to_json(n.base)},
                {"inner", curve_to_json(n.inner)}};
    }
    json operator()(const node::Reparam& n) const {
        return {{"node", "reparam"}, {"inner", curve_to_json(n.inner)},
                {"map", pa_to_json(n.map)}};
    }
    json operator()(const node::Window& n) const {
        return {{"node", "window"}, {"inner", curve_to_json(n.inner)}, {"a", n.a}, {"b", n.b}};
    }
    json operator()(const node::TrigProj& n) const {
        return {{"node", "trig_proj"}, {"c0", n.c0}, {"ck", n.ck}, {"sk", n.sk}};
    }
    json operator()(const node::PolyProj& n) const {
        return {{"node", "poly_proj"}, {"coeff", n.coeff}};
    }
    json operator()(const node::ConicArc& n) const {
        return {{"node", "conic_arc"}, {"m", to_json(n.L)}, {"rho", n.rho}, {"u0", n.u0},
                {"u1", n.u1}};
    }
    json operator()(const node::LoopProduct& n) const {
        json j{{"node", "loop_product"}, {"theta", n.theta}, {"tau", pa_to_json(n.tau)},
               {"phi", pa_to_json(n.phi)}};
        j["base"] = n.base ? curve_to_json(n.base) : json(nullptr);
        return j;
    }
};

} // namespace iodetail

inline json curve_to_json(const CurvePtr& c) { return std::visit(iodetail::Serializer{}, c->n); }

inline CurvePtr curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("node")) fail(errc::schema_error, "curve node must be an object with 'node'");
    const std::string kind = j.at("node").get<std::string>();
    try {
        if (kind == "nu_theta") return nu_theta(j.at("theta").get<double>());
        if (kind == "nu_k") return nu_k(j.at("k").get<int>());
        if (kind == "nu_pow") return nu_pow(j.at("theta").get<double>(), j.at("laps").get<int>());
        if (kind == "g") return generator_g(j.at("s").get<double>());
        if (kind == "f1") return make_generator_f1(j.at("s1").get<double>(), j.at("s2").get<double>());
        if (kind == "geodesic")
            return geodesic_arc(vec_from_json(j.at("p")), vec_from_json(j.at("q")));
        if (kind == "constant") return constant_curve(vec_from_json(j.at("p")));
        if (kind == "sampled") {
            node::Sampled s;
            s.n = j.at("n").get<int>();
            for (auto& p : j.at("points")) s.p.push_back(vec_from_json(p));
            for (auto& p : j.at("d1")) s.d1.push_back(vec_from_json(p));
            for (auto& p : j.at("d2")) s.d2.push_back(vec_from_json(p));
            return sampled_raw(std::move(s));
        }
        if (kind == "concat")
            return concat_star(curve_from_json(j.at("left")), curve_from_json(j.at("right")));
        if (kind == "rotate")
            return rotate_curve(pi_project(quat_from_json(j.at("q")).normalized()),
                                curve_from_json(j.at("inner")));
        if (kind == "frame_product")
            return frame_product(curve_from_json(j.at("base")), curve_from_json(j.at("inner")));
        if (kind == "reparam")
            return reparam(curve_from_json(j.at("inner")), iodetail::pa_from_json(j.at("map")));
        if (kind == "window")
            return window(curve_from_json(j.at("inner")), j.at("a").get<double>(),
                          j.at("b").get<double>());
        if (kind == "trig_proj")
            return trig_proj(j.at("c0").get<std::vector<double>>(),
                             j.at("ck").get<std::vector<std::vector<double>>>(),
                             j.at("sk").get<std::vector<std::vector<double>>>());
        if (kind == "poly_proj")
            return poly_proj(j.at("coeff").get<std::vector<std::vector<double>>>());
        if (kind == "conic_arc") {
            Mat3 m;
            auto arr = j.at("m");
            for (int i = 0; i < 9; ++i) m.m[i] = arr.at(i).get<double>();
            return conic_arc(m, j.at("rho").get<double>(), j.at("u0").get<double>(),
                             j.at("u1").get<double>());
        }
        if (kind == "loop_product") {
            CurvePtr base;
            if (j.contains("base") && !j.at("base").is_null()) base = curve_from_json(j.at("base"));
            return loop_product(base, iodetail::pa_from_json(j.at("tau")),
                                iodetail::pa_from_json(j.at("phi")), j.at("theta").get<double>());
        }
    } catch (const json::exception& e) {
        fail(errc::schema_error, std::string("bad curve fields: ") + e.what());
    }
    fail(errc::schema_error, "unknown curve node '" + kind + "'");
}

// Probes curve invariants on a coarse grid: unit positions, tangents orthogonal.
inline void validate_curve(const CurvePtr& c, int probe = 64) {
    for (int i = 0; i <= probe; ++i) {
        double t = double(i) / probe;
        Jet2 j = eval2(c, t);
        if (std::abs(norm(j.p) - 1.0) > 1e-9)
            fail(errc::invariant_violation,
                 "position leaves the sphere at t = " + std::to_string(t));
        double s = norm(j.v);
        if (s > 1e-9 && std::abs(dot(j.p, j.v)) > 1e-7 * s)
            fail(errc::invariant_violation,
                 "tangent not orthogonal to position at t = " + std::to_string(t));
    }
}

inline CurvePtr load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    CurvePtr c = curve_from_json(j);
    validate_curve(c);
    return c;
}

inline void save_curve(const CurvePtr& c, const std::string& path) {
    std::ofstream out(path);
    out << curve_to_json(c).dump(2) << "\n";
}

// ---- results ----------------------------------------------------------------

inline json lift_to_json(const LiftResult& lr) {
    json ts = json::array(), qs = json::array();
    for (double t : lr.ts) ts.push_back(t);
    for (auto& q : lr.lift) qs.push_back(to_json(q));
    return {{"grid", ts}, {"lift", qs}, {"endpoint", to_json(lr.endpoint)}};
}

inline json diagnostics_to_json(const CurveDiagnostics& d) {
    json dps = json::array();
    for (auto& dp : d.double_points)
        dps.push_back({{"t0", dp.t0},
                       {"t1", dp.t1},
                       {"kind", dp.tangency ? "self_tangency" : "transversal"},
                       {"generic", dp.generic},
                       {"at_basepoint", dp.at_basepoint},
                       {"image", to_json(dp.image)}});
    json tps = json::array();
    for (auto& tp : d.triple_points)
        tps.push_back({{"t0", tp.t0}, {"t1", tp.t1}, {"t2", tp.t2}, {"generic", tp.generic}});
    json arcs = json::array();
    for (auto& a : d.arcs)
        arcs.push_back({{"t_minus", a.t_minus},
                        {"t_plus", a.t_plus},
                        {"sign", a.positive ? "positive" : "negative"},
                        {"simple", a.simple}});
    return {{"n_samples", d.n_samples},
            {"curvature_min", d.curvature.curvature_min},
            {"locally_convex", d.locally_convex},
            {"double_points", dps},
            {"triple_points", tps},
            {"arcs", arcs},
            {"convex", d.convex},
            {"generic", d.generic},
            {"degenerate_overlap", d.degenerate_overlap}};
}

// FNV-1a digest for input provenance in reports.
inline std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hex(ss.str());
}

inline constexpr const char* tool_version = "0.1.0";

inline json make_report(const std::string& input_digest, json parameters, json results,
                        json derived = json::object()) {
    json r;
    r["tool_version"] = tool_version;
    r["input_digest"] = input_digest;
    r["parameters"] = std::move(parameters);
    r["results"] = std::move(results);
    r["derived_constants"] = std::move(derived);
    r["timestamps"] = {{"unix", std::time(nullptr)}};
    return r;
}

} // namespace scl
