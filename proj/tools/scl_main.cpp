// scl: locally convex spherical curves workbench.
//
// Subcommands: classify, scan, lift, graft, homotopy, degree, render, suite.
// Exit codes: 0 ok, 2 validation failure, 3 numeric non-convergence.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "scl/scl.hpp"

using namespace scl;

namespace {

void write_or_print(const json& j, const std::string& out) {
    if (out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) fail(errc::parse_error, "cannot write " + out);
    f << j.dump(2) << "\n";
}

Vec3 parse_vec(const std::string& s) {
    Vec3 v;
    if (sscanf(s.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
        fail(errc::schema_error, "expected x,y,z");
    return v;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"locally convex spherical curves: classification, surgery, degrees"};
    app.require_subcommand(1);

    std::string curve_path, out_path;
    int samples = 0;
    double tolerance = 0;
    unsigned seed = 0;
    app.add_option("--samples", samples, "sample count override")->capture_default_str();
    app.add_option("--tol", tolerance, "tolerance override where applicable");
    app.add_option("--out", out_path, "output file (stdout if omitted)");
    app.add_option("--seed", seed, "seed offset for randomized checks");

    auto* cls = app.add_subcommand("classify", "component and detector verdicts");
    cls->add_option("--curve", curve_path, "curve JSON")->required();

    auto* scan = app.add_subcommand("scan", "double points, arcs, convexity");
    scan->add_option("--curve", curve_path, "curve JSON")->required();

    auto* lift = app.add_subcommand("lift", "frame lift to S^3");
    lift->add_option("--curve", curve_path, "curve JSON")->required();

    auto* graft_cmd = app.add_subcommand("graft", "attach nu_theta loops along the frame");
    double theta = pi / 4;
    std::string n_arg = "auto";
    graft_cmd->add_option("--curve", curve_path, "curve JSON")->required();
    graft_cmd->add_option("--theta", theta, "loop angle in (0,pi/2)")->capture_default_str();
    graft_cmd->add_option("--n", n_arg, "loop pair count or 'auto'")->capture_default_str();

    auto* homotopy = app.add_subcommand("homotopy", "loop pushing and transfer paths");
    std::string homotopy_kind, transfer_mode = "prefix";
    int steps = 65, n1 = 0, n2 = 0;
    bool validate = false;
    homotopy->add_option("kind", homotopy_kind, "push | transfer")->required();
    homotopy->add_option("--curve", curve_path, "curve JSON")->required();
    homotopy->add_option("--theta", theta, "loop angle")->capture_default_str();
    homotopy->add_option("--steps", steps, "total path steps")->capture_default_str();
    homotopy->add_option("--n1", n1, "prefix loop pairs (transfer)");
    homotopy->add_option("--n2", n2, "suffix loop pairs (transfer)");
    homotopy->add_option("--mode", transfer_mode, "prefix | base (transfer form)")
        ->capture_default_str();
    homotopy->add_flag("--validate", validate, "run the per-step validity checks");

    auto* degree_cmd = app.add_subcommand("degree", "numerical mapping degree");
    std::string family;
    int grid = 0;
    double rho_bar = 0.05;
    degree_cmd->add_option("family", family, "f1-lift | g1-f1")->required();
    degree_cmd->add_option("--grid", grid, "grid size per axis");
    degree_cmd->add_option("--rho-bar", rho_bar, "g1 band width")->capture_default_str();

    auto* render = app.add_subcommand("render", "SVG rendering");
    std::string projection = "ortho", view = "0,0,1";
    bool with_diag = false;
    render->add_option("--curve", curve_path, "curve JSON")->required();
    render->add_option("--projection", projection, "ortho | stereo")->capture_default_str();
    render->add_option("--view", view, "view axis or pole x,y,z")->capture_default_str();
    render->add_flag("--diagnostics", with_diag, "mark double points");

    auto* suite_cmd = app.add_subcommand("suite", "acceptance criteria");
    std::string criteria = "all", derived_path = "derived.json";
    suite_cmd->add_option("--criteria", criteria, "'all' or comma list, e.g. 1,2,5")
        ->capture_default_str();
    suite_cmd->add_option("--derived", derived_path, "derived constants output")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cls) {
            CurvePtr c = load_curve(curve_path);
            int n = samples > 0 ? samples : 1024;
            ComponentClass cc = classify_component(c, n);
            ScanOptions opt;
            opt.n_samples = std::max(n, 1024);
            opt.throw_on_degenerate = false;
            CurveDiagnostics d = diagnose(c, opt);
            auto [star, k] = is_star(d);
            auto trefoil = is_trefoil(c, d);
            json detectors{{"star", star}, {"star_k", k}, {"trefoil", trefoil.yes}};
            if (trefoil.yes)
                detectors["triple_point"] = json::array({trefoil.t0, trefoil.t1, trefoil.t2});
            // flower: try the petal count suggested by the e1 visits
            int visits = int(classifydetail::visits_of_e1(c).size());
            detectors["flower"] = false;
            if (visits % 2 == 0) {
                int kf = visits / 2;
                Quat zf = kf % 2 == 0 ? cc.endpoint_z : -cc.endpoint_z;
                try {
                    auto [fl, w] = is_flower(c, zf, kf);
                    detectors["flower"] = fl;
                    if (fl) detectors["petals"] = 2 * kf + 1;
                } catch (const error&) {
                }
            }
            json rep = make_report(file_digest(curve_path), {{"samples", n}},
                                   {{"endpoint", to_json(cc.endpoint_z)},
                                    {"convex", cc.convex},
                                    {"label", cc.label},
                                    {"detectors", detectors}});
            write_or_print(rep, out_path);
        } else if (*scan) {
            CurvePtr c = load_curve(curve_path);
            ScanOptions opt;
            opt.n_samples = samples > 0 ? samples : 4096;
            opt.throw_on_degenerate = false;
            CurveDiagnostics d = diagnose(c, opt);
            json rep = make_report(file_digest(curve_path), {{"samples", opt.n_samples}},
                                   diagnostics_to_json(d));
            write_or_print(rep, out_path);
        } else if (*lift) {
            CurvePtr c = load_curve(curve_path);
            LiftResult lr = lift_curve(c, samples > 0 ? samples : 1024);
            json rep = make_report(file_digest(curve_path), {{"samples", int(lr.ts.size())}},
                                   lift_to_json(lr));
            write_or_print(rep, out_path);
        } else if (*graft_cmd) {
            CurvePtr c = load_curve(curve_path);
            GraftPlan plan = graft_bound(c, theta);
            if (n_arg != "auto") plan.n = std::stoi(n_arg);
            CurvePtr g = graft(c, plan, samples > 0 ? samples : 0);
            json j = curve_to_json(g);
            json rep = make_report(
                file_digest(curve_path),
                {{"theta", theta}, {"n", plan.n}, {"C", plan.C}, {"eps", plan.eps}},
                {{"curve", j}});
            write_or_print(rep, out_path);
        } else if (*homotopy) {
            CurvePtr c = load_curve(curve_path);
            GraftPlan plan = graft_bound(c, theta);
            int per_stage = std::max(2, (steps + 1) / 2);
            HomotopyPath path;
            if (homotopy_kind == "push") {
                path = push_loops_to_start(c, plan, per_stage, validate,
                                           samples > 0 ? samples : 0);
            } else if (homotopy_kind == "transfer") {
                TransferMode mode = transfer_mode == "base" ? TransferMode::through_base
                                                            : TransferMode::split_prefix;
                int m1 = n1 > 0 ? n1 : plan.n / 2;
                int m2 = n2 > 0 ? n2 : plan.n - plan.n / 2;
                if (mode == TransferMode::split_prefix) plan.n = m1 + m2;
                path = transfer_loops(c, plan, m1, m2, mode, per_stage, validate,
                                      samples > 0 ? samples : 0);
            } else {
                fail(errc::schema_error, "homotopy kind must be push or transfer");
            }
            json curves = json::array();
            for (auto& step : path.curves) curves.push_back(curve_to_json(step));
            json rep = make_report(file_digest(curve_path),
                                   {{"kind", homotopy_kind},
                                    {"theta", plan.theta},
                                    {"n", plan.n},
                                    {"steps", int(path.curves.size())},
                                    {"validated", validate}},
                                   {{"valid", path.valid},
                                    {"failed_step", path.failed_step},
                                    {"note", path.note},
                                    {"curves", curves}});
            write_or_print(rep, out_path);
            if (validate && !path.valid) return 3;
        } else if (*degree_cmd) {
            json res;
            if (family == "f1-lift") {
                int g = grid > 0 ? grid : 64;
                F1LiftMap m;
                auto quad = degree_to_s3(m, g, tolerance > 0 ? tolerance : 0.1);
                auto pre = preimage_count_s3(m, quat_j, 20);
                res = {{"method", "quadrature+preimage"},
                       {"grid", g},
                       {"value", quad.value},
                       {"rounded", quad.rounded},
                       {"residual", quad.residual},
                       {"preimage_sum", pre.rounded},
                       {"preimages", int(pre.preimages.size())}};
            } else if (family == "g1-f1") {
                int g = grid > 0 ? grid : 256;
                G1F1Map m(rho_bar, samples > 0 ? samples : 512);
                auto quad = degree_s2(m, g, tolerance > 0 ? tolerance : 0.1, 4);
                res = {{"method", "quadrature"},
                       {"grid", g},
                       {"rho_bar", rho_bar},
                       {"value", quad.value},
                       {"rounded", quad.rounded},
                       {"residual", quad.residual}};
            } else {
                fail(errc::schema_error, "degree family must be f1-lift or g1-f1");
            }
            write_or_print(make_report("-", {{"family", family}}, res), out_path);
        } else if (*render) {
            CurvePtr c = load_curve(curve_path);
            SvgOptions opt;
            opt.projection = projection == "stereo" ? SvgOptions::Projection::stereographic
                                                    : SvgOptions::Projection::orthographic;
            opt.view = parse_vec(view);
            if (samples > 0) opt.samples = samples;
            std::optional<CurveDiagnostics> diag;
            if (with_diag) {
                ScanOptions so;
                so.n_samples = 2048;
                so.throw_on_degenerate = false;
                diag = diagnose(c, so);
            }
            std::string svg = render_svg(c, diag ? &*diag : nullptr, opt);
            if (out_path.empty()) {
                std::cout << svg;
            } else {
                std::ofstream f(out_path);
                f << svg;
            }
        } else if (*suite_cmd) {
            AcceptanceSuite s;
            if (criteria == "all") {
                s.run_all();
            } else {
                std::stringstream ss(criteria);
                std::string tok;
                while (std::getline(ss, tok, ',')) s.run(std::stoi(tok));
            }
            for (auto& r : s.results)
                std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name
                          << "): " << r.detail << "  [" << r.seconds << " s]\n";
            json rep = make_report("-", {{"criteria", criteria}},
                                   {{"criteria", suite_report_json(s)}}, s.derived);
            if (!out_path.empty()) write_or_print(rep, out_path);
            if (!derived_path.empty()) {
                std::ofstream f(derived_path);
                f << s.derived.dump(2) << "\n";
            }
            return s.all_passed() ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e.code()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
