// tml: matrix monodromy groups, Maslov and linking invariants, and
// monodromy simulations for Clifford tori in R^4.

#include "tml/io.hpp"
#include "tml/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

namespace {

using nlohmann::ordered_json;
using namespace tml;

int grid_scale_from_env() {
    const char* raw = std::getenv("TML_GRID_SCALE");
    if (!raw) return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (!end || *end != '\0' || v < 1)
        throw std::invalid_argument("TML_GRID_SCALE must be an integer >= 1");
    return static_cast<int>(v);
}

MaslovCovector covector_from_text(const std::string& text) {
    const size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("covector text must be two integers m1,m2");
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
}

void emit(const ordered_json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
        out << j.dump(2) << "\n";
    }
}

ordered_json word_json(const GeneratorWord& w) {
    ordered_json arr = ordered_json::array();
    for (Letter l : w) arr.push_back(letter_name(l));
    return arr;
}

ordered_json report_json(const IsotopyReport& rep) {
    ordered_json j;
    j["monodromy"] = rep.monodromy.to_text();
    j["tag"] = tag_name(classify(rep.monodromy));
    j["class_images"]["gamma1"] = {rep.gamma1_image.n1, rep.gamma1_image.n2};
    j["class_images"]["gamma2"] = {rep.gamma2_image.n1, rep.gamma2_image.n2};
    ordered_json d;
    d["max_winding_residual"] = rep.diag.max_winding_residual;
    d["frame_closure_error"] = rep.diag.frame_closure_error;
    d["ode_step"] = rep.diag.ode_step;
    d["flow_endpoint_error"] = rep.diag.flow_endpoint_error;
    d["max_hamiltonian_drift"] = rep.diag.max_hamiltonian_drift;
    d["on_torus_error"] = rep.diag.on_torus_error;
    d["grid"] = {{"ns", rep.diag.ns}, {"nt", rep.diag.nt}};
    j["diagnostics"] = std::move(d);
    return j;
}

void write_trace_csv(const std::string& path, const std::string& header,
                     const std::vector<double>& xs, const std::vector<double>& ys) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write trace file: " + path);
    out.precision(17);
    out << header << "\n";
    for (size_t i = 0; i < ys.size(); ++i) out << xs[i] << ',' << ys[i] << '\n';
}

std::vector<double> uniform_grid(size_t n, double offset) {
    std::vector<double> xs(n);
    for (size_t i = 0; i < n; ++i) xs[i] = 2 * std::numbers::pi * (i + offset) / n;
    return xs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix monodromy groups and torus invariants in R^4"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write JSON output to a file instead of stdout");

    int scale = 1;
    try {
        scale = grid_scale_from_env();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    // ------------------------------------------------------------ group
    CLI::App* group = app.add_subcommand("group", "exact matrix-group algorithms");
    group->require_subcommand(1);

    std::string matrix_text, target = "x", nu_text, mu_text = "2,2";

    CLI::App* classify_cmd = group->add_subcommand("classify", "classify a matrix");
    classify_cmd->add_option("--matrix", matrix_text, "matrix a11,a12,a21,a22")->required();

    CLI::App* decompose_cmd =
        group->add_subcommand("decompose", "decompose into generator words");
    decompose_cmd->add_option("--matrix", matrix_text, "matrix a11,a12,a21,a22")->required();
    decompose_cmd->add_option("--target", target, "target group: gmu, e, or x")
        ->check(CLI::IsMember({"gmu", "e", "x"}));

    CLI::App* defect_cmd = group->add_subcommand("defect", "Maslov defect of a matrix");
    defect_cmd->add_option("--matrix", matrix_text, "matrix a11,a12,a21,a22")->required();
    defect_cmd->add_option("--mu", mu_text, "covector m1,m2 (default 2,2)");

    CLI::App* match_cmd =
        group->add_subcommand("match-maslov", "matrix matching a pullback covector");
    match_cmd->add_option("--nu", nu_text, "target covector m1,m2")->required();

    // ----------------------------------------------------------- maslov
    CLI::App* maslov = app.add_subcommand("maslov", "Maslov indices");
    maslov->require_subcommand(1);
    double opt_a = 1, opt_b = 1;
    i64 opt_n1 = 1, opt_n2 = 0, opt_m = 0;
    int maslov_samples = 256 * scale;
    std::string curve_path, trace_path;

    CLI::App* mclass = maslov->add_subcommand("class", "Maslov class of a torus class");
    mclass->add_option("--a", opt_a, "first radius")->required();
    mclass->add_option("--b", opt_b, "second radius")->required();
    mclass->add_option("--n1", opt_n1, "gamma1 coefficient")->required();
    mclass->add_option("--n2", opt_n2, "gamma2 coefficient")->required();
    mclass->add_option("--samples", maslov_samples, "sample count");
    mclass->add_option("--trace", trace_path, "write the det^2 phase trace CSV here");

    CLI::App* mframing = maslov->add_subcommand("framing", "index of an m-framing");
    mframing->add_option("--curve", curve_path, "curve CSV (t,x1,y1,x2,y2)")->required();
    mframing->add_option("--m", opt_m, "target framing number")->required();
    mframing->add_option("--trace", trace_path, "write the det^2 phase trace CSV here");

    // ------------------------------------------------------------- geom
    CLI::App* geom = app.add_subcommand("geom", "curve geometry utilities");
    geom->require_subcommand(1);
    CLI::App* gclass = geom->add_subcommand("class", "homology class of a curve on a torus");
    gclass->add_option("--curve", curve_path, "curve CSV (t,x1,y1,x2,y2)")->required();
    gclass->add_option("--a", opt_a, "first radius")->required();
    gclass->add_option("--b", opt_b, "second radius")->required();

    // ---------------------------------------------------------- linking
    CLI::App* linking = app.add_subcommand("linking", "Gauss linking numbers");
    linking->require_subcommand(1);
    double opt_eps = 0.1;
    int linking_grid = 64 * scale;
    std::string surface_path;

    CLI::App* leval = linking->add_subcommand("eval", "linking class of a torus class");
    leval->add_option("--a", opt_a, "first radius")->required();
    leval->add_option("--b", opt_b, "second radius")->required();
    leval->add_option("--n1", opt_n1, "gamma1 coefficient")->required();
    leval->add_option("--n2", opt_n2, "gamma2 coefficient")->required();
    leval->add_option("--eps", opt_eps, "push-off radius")->required();
    leval->add_option("--grid", linking_grid, "quadrature grid per axis");
    leval->add_option("--trace", trace_path, "write the degree-integrand s-trace CSV here");

    CLI::App* lraw = linking->add_subcommand("raw", "linking number of a curve and surface");
    lraw->add_option("--curve", curve_path, "curve CSV (t,x1,y1,x2,y2)")->required();
    lraw->add_option("--surface", surface_path, "surface CSV (t1,t2,x1,y1,x2,y2)")->required();
    lraw->add_option("--grid", linking_grid, "quadrature grid per axis");
    lraw->add_option("--trace", trace_path, "write the degree-integrand s-trace CSV here");

    // --------------------------------------------------------- simulate
    CLI::App* simulate = app.add_subcommand("simulate", "monodromy simulations");
    simulate->require_subcommand(1);
    int case1_samples = 256 * scale;
    int case2_ns = 1024 * scale, case2_nt = 256 * scale;
    double case2_eps = 0.05;
    bool variant = false;
    std::string map_path;

    CLI::App* c1 = simulate->add_subcommand("case1", "rotation-flow self-isotopy");
    c1->add_option("--b", opt_b, "torus radius")->required();
    c1->add_option("--samples", case1_samples, "curve samples");

    CLI::App* c2 = simulate->add_subcommand("case2", "normal-tube transport self-isotopy");
    c2->add_flag("--variant", variant, "use the z1-plane core circle");
    c2->add_option("--b", opt_b, "core-circle radius")->required();
    c2->add_option("--eps", case2_eps, "tube radius")->required();
    c2->add_option("--ns", case2_ns, "transport steps");
    c2->add_option("--nt", case2_nt, "curve samples");

    CLI::App* h1 = simulate->add_subcommand("h1map", "H1 action of a sampled torus map");
    h1->add_option("--map", map_path, "map CSV (theta,t,f,g)")->required();

    // ------------------------------------------------------- verify-all
    CLI::App* verify = app.add_subcommand("verify-all", "run the verification battery");
    VerifyConfig vcfg;
    vcfg.grid_scale = scale;
    bool self_test_fail = false;
    verify->add_option("--seed", vcfg.seed, "PRNG seed for the randomized suites");
    verify->add_option("--ns", vcfg.case2_ns, "tube transport steps (>= 512)");
    verify->add_option("--nt", vcfg.case2_nt, "tube curve samples (>= 256)");
    verify->add_option("--eps", vcfg.case2_eps, "tube radius");
    verify->add_option("--grid", vcfg.linking_grid, "linking quadrature grid (>= 16)");
    verify->add_option("--samples", vcfg.maslov_samples, "Maslov sample count (>= 128)");
    verify
        ->add_flag("--self-test-fail", self_test_fail,
                   "corrupt one expectation to exercise the failure path")
        ->group(""); // hidden

    // let trailing global options like --out reach the root app
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        a->fallthrough();
        for (CLI::App* sub : a->get_subcommands({})) enable_fallthrough(sub);
    };
    for (CLI::App* sub : app.get_subcommands({})) enable_fallthrough(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (classify_cmd->parsed()) {
            ordered_json j;
            j["tag"] = tag_name(classify(Mat2Z::from_text(matrix_text)));
            emit(j, out_path);
        } else if (decompose_cmd->parsed()) {
            const Mat2Z m = Mat2Z::from_text(matrix_text);
            const DecompositionResult d = target == "gmu" ? decompose_Gmu(m)
                                          : target == "e" ? decompose_E(m)
                                                          : decompose_X(m);
            ordered_json j;
            j["tag"] = tag_name(classify(m));
            j["word"] = word_json(d.word);
            j["matrix"] = m.to_text();
            j["verified"] = d.verified;
            emit(j, out_path);
        } else if (defect_cmd->parsed()) {
            const MaslovDefect d =
                maslov_defect(Mat2Z::from_text(matrix_text), covector_from_text(mu_text));
            ordered_json j;
            j["defect"] = {d.defect.m1, d.defect.m2};
            j["divisible_by_4"] = d.divisible_by_4;
            emit(j, out_path);
        } else if (match_cmd->parsed()) {
            const Mat2Z g = match_maslov(covector_from_text(nu_text));
            ordered_json j;
            j["matrix"] = g.to_text();
            j["tag"] = tag_name(classify(g));
            emit(j, out_path);
        } else if (mclass->parsed()) {
            if (maslov_samples < 64 * (std::llabs(opt_n1) + std::llabs(opt_n2)))
                throw std::invalid_argument(
                    "maslov class: need at least 64*(|n1|+|n2|) samples");
            std::vector<double> phases;
            const FrameLoop planes = torus_tangent_frames(CliffordTorus(opt_a, opt_b),
                                                          opt_n1, opt_n2, maslov_samples);
            const MaslovIndex idx = maslov_index_loop(planes, &phases);
            if (!trace_path.empty())
                write_trace_csv(trace_path, "t,phase", uniform_grid(phases.size(), 0.0),
                                phases);
            ordered_json j;
            j["index"] = idx.value;
            j["samples"] = idx.samples;
            j["max_phase_step"] = idx.max_phase_step;
            emit(j, out_path);
        } else if (mframing->parsed()) {
            const LoopR4 c = load_curve_csv(curve_path);
            const Framing sigma = make_m_framing(c, opt_m);
            FrameLoop planes;
            planes.u.resize(static_cast<size_t>(c.size()));
            planes.v = sigma.sigma;
            for (int i = 0; i < c.size(); ++i) {
                const Vec4 v = c.velocity_at(i);
                planes.u[i] = v * (1.0 / norm(v));
            }
            std::vector<double> phases;
            const MaslovIndex idx = maslov_index_loop(planes, &phases);
            if (!trace_path.empty())
                write_trace_csv(trace_path, "t,phase", uniform_grid(phases.size(), 0.0),
                                phases);
            ordered_json j;
            j["index"] = idx.value;
            j["samples"] = idx.samples;
            j["max_phase_step"] = idx.max_phase_step;
            emit(j, out_path);
        } else if (gclass->parsed()) {
            const H1Readout h = homology_class_on_torus(load_curve_csv(curve_path),
                                                        CliffordTorus(opt_a, opt_b));
            ordered_json j;
            j["class"] = {h.cls.n1, h.cls.n2};
            j["max_residual"] = h.max_residual;
            j["max_phase_step"] = h.max_phase_step;
            emit(j, out_path);
        } else if (leval->parsed() || lraw->parsed()) {
            const LinkingGrid grid{linking_grid, linking_grid, linking_grid};
            std::vector<double> strace;
            DegreeResult d;
            std::string method;
            if (leval->parsed()) {
                const LoopR4 c =
                    pushed_off_curve(CliffordTorus(opt_a, opt_b), opt_n1, opt_n2, opt_eps);
                d = gauss_linking(c, TorusSurface::clifford(CliffordTorus(opt_a, opt_b)),
                                  grid, &strace);
                method = "midpoint quadrature, analytic partials";
            } else {
                const LoopR4 c = load_curve_csv(curve_path);
                const TorusSurface s = load_surface_csv(surface_path);
                d = gauss_linking(c, s, grid, &strace);
                method = "midpoint quadrature, central-difference partials";
            }
            if (!trace_path.empty())
                write_trace_csv(trace_path, "s,contribution",
                                uniform_grid(strace.size(), 0.5), strace);
            ordered_json j;
            j["raw"] = d.raw;
            j["rounded"] = d.rounded;
            j["residual"] = d.residual;
            j["method"] = method;
            emit(j, out_path);
        } else if (c1->parsed()) {
            emit(report_json(simulate_case1(opt_b, case1_samples)), out_path);
        } else if (c2->parsed()) {
            const IsotopyReport rep =
                variant ? simulate_case2_variant(opt_b, case2_eps, case2_ns, case2_nt)
                        : simulate_case2(opt_b, case2_eps, case2_ns, case2_nt);
            emit(report_json(rep), out_path);
        } else if (h1->parsed()) {
            const Mat2Z m = induced_h1_map(load_map_csv(map_path));
            ordered_json j;
            j["matrix"] = m.to_text();
            j["tag"] = tag_name(classify(m));
            emit(j, out_path);
        } else if (verify->parsed()) {
            vcfg.inject_failure = self_test_fail;
            vcfg.validate(); // usage errors exit 2 before any work runs
            const VerificationSummary s = verify_all(vcfg);
            emit(ordered_json::parse(summary_to_json(s)), out_path);
            return s.overall ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
