#include "tml/verify.hpp"

#include "tml/isotopy.hpp"
#include "tml/linking.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace tml {

namespace {

using Clock = std::chrono::steady_clock;

struct Battery {
    const VerifyConfig& cfg;
    VerificationSummary out;
    Clock::time_point block_start = Clock::now();

    void start_block() { block_start = Clock::now(); }
    void end_block(const std::string& criterion) {
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - block_start).count();
        out.timings_ms.emplace_back(criterion, ms);
    }

    void add(std::string name, std::string anchor, std::string expected,
             std::string observed) {
        CheckRecord r;
        r.name = std::move(name);
        r.anchor = std::move(anchor);
        r.expected = std::move(expected);
        r.observed = std::move(observed);
        r.pass = r.expected == r.observed;
        out.records.push_back(std::move(r));
    }

    // runs a check body, converting exceptions into failed records
    template <typename Fn>
    void guarded(const std::string& name, const std::string& anchor,
                 const std::string& expected, Fn&& body) {
        try {
            add(name, anchor, expected, body());
        } catch (const std::exception& e) {
            add(name, anchor, expected, std::string("error: ") + e.what());
        }
    }
};

std::string fmt_count(size_t checked, size_t bad) {
    std::ostringstream os;
    if (bad == 0)
        os << "all " << checked << " consistent";
    else
        os << bad << " of " << checked << " inconsistent";
    return os.str();
}

GeneratorWord random_word_over(std::mt19937_64& rng, const std::vector<Letter>& alphabet,
                               int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    GeneratorWord w(len(rng));
    for (Letter& l : w) l = alphabet[pick(rng)];
    return w;
}

void enumerate_reduced(const std::vector<Letter>& alphabet, size_t length, GeneratorWord& w,
                       const std::function<void(const GeneratorWord&)>& visit) {
    if (w.size() == length) {
        visit(w);
        return;
    }
    for (Letter l : alphabet) {
        if (!w.empty() && w.back() == letter_inverse(l)) continue;
        w.push_back(l);
        enumerate_reduced(alphabet, length, w, visit);
        w.pop_back();
    }
}

void for_each_reduced_word(const std::vector<Letter>& alphabet, int max_len,
                           const std::function<void(const GeneratorWord&)>& visit) {
    GeneratorWord w;
    for (int len = 0; len <= max_len; ++len)
        enumerate_reduced(alphabet, static_cast<size_t>(len), w, visit);
}

// ---------------------------------------------------------------- criteria

void criterion_maslov_basis(Battery& b) {
    b.start_block();
    const int n = b.cfg.maslov_samples * b.cfg.grid_scale;
    const std::pair<double, double> radii[] = {{1, 1}, {1, 3}, {2, 0.5}};
    const std::tuple<i64, i64, i64> cases[] = {{1, 0, 2}, {0, 1, 2}, {-1, 1, 0}, {1, 1, 4}};
    for (const auto& [a, bb] : radii)
        for (const auto& [n1, n2, expect] : cases) {
            std::ostringstream name;
            name << "c01/maslov-basis/a=" << a << ",b=" << bb << "/(" << n1 << "," << n2
                 << ")";
            b.guarded(name.str(), "Maslov basis values on Clifford tori",
                      std::to_string(expect), [&, a = a, bb = bb, n1 = n1, n2 = n2] {
                          const MaslovIndex idx =
                              maslov_class_eval(CliffordTorus(a, bb), n1, n2, n);
                          if (idx.residual >= 0.05)
                              return std::string("residual ") + std::to_string(idx.residual);
                          return std::to_string(idx.value);
                      });
        }
    b.end_block("criterion 1");
}

void criterion_case1(Battery& b) {
    b.start_block();
    FlowOptions opt;
    opt.step = b.cfg.ode_step;
    const std::string expected =
        b.cfg.inject_failure ? Mat2Z::identity().to_text() : make_f(1).to_text();
    b.guarded("c02/case1/monodromy",
              "Lagrangian monodromy f1 from the unitary rotation flow", expected, [&] {
                  return simulate_case1(1.0, b.cfg.case1_samples * b.cfg.grid_scale, opt)
                      .monodromy.to_text();
              });
    b.guarded("c02/case1/flow-endpoint",
              "RK4 endpoint against the closed-form time-1 rotation", "below 1e-8", [&] {
                  const IsotopyReport rep =
                      simulate_case1(1.0, b.cfg.case1_samples * b.cfg.grid_scale, opt);
                  return rep.diag.flow_endpoint_error < 1e-8
                             ? std::string("below 1e-8")
                             : std::to_string(rep.diag.flow_endpoint_error);
              });
    b.end_block("criterion 2");
}

void criterion_case2(Battery& b, const TubeTransport& main, const TubeTransport& variant) {
    b.start_block();
    const std::string anchor = "Lagrangian monodromies f0 and f2 from normal-tube transport";
    b.guarded("c03/case2/monodromy", anchor, make_f(0).to_text(),
              [&] { return report_from_transport(main).monodromy.to_text(); });
    b.guarded("c03/case2-variant/monodromy", anchor, make_f(2).to_text(),
              [&] { return report_from_transport(variant).monodromy.to_text(); });
    const int ns2 = 2 * b.cfg.case2_ns * b.cfg.grid_scale;
    const int nt2 = 2 * b.cfg.case2_nt * b.cfg.grid_scale;
    b.guarded("c03/case2/monodromy-doubled-grid", anchor, make_f(0).to_text(), [&] {
        return simulate_case2(1.0, b.cfg.case2_eps, ns2, nt2).monodromy.to_text();
    });
    b.guarded("c03/case2-variant/monodromy-doubled-grid", anchor, make_f(2).to_text(), [&] {
        return simulate_case2_variant(1.0, b.cfg.case2_eps, ns2, nt2).monodromy.to_text();
    });
    b.end_block("criterion 3");
}

void criterion_linking(Battery& b) {
    b.start_block();
    const std::string anchor = "vanishing linking class of embedded Lagrangian tori";
    const int g = b.cfg.linking_grid * b.cfg.grid_scale;
    const LinkingGrid grid{g, g, g};
    const CliffordTorus t(1, 1);
    for (const auto& [n1, n2] : std::vector<std::pair<i64, i64>>{{1, 0}, {0, 1}, {1, 1}}) {
        std::ostringstream name;
        name << "c04/pushoff/(" << n1 << "," << n2 << ")";
        b.guarded(name.str(), anchor, "0 (|raw| < 0.05)", [&, n1 = n1, n2 = n2] {
            const DegreeResult d = linking_class_eval(t, n1, n2, b.cfg.linking_eps, grid);
            if (std::abs(d.raw) >= 0.05) return "raw " + std::to_string(d.raw);
            return std::string("0 (|raw| < 0.05)");
        });
    }
    b.guarded("c04/meridian/control", anchor, "+-1, residual < 0.05, matches oracle", [&] {
        auto pos = [](double s) {
            return Vec4{1 + 0.4 * std::cos(s), 0, 1 + 0.4 * std::sin(s), 0};
        };
        auto vel = [](double s) {
            return Vec4{-0.4 * std::sin(s), 0, 0.4 * std::cos(s), 0};
        };
        const LoopR4 m = LoopR4::closed_form(pos, vel, grid.ns);
        const TorusSurface surf = TorusSurface::clifford(t);
        const DegreeResult d = gauss_linking(m, surf, grid);
        if (std::abs(d.rounded) != 1) return "rounded " + std::to_string(d.rounded);
        if (d.residual >= 0.05) return "residual " + std::to_string(d.residual);
        int oracle = 0;
        bool got = false;
        for (const Vec4& dir :
             {Vec4{0.5, 0.5, 0.5, 0.5}, Vec4{0, 1, 0, 0}, Vec4{0.2, -0.4, 0.7, 0.5}}) {
            try {
                oracle = preimage_degree_oracle(m, surf, dir, grid);
                got = true;
                break;
            } catch (const std::runtime_error&) {
                continue;
            }
        }
        if (!got) return std::string("no regular direction found");
        if (oracle != d.rounded)
            return "oracle " + std::to_string(oracle) + " vs integral " +
                   std::to_string(d.rounded);
        return std::string("+-1, residual < 0.05, matches oracle");
    });
    b.end_block("criterion 4");
}

void criterion_gmu(Battery& b) {
    b.start_block();
    const std::string anchor = "infinite dihedral structure of the Maslov stabilizer";
    b.guarded("c05/relations", anchor, "all 5043 consistent", [&] {
        size_t bad = 0, total = 0;
        for (i64 n = -20; n <= 20; ++n)
            for (i64 m = -20; m <= 20; ++m) {
                total += 3;
                if (!(mat_mul(make_g(n), make_f(m)) == make_f(n + m))) ++bad;
                if (!(mat_mul(make_f(n), make_f(n)) == Mat2Z::identity())) ++bad;
                Mat2Z pow = Mat2Z::identity();
                const Mat2Z step = n >= 0 ? mat_mul(make_f(1), make_f(0))
                                          : mat_inv(mat_mul(make_f(1), make_f(0)));
                for (i64 i = 0; i < std::llabs(n); ++i) pow = mat_mul(pow, step);
                if (!(pow == make_g(n))) ++bad;
            }
        return fmt_count(total, bad);
    });
    b.guarded("c05/decompose-roundtrip", anchor, "all 17 words recovered", [&] {
        size_t count = 0, bad = 0;
        for_each_reduced_word({Letter::F0, Letter::F1}, 8, [&](const GeneratorWord& w) {
            ++count;
            const Mat2Z m = word_eval(w);
            const DecompositionResult d = decompose_Gmu(m);
            if (!d.verified || !(word_eval(d.word) == m)) ++bad;
        });
        if (bad) return fmt_count(count, bad);
        return "all " + std::to_string(count) + " words recovered";
    });
    b.end_block("criterion 5");
}

void criterion_pattern_defect(Battery& b) {
    b.start_block();
    b.guarded("c06/pattern-vs-defect", "parity pattern equals the mod-4 defect condition",
              "equivalent on all unimodular matrices with entries in [-9,9]", [&] {
                  size_t members = 0;
                  for (i64 a = -9; a <= 9; ++a)
                      for (i64 bb = -9; bb <= 9; ++bb)
                          for (i64 c = -9; c <= 9; ++c)
                              for (i64 d = -9; d <= 9; ++d) {
                                  const i64 det = a * d - bb * c;
                                  if (det != 1 && det != -1) continue;
                                  const Mat2Z m{a, bb, c, d};
                                  ++members;
                                  if (maslov_defect(m).divisible_by_4 != in_X(m))
                                      return "counterexample " + m.to_text();
                              }
                  if (members == 0) return std::string("empty scan");
                  return std::string(
                      "equivalent on all unimodular matrices with entries in [-9,9]");
              });
    b.end_block("criterion 6");
}

void criterion_sanov(Battery& b) {
    b.start_block();
    const std::string anchor = "freeness of the squared-twist subgroup; "
                               "three-reflection generation of the pattern group";
    const std::vector<Letter> taus{Letter::T1P2, Letter::T1M2, Letter::T2P2, Letter::T2M2};
    b.guarded("c07/twist-words-distinct-and-recovered", anchor,
              "all 118097 words distinct and letter-exact", [&] {
                  std::map<std::tuple<i64, i64, i64, i64>, unsigned> seen;
                  size_t count = 0, collisions = 0, mismatches = 0;
                  for_each_reduced_word(taus, 10, [&](const GeneratorWord& w) {
                      ++count;
                      const Mat2Z m = word_eval(w);
                      const auto [it, inserted] =
                          seen.emplace(std::tuple{m.a11, m.a12, m.a21, m.a22}, 0u);
                      (void)it;
                      if (!inserted) ++collisions;
                      const DecompositionResult d = decompose_E(m);
                      if (!d.verified || d.word != w) ++mismatches;
                  });
                  if (collisions || mismatches)
                      return std::to_string(collisions) + " collisions, " +
                             std::to_string(mismatches) + " mismatches";
                  return "all " + std::to_string(count) + " words distinct and letter-exact";
              });
    b.guarded("c07/random-reflection-words", anchor, "all 1000 words re-evaluate", [&] {
        std::mt19937_64 rng(b.cfg.seed);
        const std::vector<Letter> gens{Letter::F0, Letter::F1, Letter::R1};
        size_t bad = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const GeneratorWord w = random_word_over(rng, gens, 12);
            const Mat2Z m = word_eval(w);
            const DecompositionResult d = decompose_X(m);
            if (!d.verified || !(word_eval(d.word) == m)) ++bad;
        }
        if (bad) return fmt_count(1000, bad);
        return std::string("all 1000 words re-evaluate");
    });
    b.guarded("c07/exhaustive-pattern-members", anchor,
              "all small pattern members decompose", [&] {
                  size_t members = 0, bad = 0;
                  for (i64 a = -9; a <= 9; ++a)
                      for (i64 bb = -9; bb <= 9; ++bb)
                          for (i64 c = -9; c <= 9; ++c)
                              for (i64 d = -9; d <= 9; ++d) {
                                  const i64 det = a * d - bb * c;
                                  if (det != 1 && det != -1) continue;
                                  const Mat2Z m{a, bb, c, d};
                                  if (!in_X(m)) continue;
                                  ++members;
                                  const DecompositionResult dec = decompose_X(m);
                                  if (!dec.verified || !(word_eval(dec.word) == m)) ++bad;
                              }
                  if (bad) return fmt_count(members, bad);
                  return std::string("all small pattern members decompose");
              });
    b.end_block("criterion 7");
}

void criterion_match(Battery& b) {
    b.start_block();
    b.guarded("c08/match-maslov", "Maslov matching within the parity-pattern group",
              "valid for every admissible pair", [&] {
                  const MaslovCovector mu{2, 2};
                  for (i64 m = -25; m <= 25; m += 2)
                      for (i64 n = -25; n <= 25; n += 2) {
                          if (std::gcd(m, n) != 1) continue;
                          const MaslovCovector nu{2 * m, 2 * n};
                          if ((((nu.m1 % 4) + 4) % 4) != 2 || (((nu.m2 % 4) + 4) % 4) != 2)
                              continue;
                          const Mat2Z g = match_maslov(nu);
                          if (!in_X(g) || !(mu.acted_by(g) == nu))
                              return "failed at nu = (" + std::to_string(nu.m1) + "," +
                                     std::to_string(nu.m2) + ")";
                      }
                  return std::string("valid for every admissible pair");
              });
    b.end_block("criterion 8");
}

void criterion_framing_defect(Battery& b, const TubeTransport& main,
                              const TubeTransport& variant) {
    b.start_block();
    const std::string anchor = "mod-4 framing defect of transported 0-framings";
    b.guarded("c09/case2-defect-mod-4", anchor, "0 mod 4", [&] {
        const i64 d = framing_defect(main);
        return d % 4 == 0 ? std::string("0 mod 4")
                          : std::to_string(d) + " not divisible by 4";
    });
    b.guarded("c09/variant-defect-mod-4", anchor, "0 mod 4", [&] {
        const i64 d = framing_defect(variant);
        return d % 4 == 0 ? std::string("0 mod 4")
                          : std::to_string(d) + " not divisible by 4";
    });
    b.end_block("criterion 9");
}

void criterion_hygiene(Battery& b, const TubeTransport& main) {
    b.start_block();
    const std::string anchor = "numerical hygiene of the flow and transport kernels";
    b.guarded("c10/hamiltonian-conservation", anchor, "drift below 1e-8", [&] {
        double worst = 0;
        FlowOptions opt;
        opt.step = b.cfg.ode_step;
        for (const Vec4& p : {Vec4{1, 0, 1, 0}, Vec4{0.3, 1.1, -0.7, 0.4}}) {
            double drift = 0;
            hamiltonian_flow_tracked(p, 1.0, opt, &drift);
            worst = std::max(worst, drift);
        }
        return worst < 1e-8 ? std::string("drift below 1e-8") : std::to_string(worst);
    });
    b.guarded("c10/flow-symplecticity", anchor, "defect below 1e-6", [&] {
        FlowOptions opt;
        opt.step = b.cfg.ode_step;
        double worst = 0;
        const Vec4 pairs[][2] = {{{1, 0, 0, 0}, {0, 1, 0, 0}},
                                 {{0.2, -0.3, 0.9, 0.1}, {-1, 0.4, 0, 0.8}},
                                 {{0, 0, 1, 0}, {0, 0, 0, 1}}};
        for (const auto& pr : pairs) {
            const Vec4 u1 = hamiltonian_flow(pr[0], 1.0, opt);
            const Vec4 v1 = hamiltonian_flow(pr[1], 1.0, opt);
            worst = std::max(worst, std::abs(omega(u1, v1) - omega(pr[0], pr[1])));
        }
        return worst < 1e-6 ? std::string("defect below 1e-6") : std::to_string(worst);
    });
    b.guarded("c10/psi-not-symplectic", anchor, "witness found", [&] {
        const Vec4 u{1, 0, 0, 0}, v{0, 1, 0, 0};
        const double defect = std::abs(omega(psi_s(0.5, u), psi_s(0.5, v)) - omega(u, v));
        return defect > 0.5 ? std::string("witness found")
                            : "no witness (defect " + std::to_string(defect) + ")";
    });
    b.guarded("c10/frame-closure", anchor, "below 1e-6", [&] {
        double worst = main.frame_start.closure_error;
        const CliffordTorus t(1, 3);
        for (const auto& [n1, n2] :
             std::vector<std::pair<i64, i64>>{{1, 0}, {0, 1}, {-1, 1}, {2, 1}}) {
            const NormalFrame f = symplectic_normal_frame(basis_curve(t, n1, n2, 256));
            worst = std::max(worst, f.closure_error);
        }
        return worst < 1e-6 ? std::string("below 1e-6") : std::to_string(worst);
    });
    b.end_block("criterion 10 (hygiene)");
}

void sort_and_summarize(VerificationSummary& s) {
    std::sort(s.records.begin(), s.records.end(),
              [](const CheckRecord& x, const CheckRecord& y) { return x.name < y.name; });
    s.overall = std::all_of(s.records.begin(), s.records.end(),
                            [](const CheckRecord& r) { return r.pass; });
}

} // namespace

void VerifyConfig::validate() const {
    if (grid_scale < 1) throw std::invalid_argument("grid_scale must be >= 1");
    if (maslov_samples < 128)
        throw std::invalid_argument("maslov_samples must be >= 128 for the basis battery");
    if (case1_samples < 64) throw std::invalid_argument("case1_samples must be >= 64");
    if (!(ode_step > 0) || ode_step > 1.0 / 64)
        throw std::invalid_argument("ode_step must be in (0, 1/64]");
    if (case2_ns < 512) throw std::invalid_argument("case2_ns must be >= 512");
    if (case2_nt < 256) throw std::invalid_argument("case2_nt must be >= 256");
    if (!(case2_eps > 0) || case2_eps >= 0.25)
        throw std::invalid_argument("case2_eps must be in (0, 0.25)");
    if (linking_grid < 16) throw std::invalid_argument("linking_grid must be >= 16");
    if (!(linking_eps > 0) || linking_eps >= 0.5)
        throw std::invalid_argument("linking_eps must be in (0, 0.5)");
}

VerificationSummary run_all_checks(const VerifyConfig& cfg) {
    cfg.validate();
    Battery b{cfg, {}, Clock::now()};
    b.out.seed = cfg.seed;

    criterion_maslov_basis(b);
    criterion_case1(b);

    // the tube transports feed both the monodromy and the framing checks
    b.start_block();
    TubeTransport main_transport, variant_transport;
    bool transport_ok = false;
    std::string transport_error;
    const int ns = cfg.case2_ns * cfg.grid_scale;
    const int nt = cfg.case2_nt * cfg.grid_scale;
    try {
        main_transport = run_tube_transport(1.0, cfg.case2_eps, ns, nt);
        variant_transport = run_tube_transport(1.0, cfg.case2_eps, ns, nt, true);
        transport_ok = true;
    } catch (const std::exception& e) {
        transport_error = e.what();
    }
    b.end_block("tube transports (shared by criteria 3 and 9)");

    if (transport_ok) {
        criterion_case2(b, main_transport, variant_transport);
    } else {
        b.add("c03/case2/monodromy", "Lagrangian monodromies f0 and f2 from transport",
              make_f(0).to_text(), "error: " + transport_error);
    }
    criterion_linking(b);
    criterion_gmu(b);
    criterion_pattern_defect(b);
    criterion_sanov(b);
    criterion_match(b);
    if (transport_ok) {
        criterion_framing_defect(b, main_transport, variant_transport);
        criterion_hygiene(b, main_transport);
    } else {
        b.add("c09/case2-defect-mod-4", "mod-4 framing defect of transported 0-framings",
              "0 mod 4", "error: " + transport_error);
    }

    sort_and_summarize(b.out);
    return b.out;
}

VerificationSummary verify_all(const VerifyConfig& cfg) {
    VerificationSummary first = run_all_checks(cfg);
    const auto t0 = Clock::now();
    const VerificationSummary second = run_all_checks(cfg);
    const bool identical = summary_to_json(first) == summary_to_json(second);

    CheckRecord det;
    det.name = "c10/report-determinism";
    det.anchor = "numerical hygiene of the flow and transport kernels";
    det.expected = "byte-identical across two runs";
    det.observed = identical ? det.expected : "reports differ";
    det.pass = identical;
    first.records.push_back(std::move(det));
    sort_and_summarize(first);
    first.timings_ms.emplace_back(
        "criterion 10 (determinism rerun)",
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    return first;
}

std::string summary_to_json(const VerificationSummary& s) {
    nlohmann::ordered_json j;
    j["seed"] = s.seed;
    j["overall_pass"] = s.overall;
    j["records"] = nlohmann::ordered_json::array();
    for (const CheckRecord& r : s.records) {
        nlohmann::ordered_json rec;
        rec["name"] = r.name;
        rec["anchor"] = r.anchor;
        rec["expected"] = r.expected;
        rec["observed"] = r.observed;
        rec["pass"] = r.pass;
        j["records"].push_back(std::move(rec));
    }
    return j.dump(2);
}

} // namespace tml
