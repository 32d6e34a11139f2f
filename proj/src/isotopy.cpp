#include "tml/isotopy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tml {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
}

double rotation_hamiltonian(const Vec4& p) {
    return kPi / 2 * (p.x2 * p.y1 - p.x1 * p.y2);
}

Vec4 rotation_field(const Vec4& p) {
    return Vec4{-p.x2, -p.y2, p.x1, p.y1} * (kPi / 2);
}

Vec4 rotation_closed_form(double s, const Vec4& p) {
    const double c = std::cos(kPi * s / 2), sn = std::sin(kPi * s / 2);
    return {p.x1 * c - p.x2 * sn, p.y1 * c - p.y2 * sn, p.x1 * sn + p.x2 * c,
            p.y1 * sn + p.y2 * c};
}

namespace {

// quintic smoothstep profile: 1 below r0, 0 above r1, C^2 in between
double bump(double r, double r0, double r1, double* dbump) {
    if (r <= r0) {
        if (dbump) *dbump = 0;
        return 1;
    }
    if (r >= r1) {
        if (dbump) *dbump = 0;
        return 0;
    }
    const double u = (r - r0) / (r1 - r0);
    const double s = u * u * u * (10 - 15 * u + 6 * u * u);
    if (dbump) *dbump = -(30 * u * u * (1 - u) * (1 - u)) / (r1 - r0);
    return 1 - s;
}

Vec4 flow_field(const Vec4& p, const FlowOptions& opt) {
    if (!opt.with_cutoff) return rotation_field(p);
    const double r = norm(p);
    double dchi = 0;
    const double chi = bump(r, opt.cutoff_r0, opt.cutoff_r1, &dchi);
    Vec4 out = rotation_field(p) * chi;
    if (dchi != 0 && r > 0)
        out = out + j0(p) * (rotation_hamiltonian(p) * dchi / r);
    return out;
}

} // namespace

Vec4 hamiltonian_flow_tracked(const Vec4& p0, double s, const FlowOptions& opt,
                              double* max_drift) {
    if (s < 0 || s > 1) throw std::invalid_argument("hamiltonian_flow: s must be in [0, 1]");
    if (!(opt.step > 0) || opt.step > 1.0 / 64)
        throw std::invalid_argument("hamiltonian_flow: step must be in (0, 1/64]");
    if (opt.with_cutoff && !(opt.cutoff_r1 > opt.cutoff_r0 && opt.cutoff_r0 > 0))
        throw std::invalid_argument("hamiltonian_flow: cutoff radii must satisfy 0 < r0 < r1");
    const double h0 = rotation_hamiltonian(p0);
    double drift = 0;
    Vec4 p = p0;
    double t = 0;
    while (t < s - 1e-15) {
        const double h = std::min(opt.step, s - t);
        const Vec4 k1 = flow_field(p, opt);
        const Vec4 k2 = flow_field(p + k1 * (h / 2), opt);
        const Vec4 k3 = flow_field(p + k2 * (h / 2), opt);
        const Vec4 k4 = flow_field(p + k3 * h, opt);
        p = p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
        t += h;
        if (max_drift) drift = std::max(drift, std::abs(rotation_hamiltonian(p) - h0));
    }
    if (max_drift) *max_drift = drift;
    return p;
}

Vec4 hamiltonian_flow(const Vec4& p0, double s, const FlowOptions& opt) {
    return hamiltonian_flow_tracked(p0, s, opt, nullptr);
}

IsotopyReport simulate_case1(double b, int n_samples, const FlowOptions& opt) {
    if (!(b > 0)) throw std::invalid_argument("simulate_case1: b must be positive");
    if (n_samples < 64) throw std::invalid_argument("simulate_case1: need at least 64 samples");
    const CliffordTorus torus(b, b);

    IsotopyReport rep;
    rep.diag.ode_step = opt.step;
    rep.diag.ns = static_cast<int>(std::lround(1.0 / opt.step));
    rep.diag.nt = n_samples;

    H1Class cols[2];
    for (int which = 0; which < 2; ++which) {
        const LoopR4 start =
            basis_curve(torus, which == 0 ? 1 : 0, which == 0 ? 0 : 1, n_samples);
        std::vector<Vec4> image(n_samples);
        for (int i = 0; i < n_samples; ++i) {
            double drift = 0;
            const Vec4 p = start.samples()[i];
            image[i] = hamiltonian_flow_tracked(p, 1.0, opt, &drift);
            rep.diag.max_hamiltonian_drift = std::max(rep.diag.max_hamiltonian_drift, drift);
            rep.diag.flow_endpoint_error = std::max(
                rep.diag.flow_endpoint_error, norm(image[i] - rotation_closed_form(1.0, p)));
            const double e1 = std::abs(std::abs(image[i].z1()) - b);
            const double e2 = std::abs(std::abs(image[i].z2()) - b);
            rep.diag.on_torus_error = std::max({rep.diag.on_torus_error, e1, e2});
        }
        const H1Readout h = homology_class_on_torus(LoopR4::from_samples(image), torus);
        cols[which] = h.cls;
        rep.diag.max_winding_residual = std::max(rep.diag.max_winding_residual, h.max_residual);
    }
    rep.gamma1_image = cols[0];
    rep.gamma2_image = cols[1];
    rep.monodromy = {cols[0].n1, cols[1].n1, cols[0].n2, cols[1].n2};
    return rep;
}

Vec4 psi_s(double s, const Vec4& p) {
    const double c = std::cos(kPi * s), sn = std::sin(kPi * s);
    return {p.x1 * c - p.y2 * sn, p.y1, p.x2, p.y2 * c + p.x1 * sn};
}

namespace {

// Core circle and its derivative for the two tube constructions.
Vec4 core_point(bool variant, double radius, double t) {
    if (variant) return {radius * std::cos(t), radius * std::sin(t), 0, 0};
    return {0, 0, radius * std::cos(t), radius * std::sin(t)};
}

Vec4 core_velocity(bool variant, double radius, double t) {
    if (variant) return {-radius * std::sin(t), radius * std::cos(t), 0, 0};
    return {0, 0, -radius * std::sin(t), radius * std::cos(t)};
}

LoopR4 core_loop(bool variant, double radius, int n, double s) {
    auto pos = [=](double t) { return psi_s(s, core_point(variant, radius, t)); };
    auto vel = [=](double t) { return psi_s(s, core_velocity(variant, radius, t)); };
    return LoopR4::closed_form(pos, vel, n);
}

} // namespace

TubeTransport run_tube_transport(double radius, double eps, int ns, int nt, bool variant) {
    if (!(radius > 0)) throw std::invalid_argument("tube transport: radius must be positive");
    if (!(eps > 0) || eps >= radius / 4)
        throw std::invalid_argument("tube transport: need 0 < eps << radius (eps < radius/4)");
    if (ns < 512 || nt < 256)
        throw std::invalid_argument("tube transport: need ns >= 512 and nt >= 256");

    TubeTransport out;
    out.variant = variant;
    out.radius = radius;
    out.eps = eps;
    out.ns = ns;
    out.nt = nt;
    out.core_start = core_loop(variant, radius, nt, 0.0);
    out.core_end = core_loop(variant, radius, nt, 1.0);
    out.frame_start = symplectic_normal_frame(out.core_start);

    // per-t transport across s: project the frame onto the next normal
    // plane and renormalize; e2 stays J0 e1 because the plane is
    // J0-invariant
    out.frame_end.e1.resize(nt);
    out.frame_end.e2.resize(nt);
    out.frame_end.closure_error = out.frame_start.closure_error;
    for (int i = 0; i < nt; ++i) {
        const double t = kTwoPi * i / nt;
        Vec4 e1 = out.frame_start.e1[i];
        for (int j = 1; j <= ns; ++j) {
            const double s = static_cast<double>(j) / ns;
            const Vec4 vel = psi_s(s, core_velocity(variant, radius, t));
            const Vec4 that = vel * (1.0 / norm(vel));
            const Vec4 jhat = j0(that);
            Vec4 w = e1 - that * dot(e1, that) - jhat * dot(e1, jhat);
            const double nw = norm(w);
            if (nw < 0.5)
                throw std::runtime_error("tube transport: degenerate step (ns too small)");
            e1 = w * (1.0 / nw);
        }
        out.frame_end.e1[i] = e1;
        out.frame_end.e2[i] = j0(e1);
    }
    return out;
}

IsotopyReport report_from_transport(const TubeTransport& t) {
    // the tube lies on the Clifford torus with the fiber radius in the
    // complementary coordinate plane
    const CliffordTorus torus = t.variant ? CliffordTorus(t.radius, t.eps)
                                          : CliffordTorus(t.eps, t.radius);
    IsotopyReport rep;
    rep.diag.ode_step = 1.0 / t.ns;
    rep.diag.ns = t.ns;
    rep.diag.nt = t.nt;
    rep.diag.frame_closure_error = t.frame_end.closure_error;

    const int ntheta = t.nt;
    auto tube_point = [&](int itheta, int it) {
        const double theta = kTwoPi * itheta / ntheta;
        const Vec4 fiber = t.frame_end.e1[it] * std::cos(theta) +
                           t.frame_end.e2[it] * std::sin(theta);
        return t.core_end.samples()[it] + fiber * t.eps;
    };

    // theta-cycle image (fixed t = 0) and t-cycle image (fixed theta = 0)
    std::vector<Vec4> theta_cycle(ntheta), t_cycle(t.nt);
    for (int i = 0; i < ntheta; ++i) theta_cycle[i] = tube_point(i, 0);
    for (int i = 0; i < t.nt; ++i) t_cycle[i] = tube_point(0, i);

    double on_torus = 0;
    for (const Vec4& p : theta_cycle) {
        on_torus = std::max(on_torus, std::abs(std::abs(p.z1()) - torus.a));
        on_torus = std::max(on_torus, std::abs(std::abs(p.z2()) - torus.b));
    }
    for (const Vec4& p : t_cycle) {
        on_torus = std::max(on_torus, std::abs(std::abs(p.z1()) - torus.a));
        on_torus = std::max(on_torus, std::abs(std::abs(p.z2()) - torus.b));
    }
    rep.diag.on_torus_error = on_torus;

    const H1Readout h_theta =
        homology_class_on_torus(LoopR4::from_samples(theta_cycle), torus);
    const H1Readout h_t = homology_class_on_torus(LoopR4::from_samples(t_cycle), torus);
    rep.diag.max_winding_residual = std::max(h_theta.max_residual, h_t.max_residual);

    // at s = 0 the theta-cycle is gamma1 and the t-cycle gamma2 for the
    // z2-plane core; the variant swaps the roles
    if (!t.variant) {
        rep.gamma1_image = h_theta.cls;
        rep.gamma2_image = h_t.cls;
    } else {
        rep.gamma1_image = h_t.cls;
        rep.gamma2_image = h_theta.cls;
    }
    rep.monodromy = {rep.gamma1_image.n1, rep.gamma2_image.n1, rep.gamma1_image.n2,
                     rep.gamma2_image.n2};
    return rep;
}

IsotopyReport simulate_case2(double b, double eps, int ns, int nt) {
    return report_from_transport(run_tube_transport(b, eps, ns, nt, false));
}

IsotopyReport simulate_case2_variant(double a, double eps, int ns, int nt) {
    return report_from_transport(run_tube_transport(a, eps, ns, nt, true));
}

i64 framing_defect(const TubeTransport& t) {
    // express the 0-framing of the start curve in the start frame
    const Framing zero_start = make_m_framing(t.core_start, 0);
    const int n = t.nt;
    std::vector<double> angle(n);
    for (int i = 0; i < n; ++i) {
        const Vec4& s = zero_start.sigma[i];
        angle[i] = std::atan2(dot(s, t.frame_start.e2[i]), dot(s, t.frame_start.e1[i]));
    }
    // carry the section across via the transported frame
    Framing carried = frame_section(t.frame_end, angle);
    const MaslovIndex carried_idx = framing_index(t.core_end, carried);

    const Framing zero_end = make_m_framing(t.core_end, 0);
    const MaslovIndex fresh_idx = framing_index(t.core_end, zero_end);
    return carried_idx.value - fresh_idx.value;
}

IsotopyReport clifford_path_transport(const std::vector<std::pair<double, double>>& path,
                                      int n_samples) {
    if (path.size() < 2)
        throw std::invalid_argument("clifford_path_transport: path needs at least 2 samples");
    for (const auto& [a, b] : path)
        if (!(a > 0) || !(b > 0))
            throw std::invalid_argument("clifford_path_transport: radii must stay positive");
    const CliffordTorus start(path.front().first, path.front().second);
    const CliffordTorus end(path.back().first, path.back().second);

    IsotopyReport rep;
    rep.diag.ns = static_cast<int>(path.size());
    rep.diag.nt = n_samples;

    H1Class cols[2];
    for (int which = 0; which < 2; ++which) {
        const LoopR4 c = basis_curve(start, which == 0 ? 1 : 0, which == 0 ? 0 : 1, n_samples);
        std::vector<Vec4> pts = c.samples();
        // rescale radii step by step along the path
        for (size_t k = 1; k < path.size(); ++k) {
            const double sa = path[k].first / path[k - 1].first;
            const double sb = path[k].second / path[k - 1].second;
            for (Vec4& p : pts) p = {p.x1 * sa, p.y1 * sa, p.x2 * sb, p.y2 * sb};
        }
        const H1Readout h = homology_class_on_torus(LoopR4::from_samples(std::move(pts)), end);
        cols[which] = h.cls;
        rep.diag.max_winding_residual = std::max(rep.diag.max_winding_residual, h.max_residual);
    }
    rep.gamma1_image = cols[0];
    rep.gamma2_image = cols[1];
    rep.monodromy = {cols[0].n1, cols[1].n1, cols[0].n2, cols[1].n2};
    return rep;
}

Mat2Z induced_h1_map(const TorusMapGrid& map) {
    if (map.n_theta < 16 || map.n_t < 16 ||
        map.f.size() != static_cast<size_t>(map.n_theta) * map.n_t ||
        map.g.size() != map.f.size())
        throw std::invalid_argument("induced_h1_map: grid must be n_theta x n_t, >= 16 each");

    auto winding_along_theta = [&](int jt) {
        std::vector<double> fs(map.n_theta), gs(map.n_theta);
        for (int i = 0; i < map.n_theta; ++i) {
            fs[i] = map.fval(i, jt);
            gs[i] = map.gval(i, jt);
        }
        return H1Class{winding_of_angles(fs).turns, winding_of_angles(gs).turns};
    };
    auto winding_along_t = [&](int itheta) {
        std::vector<double> fs(map.n_t), gs(map.n_t);
        for (int j = 0; j < map.n_t; ++j) {
            fs[j] = map.fval(itheta, j);
            gs[j] = map.gval(itheta, j);
        }
        return H1Class{winding_of_angles(fs).turns, winding_of_angles(gs).turns};
    };

    const H1Class col1 = winding_along_theta(0);
    const H1Class col2 = winding_along_t(0);
    // a sampled homeomorphism gives the same windings on parallel cycles
    if (!(winding_along_theta(map.n_t / 2) == col1) ||
        !(winding_along_t(map.n_theta / 2) == col2))
        throw std::runtime_error("induced_h1_map: inconsistent windings across the grid "
                                 "(map undersampled or not a torus map)");
    return {col1.n1, col2.n1, col1.n2, col2.n2};
}

} // namespace tml
