#include "tml/maslov.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace tml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

// Orthonormalizes (u, v) in place; throws if the pair degenerates.
void orthonormalize(Vec4& u, Vec4& v) {
    const double nu = norm(u);
    if (nu < 1e-12) throw std::runtime_error("maslov: degenerate plane spanning pair");
    u = u * (1.0 / nu);
    v = v - u * dot(u, v);
    const double nv = norm(v);
    if (nv < 1e-12) throw std::runtime_error("maslov: degenerate plane spanning pair");
    v = v * (1.0 / nv);
}

// det of the 2x2 complex matrix with columns u, v; the unitarity defect
// ||U*U - I|| doubles as the Lagrangian test after orthonormalization.
cplx unitary_det(const Vec4& u, const Vec4& v, double* unitarity_defect) {
    const cplx u1 = u.z1(), u2 = u.z2(), v1 = v.z1(), v2 = v.z2();
    const cplx huu = std::conj(u1) * u1 + std::conj(u2) * u2;
    const cplx hvv = std::conj(v1) * v1 + std::conj(v2) * v2;
    const cplx huv = std::conj(u1) * v1 + std::conj(u2) * v2;
    const double defect = std::abs(huu - 1.0) + std::abs(hvv - 1.0) + 2.0 * std::abs(huv);
    if (unitarity_defect) *unitarity_defect = defect;
    return u1 * v2 - v1 * u2;
}

} // namespace

MaslovIndex maslov_index_loop(const FrameLoop& planes, std::vector<double>* phase_trace) {
    const int n = planes.size();
    if (n < 16) throw std::invalid_argument("maslov_index_loop: too few samples");
    std::vector<double> phase(n);
    for (int i = 0; i < n; ++i) {
        Vec4 u = planes.u[i], v = planes.v[i];
        orthonormalize(u, v);
        double defect = 0;
        const cplx d = unitary_det(u, v, &defect);
        if (defect > 1e-8)
            throw std::runtime_error("maslov_index_loop: plane is not Lagrangian "
                                     "(unitarity defect above 1e-8)");
        phase[i] = std::arg(d * d);
    }
    if (phase_trace) *phase_trace = phase;
    const WindingResult w = winding_of_angles(phase);
    return {w.turns, w.residual, w.max_phase_step, n};
}

FrameLoop torus_tangent_frames(const CliffordTorus& t, i64 n1, i64 n2, int n_samples) {
    if (n1 == 0 && n2 == 0)
        throw std::invalid_argument("torus_tangent_frames requires (n1, n2) != (0, 0)");
    FrameLoop f;
    f.u.resize(n_samples);
    f.v.resize(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double s = kTwoPi * i / n_samples;
        const double t1 = n1 * s, t2 = n2 * s;
        // coordinate-angle tangent vectors of the torus at the curve point
        f.u[i] = {-t.a * std::sin(t1), t.a * std::cos(t1), 0, 0};
        f.v[i] = {0, 0, -t.b * std::sin(t2), t.b * std::cos(t2)};
    }
    return f;
}

MaslovIndex maslov_class_eval(const CliffordTorus& t, i64 n1, i64 n2, int n_samples) {
    if (n1 == 0 && n2 == 0)
        throw std::invalid_argument("maslov_class_eval requires (n1, n2) != (0, 0)");
    if (n_samples < 64 * (std::llabs(n1) + std::llabs(n2)))
        throw std::invalid_argument("maslov_class_eval: need at least 64*(|n1|+|n2|) samples");
    return maslov_index_loop(torus_tangent_frames(t, n1, n2, n_samples));
}

MaslovIndex framing_index(const LoopR4& c, const Framing& sigma) {
    const int n = c.size();
    if (sigma.size() != n)
        throw std::invalid_argument("framing_index: framing and curve sample counts differ");
    FrameLoop planes;
    planes.u.resize(n);
    planes.v.resize(n);
    for (int i = 0; i < n; ++i) {
        const Vec4 vel = c.velocity_at(i);
        const double s = norm(vel);
        if (s < 1e-12) throw std::runtime_error("framing_index: vanishing tangent vector");
        planes.u[i] = vel * (1.0 / s);
        planes.v[i] = sigma.sigma[i];
    }
    return maslov_index_loop(planes);
}

Framing make_m_framing(const LoopR4& c, i64 m) {
    const NormalFrame f = symplectic_normal_frame(c);
    const int n = f.size();
    Framing e1;
    e1.sigma = f.e1;
    const MaslovIndex base = framing_index(c, e1);
    if (base.value % 2 != 0)
        throw std::runtime_error("make_m_framing: transported frame has odd index");
    const i64 k = base.value / 2;
    Framing out;
    out.sigma.resize(n);
    const double rate = static_cast<double>(m - k);
    for (int i = 0; i < n; ++i) {
        const double t = kTwoPi * i / n;
        out.sigma[i] = f.e1[i] * std::cos(rate * t) + f.e2[i] * std::sin(rate * t);
    }
    return out;
}

Framing frame_section(const NormalFrame& f, const std::vector<double>& angle) {
    if (angle.size() != static_cast<size_t>(f.size()))
        throw std::invalid_argument("frame_section: angle and frame sizes differ");
    Framing out;
    out.sigma.resize(f.size());
    for (int i = 0; i < f.size(); ++i)
        out.sigma[i] = f.e1[i] * std::cos(angle[i]) + f.e2[i] * std::sin(angle[i]);
    return out;
}

} // namespace tml
