#include "tml/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tml {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double dot(const Vec4& u, const Vec4& v) {
    return u.x1 * v.x1 + u.y1 * v.y1 + u.x2 * v.x2 + u.y2 * v.y2;
}

double norm(const Vec4& u) { return std::sqrt(dot(u, u)); }

Vec4 j0(const Vec4& u) { return {-u.y1, u.x1, -u.y2, u.x2}; }

double omega(const Vec4& u, const Vec4& v) { return dot(j0(u), v); }

CliffordTorus::CliffordTorus(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0) || !(b > 0))
        throw std::invalid_argument("Clifford torus radii must be positive");
}

Vec4 CliffordTorus::point(double t1, double t2) const {
    return {a * std::cos(t1), a * std::sin(t1), b * std::cos(t2), b * std::sin(t2)};
}

Vec4 torus_point(const CliffordTorus& t, double t1, double t2) { return t.point(t1, t2); }

LoopR4 LoopR4::from_samples(std::vector<Vec4> samples) {
    if (samples.size() < 16)
        throw std::invalid_argument("a sampled loop needs at least 16 samples");
    LoopR4 c;
    c.samples_ = std::move(samples);
    return c;
}

LoopR4 LoopR4::closed_form(Fn position, Fn velocity, int n) {
    if (n < 16) throw std::invalid_argument("a sampled loop needs at least 16 samples");
    LoopR4 c;
    c.pos_ = std::move(position);
    c.vel_ = std::move(velocity);
    c.samples_.resize(n);
    for (int i = 0; i < n; ++i) c.samples_[i] = c.pos_(kTwoPi * i / n);
    return c;
}

double LoopR4::param(int i) const { return kTwoPi * i / size(); }

Vec4 LoopR4::position(double t) const {
    if (pos_) return pos_(t);
    const int n = size();
    double u = std::fmod(t, kTwoPi);
    if (u < 0) u += kTwoPi;
    const double x = u / kTwoPi * n;
    const int i = static_cast<int>(x) % n;
    const double f = x - std::floor(x);
    const Vec4& p = samples_[i];
    const Vec4& q = samples_[(i + 1) % n];
    return p + (q - p) * f;
}

Vec4 LoopR4::velocity(double t) const {
    if (vel_) return vel_(t);
    // periodic central difference on the sample grid nearest to t
    const int n = size();
    double u = std::fmod(t, kTwoPi);
    if (u < 0) u += kTwoPi;
    const int i = static_cast<int>(std::lround(u / kTwoPi * n)) % n;
    return velocity_at(i);
}

Vec4 LoopR4::velocity_at(int i) const {
    const int n = size();
    if (vel_) return vel_(param(i));
    const Vec4& p = samples_[(i + n - 1) % n];
    const Vec4& q = samples_[(i + 1) % n];
    return (q - p) * (n / (2.0 * kTwoPi));
}

LoopR4 LoopR4::resampled(int n) const {
    if (pos_) return closed_form(pos_, vel_, n);
    std::vector<Vec4> s(n);
    for (int i = 0; i < n; ++i) s[i] = position(kTwoPi * i / n);
    return from_samples(std::move(s));
}

LoopR4 LoopR4::reversed() const {
    LoopR4 c;
    if (pos_) {
        Fn p = pos_, v = vel_;
        c.pos_ = [p](double t) { return p(-t); };
        c.vel_ = [v](double t) { return v(-t) * -1.0; };
    }
    const int n = size();
    c.samples_.resize(n);
    for (int i = 0; i < n; ++i) c.samples_[i] = samples_[(n - i) % n];
    return c;
}

LoopR4 LoopR4::translated(const Vec4& offset) const {
    LoopR4 c;
    if (pos_) {
        Fn p = pos_, v = vel_;
        c.pos_ = [p, offset](double t) { return p(t) + offset; };
        c.vel_ = v;
    }
    c.samples_ = samples_;
    for (Vec4& s : c.samples_) s = s + offset;
    return c;
}

bool LoopR4::injective_on_grid() const {
    const int n = size();
    // mean spacing sets the scale for "distinct" samples
    double mean = 0;
    for (int i = 0; i < n; ++i) mean += norm(samples_[(i + 1) % n] - samples_[i]);
    mean /= n;
    const double tol = 1e-6 * (mean > 0 ? mean : 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (norm(samples_[j] - samples_[i]) < tol) return false;
    return true;
}

LoopR4 basis_curve(const CliffordTorus& t, i64 n1, i64 n2, int n_samples) {
    if (n1 == 0 && n2 == 0)
        throw std::invalid_argument("basis_curve requires (n1, n2) != (0, 0)");
    const double a = t.a, b = t.b;
    const double w1 = static_cast<double>(n1), w2 = static_cast<double>(n2);
    auto pos = [a, b, w1, w2](double s) {
        return Vec4{a * std::cos(w1 * s), a * std::sin(w1 * s), b * std::cos(w2 * s),
                    b * std::sin(w2 * s)};
    };
    auto vel = [a, b, w1, w2](double s) {
        return Vec4{-a * w1 * std::sin(w1 * s), a * w1 * std::cos(w1 * s),
                    -b * w2 * std::sin(w2 * s), b * w2 * std::cos(w2 * s)};
    };
    return LoopR4::closed_form(pos, vel, n_samples);
}

WindingResult winding_of_angles(const std::vector<double>& theta) {
    const size_t n = theta.size();
    if (n < 2) throw std::invalid_argument("winding needs at least 2 samples");
    WindingResult r;
    double total = 0;
    for (size_t i = 0; i < n; ++i) {
        const double step = std::remainder(theta[(i + 1) % n] - theta[i], kTwoPi);
        if (std::abs(step) >= std::numbers::pi - 1e-9)
            throw std::runtime_error("winding: phase step >= pi (undersampled loop)");
        r.max_phase_step = std::max(r.max_phase_step, std::abs(step));
        total += step;
    }
    r.raw = total / kTwoPi;
    r.turns = std::llround(r.raw);
    r.residual = std::abs(r.raw - static_cast<double>(r.turns));
    return r;
}

namespace {

// Removes the components of w along the (orthonormal) pair t1, t2.
Vec4 project_out(const Vec4& w, const Vec4& t1, const Vec4& t2) {
    return w - t1 * dot(w, t1) - t2 * dot(w, t2);
}

// Unit tangent and its J0 image at sample i; throws on vanishing speed.
void tangent_pair(const LoopR4& c, int i, Vec4& that, Vec4& jhat) {
    const Vec4 v = c.velocity_at(i);
    const double s = norm(v);
    if (s < 1e-12)
        throw std::runtime_error("symplectic_normal_frame: vanishing tangent vector");
    that = v * (1.0 / s);
    jhat = j0(that);
}

} // namespace

NormalFrame symplectic_normal_frame(const LoopR4& c) {
    const int n = c.size();
    NormalFrame f;
    f.e1.resize(n);
    f.e2.resize(n);

    Vec4 that, jhat;
    tangent_pair(c, 0, that, jhat);

    // deterministic seed: first coordinate direction with a usable
    // component normal to span{C', J0 C'}
    const Vec4 axes[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    Vec4 e1{};
    bool seeded = false;
    for (const Vec4& ax : axes) {
        const Vec4 w = project_out(ax, that, jhat);
        if (norm(w) > 0.1) {
            e1 = w * (1.0 / norm(w));
            seeded = true;
            break;
        }
    }
    if (!seeded) throw std::runtime_error("symplectic_normal_frame: could not seed frame");
    const Vec4 seed = e1;
    f.e1[0] = e1;
    f.e2[0] = j0(e1); // the normal plane is J0-invariant, so this spans it

    for (int i = 1; i < n; ++i) {
        tangent_pair(c, i, that, jhat);
        const Vec4 w = project_out(e1, that, jhat);
        const double s = norm(w);
        if (s < 0.1)
            throw std::runtime_error(
                "symplectic_normal_frame: transport step degenerate (grid too coarse)");
        e1 = w * (1.0 / s);
        f.e1[i] = e1;
        f.e2[i] = j0(e1);
    }

    // close the loop: transport once more onto the starting plane and
    // measure the residual holonomy rotation
    tangent_pair(c, 0, that, jhat);
    Vec4 w = project_out(e1, that, jhat);
    if (norm(w) < 0.1)
        throw std::runtime_error(
            "symplectic_normal_frame: transport step degenerate (grid too coarse)");
    w = w * (1.0 / norm(w));
    const double alpha = std::atan2(dot(w, j0(seed)), dot(w, seed));

    // spread the inverse rotation uniformly so the frame closes up
    for (int i = 1; i < n; ++i) {
        const double phi = -alpha * i / n;
        const Vec4 r = f.e1[i] * std::cos(phi) + f.e2[i] * std::sin(phi);
        f.e1[i] = r * (1.0 / norm(r));
        f.e2[i] = j0(f.e1[i]);
    }

    // report how well the corrected loop closes
    tangent_pair(c, 0, that, jhat);
    Vec4 back = project_out(f.e1[n - 1], that, jhat);
    back = back * (1.0 / norm(back));
    const double step = -alpha / n; // correction the wrap-around step would get
    const Vec4 closed = back * std::cos(step) + j0(back) * std::sin(step);
    f.closure_error = std::abs(std::atan2(dot(closed, j0(seed)), dot(closed, seed)));
    return f;
}

H1Readout homology_class_on_torus(const LoopR4& curve, const CliffordTorus& t,
                                  double position_tol) {
    const int n = curve.size();
    std::vector<double> arg1(n), arg2(n);
    H1Readout out;
    const double tol1 = position_tol * std::max(1.0, t.a);
    const double tol2 = position_tol * std::max(1.0, t.b);
    for (int i = 0; i < n; ++i) {
        const Vec4& p = curve.samples()[i];
        const double r1 = std::abs(p.z1());
        const double r2 = std::abs(p.z2());
        if (std::abs(r1 - t.a) > tol1 || std::abs(r2 - t.b) > tol2)
            throw std::invalid_argument("homology_class_on_torus: curve leaves the torus");
        arg1[i] = std::arg(p.z1());
        arg2[i] = std::arg(p.z2());
    }
    const WindingResult w1 = winding_of_angles(arg1);
    const WindingResult w2 = winding_of_angles(arg2);
    out.cls = {w1.turns, w2.turns};
    out.max_residual = std::max(w1.residual, w2.residual);
    out.max_phase_step = std::max(w1.max_phase_step, w2.max_phase_step);
    return out;
}

} // namespace tml
