#pragma once

#include "tml/mat2z.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace tml {

/// Point or vector of R^4 identified with C^2 via z1 = x1 + i y1,
/// z2 = x2 + i y2.
struct Vec4 {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

    Vec4 operator+(const Vec4& o) const { return {x1 + o.x1, y1 + o.y1, x2 + o.x2, y2 + o.y2}; }
    Vec4 operator-(const Vec4& o) const { return {x1 - o.x1, y1 - o.y1, x2 - o.x2, y2 - o.y2}; }
    Vec4 operator*(double s) const { return {x1 * s, y1 * s, x2 * s, y2 * s}; }

    std::complex<double> z1() const { return {x1, y1}; }
    std::complex<double> z2() const { return {x2, y2}; }
    static Vec4 from_complex(std::complex<double> z1, std::complex<double> z2) {
        return {z1.real(), z1.imag(), z2.real(), z2.imag()};
    }
};

double dot(const Vec4& u, const Vec4& v);
double norm(const Vec4& u);

/// Standard complex structure: (x1,y1,x2,y2) -> (-y1,x1,-y2,x2).
Vec4 j0(const Vec4& u);

/// Standard symplectic form dx1^dy1 + dx2^dy2; equals <j0(u), v>.
double omega(const Vec4& u, const Vec4& v);

struct CliffordTorus {
    double a = 1, b = 1;

    CliffordTorus(double a_, double b_);
    Vec4 point(double t1, double t2) const;
};

/// Closed curve in R^4. Always carries uniform samples over [0, 2pi)
/// with implicit closure; closed-form curves also carry position and
/// velocity callables so downstream quadratures can use exact values.
class LoopR4 {
public:
    using Fn = std::function<Vec4(double)>;

    /// Curve from samples only; velocities come from periodic central
    /// differences. Requires at least 16 samples.
    static LoopR4 from_samples(std::vector<Vec4> samples);

    /// Closed-form curve sampled at n points.
    static LoopR4 closed_form(Fn position, Fn velocity, int n);

    int size() const { return static_cast<int>(samples_.size()); }
    const std::vector<Vec4>& samples() const { return samples_; }
    double param(int i) const;
    bool has_closed_form() const { return static_cast<bool>(pos_); }

    /// Position at arbitrary parameter: closed form when available,
    /// periodic linear interpolation otherwise.
    Vec4 position(double t) const;
    Vec4 velocity(double t) const;
    Vec4 velocity_at(int i) const;

    LoopR4 resampled(int n) const;
    LoopR4 reversed() const;
    LoopR4 translated(const Vec4& offset) const;

    /// Grid-level embeddedness: no two samples closer than a small
    /// fraction of the mean sample spacing.
    bool injective_on_grid() const;

private:
    std::vector<Vec4> samples_;
    Fn pos_, vel_;
};

/// Loop of oriented 2-planes along a parameter circle, each spanned by
/// the ordered orthonormal pair (u[i], v[i]).
struct FrameLoop {
    std::vector<Vec4> u, v;
    int size() const { return static_cast<int>(u.size()); }
};

/// Result of a winding-number readout: raw (possibly fractional) value,
/// nearest integer, and unwrapping diagnostics.
struct WindingResult {
    double raw = 0;
    i64 turns = 0;
    double residual = 0;
    double max_phase_step = 0;
};

/// Winding of a closed sequence of angles (radians); steps are wrapped
/// to (-pi, pi] and a step of magnitude >= pi is a hard error.
WindingResult winding_of_angles(const std::vector<double>& theta);

/// Point on the torus T_{a,b} at angles (t1, t2).
Vec4 torus_point(const CliffordTorus& t, double t1, double t2);

/// Curve t -> (a e^{i n1 t}, b e^{i n2 t}) representing n1*gamma1 + n2*gamma2.
LoopR4 basis_curve(const CliffordTorus& t, i64 n1, i64 n2, int n_samples);

/// Orthonormal frame (e1, e2 = J0 e1) of the symplectic normal bundle,
/// i.e. the orthogonal complement of span{C', J0 C'}, transported by
/// per-step projection and closed up by spreading the residual holonomy
/// rotation uniformly around the loop.
struct NormalFrame {
    std::vector<Vec4> e1, e2;
    double closure_error = 0; // angle mismatch after the closing correction
    int size() const { return static_cast<int>(e1.size()); }
};

NormalFrame symplectic_normal_frame(const LoopR4& c);

struct H1Readout {
    H1Class cls;
    double max_residual = 0;
    double max_phase_step = 0;
};

/// Reads the class of a curve lying on T_{a,b} from the windings of
/// arg z1 and arg z2. Rejects curves off the torus or undersampled.
H1Readout homology_class_on_torus(const LoopR4& curve, const CliffordTorus& t,
                                  double position_tol = 1e-6);

} // namespace tml
