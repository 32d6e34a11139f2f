#pragma once

#include "tml/geometry.hpp"

namespace tml {

/// Parametrized closed surface (t1, t2) -> R^4 on a uniform grid,
/// closed in both directions. Clifford tori carry closed forms so the
/// quadrature can use analytic partial derivatives.
class TorusSurface {
public:
    using Fn2 = std::function<Vec4(double, double)>;

    static TorusSurface clifford(const CliffordTorus& t);
    /// Grid row-major with t1 the outer index: grid[i*n2 + j].
    static TorusSurface from_grid(std::vector<Vec4> grid, int n1, int n2);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    bool has_closed_form() const { return static_cast<bool>(pos_); }

    Vec4 position(double t1, double t2) const;
    Vec4 du1(double t1, double t2) const; // partial along t1
    Vec4 du2(double t1, double t2) const; // partial along t2
    Vec4 sample(int i, int j) const;

    /// Distance from a point to the surface: exact for Clifford tori,
    /// nearest grid sample otherwise.
    double distance_to(const Vec4& p) const;

private:
    std::vector<Vec4> grid_;
    int n1_ = 0, n2_ = 0;
    Fn2 pos_, d1_, d2_;
    double clifford_a_ = 0, clifford_b_ = 0; // set when built from a Clifford torus
};

struct DegreeResult {
    double raw = 0;
    int rounded = 0;
    double residual = 0;
};

struct LinkingGrid {
    int ns = 64; // curve parameter
    int n1 = 64; // surface t1
    int n2 = 64; // surface t2
};

/// Degree of the Gauss map (s,t1,t2) -> (C(s) - L(t1,t2))/|..| from
/// S^1 x T^2 to S^3, by midpoint quadrature of the pulled-back volume
/// form over the product grid. Throws if curve and surface touch or the
/// result is further than 0.25 from an integer. s_trace, when given,
/// receives the per-s-node contribution to the degree.
DegreeResult gauss_linking(const LoopR4& c, const TorusSurface& l,
                           const LinkingGrid& grid = {},
                           std::vector<double>* s_trace = nullptr);

/// Independent combinatorial route: counts signed preimages of a
/// regular direction under the Gauss map (grid scan + Newton polish).
/// Throws if the direction is not regular at grid resolution.
int preimage_degree_oracle(const LoopR4& c, const TorusSurface& l, const Vec4& direction,
                           const LinkingGrid& grid = {});

/// Linking-class evaluation: push the (n1, n2) curve off along
/// eps * J0 v with v its unit tangent field and link against the torus.
/// Vanishes for every class on a Clifford torus.
DegreeResult linking_class_eval(const CliffordTorus& t, i64 n1, i64 n2, double eps,
                                const LinkingGrid& grid = {}, int curve_samples = 256);

/// The pushed-off curve used by linking_class_eval (exposed for tests).
LoopR4 pushed_off_curve(const CliffordTorus& t, i64 n1, i64 n2, double eps,
                        int curve_samples = 256);

} // namespace tml
