#include "tml/linking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kVolS3 = 2.0 * std::numbers::pi * std::numbers::pi;

// Overall sign fixed so that a small meridian disc transverse to the
// torus links once positively; see the calibration test.
constexpr double kOrientation = -1.0;

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
    const double m[4][4] = {{a.x1, b.x1, c.x1, d.x1},
                            {a.y1, b.y1, c.y1, d.y1},
                            {a.x2, b.x2, c.x2, d.x2},
                            {a.y2, b.y2, c.y2, d.y2}};
    // cofactor expansion along the first row with 2x2 minors
    auto minor3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    return m[0][0] * minor3(1, 2, 3, 1, 2, 3) - m[0][1] * minor3(1, 2, 3, 0, 2, 3) +
           m[0][2] * minor3(1, 2, 3, 0, 1, 3) - m[0][3] * minor3(1, 2, 3, 0, 1, 2);
}

} // namespace

TorusSurface TorusSurface::clifford(const CliffordTorus& t) {
    TorusSurface s;
    const double a = t.a, b = t.b;
    s.pos_ = [a, b](double t1, double t2) {
        return Vec4{a * std::cos(t1), a * std::sin(t1), b * std::cos(t2), b * std::sin(t2)};
    };
    s.d1_ = [a](double t1, double) { return Vec4{-a * std::sin(t1), a * std::cos(t1), 0, 0}; };
    s.d2_ = [b](double, double t2) { return Vec4{0, 0, -b * std::sin(t2), b * std::cos(t2)}; };
    s.n1_ = 64;
    s.n2_ = 64;
    s.grid_.resize(static_cast<size_t>(s.n1_) * s.n2_);
    for (int i = 0; i < s.n1_; ++i)
        for (int j = 0; j < s.n2_; ++j)
            s.grid_[static_cast<size_t>(i) * s.n2_ + j] =
                s.pos_(kTwoPi * i / s.n1_, kTwoPi * j / s.n2_);
    s.clifford_a_ = a;
    s.clifford_b_ = b;
    return s;
}

double TorusSurface::distance_to(const Vec4& p) const {
    if (clifford_a_ > 0)
        return std::hypot(std::abs(p.z1()) - clifford_a_, std::abs(p.z2()) - clifford_b_);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec4& q : grid_) best = std::min(best, norm(p - q));
    return best;
}

TorusSurface TorusSurface::from_grid(std::vector<Vec4> grid, int n1, int n2) {
    if (n1 < 8 || n2 < 8 || grid.size() != static_cast<size_t>(n1) * n2)
        throw std::invalid_argument("TorusSurface grid must be n1 x n2 with n1, n2 >= 8");
    TorusSurface s;
    s.grid_ = std::move(grid);
    s.n1_ = n1;
    s.n2_ = n2;
    return s;
}

Vec4 TorusSurface::sample(int i, int j) const {
    return grid_[static_cast<size_t>(((i % n1_) + n1_) % n1_) * n2_ + (((j % n2_) + n2_) % n2_)];
}

Vec4 TorusSurface::position(double t1, double t2) const {
    if (pos_) return pos_(t1, t2);
    // bilinear periodic interpolation
    auto wrap = [](double t, int n) {
        double u = std::fmod(t, kTwoPi);
        if (u < 0) u += kTwoPi;
        return u / kTwoPi * n;
    };
    const double x = wrap(t1, n1_), y = wrap(t2, n2_);
    const int i = static_cast<int>(x) % n1_, j = static_cast<int>(y) % n2_;
    const double fx = x - std::floor(x), fy = y - std::floor(y);
    const Vec4 p00 = sample(i, j), p10 = sample(i + 1, j);
    const Vec4 p01 = sample(i, j + 1), p11 = sample(i + 1, j + 1);
    return p00 * ((1 - fx) * (1 - fy)) + p10 * (fx * (1 - fy)) + p01 * ((1 - fx) * fy) +
           p11 * (fx * fy);
}

Vec4 TorusSurface::du1(double t1, double t2) const {
    if (d1_) return d1_(t1, t2);
    const double h = kTwoPi / n1_;
    return (position(t1 + h, t2) - position(t1 - h, t2)) * (1.0 / (2 * h));
}

Vec4 TorusSurface::du2(double t1, double t2) const {
    if (d2_) return d2_(t1, t2);
    const double h = kTwoPi / n2_;
    return (position(t1, t2 + h) - position(t1, t2 - h)) * (1.0 / (2 * h));
}

namespace {

double min_separation(const LoopR4& c, const TorusSurface& l, const LinkingGrid& grid) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.ns; ++i)
        best = std::min(best, l.distance_to(c.position(kTwoPi * (i + 0.5) / grid.ns)));
    for (const Vec4& p : c.samples()) best = std::min(best, l.distance_to(p));
    return best;
}

void require_separated(const LoopR4& c, const TorusSurface& l, const LinkingGrid& grid,
                       const char* who) {
    if (min_separation(c, l, grid) < 1e-9)
        throw std::runtime_error(std::string(who) + ": curve touches the surface");
}

} // namespace

DegreeResult gauss_linking(const LoopR4& c, const TorusSurface& l, const LinkingGrid& grid,
                           std::vector<double>* s_trace) {
    if (grid.ns < 16 || grid.n1 < 16 || grid.n2 < 16)
        throw std::invalid_argument("gauss_linking: grid too coarse (minimum 16 per axis)");
    require_separated(c, l, grid, "gauss_linking");

    // precompute curve and surface tables at midpoint nodes
    std::vector<Vec4> cp(grid.ns), cv(grid.ns);
    for (int i = 0; i < grid.ns; ++i) {
        const double s = kTwoPi * (i + 0.5) / grid.ns;
        cp[i] = c.position(s);
        cv[i] = c.velocity(s);
    }
    std::vector<Vec4> lp(static_cast<size_t>(grid.n1) * grid.n2);
    std::vector<Vec4> l1(lp.size()), l2(lp.size());
    for (int j = 0; j < grid.n1; ++j)
        for (int k = 0; k < grid.n2; ++k) {
            const double t1 = kTwoPi * (j + 0.5) / grid.n1;
            const double t2 = kTwoPi * (k + 0.5) / grid.n2;
            const size_t idx = static_cast<size_t>(j) * grid.n2 + k;
            lp[idx] = l.position(t1, t2);
            l1[idx] = l.du1(t1, t2);
            l2[idx] = l.du2(t1, t2);
        }

    const double cell = (kTwoPi / grid.ns) * (kTwoPi / grid.n1) * (kTwoPi / grid.n2);
    if (s_trace) s_trace->assign(grid.ns, 0.0);
    double sum = 0;
    for (int i = 0; i < grid.ns; ++i) {
        double slice = 0;
        for (int j = 0; j < grid.n1; ++j)
            for (int k = 0; k < grid.n2; ++k) {
                const size_t idx = static_cast<size_t>(j) * grid.n2 + k;
                const Vec4 g = cp[i] - lp[idx];
                const double r2 = dot(g, g);
                slice += det4(g, cv[i], l1[idx], l2[idx]) / (r2 * r2);
            }
        sum += slice;
        if (s_trace) (*s_trace)[i] = kOrientation * slice * cell / kVolS3;
    }
    DegreeResult out;
    out.raw = kOrientation * sum * cell / kVolS3;
    out.rounded = static_cast<int>(std::lround(out.raw));
    out.residual = std::abs(out.raw - out.rounded);
    if (out.residual > 0.25)
        throw std::runtime_error("gauss_linking: inconclusive degree (residual > 0.25); "
                                 "refine the grid");
    return out;
}

namespace {

struct GaussMap {
    const LoopR4& c;
    const TorusSurface& l;

    Vec4 value(double s, double t1, double t2) const {
        const Vec4 g = c.position(s) - l.position(t1, t2);
        return g * (1.0 / norm(g));
    }
    // partials of the normalized map
    void partials(double s, double t1, double t2, Vec4& ds, Vec4& d1, Vec4& d2) const {
        const Vec4 g = c.position(s) - l.position(t1, t2);
        const double r = norm(g);
        const Vec4 gh = g * (1.0 / r);
        auto project = [&](const Vec4& dg) { return (dg - gh * dot(gh, dg)) * (1.0 / r); };
        ds = project(c.velocity(s));
        d1 = project(l.du1(t1, t2) * -1.0);
        d2 = project(l.du2(t1, t2) * -1.0);
    }
};

} // namespace

int preimage_degree_oracle(const LoopR4& c, const TorusSurface& l, const Vec4& direction,
                           const LinkingGrid& grid) {
    const double dn = norm(direction);
    if (dn < 1e-12) throw std::invalid_argument("preimage_degree_oracle: zero direction");
    require_separated(c, l, grid, "preimage_degree_oracle");
    const Vec4 dir = direction * (1.0 / dn);
    GaussMap gm{c, l};

    // orthonormal basis of the tangent space of S^3 at dir
    Vec4 q[3];
    {
        const Vec4 axes[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
        int filled = 0;
        for (const Vec4& ax : axes) {
            Vec4 w = ax - dir * dot(ax, dir);
            for (int k = 0; k < filled; ++k) w = w - q[k] * dot(q[k], w);
            if (norm(w) > 0.3 && filled < 3) q[filled++] = w * (1.0 / norm(w));
            if (filled == 3) break;
        }
        if (filled != 3)
            throw std::runtime_error("preimage_degree_oracle: failed to frame the direction");
    }

    struct Solution {
        double s, t1, t2;
        int sign;
    };
    std::vector<Solution> sols;

    auto wrap = [](double x) {
        double u = std::fmod(x, kTwoPi);
        return u < 0 ? u + kTwoPi : u;
    };

    // scan the dot product against the direction and seed Newton from
    // every local maximum above a loose floor; tight thresholds can
    // miss preimages where the Gauss map moves fast across a cell
    std::vector<double> dots(static_cast<size_t>(grid.ns) * grid.n1 * grid.n2);
    auto at = [&](int i, int j, int k) -> double& {
        const int ii = ((i % grid.ns) + grid.ns) % grid.ns;
        const int jj = ((j % grid.n1) + grid.n1) % grid.n1;
        const int kk = ((k % grid.n2) + grid.n2) % grid.n2;
        return dots[(static_cast<size_t>(ii) * grid.n1 + jj) * grid.n2 + kk];
    };
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.n1; ++j)
            for (int k = 0; k < grid.n2; ++k)
                at(i, j, k) = dot(gm.value(kTwoPi * (i + 0.5) / grid.ns,
                                           kTwoPi * (j + 0.5) / grid.n1,
                                           kTwoPi * (k + 0.5) / grid.n2),
                                  dir);

    const double floor = 0.5;
    for (int i = 0; i < grid.ns; ++i)
        for (int j = 0; j < grid.n1; ++j)
            for (int k = 0; k < grid.n2; ++k) {
                const double d0 = at(i, j, k);
                if (d0 < floor) continue;
                if (d0 < at(i - 1, j, k) || d0 < at(i + 1, j, k) || d0 < at(i, j - 1, k) ||
                    d0 < at(i, j + 1, k) || d0 < at(i, j, k - 1) || d0 < at(i, j, k + 1))
                    continue;
                double s = kTwoPi * (i + 0.5) / grid.ns;
                double t1 = kTwoPi * (j + 0.5) / grid.n1;
                double t2 = kTwoPi * (k + 0.5) / grid.n2;

                // Newton iteration on the projection of gauss - dir onto
                // the tangent space at dir
                bool converged = false;
                for (int it = 0; it < 40; ++it) {
                    const Vec4 val = gm.value(s, t1, t2);
                    const double f[3] = {dot(q[0], val), dot(q[1], val), dot(q[2], val)};
                    const double fn = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
                    if (fn < 1e-12 && dot(val, dir) > 0) {
                        converged = true;
                        break;
                    }
                    Vec4 ds, d1, d2;
                    gm.partials(s, t1, t2, ds, d1, d2);
                    double jac[3][3] = {{dot(q[0], ds), dot(q[0], d1), dot(q[0], d2)},
                                        {dot(q[1], ds), dot(q[1], d1), dot(q[1], d2)},
                                        {dot(q[2], ds), dot(q[2], d1), dot(q[2], d2)}};
                    const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                                       jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                                       jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
                    if (std::abs(det) < 1e-14) break;
                    // solve jac * delta = f by Cramer's rule
                    auto solve = [&](int col) {
                        double t[3][3];
                        for (int r = 0; r < 3; ++r)
                            for (int cc = 0; cc < 3; ++cc) t[r][cc] = jac[r][cc];
                        for (int r = 0; r < 3; ++r) t[r][col] = f[r];
                        return (t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                                t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                                t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0])) /
                               det;
                    };
                    const double es = solve(0), e1 = solve(1), e2 = solve(2);
                    s -= es;
                    t1 -= e1;
                    t2 -= e2;
                    if (std::abs(es) + std::abs(e1) + std::abs(e2) > 2.0) break; // diverging
                }
                if (!converged) continue;

                s = wrap(s);
                t1 = wrap(t1);
                t2 = wrap(t2);
                bool duplicate = false;
                for (const Solution& sol : sols) {
                    auto circ = [](double a, double b) {
                        return std::abs(std::remainder(a - b, kTwoPi));
                    };
                    const double d = circ(sol.s, s) + circ(sol.t1, t1) + circ(sol.t2, t2);
                    if (d < 1e-4) {
                        duplicate = true;
                        break;
                    }
                    if (d < 5e-2)
                        throw std::runtime_error(
                            "preimage_degree_oracle: crossing cluster detected; "
                            "direction is not regular, retry with another one");
                }
                if (duplicate) continue;

                Vec4 ds, d1, d2;
                gm.partials(s, t1, t2, ds, d1, d2);
                const double d = det4(dir, ds, d1, d2);
                if (std::abs(d) < 1e-10)
                    throw std::runtime_error(
                        "preimage_degree_oracle: degenerate crossing; direction is not "
                        "regular, retry with another one");
                sols.push_back({s, t1, t2, d > 0 ? 1 : -1});
            }

    int degree = 0;
    for (const Solution& sol : sols) degree += sol.sign;
    return static_cast<int>(kOrientation) * degree;
}

LoopR4 pushed_off_curve(const CliffordTorus& t, i64 n1, i64 n2, double eps,
                        int curve_samples) {
    if (!(eps > 0) || eps >= std::min(t.a, t.b) / 2)
        throw std::invalid_argument("push-off radius must satisfy 0 < eps < min(a,b)/2");
    // C(s) + eps * J0 C'(s)/|C'|; the basis curve has constant speed, so
    // in complex form this is ((a - eps n1 a / r) e^{i n1 s},
    // (b - eps n2 b / r) e^{i n2 s}) with r = |C'|.
    const double a = t.a, b = t.b;
    const double w1 = static_cast<double>(n1), w2 = static_cast<double>(n2);
    const double r = std::hypot(a * w1, b * w2);
    const double ra = a - eps * w1 * a / r;
    const double rb = b - eps * w2 * b / r;
    auto position = [=](double s) {
        return Vec4{ra * std::cos(w1 * s), ra * std::sin(w1 * s), rb * std::cos(w2 * s),
                    rb * std::sin(w2 * s)};
    };
    auto velocity = [=](double s) {
        return Vec4{-ra * w1 * std::sin(w1 * s), ra * w1 * std::cos(w1 * s),
                    -rb * w2 * std::sin(w2 * s), rb * w2 * std::cos(w2 * s)};
    };
    return LoopR4::closed_form(position, velocity, curve_samples);
}

DegreeResult linking_class_eval(const CliffordTorus& t, i64 n1, i64 n2, double eps,
                                const LinkingGrid& grid, int curve_samples) {
    const LoopR4 c = pushed_off_curve(t, n1, n2, eps, curve_samples);
    return gauss_linking(c, TorusSurface::clifford(t), grid);
}

} // namespace tml
