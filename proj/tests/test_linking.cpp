#include "tml/linking.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace tml;

namespace {

// circle bounding a small disc that pierces T_{a,b} once, in the
// x1 x2 plane around the point (a, 0, b, 0)
LoopR4 meridian(double a, double b, double rho, int n = 64) {
    auto pos = [=](double s) {
        return Vec4{a + rho * std::cos(s), 0, b + rho * std::sin(s), 0};
    };
    auto vel = [=](double s) { return Vec4{-rho * std::sin(s), 0, rho * std::cos(s), 0}; };
    return LoopR4::closed_form(pos, vel, n);
}

int oracle_with_retries(const LoopR4& c, const TorusSurface& l) {
    const Vec4 dirs[] = {{0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 0}, {0.2, -0.4, 0.7, 0.5},
                         {1, 0, 0, 0},         {0, 0, 1, 0}};
    for (const Vec4& d : dirs) {
        try {
            return preimage_degree_oracle(c, l, d);
        } catch (const std::runtime_error&) {
            continue; // non-regular direction, try the next
        }
    }
    throw std::runtime_error("no regular direction found");
}

} // namespace

TEST_CASE("far-away curve links zero on both routes") {
    const TorusSurface t = TorusSurface::clifford(CliffordTorus(1, 1));
    const LoopR4 far = meridian(1, 1, 0.4).translated(Vec4{10, 0, 0, 0});
    CHECK(gauss_linking(far, t).rounded == 0);
    CHECK(oracle_with_retries(far, t) == 0);
}

TEST_CASE("meridian disc calibration: +1, integral and oracle agree") {
    const TorusSurface t = TorusSurface::clifford(CliffordTorus(1, 1));
    const LoopR4 m = meridian(1, 1, 0.4);
    const DegreeResult d = gauss_linking(m, t);
    CHECK(d.rounded == 1);
    CHECK(d.residual < 0.05);
    CHECK(oracle_with_retries(m, t) == d.rounded);

    // a second configuration with unequal radii
    const TorusSurface t2 = TorusSurface::clifford(CliffordTorus(2, 0.8));
    const LoopR4 m2 = meridian(2, 0.8, 0.3);
    const DegreeResult d2 = gauss_linking(m2, t2);
    CHECK(d2.rounded == 1);
    CHECK(oracle_with_retries(m2, t2) == d2.rounded);
}

TEST_CASE("orientation reversal negates the degree") {
    const TorusSurface t = TorusSurface::clifford(CliffordTorus(1, 1));
    const LoopR4 m = meridian(1, 1, 0.4);
    CHECK(gauss_linking(m.reversed(), t).rounded == -gauss_linking(m, t).rounded);
}

TEST_CASE("degree is stable under grid refinement and reparametrization") {
    const TorusSurface t = TorusSurface::clifford(CliffordTorus(1, 1));
    const LoopR4 m = meridian(1, 1, 0.4);
    const DegreeResult coarse = gauss_linking(m, t, {32, 32, 32});
    const DegreeResult fine = gauss_linking(m, t, {64, 64, 64});
    CHECK(coarse.rounded == fine.rounded);
    CHECK(std::abs(coarse.raw - fine.raw) <= coarse.residual + fine.residual + 1e-12);
    // start-point shift of the curve parameter
    auto pos = [](double s) {
        return Vec4{1 + 0.4 * std::cos(s + 1.3), 0, 1 + 0.4 * std::sin(s + 1.3), 0};
    };
    auto vel = [](double s) {
        return Vec4{-0.4 * std::sin(s + 1.3), 0, 0.4 * std::cos(s + 1.3), 0};
    };
    CHECK(gauss_linking(LoopR4::closed_form(pos, vel, 64), t).rounded == fine.rounded);
}

TEST_CASE("linking class of a Clifford torus vanishes") {
    const CliffordTorus t(1, 1);
    for (const auto& [n1, n2] : std::vector<std::pair<i64, i64>>{{1, 0}, {0, 1}, {1, 1}}) {
        const DegreeResult d = linking_class_eval(t, n1, n2, 0.1);
        CHECK(d.rounded == 0);
        CHECK(std::abs(d.raw) < 0.05);
    }
    // push-off sign does not matter: push outward instead
    const LoopR4 outward = pushed_off_curve(t, -1, 0, 0.1).reversed();
    CHECK(gauss_linking(outward, TorusSurface::clifford(t)).rounded == 0);
    CHECK_THROWS_AS(linking_class_eval(t, 1, 0, 0.6), std::invalid_argument);
}

TEST_CASE("degree is a homotopy invariant along a translation") {
    const TorusSurface t = TorusSurface::clifford(CliffordTorus(1, 1));
    const LoopR4 m = meridian(1, 1, 0.3);
    // slide the meridian along y1; the segment stops short of the
    // crossing with the torus at offset 0.8
    const int expect = gauss_linking(m, t).rounded;
    for (int k = 1; k <= 5; ++k) {
        const LoopR4 moved = m.translated(Vec4{0, 0.12 * k, 0, 0});
        CHECK(gauss_linking(moved, t).rounded == expect);
    }
    // past the crossing the class does change, which pins the crossing
    CHECK(gauss_linking(m.translated(Vec4{0, 1.6, 0, 0}), t).rounded == 0);
}

TEST_CASE("curve touching the surface is rejected") {
    const TorusSurface t = TorusSurface::clifford(CliffordTorus(1, 1));
    // circle through a torus point
    auto pos = [](double s) { return Vec4{std::cos(s), std::sin(s), 1, 0}; };
    auto vel = [](double s) { return Vec4{-std::sin(s), std::cos(s), 0, 0}; };
    CHECK_THROWS(gauss_linking(LoopR4::closed_form(pos, vel, 64), t));
}

TEST_CASE("sampled-grid surfaces take the finite-difference path") {
    const CliffordTorus ct(1, 1);
    const int n1 = 48, n2 = 48;
    std::vector<Vec4> grid(static_cast<size_t>(n1) * n2);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            grid[static_cast<size_t>(i) * n2 + j] =
                ct.point(2 * std::numbers::pi * i / n1, 2 * std::numbers::pi * j / n2);
    const TorusSurface sampled = TorusSurface::from_grid(std::move(grid), n1, n2);
    CHECK_FALSE(sampled.has_closed_form());
    const LoopR4 m = meridian(1, 1, 0.4);
    const DegreeResult d = gauss_linking(m, sampled, {48, 48, 48});
    CHECK(d.rounded == 1);
    CHECK(d.residual < 0.05);
}
