#include "tml/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace tml;

namespace {
constexpr double kPi = std::numbers::pi;

Vec4 random_vec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}
} // namespace

TEST_CASE("torus points") {
    CHECK(norm(CliffordTorus(1, 1).point(0, 0) - Vec4{1, 0, 1, 0}) == doctest::Approx(0));
    CHECK(norm(CliffordTorus(2, 1).point(kPi / 2, 0) - Vec4{0, 2, 1, 0}) ==
          doctest::Approx(0).epsilon(1e-12));
    CHECK(norm(CliffordTorus(1, 3).point(kPi, kPi) - Vec4{-1, 0, -3, 0}) ==
          doctest::Approx(0).epsilon(1e-12));
    CHECK_THROWS_AS(CliffordTorus(0, 1), std::invalid_argument);
}

TEST_CASE("omega, J0 and compatibility identities") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10000; ++i) {
        const Vec4 u = random_vec(rng), v = random_vec(rng);
        CHECK(std::abs(omega(u, v) - dot(j0(u), v)) < 1e-12);
        CHECK(std::abs(omega(j0(u), j0(v)) - omega(u, v)) < 1e-12);
        CHECK(norm(j0(j0(u)) + u) < 1e-15); // J0^2 = -Id
    }
    // the exact form on coordinates
    CHECK(omega(Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}) == doctest::Approx(1));
    CHECK(omega(Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}) == doctest::Approx(1));
    CHECK(omega(Vec4{1, 0, 0, 0}, Vec4{0, 0, 0, 1}) == doctest::Approx(0));
}

TEST_CASE("basis curves represent their classes") {
    CHECK_THROWS_AS(basis_curve(CliffordTorus(1, 1), 0, 0, 256), std::invalid_argument);
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {1, 3}, {2, 0.5}})
        for (i64 n1 = -5; n1 <= 5; ++n1)
            for (i64 n2 = -5; n2 <= 5; ++n2) {
                if (n1 == 0 && n2 == 0) continue;
                const CliffordTorus t(a, b);
                const int n = 64 * static_cast<int>(std::llabs(n1) + std::llabs(n2));
                const H1Readout h = homology_class_on_torus(basis_curve(t, n1, n2, n), t);
                CHECK(h.cls == H1Class{n1, n2});
                CHECK(h.max_residual < 1e-9);
            }
}

TEST_CASE("homology readout rejects bad input") {
    const CliffordTorus t(1, 1);
    // off the torus
    CHECK_THROWS_AS(homology_class_on_torus(basis_curve(CliffordTorus(1.5, 1), 1, 0, 64), t),
                    std::invalid_argument);
    // undersampled: phase step would reach pi
    const LoopR4 fast = basis_curve(t, 8, 0, 16);
    CHECK_THROWS_AS(homology_class_on_torus(fast, t), std::runtime_error);
}

TEST_CASE("curve image under the coordinate swap (z1,z2) -> (-z2,z1)") {
    const CliffordTorus t(1, 1);
    const LoopR4 g1 = basis_curve(t, 1, 0, 128);
    std::vector<Vec4> mapped(static_cast<size_t>(g1.size()));
    for (int i = 0; i < g1.size(); ++i) {
        const Vec4& p = g1.samples()[i];
        mapped[i] = Vec4::from_complex(-p.z2(), p.z1());
    }
    const H1Readout h = homology_class_on_torus(LoopR4::from_samples(mapped), t);
    CHECK(h.cls == H1Class{0, 1});
}

TEST_CASE("normal frame: orthogonality, J0 pairing, closure") {
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {1, 3}})
        for (i64 n1 = -5; n1 <= 5; ++n1)
            for (i64 n2 = -5; n2 <= 5; ++n2) {
                if (n1 == 0 && n2 == 0) continue;
                const CliffordTorus t(a, b);
                const LoopR4 c = basis_curve(t, n1, n2, 256);
                const NormalFrame f = symplectic_normal_frame(c);
                CHECK(f.closure_error < 1e-6);
                for (int i = 0; i < f.size(); i += 17) {
                    const Vec4 vel = c.velocity_at(i);
                    CHECK(std::abs(dot(f.e1[i], vel)) < 1e-10 * norm(vel));
                    CHECK(std::abs(dot(f.e1[i], j0(vel))) < 1e-10 * norm(vel));
                    CHECK(std::abs(omega(vel, f.e1[i])) < 1e-10 * norm(vel));
                    CHECK(std::abs(norm(f.e1[i]) - 1) < 1e-12);
                    CHECK(norm(f.e2[i] - j0(f.e1[i])) < 1e-12);
                }
            }
}

TEST_CASE("normal frame of a coordinate circle is the constant plane frame") {
    // C(t) = (0, e^{it}): the normal plane is the z1 plane everywhere
    auto pos = [](double t) { return Vec4{0, 0, std::cos(t), std::sin(t)}; };
    auto vel = [](double t) { return Vec4{0, 0, -std::sin(t), std::cos(t)}; };
    const NormalFrame f = symplectic_normal_frame(LoopR4::closed_form(pos, vel, 128));
    for (int i = 0; i < f.size(); i += 7) {
        CHECK(std::abs(f.e1[i].x2) < 1e-12);
        CHECK(std::abs(f.e1[i].y2) < 1e-12);
    }
    CHECK(norm(f.e1[0] - Vec4{1, 0, 0, 0}) < 1e-12);
    CHECK(norm(f.e2[0] - Vec4{0, 1, 0, 0}) < 1e-12);
}

TEST_CASE("winding helper validates steps") {
    std::vector<double> theta(64);
    for (int i = 0; i < 64; ++i) theta[i] = 3 * (2 * kPi * i / 64);
    const WindingResult w = winding_of_angles(theta);
    CHECK(w.turns == 3);
    CHECK(w.residual < 1e-12);

    std::vector<double> bad{0.0, kPi, 0.0, kPi};
    CHECK_THROWS_AS(winding_of_angles(bad), std::runtime_error);
}

TEST_CASE("loop resampling and reversal") {
    const CliffordTorus t(1, 2);
    const LoopR4 c = basis_curve(t, 1, -1, 64);
    const LoopR4 fine = c.resampled(256);
    CHECK(fine.size() == 256);
    CHECK(homology_class_on_torus(fine, t).cls == H1Class{1, -1});
    CHECK(homology_class_on_torus(c.reversed(), t).cls == H1Class{-1, 1});

    // sampled-only path: resample through periodic linear interpolation
    const LoopR4 sampled = LoopR4::from_samples(c.samples());
    const LoopR4 up = sampled.resampled(192);
    CHECK(up.size() == 192);
    CHECK(homology_class_on_torus(up, t, 1e-2).cls == H1Class{1, -1});
    CHECK(sampled.injective_on_grid());
}
