#include "tml/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

using namespace tml;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name) {
        path = std::filesystem::temp_directory_path() / name;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST_CASE("curve csv round-trip") {
    TempFile f("tml_curve_test.csv");
    const LoopR4 c = basis_curve(CliffordTorus(1, 2), 1, -1, 64);
    save_curve_csv(f.path.string(), c);
    const LoopR4 back = load_curve_csv(f.path.string());
    REQUIRE(back.size() == 64);
    for (int i = 0; i < 64; ++i)
        CHECK(norm(back.samples()[i] - c.samples()[i]) < 1e-12);
    CHECK(homology_class_on_torus(back, CliffordTorus(1, 2)).cls == H1Class{1, -1});
}

TEST_CASE("curve csv validation") {
    TempFile f("tml_curve_bad.csv");
    {
        std::ofstream out(f.path);
        out << "x,y\n1,2\n";
    }
    CHECK_THROWS_AS(load_curve_csv(f.path.string()), std::invalid_argument);
    {
        std::ofstream out(f.path);
        out << "t,x1,y1,x2,y2\n0,1,0,1,0\n1,0,1,1,0\n"; // non-uniform 2-point grid
    }
    CHECK_THROWS_AS(load_curve_csv(f.path.string()), std::invalid_argument);
    {
        // a degenerate "loop" that repeats one point is not embedded
        std::ofstream out(f.path);
        out << "t,x1,y1,x2,y2\n";
        for (int i = 0; i < 16; ++i)
            out << 2 * std::numbers::pi * i / 16 << ",1,0,1,0\n";
    }
    CHECK_THROWS_AS(load_curve_csv(f.path.string()), std::invalid_argument);
    CHECK_THROWS_AS(load_curve_csv("/nonexistent/file.csv"), std::invalid_argument);
}

TEST_CASE("surface csv loads a torus grid") {
    TempFile f("tml_surface_test.csv");
    const CliffordTorus t(1, 1);
    const int n1 = 16, n2 = 16;
    {
        std::ofstream out(f.path);
        out.precision(17);
        out << "t1,t2,x1,y1,x2,y2\n";
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < n2; ++j) {
                const double t1 = 2 * std::numbers::pi * i / n1;
                const double t2 = 2 * std::numbers::pi * j / n2;
                const Vec4 p = t.point(t1, t2);
                out << t1 << ',' << t2 << ',' << p.x1 << ',' << p.y1 << ',' << p.x2 << ','
                    << p.y2 << '\n';
            }
    }
    const TorusSurface s = load_surface_csv(f.path.string());
    CHECK(s.n1() == n1);
    CHECK(s.n2() == n2);
    CHECK(norm(s.sample(0, 0) - Vec4{1, 0, 1, 0}) < 1e-12);
}

TEST_CASE("map csv loads a torus self-map") {
    TempFile f("tml_map_test.csv");
    const int n = 32;
    {
        std::ofstream out(f.path);
        out.precision(17);
        out << "theta,t,f,g\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double th = 2 * std::numbers::pi * i / n;
                const double tt = 2 * std::numbers::pi * j / n;
                out << th << ',' << tt << ',' << th + 2 * tt << ',' << tt << '\n';
            }
    }
    const TorusMapGrid m = load_map_csv(f.path.string());
    CHECK(induced_h1_map(m) == Mat2Z{1, 2, 0, 1});
}
