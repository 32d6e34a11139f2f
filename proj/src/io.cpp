#include "tml/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tml {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open csv file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty csv file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw std::invalid_argument("csv header must be \"" + expected_header + "\", got \"" +
                                    line + "\"");
    const size_t ncols = std::count(expected_header.begin(), expected_header.end(), ',') + 1;
    std::vector<std::vector<double>> rows;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                row.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad number \"" + tok + "\" at " + path + ":" +
                                            std::to_string(lineno));
            }
        }
        if (row.size() != ncols)
            throw std::invalid_argument("wrong column count at " + path + ":" +
                                        std::to_string(lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("csv has no data rows: " + path);
    return rows;
}

void check_uniform_grid(const std::vector<double>& t, const char* what) {
    const size_t n = t.size();
    for (size_t i = 0; i < n; ++i) {
        const double expect = kTwoPi * i / n;
        if (std::abs(t[i] - expect) > 1e-9 * kTwoPi)
            throw std::invalid_argument(std::string(what) +
                                        " grid must be uniform over [0, 2pi) starting at 0");
    }
}

} // namespace

LoopR4 load_curve_csv(const std::string& path) {
    const auto rows = read_csv(path, "t,x1,y1,x2,y2");
    std::vector<double> t;
    std::vector<Vec4> pts;
    for (const auto& r : rows) {
        t.push_back(r[0]);
        pts.push_back({r[1], r[2], r[3], r[4]});
    }
    check_uniform_grid(t, "curve");
    LoopR4 c = LoopR4::from_samples(std::move(pts));
    if (!c.injective_on_grid())
        throw std::invalid_argument("curve csv is not embedded at sample resolution");
    return c;
}

void save_curve_csv(const std::string& path, const LoopR4& curve) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write csv file: " + path);
    out << "t,x1,y1,x2,y2\n";
    out.precision(17);
    for (int i = 0; i < curve.size(); ++i) {
        const Vec4& p = curve.samples()[i];
        out << curve.param(i) << ',' << p.x1 << ',' << p.y1 << ',' << p.x2 << ',' << p.y2
            << '\n';
    }
}

TorusSurface load_surface_csv(const std::string& path) {
    const auto rows = read_csv(path, "t1,t2,x1,y1,x2,y2");
    // infer n2 from the first repeat of t1
    size_t n2 = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (std::abs(rows[i][0] - rows[0][0]) > 1e-12) {
            n2 = i;
            break;
        }
    if (n2 == 0 || rows.size() % n2 != 0)
        throw std::invalid_argument("surface csv must be a full t1-major grid");
    const size_t n1 = rows.size() / n2;
    std::vector<double> t1(n1), t2(n2);
    std::vector<Vec4> grid(rows.size());
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = 0; j < n2; ++j) {
            const auto& r = rows[i * n2 + j];
            if (i == 0) t2[j] = r[1];
            if (j == 0) t1[i] = r[0];
            if (std::abs(r[0] - t1[i]) > 1e-12 || std::abs(r[1] - t2[j]) > 1e-12)
                throw std::invalid_argument("surface csv grid is not consistent");
            grid[i * n2 + j] = {r[2], r[3], r[4], r[5]};
        }
    check_uniform_grid(t1, "surface t1");
    check_uniform_grid(t2, "surface t2");
    return TorusSurface::from_grid(std::move(grid), static_cast<int>(n1),
                                   static_cast<int>(n2));
}

TorusMapGrid load_map_csv(const std::string& path) {
    const auto rows = read_csv(path, "theta,t,f,g");
    size_t n_t = 0;
    for (size_t i = 1; i < rows.size(); ++i)
        if (std::abs(rows[i][0] - rows[0][0]) > 1e-12) {
            n_t = i;
            break;
        }
    if (n_t == 0 || rows.size() % n_t != 0)
        throw std::invalid_argument("map csv must be a full theta-major grid");
    const size_t n_theta = rows.size() / n_t;
    std::vector<double> th(n_theta), tt(n_t);
    TorusMapGrid map;
    map.n_theta = static_cast<int>(n_theta);
    map.n_t = static_cast<int>(n_t);
    map.f.resize(rows.size());
    map.g.resize(rows.size());
    for (size_t i = 0; i < n_theta; ++i)
        for (size_t j = 0; j < n_t; ++j) {
            const auto& r = rows[i * n_t + j];
            if (i == 0) tt[j] = r[1];
            if (j == 0) th[i] = r[0];
            map.f[i * n_t + j] = r[2];
            map.g[i * n_t + j] = r[3];
        }
    check_uniform_grid(th, "map theta");
    check_uniform_grid(tt, "map t");
    return map;
}

} // namespace tml
