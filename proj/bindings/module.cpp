// Python bindings for the exact group algorithms, the numerical
// invariants, and the monodromy simulations.

#include "tml/groups.hpp"
#include "tml/isotopy.hpp"
#include "tml/linking.hpp"
#include "tml/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tml;

namespace {

GeneratorWord word_from_names(const std::vector<std::string>& names) {
    GeneratorWord w;
    w.reserve(names.size());
    for (const std::string& n : names) w.push_back(letter_from_name(n));
    return w;
}

std::vector<std::string> names_from_word(const GeneratorWord& w) {
    std::vector<std::string> names;
    names.reserve(w.size());
    for (Letter l : w) names.emplace_back(letter_name(l));
    return names;
}

py::dict decomposition_dict(const DecompositionResult& d) {
    py::dict out;
    out["word"] = names_from_word(d.word);
    out["verified"] = d.verified;
    return out;
}

py::dict report_dict(const IsotopyReport& rep) {
    py::dict out;
    out["monodromy"] = rep.monodromy;
    out["gamma1_image"] = py::make_tuple(rep.gamma1_image.n1, rep.gamma1_image.n2);
    out["gamma2_image"] = py::make_tuple(rep.gamma2_image.n1, rep.gamma2_image.n2);
    py::dict diag;
    diag["max_winding_residual"] = rep.diag.max_winding_residual;
    diag["frame_closure_error"] = rep.diag.frame_closure_error;
    diag["ode_step"] = rep.diag.ode_step;
    diag["flow_endpoint_error"] = rep.diag.flow_endpoint_error;
    diag["max_hamiltonian_drift"] = rep.diag.max_hamiltonian_drift;
    diag["on_torus_error"] = rep.diag.on_torus_error;
    diag["ns"] = rep.diag.ns;
    diag["nt"] = rep.diag.nt;
    out["diagnostics"] = std::move(diag);
    return out;
}

MaslovCovector covector_from_pair(const std::pair<i64, i64>& p) { return {p.first, p.second}; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "matrix monodromy groups and torus invariants in R^4";

    py::class_<Mat2Z>(m, "Mat2Z")
        .def(py::init<i64, i64, i64, i64>(), py::arg("a11"), py::arg("a12"), py::arg("a21"),
             py::arg("a22"))
        .def_readonly("a11", &Mat2Z::a11)
        .def_readonly("a12", &Mat2Z::a12)
        .def_readonly("a21", &Mat2Z::a21)
        .def_readonly("a22", &Mat2Z::a22)
        .def("det", &Mat2Z::det)
        .def("entries",
             [](const Mat2Z& a) { return py::make_tuple(a.a11, a.a12, a.a21, a.a22); })
        .def("__eq__", [](const Mat2Z& a, const Mat2Z& b) { return a == b; })
        .def("__hash__",
             [](const Mat2Z& a) {
                 return py::hash(py::make_tuple(a.a11, a.a12, a.a21, a.a22));
             })
        .def("__repr__",
             [](const Mat2Z& a) {
                 std::ostringstream os;
                 os << "Mat2Z(" << a.a11 << ", " << a.a12 << ", " << a.a21 << ", " << a.a22
                    << ")";
                 return os.str();
             })
        .def("to_text", &Mat2Z::to_text)
        .def_static("from_text", [](const std::string& s) { return Mat2Z::from_text(s); });

    py::class_<MaslovIndex>(m, "MaslovIndex")
        .def_readonly("value", &MaslovIndex::value)
        .def_readonly("residual", &MaslovIndex::residual)
        .def_readonly("max_phase_step", &MaslovIndex::max_phase_step)
        .def_readonly("samples", &MaslovIndex::samples)
        .def("__int__", [](const MaslovIndex& i) { return i.value; })
        .def("__repr__", [](const MaslovIndex& i) {
            return "MaslovIndex(" + std::to_string(i.value) + ")";
        });

    py::class_<DegreeResult>(m, "DegreeResult")
        .def_readonly("raw", &DegreeResult::raw)
        .def_readonly("rounded", &DegreeResult::rounded)
        .def_readonly("residual", &DegreeResult::residual)
        .def("__int__", [](const DegreeResult& d) { return d.rounded; })
        .def("__repr__", [](const DegreeResult& d) {
            return "DegreeResult(raw=" + std::to_string(d.raw) + ")";
        });

    // exact matrix algebra
    m.def("mat_mul", &mat_mul, py::arg("a"), py::arg("b"));
    m.def("mat_inv", &mat_inv, py::arg("a"));
    m.def("make_g", &make_g, py::arg("n"));
    m.def("make_f", &make_f, py::arg("n"));
    m.def(
        "word_eval",
        [](const std::vector<std::string>& w) { return word_eval(word_from_names(w)); },
        py::arg("word"), "evaluate a word of generator names, e.g. ['F1', 'F0']");
    m.def("letters", [] {
        return std::vector<std::string>{"F0", "F1", "R1", "R2", "T1P2", "T1M2", "T2P2",
                                        "T2M2"};
    });

    // membership and classification
    m.def(
        "classify", [](const Mat2Z& a) { return std::string(tag_name(classify(a))); },
        py::arg("matrix"));
    m.def("in_gmu", &in_Gmu, py::arg("matrix"));
    m.def("in_e", &in_E, py::arg("matrix"));
    m.def("in_x", &in_X, py::arg("matrix"));

    // decompositions
    m.def(
        "decompose_gmu", [](const Mat2Z& a) { return decomposition_dict(decompose_Gmu(a)); },
        py::arg("matrix"));
    m.def(
        "decompose_e", [](const Mat2Z& a) { return decomposition_dict(decompose_E(a)); },
        py::arg("matrix"));
    m.def(
        "decompose_x", [](const Mat2Z& a) { return decomposition_dict(decompose_X(a)); },
        py::arg("matrix"));

    // Maslov defect and matching
    m.def(
        "maslov_defect",
        [](const Mat2Z& a, const std::pair<i64, i64>& mu) {
            const MaslovDefect d = maslov_defect(a, covector_from_pair(mu));
            return py::make_tuple(py::make_tuple(d.defect.m1, d.defect.m2),
                                  d.divisible_by_4);
        },
        py::arg("matrix"), py::arg("mu") = std::pair<i64, i64>{2, 2},
        "returns ((d1, d2), divisible_by_4)");
    m.def(
        "match_maslov",
        [](const std::pair<i64, i64>& nu) { return match_maslov(covector_from_pair(nu)); },
        py::arg("nu"));

    // numerical invariants on Clifford tori
    m.def(
        "maslov_class",
        [](double a, double b, i64 n1, i64 n2, int samples) {
            return maslov_class_eval(CliffordTorus(a, b), n1, n2, samples);
        },
        py::arg("a"), py::arg("b"), py::arg("n1"), py::arg("n2"), py::arg("samples") = 256);
    m.def(
        "linking_class",
        [](double a, double b, i64 n1, i64 n2, double eps, int grid) {
            return linking_class_eval(CliffordTorus(a, b), n1, n2, eps,
                                      LinkingGrid{grid, grid, grid});
        },
        py::arg("a"), py::arg("b"), py::arg("n1"), py::arg("n2"), py::arg("eps") = 0.1,
        py::arg("grid") = 64);

    // monodromy simulations
    m.def(
        "simulate_case1",
        [](double b, int samples) { return report_dict(simulate_case1(b, samples)); },
        py::arg("b") = 1.0, py::arg("samples") = 256);
    m.def(
        "simulate_case2",
        [](double b, double eps, int ns, int nt, bool variant) {
            return report_dict(variant ? simulate_case2_variant(b, eps, ns, nt)
                                       : simulate_case2(b, eps, ns, nt));
        },
        py::arg("b") = 1.0, py::arg("eps") = 0.05, py::arg("ns") = 1024,
        py::arg("nt") = 256, py::arg("variant") = false);
    m.def(
        "clifford_path_transport",
        [](const std::vector<std::pair<double, double>>& path, int samples) {
            return report_dict(clifford_path_transport(path, samples));
        },
        py::arg("path"), py::arg("samples") = 256);
    m.def(
        "induced_h1_map",
        [](const std::vector<std::vector<double>>& f,
           const std::vector<std::vector<double>>& g) {
            TorusMapGrid grid;
            grid.n_theta = static_cast<int>(f.size());
            grid.n_t = f.empty() ? 0 : static_cast<int>(f[0].size());
            if (g.size() != f.size())
                throw std::invalid_argument("induced_h1_map: f and g sizes differ");
            for (const auto& row : f) {
                if (static_cast<int>(row.size()) != grid.n_t)
                    throw std::invalid_argument("induced_h1_map: ragged f grid");
                grid.f.insert(grid.f.end(), row.begin(), row.end());
            }
            for (const auto& row : g) {
                if (static_cast<int>(row.size()) != grid.n_t)
                    throw std::invalid_argument("induced_h1_map: ragged g grid");
                grid.g.insert(grid.g.end(), row.begin(), row.end());
            }
            return induced_h1_map(grid);
        },
        py::arg("f"), py::arg("g"),
        "theta-major angle grids of the two output coordinates");

    // verification battery
    m.def(
        "verify_all",
        [](std::uint64_t seed) {
            VerifyConfig cfg;
            cfg.seed = seed;
            const VerificationSummary s = verify_all(cfg);
            py::list records;
            for (const CheckRecord& r : s.records) {
                py::dict rec;
                rec["name"] = r.name;
                rec["anchor"] = r.anchor;
                rec["expected"] = r.expected;
                rec["observed"] = r.observed;
                rec["pass"] = r.pass;
                records.append(std::move(rec));
            }
            py::dict out;
            out["seed"] = s.seed;
            out["overall_pass"] = s.overall;
            out["records"] = std::move(records);
            return out;
        },
        py::arg("seed") = 0);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
