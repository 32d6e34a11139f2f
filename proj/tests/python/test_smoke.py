"""Smoke tests of the python module against known group and invariant values."""

import math

import pytest

import tml


def test_exact_matrix_algebra():
    f0 = tml.make_f(0)
    f1 = tml.make_f(1)
    assert f0.entries() == (1, 2, 0, -1)
    assert f1.entries() == (0, 1, 1, 0)
    assert tml.mat_mul(f1, f0) == tml.make_g(1)
    assert tml.mat_inv(f0) == f0
    assert tml.word_eval(["F1", "F0"]) == tml.make_g(1)
    assert tml.word_eval([]) == tml.Mat2Z(1, 0, 0, 1)
    assert set(tml.letters()) >= {"F0", "F1", "R1", "T1P2"}


def test_classify_and_membership():
    assert tml.classify(tml.make_f(1)) == "GmuMinus"
    assert tml.classify(tml.Mat2Z(1, 2, 0, 1)) == "E"
    assert tml.classify(tml.Mat2Z(1, 1, 0, 1)) == "NotMember"
    assert tml.in_x(tml.make_f(1))
    assert tml.in_gmu(tml.make_g(5))
    with pytest.raises(ValueError):
        tml.classify(tml.Mat2Z(2, 0, 0, 2))


def test_decompositions_roundtrip():
    m = tml.word_eval(["T1P2", "T2P2"])
    d = tml.decompose_e(m)
    assert d["verified"] and d["word"] == ["T1P2", "T2P2"]

    x = tml.word_eval(["F0", "R1", "F1", "F0", "R1"])
    d = tml.decompose_x(x)
    assert d["verified"]
    assert tml.word_eval(d["word"]) == x

    d = tml.decompose_gmu(tml.make_g(-3))
    assert d["verified"] and tml.word_eval(d["word"]) == tml.make_g(-3)


def test_defect_and_matching():
    (d, divisible) = tml.maslov_defect(tml.Mat2Z(1, 2, 0, 1))
    assert d == (0, 4) and divisible
    g = tml.match_maslov((6, 10))
    assert g == tml.Mat2Z(2, 3, 1, 2)
    assert tml.in_x(g)


def test_maslov_class_values():
    assert tml.maslov_class(1, 1, 1, 0).value == 2
    assert tml.maslov_class(1, 3, -1, 1).value == 0
    assert tml.maslov_class(2, 0.5, 1, 1).value == 4


def test_linking_class_vanishes():
    d = tml.linking_class(1, 1, 1, 0, eps=0.1, grid=48)
    assert d.rounded == 0
    assert abs(d.raw) < 0.05


def test_simulated_monodromies():
    rep = tml.simulate_case1(b=1.0, samples=256)
    assert rep["monodromy"] == tml.make_f(1)
    rep = tml.simulate_case2(b=1.0, eps=0.05, ns=512, nt=256)
    assert rep["monodromy"] == tml.make_f(0)
    assert rep["gamma2_image"] == (2, -1)
    rep = tml.simulate_case2(b=1.0, eps=0.05, ns=512, nt=256, variant=True)
    assert rep["monodromy"] == tml.make_f(2)
    rep = tml.clifford_path_transport([(1.0, 1.0), (2.0, 3.0)], samples=128)
    assert rep["monodromy"] == tml.Mat2Z(1, 0, 0, 1)


def test_induced_h1_map():
    n = 64
    f = [[(2 * math.pi * i / n) + 2 * (2 * math.pi * j / n) for j in range(n)]
         for i in range(n)]
    g = [[2 * math.pi * j / n for j in range(n)] for i in range(n)]
    assert tml.induced_h1_map(f, g) == tml.Mat2Z(1, 2, 0, 1)


def test_verification_battery():
    report = tml.verify_all(seed=0)
    assert report["overall_pass"]
    assert len(report["records"]) == 36
    names = {r["name"] for r in report["records"]}
    assert "c03/case2/monodromy" in names
    assert "c10/report-determinism" in names
