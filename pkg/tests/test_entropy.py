from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from knead.algebra import Matrix, Polynomial
from knead.entropy import (
    EntropyReport,
    bowen_check,
    entropy_from_kneading,
    entropy_from_polynomial,
    entropy_from_transition,
)
from knead.kneading import kneading_determinant, kneading_matrix
from knead.markov import transition_matrix_symbolic
from knead.pipeline import entropy_report, load_golden
from knead.symbols import KneadingData, enumerate_unimodal
from oracles import lap_growth, superstable_parameters

P = Polynomial
EXPECTED = load_golden()["entropy"]
ADMISSIBLE_8 = enumerate_unimodal(8)


def kd(text: str) -> KneadingData:
    return KneadingData.parse(text)


def test_golden_mean():
    t_star, h = entropy_from_polynomial(P([1, -1, -1]))
    assert t_star == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-12)
    assert h == pytest.approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-12)


def test_zero_entropy_cases():
    assert entropy_from_polynomial(P([1, -1])) == (pytest.approx(1.0), 0.0)
    assert entropy_from_polynomial(P.one()) == (None, 0.0)
    # (1 - t)^2 has its only positive root exactly at 1
    assert entropy_from_polynomial(P([1, -2, 1]))[1] == 0.0
    assert entropy_from_transition(Matrix([], ncols=0)) == (0.0, 0.0)
    assert entropy_from_transition(Matrix([[1]])) == (1.0, 0.0)


def test_kneading_route_accepts_determinant():
    D = kneading_determinant(kneading_matrix(kd("RLRRC")))
    t_star, h = entropy_from_kneading(D, (5,))
    assert math.exp(h) == pytest.approx(EXPECTED["lambda_y"], abs=1e-3)
    assert entropy_from_kneading(P([1, -1, -1]))[1] == pytest.approx(math.log(EXPECTED["lambda_x"]), abs=1e-3)


def test_worked_example_both_routes():
    r = entropy_report(kd("RLC"), kd("RLRRC"))
    assert r.t_star == pytest.approx(EXPECTED["t_star"], abs=1e-5)
    assert r.lam == pytest.approx(EXPECTED["lambda"], abs=1e-3)
    assert r.h_kneading == pytest.approx(EXPECTED["h"], abs=1e-3)
    assert r.h_spectral == pytest.approx(EXPECTED["h"], abs=1e-3)
    assert r.routes_agree and r.bowen_ok
    assert abs(r.additivity_gap) < 1e-8


def test_report_dict_uses_lambda_key():
    d = EntropyReport(0.1, 0.1, 0.9, 1.1).to_dict()
    assert "lambda" in d and "lam" not in d


def test_bowen_bounds():
    assert bowen_check(0.4, 0.3, 0.7)
    assert bowen_check(0.4, 0.3, 0.4)
    assert not bowen_check(0.4, 0.3, 0.8)
    assert not bowen_check(0.4, 0.3, 0.35)


@given(st.sampled_from(ADMISSIBLE_8))
def test_routes_agree_for_every_unimodal_word(data):
    r = entropy_report(data)
    assert abs(r.h_kneading - r.h_spectral) < 1e-8


@given(st.sampled_from(ADMISSIBLE_8), st.sampled_from(ADMISSIBLE_8))
def test_product_entropy_is_additive(dx, dy):
    r = entropy_report(dx, dy)
    assert r.routes_agree and r.bowen_ok
    assert abs(r.additivity_gap) < 1e-8


def test_monotone_fiber_keeps_basis_entropy():
    r = entropy_report(kd("RLC"), kd(""))
    assert r.h_fiber == 0.0
    assert abs(r.h_spectral - r.h_basis) < 1e-10


def test_entropy_increases_with_parameter():
    words = sorted(superstable_parameters(6).items(), key=lambda kv: kv[1])
    hs = [entropy_report(kd(w)).h_spectral for w, _ in words]
    assert all(a <= b + 1e-12 for a, b in zip(hs, hs[1:]))


def test_lap_growth_oracle():
    for word, a in superstable_parameters(6).items():
        lam, _ = entropy_from_transition(transition_matrix_symbolic(kd(word)))
        ratio = lap_growth(a, 14)
        if lam <= 1.0:
            assert ratio < 1.1, word
        else:
            assert ratio == pytest.approx(lam, abs=0.04), word
