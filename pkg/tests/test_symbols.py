from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from knead.algebra import Polynomial, RationalFunction
from knead.errors import AdmissibilityError, AmbiguityError
from knead.interval_map import detect_periodic_orbit, quadratic
from knead.symbols import (
    C,
    KneadingData,
    L,
    M,
    R,
    SymbolicSequence,
    compare,
    enumerate_unimodal,
    format_symbols,
    invariant_coordinate,
    itinerary,
    kneading_from_orbits,
    one_sided_sequence,
    parse_symbols,
    product_itineraries,
    product_itinerary,
    require_admissible,
    theta_terms,
    validate_kneading_data,
)
from oracles import SUPERSTABLE_COUNTS, superstable_parameters

ADMISSIBLE_8 = enumerate_unimodal(8)


def seq(text, periodic=True, modality=None):
    return SymbolicSequence.parse(text, modality=modality, periodic=periodic)


def theta_series_bruteforce(s: SymbolicSequence, n: int) -> list[tuple[int, ...]]:
    """Coefficient vectors of theta up to t^(n-1), summed term by term."""
    m = s.modality
    out = []
    for sign, sym in theta_terms(s, n):
        vec = [0] * (m + 1)
        b = sym.basis_index(m)
        if b is not None:
            vec[b] = sign
        out.append(tuple(vec))
    return out


# -- parsing ------------------------------------------------------------------

def test_parse_and_format():
    assert parse_symbols("RLC") == (R, L, C(1))
    assert parse_symbols("M1 R C2") == (M(1), R, C(2))
    assert format_symbols((R, L, C(1)), 1) == "RLC"
    assert format_symbols((R, M(1), C(2)), 2) == "RM1C2"
    with pytest.raises(ValueError):
        parse_symbols("RXC")


def test_kneading_data_parse():
    d = KneadingData.parse("RLC")
    assert d.modality == 1 and d.periods == (3,) and d.strings() == ["RLC"]
    b = KneadingData.parse("RC1,LC2")
    assert b.modality == 2 and b.periods == (2, 2)
    # a bare trailing C in a multimodal block means the block's own turning point
    assert KneadingData.parse("RC,LC").blocks[1][-1] == C(2)
    assert KneadingData.parse("").modality == 0


def test_kneading_data_validation():
    with pytest.raises(ValueError):
        KneadingData.parse("RLR")  # no terminal C
    with pytest.raises(ValueError):
        KneadingData.parse("RCLC")  # C inside the block


def test_sequence_shift_and_period():
    s = seq("RLRRC")
    assert s.period == 5
    assert s.shift(5) == s
    assert [x.label() for x in s.shift(1).expand(5)] == list("LRRCR")
    with pytest.raises(IndexError):
        seq("RL", periodic=False).at(5)


@given(st.sampled_from(ADMISSIBLE_8))
def test_shift_by_period_is_identity(data):
    s = data.sequence(1)
    assert s.shift(s.period).expand(3 * s.period) == s.expand(3 * s.period)


# -- invariant coordinate ----------------------------------------------------

def test_theta_geometric_series():
    t = Polynomial.t()
    assert invariant_coordinate(seq("R"))["R"] == RationalFunction(1, 1 + t)
    assert invariant_coordinate(seq("L"))["L"] == RationalFunction(1, 1 - t)


@given(st.sampled_from(ADMISSIBLE_8))
def test_theta_closed_form_matches_series(data):
    s = data.sequence(1).shift(1)
    n = 3 * s.period
    assert invariant_coordinate(s).series(n) == theta_series_bruteforce(s, n)


def test_one_sided_limits_rlc():
    d = KneadingData.parse("RLC")
    plus, minus = one_sided_sequence(d, 1, +1), one_sided_sequence(d, 1, -1)
    assert plus.at(0) == R and minus.at(0) == L
    # both sides shadow the critical orbit
    assert [plus.at(j) for j in (1, 2)] == [R, L] == [minus.at(j) for j in (1, 2)]


# -- ordering -------------------------------------------------------------------

def test_compare_examples():
    assert compare(seq("L"), seq("R")) < 0
    s = seq("RLRRC")
    assert compare(s, s) == 0
    assert compare(s.shift(1), s) < 0


def test_compare_modality_mismatch():
    with pytest.raises(ValueError):
        compare(seq("RLC"), seq("RC1", modality=2))


def test_compare_theta_ambiguity_bimodal():
    z = invariant_coordinate(SymbolicSequence((C(1),), True, (), 2))
    with pytest.raises(AmbiguityError):
        compare(z, invariant_coordinate(seq("RC1", modality=2)))


WORDS = [SymbolicSequence(tuple(w) + (C(1),), True, (), 1)
         for p in range(0, 5) for w in itertools.product((L, R), repeat=p)]


@given(st.sampled_from(WORDS), st.sampled_from(WORDS), st.sampled_from(WORDS))
def test_compare_total_order(a, b, c):
    assert compare(a, b) == -compare(b, a)
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


def _theta_bruteforce_cmp(a: SymbolicSequence, b: SymbolicSequence) -> int:
    """Order of the first differing theta coefficient, expanded to 3 max period terms."""
    n = 3 * max(a.period, b.period)
    for va, vb in zip(theta_series_bruteforce(a, n), theta_series_bruteforce(b, n)):
        if va != vb:
            # L < C < R in value; theta coefficient vectors are (L, R) signed
            score = lambda v: -v[0] + v[1]  # noqa: E731
            return (score(va) > score(vb)) - (score(va) < score(vb))
    return 0


@given(st.sampled_from(ADMISSIBLE_8))
def test_admissible_shifts_against_bruteforce(data):
    s = data.sequence(1)
    for i in range(1, s.period):
        tail = s.shift(i)
        assert compare(tail, s) == _theta_bruteforce_cmp(tail, s)
        assert compare(tail, s) <= 0


# -- admissibility --------------------------------------------------------------

def test_worked_example_data_admissible():
    for text in ("RLC", "RLRRC"):
        assert validate_kneading_data(KneadingData.parse(text))
        assert validate_kneading_data(KneadingData.parse(text), literal_rule4=True)


def test_inadmissible_reports_rule():
    rep = validate_kneading_data(KneadingData.parse("RRC"))
    assert not rep and rep.rule == 4 and rep.block == 1
    rep = validate_kneading_data(KneadingData.parse("LC"))
    assert not rep and rep.rule == 1
    with pytest.raises(AdmissibilityError):
        require_admissible(KneadingData.parse("RRC"))


def test_enumeration_counts():
    per = {}
    for d in ADMISSIBLE_8:
        per[d.periods[0]] = per.get(d.periods[0], 0) + 1
    assert per == SUPERSTABLE_COUNTS
    assert len(ADMISSIBLE_8) == 38


def test_enumeration_matches_superstable_quadratics():
    # 1 - a x^2 never fixes its turning point, so C itself has no quadratic witness
    found = set(superstable_parameters(8))
    assert found == {d.strings()[0] for d in ADMISSIBLE_8} - {"C"}


# -- numeric itineraries -----------------------------------------------------------

def test_itinerary_of_superstable_orbit_has_one_c():
    for word, a in superstable_parameters(6).items():
        s = itinerary(quadratic(a), 0.0, len(word), tol=1e-7)
        labels = [x.label() for x in s.block]
        assert labels.count("C") == 1 and labels[-1] == "C"
        assert "".join(labels) == word


def test_kneading_from_orbits_worked_example():
    f = quadratic(1.76)
    P = detect_periodic_orbit(f, 0.0, 16)
    assert kneading_from_orbits(f, [P]).strings() == ["RLC"]
    with pytest.raises(ValueError):
        kneading_from_orbits(f, [])


# -- product itineraries ---------------------------------------------------------

def test_product_itinerary_distinct_periods():
    s_x, s_y = seq("RLC"), seq("RLRRC")
    a, b = product_itinerary(s_x, s_y, 0)
    assert a == s_x and b == s_y.shift(3)
    assert len(product_itineraries(s_x, s_y)) == 15
    with pytest.raises(ValueError):
        product_itinerary(s_x, s_y, 15)


def test_product_itinerary_equal_periods():
    c = seq("C")
    assert product_itinerary(c, c, 0) == (c, c)
    pairs = product_itineraries(seq("RC"), seq("RC"))
    assert len(pairs) == 4 and len(set(pairs)) == 4
