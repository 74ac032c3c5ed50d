from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import int_matrices, int_polys, zero_one_matrices
from knead.algebra import (
    Matrix,
    Polynomial,
    RationalFunction,
    char_poly,
    char_poly_bareiss,
    companion,
    cyclotomic_product,
    kron,
    poly_tensor,
    smallest_positive_root,
    spectral_radius,
)
from knead.algebra.poly import format_poly, from_power_sums, power_sums
from knead.algebra.roots import count_roots, sturm_sequence

P = Polynomial


# -- polynomials ------------------------------------------------------------

def test_poly_basics():
    p = P([1, -1, -1])
    assert p.degree == 2 and p.to_list() == [1, -1, -1]
    assert P([0, 0]).is_zero() and P([3, 0, 0]).to_list() == [3]
    assert p * P([1, 1]) == P([1, 0, -2, -1])
    assert p(Fraction(1, 2)) == Fraction(1, 4)
    assert str(P([1, -2, 0, 1])) == "1 - 2t + t^3"
    assert format_poly([0]) == "0"


def test_divmod_and_gcd():
    a = P([1, 0, -1])  # 1 - t^2
    q, r = divmod(a, P([1, -1]))
    assert q == P([1, 1]) and r.is_zero()
    assert a.gcd(P([1, 0, 0, -1])).monic() == P([-1, 1])
    with pytest.raises(ArithmeticError):
        a.exact_div(P([2, 1, 1]))


def test_fraction_coefficients_canonicalize():
    p = P([Fraction(2, 1), Fraction(1, 2)])
    assert p[0] == 2 and isinstance(p[0], int)
    assert not p.is_integral() and (p * 2).is_integral()


@given(int_polys(), int_polys())
def test_poly_ring_against_numpy(a, b):
    ref = np.polynomial.polynomial.polymul(a.to_list() or [0], b.to_list() or [0])
    ours = (a * b).to_list()
    assert ours + [0] * (len(ref) - len(ours)) == ref.astype(int).tolist()
    assert a + b - b == a


@given(int_polys(), int_polys().filter(lambda p: not p.is_zero()))
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


# -- rational functions -------------------------------------------------------

def test_rational_canonical_form():
    r = RationalFunction(P([-1, 0, 2, 1]), P([1, 0, 0, -1]))
    assert r == RationalFunction(P([-1, 0, 2, 1]) * 3, P([1, 0, 0, -1]) * 3)
    s = RationalFunction(P([1, -2, 0, 1]), P([1, 0, 0, -1]))
    assert s.num == P([1, -1, -1]) and s.den == P([1, 1, 1])
    assert RationalFunction(P([2]), P([-4])).to_dict() == {"numerator": [-1], "denominator": [2]}


def test_rational_series():
    r = RationalFunction(1, P([1, -1]))
    assert r.series(5) == [1, 1, 1, 1, 1]
    assert (r * P([1, -1])).is_polynomial()


@given(int_polys(4), int_polys(3, const_one=True), int_polys(4), int_polys(3, const_one=True))
def test_rational_field_laws(n1, d1, n2, d2):
    a, b = RationalFunction(n1, d1), RationalFunction(n2, d2)
    assert a + b == b + a
    assert (a + b) - b == a
    assert a * b == b * a
    if not b.is_zero():
        assert (a / b) * b == a
    # canonical form: equal values have equal representations
    c = RationalFunction(n1 * d2, d1 * d2)
    assert c == a and c.to_dict() == a.to_dict() and hash(c) == hash(a)


def test_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1, 0)


# -- cyclotomic products, power sums, tensor ---------------------------------

def test_cyclotomic_product():
    assert cyclotomic_product([3, 5]) == P([1, 0, 0, -1]) * P([1, 0, 0, 0, 0, -1])
    assert cyclotomic_product([]) == P.one()


def test_power_sums_roundtrip():
    p = P([1, -1, -4, 3])
    assert from_power_sums(power_sums(p, 3), 3) == p


def test_poly_tensor_worked_example():
    d_T = poly_tensor(P([1, -1, -1, 1, -1]), P([1, -1, -1]))
    assert d_T.to_list() == [1, -1, -4, 3, -3, -5, 2, 1, 1]


def test_poly_tensor_trivial_factor():
    f = P([1, -1, -1])
    assert poly_tensor(P([1, -1]), f) == f
    assert poly_tensor(P.one(), f) == P.one()


def test_poly_tensor_errors():
    with pytest.raises(ValueError):
        poly_tensor(P([0, 1]), P([1, -1]))


@given(int_polys(3, -3, 3, const_one=True), int_polys(3, -3, 3, const_one=True))
def test_poly_tensor_matches_companion_kron(f, g):
    # det(I - t C_f (x) C_g) is the tensor product of the two polynomials
    if f.degree < 1 or g.degree < 1:
        return
    Cf, Cg = companion(f), companion(g)
    if any(not isinstance(x, int) for r in Cf.rows + Cg.rows for x in r):
        return
    assert char_poly(kron(Cf, Cg)) == poly_tensor(f, g)


# -- matrices -------------------------------------------------------------------

def test_matrix_ops():
    a = Matrix([[0, 1], [1, 1]])
    assert (a @ a).tolist() == [[1, 1], [1, 2]]
    assert a.T == a and a.trace() == 1 and a.det() == -1
    assert kron(Matrix([[1]]), a) == a
    assert Matrix.identity(2).det() == 1
    assert a.submatrix(rows=[1]).tolist() == [[1, 1]]


def test_det_polynomial_entries():
    t = P.t()
    m = Matrix([[P.one() - t, t], [t, P.one()]])
    assert m.det() == P([1, -1, -1])


def test_char_poly_worked_example_factors():
    assert char_poly(Matrix([[0, 1], [1, 1]])).to_list() == [1, -1, -1]
    A_y = Matrix([[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 1, 0], [1, 0, 0, 0]])
    assert char_poly(A_y).to_list() == [1, -1, -1, 1, -1]


@given(int_matrices(5, -4, 4))
def test_char_poly_matches_bareiss(a):
    assert char_poly(a) == char_poly_bareiss(a)


@given(int_matrices(4, -3, 3))
def test_char_poly_against_numpy(a):
    # numpy gives det(tI - A) with descending coefficients, i.e. det(I - tA) reversed
    ref = np.round(np.poly(a.to_numpy().astype(float))).astype(int).tolist()
    ours = char_poly(a).to_list()
    ours += [0] * (len(ref) - len(ours))
    assert ours == ref


def test_companion():
    f = P([1, -1, -4, 3, -3, -5, 2, 1, 1])
    assert char_poly(companion(f)) == f


@given(int_matrices(4), int_matrices(3))
def test_kron_identities(a, b):
    k = kron(a, b)
    assert k.T == kron(a.T, b.T)
    assert k.trace() == a.trace() * b.trace()
    n, m = a.nrows, b.nrows
    assert k.det() == a.det() ** m * b.det() ** n
    assert np.array_equal(k.to_numpy(), np.kron(a.to_numpy(), b.to_numpy()))


@given(int_matrices(3), int_matrices(3), int_matrices(3), int_matrices(3))
def test_kron_mixed_product(a, b, c, d):
    if a.nrows != c.nrows or b.nrows != d.nrows:
        return
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


# -- roots and spectral radius ---------------------------------------------------

def test_sturm_counts():
    p = P([1, -1, -1])  # roots (-1 +- sqrt 5)/2
    assert count_roots(p, 0, 1) == 1
    assert count_roots(p, -2, 1) == 2
    assert len(sturm_sequence(p)) == 3


def test_smallest_positive_root():
    golden = (5 ** 0.5 - 1) / 2
    assert abs(smallest_positive_root(P([1, -1, -1])) - golden) < 1e-12
    assert smallest_positive_root(P([1, 1])) is None
    assert smallest_positive_root(P.one()) is None
    t = smallest_positive_root(P([1, -1, -4, 3, -3, -5, 2, 1, 1]))
    assert abs(t - 0.408515) < 1e-6


def test_smallest_root_double_root():
    p = P([Fraction(1, 4), -1, 1]) * 4  # (1 - 2t)^2
    assert abs(smallest_positive_root(p) - 0.5) < 1e-9


def test_spectral_radius():
    assert abs(spectral_radius(Matrix([[0, 1], [1, 1]])) - (1 + 5 ** 0.5) / 2) < 1e-12
    assert spectral_radius(Matrix.identity(3)) == pytest.approx(1.0, abs=1e-12)
    assert spectral_radius(Matrix([[0, 1], [0, 0]])) == 0
    assert spectral_radius(Matrix([], ncols=0)) == 0


@given(zero_one_matrices(6))
def test_spectral_radius_against_numpy(a):
    ref = max(abs(np.linalg.eigvals(a.to_numpy().astype(float))))
    assert spectral_radius(a) == pytest.approx(ref, abs=1e-6)


@given(zero_one_matrices(4), zero_one_matrices(3))
def test_spectral_radius_multiplicative(a, b):
    assert spectral_radius(kron(a, b)) == pytest.approx(spectral_radius(a) * spectral_radius(b), abs=1e-8)
