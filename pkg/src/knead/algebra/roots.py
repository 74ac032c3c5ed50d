"""Smallest positive real roots of integer polynomials and spectral radii of
nonnegative matrices."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .poly import Polynomial, RationalFunction

def _int_sign(coeffs, x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, in integer arithmetic."""
    num, den = x.numerator, x.denominator
    v, scale = 0, 1
    for c in reversed(coeffs):
        v = v * num + c * scale
        scale *= den
    return (v > 0) - (v < 0)


def _sign_at(p: Polynomial, x) -> int:
    x = Fraction(x)
    if p.is_integral():
        return _int_sign([int(c) for c in p.coeffs], x)
    v = p(x)
    return (v > 0) - (v < 0)


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """Sturm chain with every term scaled to a primitive integer polynomial.

    Scaling by positive constants leaves the sign variations unchanged.
    """
    seq = [p.primitive(), p.derivative().primitive()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r.primitive())
    return seq


class _RootCounter:
    """Sturm chain built once, queried many times."""

    def __init__(self, p: Polynomial):
        self.chain = [[int(c) for c in q.coeffs] for q in sturm_sequence(p)]

    def variations(self, x) -> int:
        x = Fraction(x)
        signs = [s for s in (_int_sign(q, x) for q in self.chain) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def __call__(self, lo, hi) -> int:
        return self.variations(lo) - self.variations(hi)


def count_roots(p: Polynomial, lo, hi) -> int:
    """Number of distinct real roots of p in (lo, hi]."""
    return _RootCounter(p)(lo, hi)


def root_bounds(p: Polynomial) -> tuple[Fraction, Fraction]:
    """(lower, upper) bounds on the moduli of the nonzero roots of p."""
    cs = [abs(Fraction(c)) for c in p.coeffs]
    a0, an = cs[0], cs[-1]
    lower = a0 / (a0 + max(cs[1:]))
    upper = 1 + max(cs[:-1]) / an
    return lower, upper


def smallest_positive_root(p, precision: float = 1e-12) -> float | None:
    """Least t > 0 with p(t) = 0, or None when p has no positive root.

    Accepts a Polynomial or a RationalFunction (its numerator is used).
    Sturm counts isolate the root in a dyadic bracket, which is then
    narrowed by exact sign bisection.
    """
    if isinstance(p, RationalFunction):
        p = p.num
    p = Polynomial.coerce(p)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if p.is_zero() or p[0] == 0:
        raise ValueError("need a polynomial with nonzero constant term")
    if p.degree == 0:
        return None
    p = p.squarefree().primitive()
    count = _RootCounter(p)
    upper = Fraction(math.ceil(root_bounds(p)[1]))
    if count(0, upper) == 0:
        return None

    # bisect on Sturm counts until (lo, hi] isolates the least positive root
    lo, hi = Fraction(0), upper
    while count(lo, hi) > 1 or _sign_at(p, lo) == _sign_at(p, hi):
        mid = (lo + hi) / 2
        if count(lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    s_lo = _sign_at(p, lo)
    while hi - lo > precision * max(Fraction(1), lo) / 4:
        # float midpoints keep the denominators small
        mid = Fraction((float(lo) + float(hi)) / 2)
        if not lo < mid < hi:
            mid = (lo + hi) / 2
            if float(hi) - float(lo) <= 0:
                break
        s = _sign_at(p, mid)
        if s == 0:
            return float(mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def _perron_root(b: np.ndarray, precision: float) -> float:
    """Spectral radius of an irreducible nonnegative matrix with positive diagonal."""
    n = b.shape[0]
    x = np.ones(n)
    m = b.copy()
    for _ in range(200):
        y = b @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= precision * hi:
            return 0.5 * (lo + hi)
        # square the power and restart from the all-ones vector
        m = m @ m
        m /= m.max()
        x = m @ np.ones(n)
        x /= x.max()
    return 0.5 * (lo + hi)


def spectral_radius(a, precision: float = 1e-13) -> float:
    """Spectral radius of a nonnegative square matrix.

    Splits the matrix into strongly connected components; each irreducible
    block is shifted by the identity (making it primitive) and its Perron root
    is pinned between Collatz-Wielandt bounds.
    """
    arr = np.asarray(a.tolist() if hasattr(a, "tolist") else a, dtype=float)
    if arr.size == 0:
        return 0.0
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("spectral radius of a non-square matrix")
    if (arr < 0).any():
        raise ValueError("spectral_radius expects a nonnegative matrix")
    ncomp, labels = connected_components(csr_matrix(arr), directed=True, connection="strong")
    best = 0.0
    for c in range(ncomp):
        idx = np.nonzero(labels == c)[0]
        block = arr[np.ix_(idx, idx)]
        if not block.any():
            continue
        shifted = block + np.eye(len(idx))
        best = max(best, _perron_root(shifted, precision) - 1.0)
    return best
