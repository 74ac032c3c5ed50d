"""Topological entropy from kneading determinants and from transition matrices."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .algebra.matrix import Matrix
from .algebra.poly import Polynomial, RationalFunction
from .algebra.roots import count_roots, smallest_positive_root, spectral_radius
from .kneading import KneadingDeterminant, d_poly
from .markov import TransitionMatrix

DEFAULT_PRECISION = 1e-12


@dataclass(frozen=True)
class EntropyReport:
    h_kneading: float
    h_spectral: float
    t_star: float | None
    lam: float
    h_basis: float | None = None
    h_fiber: float | None = None
    bowen_ok: bool | None = None
    additivity_gap: float | None = None

    @property
    def routes_agree(self) -> bool:
        return abs(self.h_kneading - self.h_spectral) < 1e-8

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


def entropy_from_polynomial(d: Polynomial, precision: float = DEFAULT_PRECISION) -> tuple[float | None, float]:
    """(t*, h) with t* the smallest positive root of d; h = 0 unless t* < 1."""
    t_star = smallest_positive_root(d, precision) if d.degree > 0 else None
    # exact test: a root at t = 1 itself means zero entropy, not log(1/0.99999...)
    if t_star is None or count_roots(d, 0, 1) - (d(1) == 0) == 0:
        return t_star, 0.0
    return t_star, max(0.0, math.log(1.0 / t_star))


def entropy_from_kneading(
    D: KneadingDeterminant | RationalFunction | Polynomial,
    periods=(),
    precision: float = DEFAULT_PRECISION,
) -> tuple[float | None, float]:
    if isinstance(D, Polynomial):
        return entropy_from_polynomial(D, precision)
    return entropy_from_polynomial(d_poly(D, periods), precision)


def entropy_from_transition(A: TransitionMatrix | Matrix, precision: float = 1e-13) -> tuple[float, float]:
    """(lambda, h) with lambda the spectral radius; h = 0 when lambda <= 1."""
    m = A.matrix if isinstance(A, TransitionMatrix) else A
    lam = float(spectral_radius(m, precision)) if m.nrows else 0.0
    return lam, (math.log(lam) if lam > 1.0 else 0.0)


def bowen_check(h_f: float, h_fib: float, h_T: float, tol: float = 1e-8) -> bool:
    """max(h_f, h_fib) <= h_T <= h_f + h_fib, up to tol."""
    return max(h_f, h_fib) - tol <= h_T <= h_f + h_fib + tol
