"""Kneading increments, matrices and determinants, and their tensor lift to
triangular maps."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.matrix import Matrix
from .algebra.poly import Polynomial, RationalFunction, cyclotomic_product, poly_tensor
from .errors import ConventionError, NotApplicableError
from .symbols import (
    InvariantCoordinate,
    KneadingData,
    basis_labels,
    invariant_coordinate,
    one_sided_sequence,
    require_admissible,
)

ONE_MINUS_T = Polynomial((1, -1))


@dataclass(frozen=True)
class KneadingMatrix:
    """m x (m+1) matrix; row k holds the basis coefficients of nu_k."""

    entries: Matrix
    periods: tuple[int, ...]
    modality: int

    @property
    def labels(self) -> list[str]:
        return basis_labels(self.modality)

    def row(self, k: int) -> tuple[RationalFunction, ...]:
        return self.entries.rows[k]

    def to_dict(self) -> dict:
        return {
            "basis": self.labels,
            "periods": list(self.periods),
            "rows": [[e.to_dict() for e in r] for r in self.entries.rows],
        }


@dataclass(frozen=True)
class KneadingDeterminant:
    value: RationalFunction
    witnesses: tuple[RationalFunction, ...]
    modality: int

    def to_dict(self) -> dict:
        return {"value": self.value.to_dict(), "witnesses": [w.to_dict() for w in self.witnesses]}


def kneading_increments(data: KneadingData, check: bool = True) -> list[InvariantCoordinate]:
    """nu_k = theta(c_k+) - theta(c_k-) for k = 1..m."""
    if check:
        require_admissible(data)
    out = []
    for k in range(1, data.modality + 1):
        plus = invariant_coordinate(one_sided_sequence(data, k, +1))
        minus = invariant_coordinate(one_sided_sequence(data, k, -1))
        out.append(plus - minus)
    return out


def kneading_matrix(data: KneadingData, check: bool = True) -> KneadingMatrix:
    nus = kneading_increments(data, check=check)
    m = data.modality
    entries = Matrix([list(nu.coeffs) for nu in nus], ncols=m + 1)
    return KneadingMatrix(entries=entries, periods=data.periods, modality=m)


def lap_sign(i: int, m: int) -> int:
    """Orientation of lap i (1-based) of an m-modal map with increasing first lap."""
    return 1 if i % 2 == 1 else -1


def kneading_determinant(N: KneadingMatrix) -> KneadingDeterminant:
    """D = (-1)^(i+1) D_i / (1 - eps(lap i) t) for every column i; all must agree.

    D_i is the minor with column i removed.  A monotone map (m = 0) has the
    trivial determinant 1.
    """
    m = N.modality
    if m == 0:
        one = RationalFunction(1)
        return KneadingDeterminant(one, (one,), 0)
    witnesses = []
    for i in range(1, m + 2):
        minor = N.entries.delete_col(i - 1)
        d_i = RationalFunction.coerce(minor.det())
        sign = 1 if i % 2 == 1 else -1
        den = Polynomial((1, -lap_sign(i, m)))
        witnesses.append(d_i * sign / den)
    value = witnesses[0]
    for i, w in enumerate(witnesses[1:], start=2):
        if w != value:
            raise ConventionError(f"kneading determinant witness {i} disagrees with witness 1: {w} != {value}")
    return KneadingDeterminant(value, tuple(witnesses), m)


def d_poly(D: KneadingDeterminant | RationalFunction, periods) -> Polynomial:
    """D(t) times prod (1 - t^p); must be a polynomial."""
    value = D.value if isinstance(D, KneadingDeterminant) else RationalFunction.coerce(D)
    prod = value * cyclotomic_product(periods)
    if not prod.is_polynomial():
        raise ConventionError(f"D * P_cyc = {prod} is not a polynomial")
    return prod.as_polynomial()


def lift_factor(d: Polynomial) -> Polynomial:
    """The polynomial a factor contributes to a tensor lift.

    d = 1 exactly when the factor's partition is empty (a monotone map, or
    only fixed critical orbits).  Such a factor acts on its interval as a
    single piece with transition matrix [[1]], so it contributes 1 - t.
    """
    return ONE_MINUS_T if d == Polynomial.one() else d


@dataclass(frozen=True)
class TensorEntry:
    """Formal product left (x) right of two kneading-matrix entries."""

    left: RationalFunction
    right: RationalFunction

    def __str__(self):
        return f"({self.left}) (x) ({self.right})"

    def to_dict(self) -> dict:
        return {"fiber": self.left.to_dict(), "basis": self.right.to_dict()}


@dataclass(frozen=True)
class TriangularKneading:
    entries: tuple[tuple[TensorEntry, ...], ...]
    D_T: RationalFunction
    d_T: Polynomial
    periods: tuple[int, ...]
    D_fiber: KneadingDeterminant
    D_basis: KneadingDeterminant

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def to_dict(self) -> dict:
        return {
            "entries": [[e.to_dict() for e in row] for row in self.entries],
            "D_T": self.D_T.to_dict(),
            "d_T": self.d_T.to_list(),
            "periods": list(self.periods),
        }


def triangular_kneading(N_g: KneadingMatrix, N_f: KneadingMatrix) -> TriangularKneading:
    """N_T = N_g (x) N_f with D_T = (d_g (x) d_f) / P_cyc(all periods).

    The basis map must be unimodal.  N_T entries are kept as formal pairs;
    the determinant is computed at the polynomial level.
    """
    if N_f.modality != 1:
        raise NotApplicableError("the basis map must be unimodal")
    D_g = kneading_determinant(N_g)
    D_f = kneading_determinant(N_f)
    d_g = lift_factor(d_poly(D_g, N_g.periods))
    d_f = lift_factor(d_poly(D_f, N_f.periods))
    d_T = poly_tensor(d_g, d_f)
    periods = tuple(N_g.periods) + tuple(N_f.periods)
    D_T = RationalFunction(d_T, cyclotomic_product(periods))
    if N_g.modality == 0:
        entries = (tuple(TensorEntry(RationalFunction(1), e) for e in N_f.entries.rows[0]),)
    else:
        entries = tuple(
            tuple(TensorEntry(a, b) for a in row_g for b in N_f.entries.rows[0])
            for row_g in N_g.entries.rows
        )
    return TriangularKneading(entries, D_T, d_T, periods, D_g, D_f)
