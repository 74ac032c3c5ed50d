"""Exact dense matrices, Kronecker products and characteristic polynomials.

Entries may be ints, Fractions, Polynomials or RationalFunctions; the
operations only rely on ring arithmetic (plus division for ``det`` over a
field).  Characteristic polynomials follow the det(I - tA) convention.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod

import numpy as np

from .poly import Polynomial, RationalFunction


class Matrix:
    """Immutable rectangular matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise ValueError("ragged matrix rows")
            ncols = widths.pop()
        elif ncols is None:
            ncols = 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # -- constructors --------------------------------------------------------

    @classmethod
    def zeros(cls, n: int, m: int | None = None, zero=0) -> Matrix:
        m = n if m is None else m
        return cls([[zero] * m for _ in range(n)], ncols=m)

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> Matrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_numpy(cls, arr) -> Matrix:
        arr = np.asarray(arr)
        return cls([[int(v) for v in row] for row in arr], ncols=arr.shape[1] if arr.ndim == 2 else 0)

    # -- access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def to_numpy(self, dtype=np.int64) -> np.ndarray:
        return np.array(self.tolist(), dtype=dtype).reshape(self.nrows, self.ncols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def submatrix(self, rows=None, cols=None) -> Matrix:
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        cols = list(cols)
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def delete_row(self, i: int) -> Matrix:
        return self.submatrix(rows=[k for k in range(self.nrows) if k != i])

    def delete_col(self, j: int) -> Matrix:
        return self.submatrix(cols=[k for k in range(self.ncols) if k != j])

    # -- algebra -------------------------------------------------------------

    @property
    def T(self) -> Matrix:
        return Matrix(zip(*self.rows), ncols=self.nrows) if self.nrows else Matrix([], ncols=0)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c) -> Matrix:
        return Matrix([[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out, ncols=other.ncols)

    def __eq__(self, other):
        if isinstance(other, Matrix):
            return self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self.rows))

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), 0)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def map(self, fn) -> Matrix:
        return Matrix([[fn(a) for a in r] for r in self.rows], ncols=self.ncols)

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        if self.nrows == 0:
            return 1
        entries = [a for r in self.rows for a in r]
        if all(isinstance(a, int) for a in entries):
            return _det_bareiss(self.tolist(), lambda a, b: a // b)
        if all(isinstance(a, (int, Polynomial)) for a in entries):
            rows = [[Polynomial.coerce(a) for a in r] for r in self.rows]
            return _det_bareiss(rows, lambda a, b: a.exact_div(b), zero=Polynomial())
        return _det_field(self.tolist())

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"


def _det_bareiss(a, exact_div, zero=0):
    """Fraction-free elimination; exact_div must divide exactly."""
    n = len(a)
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def _det_field(a):
    """Gaussian elimination over a field (Fractions or RationalFunctions)."""
    n = len(a)
    a = [[x if not isinstance(x, int) else Fraction(x) for x in row] for row in a]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / a[k][k]
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
    if isinstance(det, Fraction) and det.denominator == 1:
        return det.numerator
    return det


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Block matrix [a_ij * B]."""
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return Matrix(rows, ncols=a.ncols * b.ncols)


def as_matrix(m) -> Matrix:
    if isinstance(m, Matrix):
        return m
    if isinstance(m, np.ndarray):
        return Matrix.from_numpy(m)
    return Matrix(m)


# -- characteristic polynomials ---------------------------------------------

def char_poly_bareiss(a) -> Polynomial:
    """det(I - tA) by fraction-free elimination over Z[t].  Slow; used as a reference."""
    a = as_matrix(a)
    if not a.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = a.nrows
    m = [[Polynomial(((1 if i == j else 0), -a[i, j])) for j in range(n)] for i in range(n)]
    if n == 0:
        return Polynomial.one()
    return _det_bareiss(m, lambda x, y: x.exact_div(y), zero=Polynomial())


_PRIME_LIMIT = 1 << 26


def _primes_below(limit: int):
    """Descending primes below limit (trial division is plenty at this size)."""
    n = limit - 1
    while n > 2:
        if n % 2 and all(n % d for d in range(3, int(n**0.5) + 1, 2)):
            yield n
        n -= 1


def _hessenberg_charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Coefficients (ascending) of det(xI - A) mod p via Hessenberg reduction."""
    n = a.shape[0]
    h = a.astype(np.int64) % p
    for k in range(n - 2):
        col = h[k + 1:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = k + 1 + int(nz[0])
        if piv != k + 1:
            h[[piv, k + 1], :] = h[[k + 1, piv], :]
            h[:, [piv, k + 1]] = h[:, [k + 1, piv]]
        inv = pow(int(h[k + 1, k]), -1, p)
        u = (h[k + 2:, k] * inv) % p
        if not u.any():
            continue
        h[k + 2:, :] = (h[k + 2:, :] - np.outer(u, h[k + 1, :]) % p) % p
        for off, uj in enumerate(u):
            if uj:
                j = k + 2 + off
                h[:, k + 1] = (h[:, k + 1] + int(uj) * h[:, j]) % p
    hh = h.tolist()
    polys = [[1]]
    for m in range(1, n + 1):
        # (x - h_mm) p_{m-1}
        prev = polys[m - 1]
        cur = [0] + prev
        hmm = hh[m - 1][m - 1]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - hmm * c) % p
        sub = 1
        for i in range(m - 1, 0, -1):
            sub = (sub * hh[i][i - 1]) % p
            if not sub:
                break
            coef = (hh[i - 1][m - 1] * sub) % p
            if coef:
                for r, c in enumerate(polys[i - 1]):
                    cur[r] = (cur[r] - coef * c) % p
        polys.append(cur)
    return polys[n]


def char_poly(a) -> Polynomial:
    """det(I - tA) for an integer matrix, exactly.

    Computed modulo several primes with a Hessenberg reduction and lifted by
    the Chinese remainder theorem past a bound on the coefficient size.
    """
    a = as_matrix(a)
    if not a.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = a.nrows
    if n == 0:
        return Polynomial.one()
    if not all(isinstance(v, int) for r in a.rows for v in r):
        raise TypeError("char_poly needs integer entries")
    bound = prod(1 + sum(abs(v) for v in r) for r in a.rows)
    arr = np.array(a.tolist(), dtype=object)
    residues, modulus = None, 1
    for p in _primes_below(_PRIME_LIMIT):
        coeffs = _hessenberg_charpoly_mod(np.array(arr % p, dtype=np.int64), p)
        if residues is None:
            residues = coeffs
        else:
            # incremental CRT
            inv = pow(modulus, -1, p)
            residues = [r + modulus * (((c - r) * inv) % p) for r, c in zip(residues, coeffs)]
        modulus *= p
        if modulus > 2 * bound:
            break
    half = modulus // 2
    monic = [r - modulus if r > half else r for r in residues]
    # det(I - tA) = t^n det(t^{-1} I - A): reverse the monic coefficients
    return Polynomial(list(reversed(monic)))


def companion(f) -> Matrix:
    """Integer matrix A with det(I - tA) = f, for f with f(0) = 1."""
    f = Polynomial.coerce(f)
    if f[0] != 1 or not f.is_integral():
        raise ValueError("companion matrix needs an integer polynomial with constant term 1")
    n = f.degree
    if n <= 0:
        return Matrix([], ncols=0)
    # det(xI - C) = x^n + f_1 x^{n-1} + ... + f_n
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -f[n - i]
    return Matrix(rows, ncols=n)


def rational_matrix(rows) -> Matrix:
    return Matrix([[RationalFunction.coerce(x) for x in r] for r in rows])
