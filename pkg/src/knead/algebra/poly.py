"""Exact univariate polynomials and rational functions in the formal variable t.

Coefficients are stored in ascending powers of t.  Arithmetic is carried out
over the rationals; coefficients that happen to be integers are stored as
``int`` so integer polynomials stay integer polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational


def _canon(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"polynomial coefficients must be rational, got {c!r}")
    return int(c)


class Polynomial:
    """A polynomial with rational coefficients, ascending powers.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_canon(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, power: int, coeff=1) -> Polynomial:
        return cls([0] * power + [coeff])

    @classmethod
    def t(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def one(cls) -> Polynomial:
        return cls((1,))

    @classmethod
    def coerce(cls, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return cls((other,))

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def to_list(self) -> list:
        """Ascending coefficients; integers stay ints, fractions become strings."""
        return [c if isinstance(c, int) else str(c) for c in self.coeffs]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = Polynomial.coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-Polynomial.coerce(other))

    def __rsub__(self, other):
        return Polynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = Polynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = Polynomial.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (Polynomial, RationalFunction)):
            return RationalFunction(self, 1) / other
        return Polynomial(Fraction(c) / other for c in self.coeffs)

    def __divmod__(self, other):
        other = Polynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dd = other.degree
        lead = Fraction(other.lead)
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Polynomial(quot), Polynomial(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Polynomial:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, RationalFunction):
            return other == self
        if isinstance(other, Rational):
            return self.coeffs == Polynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    # -- evaluation / calculus ----------------------------------------------

    def __call__(self, x):
        acc = 0 if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self) -> Fraction:
        """Positive rational c such that self / c is a primitive integer polynomial."""
        if self.is_zero():
            return Fraction(0)
        dens = lcm(*(Fraction(c).denominator for c in self.coeffs))
        nums = reduce(gcd, (int(c * dens) for c in self.coeffs))
        return Fraction(abs(nums), dens)

    def primitive(self) -> Polynomial:
        if self.is_zero():
            return self
        return self / self.content()

    def monic(self) -> Polynomial:
        return self / self.lead

    def gcd(self, other) -> Polynomial:
        """Monic gcd over Q (zero if both are zero)."""
        a, b = self, Polynomial.coerce(other)
        while not b.is_zero():
            # primitive remainders keep the coefficients from blowing up
            a, b = b, (a % b).primitive()
        return a.monic() if not a.is_zero() else a

    def squarefree(self) -> Polynomial:
        g = self.gcd(self.derivative())
        return self.exact_div(g) if g.degree > 0 else self

    def shift_power(self, k: int) -> Polynomial:
        """Multiply by t**k."""
        return Polynomial([0] * k + list(self.coeffs))

    def substitute_neg(self) -> Polynomial:
        """p(-t)."""
        return Polynomial(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs, var: str = "t") -> str:
    if not any(coeffs):
        return "0"
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}" if isinstance(mag, int) else f"({mag}){mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


IntPolynomial = Polynomial


class RationalFunction:
    """Quotient of polynomials kept in a unique canonical form.

    Canonical form: numerator and denominator are coprime integer polynomials
    with no common integer content, and the lowest nonzero coefficient of the
    denominator is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = Polynomial.coerce(num), Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Polynomial(), Polynomial.one()
            return
        g = num.gcd(den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        # clear denominators jointly, then strip joint integer content
        scale = lcm(*(Fraction(c).denominator for c in num.coeffs + den.coeffs))
        nums = [int(c * scale) for c in num.coeffs]
        dens = [int(c * scale) for c in den.coeffs]
        common = reduce(gcd, nums + dens)
        low = next(c for c in dens if c)
        if low < 0:
            common = -common
        self.num = Polynomial(c // common for c in nums)
        self.den = Polynomial(c // common for c in dens)

    @classmethod
    def coerce(cls, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        return cls(other, 1)

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFunction.coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (Polynomial, RationalFunction, int, Fraction)):
            other = RationalFunction.coerce(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ArithmeticError(f"{self} is not a polynomial")
        return self.num / self.den.coeffs[0]

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def series(self, n: int) -> list:
        """First n power-series coefficients (requires den(0) != 0)."""
        d0 = self.den[0]
        if d0 == 0:
            raise ArithmeticError("denominator vanishes at t = 0; no power series")
        out = []
        for k in range(n):
            acc = Fraction(self.num[k])
            for j in range(1, min(k, self.den.degree) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(_canon(acc / d0))
        return out

    def to_dict(self) -> dict:
        return {"numerator": self.num.to_list(), "denominator": self.den.to_list()}

    def __repr__(self):
        return f"RationalFunction({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    def __str__(self):
        if self.is_polynomial() and self.den.coeffs == (1,):
            return str(self.num)
        return f"({self.num})/({self.den})"


def cyclotomic_product(periods) -> Polynomial:
    """Product of (1 - t**p) over the given periods."""
    out = Polynomial.one()
    for p in periods:
        if p < 1:
            raise ValueError(f"period must be >= 1, got {p}")
        out = out * Polynomial([1] + [0] * (p - 1) + [-1])
    return out


def power_sums(p: Polynomial, n: int) -> list:
    """Power sums s_1..s_n of the reciprocal roots of p, with p(0) != 0.

    For p(t) = det(I - tA) these are the traces of A**k.
    """
    c0 = Fraction(p[0])
    if c0 == 0:
        raise ValueError("power sums need a nonzero constant term")
    c = [Fraction(p[k]) / c0 for k in range(n + 1)]
    s = []
    for k in range(1, n + 1):
        acc = -k * c[k]
        for i in range(1, k):
            acc -= c[i] * s[k - i - 1]
        s.append(acc)
    return s


def from_power_sums(s: list, degree: int) -> Polynomial:
    """Inverse of power_sums: the constant-term-one polynomial of given degree."""
    c = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += c[k - i] * s[i - 1]
        c.append(-acc / k)
    return Polynomial(c)


def poly_tensor(f, g) -> Polynomial:
    """Tensor product of two det(I - tA)-convention polynomials.

    The reciprocal roots of the result are all pairwise products of the
    reciprocal roots of f and g, and its constant term is 1.  Computed through
    power sums: s_k(f (x) g) = s_k(f) * s_k(g).  A result with non-integer
    coefficients is scaled to a primitive integer polynomial.
    """
    f, g = Polynomial.coerce(f), Polynomial.coerce(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("tensor product of the zero polynomial")
    if f[0] == 0 or g[0] == 0:
        raise ValueError("tensor product needs nonzero constant terms")
    n = f.degree * g.degree
    sf, sg = power_sums(f, n), power_sums(g, n)
    out = from_power_sums([a * b for a, b in zip(sf, sg)], n)
    if not out.is_integral():
        out = out.primitive()
    return out
