"""Piecewise-monotone interval maps, triangular maps and their periodic orbits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import DomainError, EscapeError, InconsistentOrbitError, ShapeError

DEFAULT_TOL = 1e-9
CLOSURE_TOL = 1e-7
DOMAIN_SLACK = 1e-12
CRIT_GRID = 2048
CRIT_TOL = 1e-12


@dataclass(frozen=True)
class IntervalMap:
    """A continuous piecewise-monotone map of a closed interval.

    ``critical_points`` are the turning points.  The first lap must be
    increasing, so odd-numbered turning points are maxima.
    """

    func: Callable[[float], float]
    domain: tuple[float, float]
    critical_points: tuple[float, ...] = ()
    deriv: Callable[[float], float] | None = None
    name: str = "map"
    params: dict = field(default_factory=dict)
    check_shape: bool = True

    def __post_init__(self):
        a, b = self.domain
        if not a < b:
            raise DomainError(f"empty domain {self.domain}")
        cps = tuple(float(c) for c in self.critical_points)
        object.__setattr__(self, "critical_points", cps)
        if any(not a < c < b for c in cps):
            raise DomainError("critical points must lie strictly inside the domain")
        if any(c2 <= c1 for c1, c2 in zip(cps, cps[1:])):
            raise DomainError("critical points must be strictly increasing")
        if self.check_shape and cps and self.shape != "increasing":
            raise ShapeError(
                f"{self.name}: first lap is decreasing; turning points must start with a maximum"
            )

    @property
    def modality(self) -> int:
        return len(self.critical_points)

    @property
    def shape(self) -> str:
        """Orientation of the first lap."""
        a = self.domain[0]
        right = self.critical_points[0] if self.critical_points else self.domain[1]
        return "increasing" if self.func(right) >= self.func(a) else "decreasing"

    def is_max(self, k: int) -> bool:
        """Whether the k-th turning point (1-based) is a maximum."""
        return (k % 2 == 1) == (self.shape == "increasing")

    def __call__(self, x: float) -> float:
        return evaluate(self, x)

    def derivative(self, x: float, h: float = 1e-7) -> float:
        if self.deriv is not None:
            return self.deriv(x)
        return (self.func(x + h) - self.func(x - h)) / (2 * h)

    def contains(self, x: float, slack: float = DOMAIN_SLACK) -> bool:
        a, b = self.domain
        return a - slack <= x <= b + slack


def evaluate(fmap: IntervalMap, x: float) -> float:
    if not fmap.contains(x):
        raise DomainError(f"{x!r} outside domain {fmap.domain}")
    return float(fmap.func(x))


@dataclass(frozen=True)
class Orbit:
    """A periodic orbit, listed in dynamical order.

    ``anchor`` indexes the point treated as the turning point when the orbit
    is a critical orbit (the point closest to the starting point); it is
    None for ordinary orbits.
    """

    points: tuple[float, ...]
    period: int
    residual: float
    transient: int = 0
    anchor: int | None = 0
    multiplier: float | None = None

    def __post_init__(self):
        if len(self.points) != self.period:
            raise ValueError("orbit length must equal its period")

    def rotated(self, k: int) -> Orbit:
        k %= self.period
        pts = self.points[k:] + self.points[:k]
        anchor = None if self.anchor is None else (self.anchor - k) % self.period
        return replace(self, points=pts, anchor=anchor)

    def start_at_min(self) -> Orbit:
        return self.rotated(int(np.argmin(self.points)))

    def start_at_anchor(self) -> Orbit:
        return self if not self.anchor else self.rotated(self.anchor)


@dataclass(frozen=True)
class TriangularMap:
    """T(x, y) = (f(x), g(x, y)) on a rectangle X x Y.

    ``basis`` is the IntervalMap for f when the family is continuous and
    piecewise monotone; iterate-only families leave it as None.
    """

    f: Callable[[float], float]
    g: Callable[[float, float], float]
    x_domain: tuple[float, float]
    y_domain: tuple[float, float]
    dg_dy: Callable[[float, float], float] | None = None
    basis: IntervalMap | None = None
    name: str = "triangular"
    params: dict = field(default_factory=dict)
    kneading_eligible: bool = True

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return (float(self.f(x)), float(self.g(x, y)))

    def iterate(self, x: float, y: float, n: int) -> list[tuple[float, float]]:
        """n iterates of (x, y), raising EscapeError if the orbit leaves X x Y."""
        (xa, xb), (ya, yb) = self.x_domain, self.y_domain
        out = []
        for k in range(1, n + 1):
            x, y = self(x, y)
            if not (xa - DOMAIN_SLACK <= x <= xb + DOMAIN_SLACK and ya - DOMAIN_SLACK <= y <= yb + DOMAIN_SLACK):
                raise EscapeError(k, (x, y))
            out.append((x, y))
        return out


@dataclass(frozen=True)
class ProductOrbit:
    pairs: tuple[tuple[float, float], ...]
    p: int
    q: int

    @property
    def period(self) -> int:
        return self.p * self.q


# -- orbit detection --------------------------------------------------------

def _iterates(fmap: IntervalMap, x0: float, n: int, start_index: int = 0) -> list[float]:
    xs = [x0]
    x = x0
    for k in range(1, n + 1):
        x = float(fmap.func(x))
        if not math.isfinite(x) or not fmap.contains(x):
            raise EscapeError(start_index + k, x)
        xs.append(x)
    return xs


def _minimal_close(xs: list[float], max_period: int, tol: float) -> int | None:
    for p in range(1, max_period + 1):
        if abs(xs[p] - xs[0]) < tol:
            # no proper divisor may close as well (guards against tolerance slop)
            if all(abs(xs[d] - xs[0]) >= tol for d in range(1, p) if p % d == 0):
                return p
    return None


def _polish(fmap: IntervalMap, y: float, p: int, steps: int = 8) -> float:
    """Newton refinement of a root of F^p(y) - y."""
    for _ in range(steps):
        x, dx = y, 1.0
        for _ in range(p):
            dx *= fmap.derivative(x)
            x = fmap.func(x)
        denom = dx - 1.0
        if denom == 0 or not math.isfinite(denom):
            break
        step = (x - y) / denom
        new = y - step
        if not fmap.contains(new) or abs(step) > 1e-3:
            break
        y = new
        if abs(step) < 1e-16:
            break
    return y


def detect_periodic_orbit(
    fmap: IntervalMap,
    x0: float,
    max_period: int,
    tol: float = DEFAULT_TOL,
    max_transient: int = 20000,
) -> Orbit | None:
    """Find the minimal period p <= max_period with |F^p(x0) - x0| < tol.

    When x0 itself does not close up (the parameter is only close to a
    superstable value) the orbit is iterated forward until it settles on an
    attracting cycle, which is then refined by Newton's method.  The returned
    points start at the cycle point closest to x0, and ``anchor`` is 0.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    xs = _iterates(fmap, x0, max_period)
    p = _minimal_close(xs, max_period, tol)
    if p is not None:
        return _make_orbit(fmap, xs[0], p, 0, x0)

    y, done = x0, 0
    chunk = 200
    while done < max_transient:
        ys = _iterates(fmap, y, chunk, start_index=done)
        y, done = ys[-1], done + chunk
        xs = _iterates(fmap, y, max_period, start_index=done)
        p = _minimal_close(xs, max_period, tol)
        if p is None:
            # cycle not yet settled to tol: try a looser test, then polish
            p = _minimal_close(xs, max_period, math.sqrt(tol))
            if p is None:
                continue
        y = _polish(fmap, y, p)
        cyc = _iterates(fmap, y, p, start_index=done)
        if abs(cyc[p] - cyc[0]) < tol:
            near = min(range(p), key=lambda i: abs(cyc[i] - x0))
            return _make_orbit(fmap, cyc[near], p, done, x0)
    return None


def _make_orbit(fmap: IntervalMap, start: float, p: int, transient: int, x0: float) -> Orbit:
    xs = _iterates(fmap, start, p)
    residual = abs(xs[p] - xs[0])
    if residual >= CLOSURE_TOL:
        raise InconsistentOrbitError(f"cycle fails closure check (residual {residual:.3g})")
    mult = math.prod(fmap.derivative(x) for x in xs[:p])
    return Orbit(points=tuple(xs[:p]), period=p, residual=residual, transient=transient, anchor=0,
                 multiplier=mult)


# -- fibers and products ----------------------------------------------------

def critical_points_numeric(
    deriv: Callable[[float], float],
    domain: tuple[float, float],
    grid: int = CRIT_GRID,
    tol: float = CRIT_TOL,
) -> tuple[float, ...]:
    """Sign changes of ``deriv`` on a uniform grid, refined by bisection."""
    a, b = domain
    xs = np.linspace(a, b, grid)
    ds = [deriv(float(x)) for x in xs]
    out = []
    for i in range(1, grid - 1):
        if ds[i] == 0 and ds[i - 1] * ds[i + 1] < 0:
            out.append(float(xs[i]))
    for i in range(grid - 1):
        lo, hi = float(xs[i]), float(xs[i + 1])
        dl, dh = ds[i], ds[i + 1]
        if dl * dh < 0:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                dm = deriv(mid)
                if dm == 0:
                    lo = hi = mid
                    break
                if (dm < 0) == (dl < 0):
                    lo, dl = mid, dm
                else:
                    hi = mid
            out.append(0.5 * (lo + hi))
    return tuple(sorted(c for c in out if a < c < b))


def compose_fiber(T: TriangularMap, P: Orbit, check_tol: float = CLOSURE_TOL) -> IntervalMap:
    """The one-variable map g_P(y) = g(x_{p-1}, ... g(x_1, g(x_0, y)) ...)."""
    xs = P.points
    for i, x in enumerate(xs):
        nxt = xs[(i + 1) % P.period]
        if abs(T.f(x) - nxt) > check_tol:
            raise InconsistentOrbitError(f"orbit point {i} does not map to its successor")

    g, dg = T.g, T.dg_dy

    def g_p(y: float) -> float:
        for x in xs:
            y = g(x, y)
        return y

    def dg_p(y: float) -> float:
        d = 1.0
        for x in xs:
            d *= dg(x, y) if dg is not None else (g(x, y + 1e-7) - g(x, y - 1e-7)) / 2e-7
            y = g(x, y)
        return d

    cps = critical_points_numeric(dg_p, T.y_domain)
    return IntervalMap(
        func=g_p,
        deriv=dg_p,
        domain=T.y_domain,
        critical_points=cps,
        name=f"{T.name}:g_P",
        params={**T.params, "P": list(xs)},
    )


def product_orbit(P: Orbit, Q: Orbit, T: TriangularMap) -> ProductOrbit:
    """The p*q points (x_j, t_{ip+j}) of the periodic orbit P.Q of T."""
    p, q = P.period, Q.period
    if len(P.points) != p or len(Q.points) != q:
        raise ValueError("orbit dimension mismatch")
    pairs = []
    for i in range(q):
        t = Q.points[i]
        for j in range(p):
            if j > 0:
                t = T.g(P.points[j - 1], t)
            pairs.append((P.points[j], t))
    return ProductOrbit(pairs=tuple(pairs), p=p, q=q)


# -- families ---------------------------------------------------------------

def quadratic(a: float) -> IntervalMap:
    """f(x) = 1 - a x^2 on [-1, 1]."""
    return IntervalMap(
        func=lambda x: 1.0 - a * x * x,
        deriv=lambda x: -2.0 * a * x,
        domain=(-1.0, 1.0),
        critical_points=(0.0,),
        name="quadratic",
        params={"a": a},
    )


def identity_map(domain: tuple[float, float] = (0.0, 1.0)) -> IntervalMap:
    return IntervalMap(func=lambda x: x, deriv=lambda x: 1.0, domain=domain, name="identity")


def triangular_quadratic(a: float, b: float) -> TriangularMap:
    """T(x, y) = (1 - a x^2, x - b y^2) on [-1, 1] x [-2, 2]."""
    f = quadratic(a)
    return TriangularMap(
        f=f.func,
        g=lambda x, y: x - b * y * y,
        dg_dy=lambda x, y: -2.0 * b * y,
        x_domain=f.domain,
        y_domain=(-2.0, 2.0),
        basis=f,
        name="triangular_quadratic",
        params={"a": a, "b": b},
    )


def triangular_affine(a: float, s: float = 0.5) -> TriangularMap:
    """Quadratic basis with the monotone fiber g(x, y) = x/2 + s y."""
    if not 0 < abs(s) <= 0.75:
        raise ValueError("fiber slope must satisfy 0 < |s| <= 0.75 to keep Y invariant")
    f = quadratic(a)
    return TriangularMap(
        f=f.func,
        g=lambda x, y: 0.5 * x + s * y,
        dg_dy=lambda x, y: s,
        x_domain=f.domain,
        y_domain=(-2.0, 2.0),
        basis=f,
        name="triangular_affine",
        params={"a": a, "s": s},
    )


def baker(a: float, b: float) -> TriangularMap:
    """Generalized Baker transformation on the unit square (discontinuous)."""

    def f(x):
        return b * x if x <= 1.0 / b else b * x - 1.0

    def g(x, y):
        return a * y if x <= 1.0 / b else a * y + (1.0 - a)

    return TriangularMap(f=f, g=g, x_domain=(0.0, 1.0), y_domain=(0.0, 1.0), name="baker",
                         params={"a": a, "b": b}, kneading_eligible=False)


def twisted_horseshoe(a: float, b: float) -> TriangularMap:
    def f(x):
        return a * x if x <= 1.0 / a else a * (1.0 - x)

    def g(x, y):
        return x / a + y / b + 0.5

    return TriangularMap(f=f, g=g, x_domain=(0.0, 1.0), y_domain=(-math.inf, math.inf),
                         name="twisted_horseshoe", params={"a": a, "b": b}, kneading_eligible=False)


def kaplan_yorke(a: float, b: float, c: float) -> TriangularMap:
    def f(x):
        return (a * x + b) % 1.0

    def g(x, y):
        return -c * y + math.cos(2.0 * math.pi * x)

    return TriangularMap(f=f, g=g, x_domain=(0.0, 1.0), y_domain=(-math.inf, math.inf),
                         name="kaplan_yorke", params={"a": a, "b": b, "c": c}, kneading_eligible=False)


def custom_piecewise(
    breakpoints: list[float],
    pieces: list[list[float]],
    tol: float = 1e-9,
    name: str = "custom_piecewise",
) -> IntervalMap:
    """Continuous map made of polynomial pieces.

    ``breakpoints`` = [a, b_1, ..., b_{k-1}, b] delimit k pieces; piece i is
    given by ascending coefficients in x.  Turning points are the breakpoints
    where the slope changes sign plus interior zeros of each piece's
    derivative where it changes sign.
    """
    if len(breakpoints) != len(pieces) + 1:
        raise ValueError("need one more breakpoint than pieces")
    if any(b2 <= b1 for b1, b2 in zip(breakpoints, breakpoints[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    polys = [np.polynomial.Polynomial(c) for c in pieces]
    derivs = [p.deriv() for p in polys]
    for i in range(1, len(polys)):
        x = breakpoints[i]
        if abs(polys[i - 1](x) - polys[i](x)) > tol:
            raise DomainError(f"map is discontinuous at breakpoint {x}")

    def piece_index(x: float) -> int:
        i = int(np.searchsorted(breakpoints, x, side="right")) - 1
        return min(max(i, 0), len(polys) - 1)

    def func(x):
        return float(polys[piece_index(x)](x))

    def deriv(x):
        return float(derivs[piece_index(x)](x))

    cps = []
    for i, (lo, hi) in enumerate(zip(breakpoints, breakpoints[1:])):
        cps.extend(critical_points_numeric(lambda x, i=i: float(derivs[i](x)), (lo, hi)))
    for i in range(1, len(polys)):
        x = breakpoints[i]
        left = float(polys[i - 1](x) - polys[i - 1](x - 1e-6))
        right = float(polys[i](x + 1e-6) - polys[i](x))
        if left * right < 0:
            cps.append(float(x))
    return IntervalMap(
        func=func,
        deriv=deriv,
        domain=(float(breakpoints[0]), float(breakpoints[-1])),
        critical_points=tuple(sorted(cps)),
        name=name,
        params={"breakpoints": list(breakpoints), "pieces": [list(p) for p in pieces]},
    )
