"""Symbolic itineraries, kneading data, admissibility and the invariant coordinate.

Conventions for an m-modal map whose first lap is increasing:

* alphabet L < C1 < M1 < C2 < ... < M(m-1) < Cm < R;
* eps(L) = +1, eps(Mi) = (-1)**i, eps(R) = (-1)**m, eps(Ci) = 0;
* odd-numbered turning points are maxima, even-numbered ones minima.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

from .algebra.poly import Polynomial, RationalFunction
from .errors import AdmissibilityError, AmbiguityError, DomainError
from .interval_map import DEFAULT_TOL, IntervalMap, Orbit


@dataclass(frozen=True, order=False)
class Symbol:
    kind: str  # "L", "M", "C" or "R"
    index: int = 0

    def __post_init__(self):
        if self.kind not in "LMCR" or len(self.kind) != 1:
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind in "MC" and self.index < 1:
            raise ValueError(f"{self.kind} needs a positive index")
        if self.kind in "LR" and self.index != 0:
            raise ValueError(f"{self.kind} takes no index")

    def rank(self, m: int) -> int:
        """Position in the linear order L < C1 < M1 < ... < Cm < R."""
        if self.kind == "L":
            return 0
        if self.kind == "C":
            return 2 * self.index - 1
        if self.kind == "M":
            return 2 * self.index
        return 2 * m

    def eps(self, m: int) -> int:
        if self.kind == "L":
            return 1
        if self.kind == "M":
            return -1 if self.index % 2 else 1
        if self.kind == "R":
            return -1 if m % 2 else 1
        return 0

    def basis_index(self, m: int) -> int | None:
        """Coordinate in the basis (L, M1, ..., M(m-1), R); None for C."""
        if self.kind == "L":
            return 0
        if self.kind == "M":
            return self.index
        if self.kind == "R":
            return m
        return None

    @property
    def is_critical(self) -> bool:
        return self.kind == "C"

    def label(self, m: int = 1) -> str:
        if self.kind in "LR":
            return self.kind
        if self.kind == "C" and m == 1:
            return "C"
        return f"{self.kind}{self.index}"

    def __str__(self):
        return self.label(2)


L = Symbol("L")
R = Symbol("R")


def C(i: int = 1) -> Symbol:
    return Symbol("C", i)


def M(i: int) -> Symbol:
    return Symbol("M", i)


def left_neighbor(k: int) -> Symbol:
    return L if k == 1 else M(k - 1)


def right_neighbor(k: int, m: int) -> Symbol:
    return R if k == m else M(k)


def basis_labels(m: int) -> list[str]:
    return ["L"] + [f"M{i}" for i in range(1, m)] + ["R"]


_TOKEN = re.compile(r"\s*(C\d*|M\d+|L|R)\s*")


def parse_symbols(text: str) -> tuple[Symbol, ...]:
    """Parse a string such as 'RLC', 'RLRRC' or 'M1 R C1' into symbols."""
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"bad symbol at position {pos} in {text!r}")
        tok = mt.group(1)
        if tok in ("L", "R"):
            out.append(Symbol(tok))
        elif tok == "C":
            out.append(C(1))
        else:
            out.append(Symbol(tok[0], int(tok[1:])))
        pos = mt.end()
    return tuple(out)


def format_symbols(symbols: Iterable[Symbol], m: int) -> str:
    return "".join(s.label(m) for s in symbols)


@dataclass(frozen=True)
class SymbolicSequence:
    """prefix followed by block, with block repeated forever when periodic."""

    block: tuple[Symbol, ...]
    periodic: bool = True
    prefix: tuple[Symbol, ...] = ()
    modality: int = 1

    @property
    def period(self) -> int:
        return len(self.block)

    def at(self, j: int) -> Symbol:
        if j < len(self.prefix):
            return self.prefix[j]
        j -= len(self.prefix)
        if self.periodic:
            return self.block[j % len(self.block)]
        if j < len(self.block):
            return self.block[j]
        raise IndexError("finite sequence exhausted")

    def expand(self, n: int) -> list[Symbol]:
        return [self.at(j) for j in range(n)]

    def __len__(self):
        if self.periodic:
            raise TypeError("periodic sequences are infinite")
        return len(self.prefix) + len(self.block)

    def shift(self, k: int = 1) -> SymbolicSequence:
        """sigma**k."""
        if k <= len(self.prefix):
            return SymbolicSequence(self.block, self.periodic, self.prefix[k:], self.modality)
        k -= len(self.prefix)
        if self.periodic:
            k %= len(self.block)
            return SymbolicSequence(self.block[k:] + self.block[:k], True, (), self.modality)
        return SymbolicSequence(self.block[k:], False, (), self.modality)

    def __str__(self):
        body = format_symbols(self.block, self.modality)
        pre = format_symbols(self.prefix, self.modality)
        return f"{pre}({body})^inf" if self.periodic else pre + body

    @classmethod
    def parse(cls, text: str, modality: int | None = None, periodic: bool = True) -> SymbolicSequence:
        syms = parse_symbols(text)
        m = modality if modality is not None else _infer_modality(syms)
        return cls(block=syms, periodic=periodic, modality=m)


def _infer_modality(symbols: Iterable[Symbol]) -> int:
    m = 1
    for s in symbols:
        if s.kind == "C":
            m = max(m, s.index)
        elif s.kind == "M":
            m = max(m, s.index + 1)
    return m


@dataclass(frozen=True)
class KneadingData:
    """The m critical blocks; block k is S_1 ... S_{p_k - 1} C_k."""

    blocks: tuple[tuple[Symbol, ...], ...]
    modality: int

    def __post_init__(self):
        if len(self.blocks) != self.modality:
            raise ValueError(f"expected {self.modality} blocks, got {len(self.blocks)}")
        for k, blk in enumerate(self.blocks, start=1):
            if not blk:
                raise ValueError(f"block {k} is empty")
            if blk[-1] != C(k):
                raise ValueError(f"block {k} must end with C{k}")
            if any(s.is_critical for s in blk[:-1]):
                raise ValueError(f"block {k} contains a critical symbol before its end")
            for s in blk:
                if s.rank(self.modality) > 2 * self.modality or (s.kind == "M" and s.index >= self.modality):
                    raise ValueError(f"symbol {s} is outside the alphabet of a {self.modality}-modal map")

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def sequence(self, k: int) -> SymbolicSequence:
        """The kneading sequence of c_k (1-based), as a periodic sequence."""
        return SymbolicSequence(self.blocks[k - 1], True, (), self.modality)

    def strings(self) -> list[str]:
        return [format_symbols(b, self.modality) for b in self.blocks]

    def __str__(self):
        return ",".join(self.strings())

    @classmethod
    def parse(cls, text: str | Sequence[str], modality: int | None = None) -> KneadingData:
        """'RLC' or 'RM1C1,LRC2' (comma separated, one block per turning point).

        The empty string gives the kneading data of a monotone map.
        """
        parts = [p for p in (text.split(",") if isinstance(text, str) else text) if p.strip()]
        m = modality if modality is not None else len(parts)
        blocks = []
        for k, part in enumerate(parts, start=1):
            syms = parse_symbols(part)
            if part.strip().endswith("C") and syms:
                # unindexed C closes the block of its own turning point
                syms = syms[:-1] + (C(k),)
            blocks.append(syms)
        return cls(tuple(blocks), m)


# -- addressing ---------------------------------------------------------------

def address(fmap: IntervalMap, x: float, tol: float = DEFAULT_TOL) -> Symbol:
    if not fmap.contains(x):
        raise DomainError(f"{x!r} outside domain {fmap.domain}")
    cps = fmap.critical_points
    near = [i for i, c in enumerate(cps, start=1) if abs(x - c) <= tol]
    if len(near) > 1:
        raise AmbiguityError(f"{x!r} is within {tol} of several turning points")
    if near:
        return C(near[0])
    if not cps or x < cps[0]:
        return L
    if x > cps[-1]:
        return R
    for i in range(1, len(cps)):
        if cps[i - 1] < x < cps[i]:
            return M(i)
    raise AssertionError("unreachable")


def itinerary(fmap: IntervalMap, x0: float, length: int, tol: float = DEFAULT_TOL) -> SymbolicSequence:
    """Addresses of F(x0), ..., F^length(x0) as a finite sequence."""
    if length < 1:
        raise ValueError("length must be >= 1")
    from .interval_map import _iterates

    xs = _iterates(fmap, x0, length)
    return SymbolicSequence(tuple(address(fmap, x, tol) for x in xs[1:]), periodic=False,
                            modality=max(fmap.modality, 1))


def kneading_from_orbits(fmap: IntervalMap, orbits: Sequence[Orbit], tol: float = DEFAULT_TOL) -> KneadingData:
    """Kneading data from one critical orbit per turning point.

    orbits[k-1] belongs to c_k; its anchor point stands for c_k itself and
    receives the symbol C_k, the remaining points are addressed normally.
    """
    m = fmap.modality
    if len(orbits) != m:
        raise ValueError(f"need {m} critical orbits, got {len(orbits)}")
    blocks = []
    for k, orb in enumerate(orbits, start=1):
        orb = orb.start_at_anchor()
        syms = [address(fmap, x, tol) for x in orb.points[1:]]
        if any(s.is_critical for s in syms):
            raise AmbiguityError(f"orbit of c{k} passes within {tol} of a turning point before closing")
        blocks.append(tuple(syms) + (C(k),))
    return KneadingData(tuple(blocks), m)


# -- invariant coordinate -------------------------------------------------------

@dataclass(frozen=True)
class InvariantCoordinate:
    """theta as one exact rational function per basis symbol (L, M1, ..., R)."""

    coeffs: tuple[RationalFunction, ...]
    modality: int

    def series(self, n: int) -> list[tuple[int, ...]]:
        cols = [c.series(n) for c in self.coeffs]
        return [tuple(int(col[j]) for col in cols) for j in range(n)]

    def __sub__(self, other: InvariantCoordinate) -> InvariantCoordinate:
        return InvariantCoordinate(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.modality)

    def __getitem__(self, label: str) -> RationalFunction:
        return self.coeffs[basis_labels(self.modality).index(label)]

    def to_dict(self) -> dict:
        return {lab: c.to_dict() for lab, c in zip(basis_labels(self.modality), self.coeffs)}


def theta_terms(seq: SymbolicSequence, n: int) -> list[tuple[int, Symbol]]:
    """(sign, symbol) pairs theta_j = prod_{i<j} eps(S_i) S_j for j < n."""
    m = seq.modality
    out, sign = [], 1
    for j in range(n):
        s = seq.at(j)
        out.append((sign, s))
        sign *= s.eps(m)
    return out


def invariant_coordinate(seq: SymbolicSequence) -> InvariantCoordinate:
    """Closed form of theta for a finite, periodic or eventually periodic sequence."""
    m = seq.modality
    nums = [Polynomial() for _ in range(m + 1)]
    head = list(seq.prefix) + ([] if seq.periodic else list(seq.block))
    sign = 1
    for j, s in enumerate(head):
        b = s.basis_index(m)
        if b is not None:
            nums[b] = nums[b] + Polynomial.monomial(j, sign)
        sign *= s.eps(m)
        if sign == 0:
            break
    out = [RationalFunction(p) for p in nums]
    if seq.periodic and sign != 0:
        start = len(seq.prefix)
        block_nums = [Polynomial() for _ in range(m + 1)]
        bsign = 1
        for j, s in enumerate(seq.block):
            b = s.basis_index(m)
            if b is not None:
                block_nums[b] = block_nums[b] + Polynomial.monomial(j, bsign)
            bsign *= s.eps(m)
            if bsign == 0:
                break
        if bsign == 0:
            # a critical symbol inside the block kills everything after it
            den = Polynomial.one()
        else:
            den = Polynomial.one() - Polynomial.monomial(len(seq.block), bsign)
        for b in range(m + 1):
            out[b] = out[b] + RationalFunction(block_nums[b].shift_power(start) * sign, den)
    return InvariantCoordinate(tuple(out), m)


# -- ordering -----------------------------------------------------------------

def _horizon(a: SymbolicSequence, b: SymbolicSequence) -> int:
    pa = len(a.block) if a.periodic else 0
    pb = len(b.block) if b.periodic else 0
    fin_a = len(a.prefix) + (0 if a.periodic else len(a.block))
    fin_b = len(b.prefix) + (0 if b.periodic else len(b.block))
    return max(fin_a, fin_b) + 2 * max(pa, pb) + 2


def _cmp_symbols(sa: Symbol, sb: Symbol, sign: int, m: int) -> int:
    ra, rb = sa.rank(m), sb.rank(m)
    c = (ra > rb) - (ra < rb)
    return c * sign


def compare(a, b) -> int:
    """-1, 0 or 1 according to the signed lexicographic order on theta."""
    if isinstance(a, InvariantCoordinate) or isinstance(b, InvariantCoordinate):
        return _compare_theta(a, b)
    if a.modality != b.modality:
        raise ValueError("cannot compare sequences of different modality")
    m = a.modality
    n = _horizon(a, b)
    sign = 1
    for j in range(n):
        try:
            sa, sb = a.at(j), b.at(j)
        except IndexError:
            # a finite sequence ran out: shorter is treated as equal on the overlap
            return 0
        if sa != sb:
            return _cmp_symbols(sa, sb, sign, m)
        sign *= sa.eps(m)
        if sign == 0:
            return 0
    return 0


def _compare_theta(a: InvariantCoordinate, b: InvariantCoordinate) -> int:
    if a.modality != b.modality:
        raise ValueError("cannot compare coordinates of different modality")
    m = a.modality
    n = 64
    for va, vb in zip(a.series(n), b.series(n)):
        if va == vb:
            if not any(va):
                return 0
            continue
        if not any(va) or not any(vb):
            if m > 1:
                raise AmbiguityError("theta vanishes: the critical symbol is not recoverable for m > 1")
            other, flip = (vb, -1) if not any(va) else (va, 1)
            idx = next(i for i, c in enumerate(other) if c)
            sym = L if idx == 0 else R
            # C sits between L and R; compare the nonzero side against it
            c = _cmp_symbols(sym, C(1), other[idx], m)
            return c * flip
        ia = next(i for i, c in enumerate(va) if c)
        ib = next(i for i, c in enumerate(vb) if c)
        sign = va[ia]
        sa = L if ia == 0 else (R if ia == m else M(ia))
        sb = L if ib == 0 else (R if ib == m else M(ib))
        return _cmp_symbols(sa, sb, sign, m)
    return 0


# -- admissibility --------------------------------------------------------------

@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    rule: int | None = None
    block: int | None = None
    shift: int | None = None
    reason: str = "ok"

    def __bool__(self):
        return self.valid


def validate_kneading_data(data: KneadingData, literal_rule4: bool = False) -> ValidityReport:
    """Check the shift-comparison admissibility rules for every block.

    After a symbol L the shifted sequence must lie below s_1; after M_j it
    lies strictly between s_j and s_{j+1} (order by parity of j); after R it
    lies below s_m when c_m is a maximum and above it when c_m is a minimum.
    ``literal_rule4`` forces "below s_m" whatever the parity of m.
    """
    m = data.modality
    seqs = [data.sequence(k) for k in range(1, m + 1)]
    for k, blk in enumerate(data.blocks, start=1):
        u = seqs[k - 1]
        for i in range(1, len(blk) + 1):
            sym = blk[i - 1]
            tail = u.shift(i)
            if sym.kind == "C":
                continue
            if sym.kind == "L":
                if not compare(tail, seqs[0]) < 0:
                    return ValidityReport(False, 1, k, i, f"shift {i} of block {k} follows L but is not below s_1")
            elif sym.kind == "M":
                j = sym.index
                lo, hi = (seqs[j], seqs[j - 1]) if j % 2 else (seqs[j - 1], seqs[j])
                rule = 2 if j % 2 else 3
                if not (compare(lo, tail) < 0 < compare(hi, tail)):
                    return ValidityReport(False, rule, k, i,
                                          f"shift {i} of block {k} follows M{j} but is not between s_{j} and s_{j + 1}")
            else:
                below = literal_rule4 or m % 2 == 1
                c = compare(tail, seqs[-1])
                if (below and not c < 0) or (not below and not c > 0):
                    side = "below" if below else "above"
                    return ValidityReport(False, 4, k, i, f"shift {i} of block {k} follows R but is not {side} s_m")
    return ValidityReport(True)


def require_admissible(data: KneadingData) -> None:
    report = validate_kneading_data(data)
    if not report.valid:
        raise AdmissibilityError(report)


# -- one-sided limits and symbolic points ----------------------------------------

def one_sided_sequence(data: KneadingData, k: int, side: int) -> SymbolicSequence:
    """Itinerary of c_k approached from the left (side=-1) or right (side=+1).

    The first symbol is the neighbor of C_k on that side.  From then on the
    point shadows the critical orbit; at the return to c_k it sits on side
    base * prod eps(S_i), where base is -1 for a maximum (images fall to the
    left of F(c_k)) and +1 for a minimum, and the pattern repeats.
    """
    m = data.modality
    blk = data.blocks[k - 1]
    base = -1 if k % 2 == 1 else 1
    prod = 1
    for s in blk[:-1]:
        prod *= s.eps(m)
    end_side = base * prod
    tail = blk[:-1] + ((right_neighbor(k, m) if end_side > 0 else left_neighbor(k)),)
    first = right_neighbor(k, m) if side > 0 else left_neighbor(k)
    return SymbolicSequence(tail, True, (first,), m)


@dataclass(frozen=True)
class SymbolicPoint:
    """A point of the critical orbits: block k, position i (0 is c_k itself)."""

    block: int
    position: int
    sequence: SymbolicSequence

    @property
    def first(self) -> Symbol:
        return self.sequence.at(0)


def symbolic_points(data: KneadingData) -> list[SymbolicPoint]:
    """All sum(p_k) critical-orbit points in dynamical order, block by block.

    Within block k the point at position i has itinerary sigma^i(C_k S_1 ... S_{p-1}).
    """
    m = data.modality
    out = []
    for k, blk in enumerate(data.blocks, start=1):
        word = (blk[-1],) + blk[:-1]
        for i in range(len(word)):
            out.append(SymbolicPoint(k, i, SymbolicSequence(word[i:] + word[:i], True, (), m)))
    return out


def theta_order(points: Sequence[SymbolicPoint]) -> list[int]:
    """Indices of points sorted increasingly in the theta-order."""
    return sorted(range(len(points)), key=cmp_to_key(lambda i, j: compare(points[i].sequence, points[j].sequence)))


# -- product itineraries --------------------------------------------------------------

def product_itinerary(s_x: SymbolicSequence, s_y: SymbolicSequence, k: int, i: int = 0):
    """Symbolic coordinates of the k-th point of the product orbit.

    (sigma^k s_x, sigma^{k+p} s_y) when p != q, and
    (sigma^k s_x, sigma^{k+p+i} s_y) when p == q.
    """
    p, q = s_x.period, s_y.period
    if p != q:
        if not 0 <= k <= p * q - 1:
            raise ValueError("k out of range")
        return s_x.shift(k), s_y.shift(k + p)
    if not (0 <= k <= p - 1 and 0 <= i <= p - 1):
        raise ValueError("k, i out of range")
    return s_x.shift(k), s_y.shift(k + p + i)


def product_itineraries(s_x: SymbolicSequence, s_y: SymbolicSequence) -> list[tuple[SymbolicSequence, SymbolicSequence]]:
    p, q = s_x.period, s_y.period
    if p != q:
        return [product_itinerary(s_x, s_y, k) for k in range(p * q)]
    return [product_itinerary(s_x, s_y, k, i) for k in range(p) for i in range(p)]


def enumerate_unimodal(max_period: int, min_period: int = 1) -> list[KneadingData]:
    """All admissible unimodal kneading blocks with min_period <= period <= max_period."""
    from itertools import product

    out = []
    for p in range(min_period, max_period + 1):
        for word in product((L, R), repeat=p - 1):
            data = KneadingData((tuple(word) + (C(1),),), 1)
            if validate_kneading_data(data):
                out.append(data)
    return out
