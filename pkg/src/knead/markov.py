"""Markov partitions from critical orbits and their 0/1 transition matrices."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .algebra.matrix import Matrix, kron
from .errors import DegeneratePartitionError, NotMarkovError
from .interval_map import IntervalMap, Orbit
from .symbols import KneadingData, SymbolicPoint, compare, format_symbols, symbolic_points, theta_order

MATCH_TOL = 1e-7


@dataclass(frozen=True)
class MarkovPartition1D:
    """Sorted breakpoints z_0 < ... < z_{n-1}; piece i is [z_i, z_{i+1}].

    ``successor[r]`` is the rank of F(z_r) when known.  ``anchors`` maps a
    turning point index k to the rank of the breakpoint standing for c_k.
    """

    breakpoints: tuple[float, ...]
    successor: tuple[int, ...] | None = None
    anchors: dict = field(default_factory=dict)
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"X{i + 1}" for i in range(self.size)))

    @property
    def size(self) -> int:
        return max(len(self.breakpoints) - 1, 0)

    @property
    def intervals(self) -> list[tuple[float, float]]:
        z = self.breakpoints
        return [(z[i], z[i + 1]) for i in range(self.size)]

    @classmethod
    def from_breakpoints(cls, points) -> MarkovPartition1D:
        return cls(tuple(sorted(float(p) for p in points)))


@dataclass(frozen=True)
class TransitionMatrix:
    matrix: Matrix
    labels: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def tolist(self) -> list[list[int]]:
        return self.matrix.tolist()

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.tolist()}


def partition_from_orbit(fmap: IntervalMap, orbits, tol: float = MATCH_TOL) -> MarkovPartition1D:
    """Breakpoints are the sorted union of the orbit points.

    orbits[k-1] is taken as the critical orbit of c_k, and its anchor point
    as c_k itself.  Points closer than tol are merged with a warning.
    """
    if isinstance(orbits, Orbit):
        orbits = [orbits]
    pts = []  # (value, orbit index, position)
    for oi, orb in enumerate(orbits):
        for pi, x in enumerate(orb.points):
            pts.append((x, oi, pi))
    pts.sort()
    merged: list[list[tuple[float, int, int]]] = []
    for item in pts:
        if merged and abs(item[0] - merged[-1][0][0]) < tol:
            warnings.warn(f"orbit points {merged[-1][0][0]!r} and {item[0]!r} coincide; merging", stacklevel=2)
            merged[-1].append(item)
        else:
            merged.append([item])
    rank = {}
    for r, group in enumerate(merged):
        for _, oi, pi in group:
            rank[(oi, pi)] = r
    successor = []
    for group in merged:
        _, oi, pi = group[0]
        orb = orbits[oi]
        successor.append(rank[(oi, (pi + 1) % orb.period)])
    anchors = {}
    for k, orb in enumerate(orbits, start=1):
        if orb.anchor is not None and k <= fmap.modality:
            anchors[k] = rank[(k - 1, orb.anchor)]
    return MarkovPartition1D(
        breakpoints=tuple(g[0][0] for g in merged),
        successor=tuple(successor),
        anchors=anchors,
    )


def _rows_from_images(n_pieces: int, images) -> Matrix:
    rows = []
    for lo, hi in images:
        a, b = min(lo, hi), max(lo, hi)
        rows.append([1 if a <= j < b else 0 for j in range(n_pieces)])
    return Matrix(rows, ncols=n_pieces)


def transition_matrix(fmap: IntervalMap, part: MarkovPartition1D, tol: float = MATCH_TOL) -> TransitionMatrix:
    """a_ij = 1 iff the interior of F(piece i) meets the interior of piece j.

    Each piece must be a lap of monotonicity; a turning point may only sit at
    an endpoint, or inside a piece whose endpoint is that turning point's
    anchor (the orbit point standing for it).  Image endpoints are the images
    of the piece endpoints and must land on breakpoints.
    """
    z = part.breakpoints
    n = part.size
    if n == 0:
        return TransitionMatrix(Matrix([], ncols=0))
    anchored = {r for r in part.anchors.values()}
    images = []
    for i in range(n):
        lo, hi = z[i], z[i + 1]
        for k, c in enumerate(fmap.critical_points, start=1):
            if lo + tol < c < hi - tol and part.anchors.get(k) not in (i, i + 1):
                raise NotMarkovError(f"turning point c{k}={c:.6g} lies inside piece {i + 1}")
        ends = []
        for r in (i, i + 1):
            if part.successor is not None and r in anchored:
                ends.append(part.successor[r])
                continue
            y = fmap.func(z[r])
            hits = [s for s, zs in enumerate(z) if abs(zs - y) < tol]
            if not hits:
                raise NotMarkovError(f"image {y:.9g} of breakpoint {r + 1} is not a breakpoint")
            ends.append(hits[0])
        images.append(tuple(ends))
    return TransitionMatrix(_rows_from_images(n, images), part.labels)


@dataclass(frozen=True)
class SymbolicPartition:
    """Critical-orbit points sorted in theta-order, with their successors."""

    points: tuple[SymbolicPoint, ...]
    order: tuple[int, ...]  # order[r] = index of the point of rank r
    rank: tuple[int, ...]  # rank[j] = rank of point j
    successor: tuple[int, ...]  # successor[j] = index of F(point j)

    @property
    def size(self) -> int:
        return max(len(self.points) - 1, 0)


def symbolic_partition(data: KneadingData) -> SymbolicPartition:
    pts = symbolic_points(data)
    order = theta_order(pts)
    for a, b in zip(order, order[1:]):
        if compare(pts[a].sequence, pts[b].sequence) == 0:
            raise DegeneratePartitionError(
                f"points {format_symbols(pts[a].sequence.block, data.modality)} coincide in the theta-order"
            )
    rank = [0] * len(pts)
    for r, j in enumerate(order):
        rank[j] = r
    succ, start = [], 0
    for blk in data.blocks:
        p = len(blk)
        succ.extend(start + (i + 1) % p for i in range(p))
        start += p
    return SymbolicPartition(tuple(pts), tuple(order), tuple(rank), tuple(succ))


def transition_matrix_symbolic(data: KneadingData) -> TransitionMatrix:
    """The transition matrix from the theta-ordered critical-orbit points alone."""
    from .symbols import require_admissible

    if data.modality == 0:
        # no turning point: the whole interval is one piece mapped onto itself
        return TransitionMatrix(Matrix([[1]], ncols=1), ("X1",))
    require_admissible(data)
    sp = symbolic_partition(data)
    n = sp.size
    images = []
    for r in range(n):
        a, b = sp.order[r], sp.order[r + 1]
        images.append((sp.rank[sp.successor[a]], sp.rank[sp.successor[b]]))
    return TransitionMatrix(_rows_from_images(n, images), tuple(f"X{i + 1}" for i in range(n)))


@dataclass(frozen=True)
class MarkovPartition2D:
    """Rectangles X_i x Y_j in row-major (y-major) order: k = j * nx + i."""

    x: MarkovPartition1D
    y: MarkovPartition1D

    @property
    def rectangles(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.y.size) for i in range(self.x.size)]

    @property
    def names(self) -> list[str]:
        return [f"R{k + 1}" for k in range(len(self.rectangles))]


def lift_transition(A: TransitionMatrix) -> TransitionMatrix:
    """An empty partition enters a product as the single piece [[1]]."""
    return A if A.size else TransitionMatrix(Matrix([[1]], ncols=1), ("X1",))


def product_transition(A_y: TransitionMatrix, A_x: TransitionMatrix) -> TransitionMatrix:
    """A = A_y (x) A_x; rectangle k = j * nx + i is X_i x Y_j, named R(k+1)."""
    m = kron(lift_transition(A_y).matrix, lift_transition(A_x).matrix)
    return TransitionMatrix(m, tuple(f"R{k + 1}" for k in range(m.nrows)))


def rectangle_transition(
    f: IntervalMap, g_p: IntervalMap, part: MarkovPartition2D, tol: float = MATCH_TOL
) -> TransitionMatrix:
    """Transitions of T_P = (f, g_P) computed rectangle by rectangle.

    R_k -> R_l iff the image of R_k meets the interior of R_l in both
    coordinates; used to cross-check the Kronecker construction.
    """
    ax = transition_matrix(f, part.x, tol).matrix
    ay = transition_matrix(g_p, part.y, tol).matrix
    rects = part.rectangles
    rows = []
    for i, j in rects:
        rows.append([1 if ax[i, i2] and ay[j, j2] else 0 for i2, j2 in rects])
    return TransitionMatrix(Matrix(rows, ncols=len(rects)), tuple(part.names))
