"""Chain-complex matrices of a kneading system and the commuting-square checks.

C_0 is spanned by the critical-orbit points x_1..x_n (block by block, each
block starting at its turning point) and C_1 by the pieces J_1..J_{n-1}
between theta-consecutive points.  Matrices act on coordinate columns;
``omega`` is stored with omega[i, succ(i)] = 1 and ``boundary`` = eta^T.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .algebra.matrix import Matrix, char_poly, kron
from .algebra.poly import Polynomial
from .errors import ConventionError, NotApplicableError
from .kneading import kneading_matrix, triangular_kneading
from .markov import product_transition, symbolic_partition, transition_matrix_symbolic
from .symbols import C, KneadingData, Symbol, left_neighbor, require_admissible


@dataclass(frozen=True)
class DiagramMatrices:
    pi: Matrix
    eta: Matrix
    omega: Matrix
    alpha: Matrix
    beta: Matrix
    gamma: Matrix
    theta: Matrix
    A: Matrix
    B: Matrix
    D: Matrix
    inclusion: Matrix
    boundary: Matrix
    labels: tuple[str, ...] = ()

    @property
    def dims(self) -> tuple[int, int]:
        return (self.omega.nrows, self.A.nrows)

    def with_gamma(self, gamma: Matrix) -> DiagramMatrices:
        return replace(self, gamma=gamma, theta=gamma @ self.omega)

    def to_dict(self) -> dict:
        return {
            name: getattr(self, name).tolist()
            for name in ("pi", "eta", "omega", "alpha", "beta", "gamma", "theta", "A", "B", "D", "boundary")
        }


@dataclass(frozen=True)
class DiagramCertificate:
    commutes_0: bool
    commutes_1: bool
    charpoly_equal: bool
    factorization_ok: bool
    alpha_is_signed_A: bool
    P_theta: Polynomial
    P_A: Polynomial
    residues: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.commutes_0 and self.commutes_1 and self.charpoly_equal and self.factorization_ok

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "commutes_0": self.commutes_0,
            "commutes_1": self.commutes_1,
            "charpoly_equal": self.charpoly_equal,
            "factorization_ok": self.factorization_ok,
            "alpha_is_signed_A": self.alpha_is_signed_A,
            "P_theta": self.P_theta.to_list(),
            "P_A": self.P_A.to_list(),
            "residue_norms": {k: _norm(v) for k, v in self.residues.items()},
        }


def _norm(m: Matrix) -> int:
    return max((abs(x) for r in m.rows for x in r), default=0)


def _inverse(m: Matrix) -> Matrix:
    """Exact inverse over Q by Gauss-Jordan."""
    n = m.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise ConventionError("singular matrix in the commuting-square solve")
        a[k], a[piv] = a[piv], a[k]
        pv = a[k][k]
        a[k] = [x / pv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return Matrix([[x.numerator if x.denominator == 1 else x for x in row[n:]] for row in a], ncols=n)


def _lap_of_piece(a: Symbol, b: Symbol, m: int) -> int:
    """Lap number (1-based) containing the piece between points with first symbols a < b."""
    for s in (a, b):
        if s.kind == "L":
            return 1
        if s.kind == "M":
            return s.index + 1
        if s.kind == "R":
            return m + 1
    # both endpoints are turning points c_k < c_{k+1}
    return a.index + 1


def build_diagram(data: KneadingData, check: bool = True) -> DiagramMatrices:
    """Assemble pi, eta, omega, alpha, beta, gamma, Theta, A, B, D and boundary."""
    if check:
        require_admissible(data)
    m = data.modality
    sp = symbolic_partition(data)
    n = len(sp.points)
    if n < 2:
        raise NotApplicableError("a single critical point gives an empty chain complex")
    first = [p.first for p in sp.points]

    pi = Matrix([[1 if sp.order[i] == j else 0 for j in range(n)] for i in range(n)], ncols=n)
    phi = Matrix([[-1 if j == i else (1 if j == i + 1 else 0) for j in range(n)] for i in range(n - 1)], ncols=n)
    eta = phi @ pi
    omega = Matrix([[1 if sp.successor[i] == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    # alpha is forced by alpha eta = eta omega; eta minus one column is unimodular
    rhs = eta @ omega
    cols = list(range(n - 1))
    alpha = rhs.submatrix(cols=cols) @ _inverse(eta.submatrix(cols=cols))
    if any(not isinstance(x, int) for r in alpha.rows for x in r):
        raise ConventionError("alpha is not integral")
    if alpha @ eta != rhs:
        raise ConventionError("no alpha makes the point/piece square commute")

    signs = []
    for r in range(n - 1):
        lap = _lap_of_piece(first[sp.order[r]], first[sp.order[r + 1]], m)
        signs.append(1 if lap % 2 == 1 else -1)
    beta = Matrix([[signs[i] if i == j else 0 for j in range(n - 1)] for i in range(n - 1)], ncols=n - 1)

    starts, s = [], 0
    for blk in data.blocks:
        starts.append(s)
        s += len(blk)
    gamma_rows = [[0] * n for _ in range(n)]
    for i in range(n):
        gamma_rows[i][i] = first[i].eps(m)
    for k, j in enumerate(starts, start=1):
        ck = C(k)
        s_k = left_neighbor(k).eps(m)
        for i in range(n):
            if i == j:
                continue
            ri, rc = first[i].rank(m), ck.rank(m)
            gamma_rows[i][j] = 0 if ri == rc else (-s_k if ri < rc else s_k)
    gamma = Matrix(gamma_rows, ncols=n)

    boundary = eta.T
    D = boundary.delete_row(n - 1)
    B = Matrix([[1 if i == j else (-1 if i == n - 1 else 0) for j in range(n)] for i in range(n)], ncols=n)
    inclusion = Matrix([[1 if i == j else 0 for j in range(n - 1)] for i in range(n)], ncols=n - 1)
    labels = tuple(f"x{j + 1}" for j in range(n))
    return DiagramMatrices(
        pi=pi, eta=eta, omega=omega, alpha=alpha, beta=beta, gamma=gamma, theta=gamma @ omega,
        A=beta @ alpha, B=B, D=D, inclusion=inclusion, boundary=boundary, labels=labels,
    )


def flip_gamma_entry(dm: DiagramMatrices, index: int = 0) -> DiagramMatrices:
    """Negate the index-th nonzero entry of gamma (row-major); for fault injection."""
    rows = dm.gamma.tolist()
    nz = [(i, j) for i, r in enumerate(rows) for j, x in enumerate(r) if x]
    if not nz:
        raise ValueError("gamma has no nonzero entry to flip")
    i, j = nz[index % len(nz)]
    rows[i][j] = -rows[i][j]
    return dm.with_gamma(Matrix(rows, ncols=dm.gamma.ncols))


def _certify(omega, alpha, theta, A, boundary, B=None, inclusion=None, D=None) -> DiagramCertificate:
    r0 = omega.T @ boundary - boundary @ alpha.T
    r1 = theta.T @ boundary - boundary @ A.T
    residues = {"omega_alpha": r0, "theta_A": r1}
    fact_ok = True
    if B is not None:
        rb = B @ inclusion @ D - boundary
        residues["BiD"] = rb
        fact_ok = rb.is_zero() and abs(B.det()) == 1 and abs(D.det()) == 1
    p_theta, p_a = char_poly(theta), char_poly(A)
    signed = all(abs(a) == b for ra, rA in zip(alpha.rows, A.rows) for a, b in zip(ra, rA))
    return DiagramCertificate(
        commutes_0=r0.is_zero(),
        commutes_1=r1.is_zero(),
        charpoly_equal=p_theta == p_a,
        factorization_ok=fact_ok,
        alpha_is_signed_A=signed and all(b >= 0 for r in A.rows for b in r),
        P_theta=p_theta,
        P_A=p_a,
        residues=residues,
    )


def verify_diagram(dm: DiagramMatrices) -> DiagramCertificate:
    """Exact checks: omega^T d = d alpha^T, Theta^T d = d A^T, B i D = d, P_Theta = P_A."""
    return _certify(dm.omega, dm.alpha, dm.theta, dm.A, dm.boundary, dm.B, dm.inclusion, dm.D)


@dataclass(frozen=True)
class TensorLiftCheck:
    holds: bool
    certificate: DiagramCertificate
    d_T: Polynomial
    P_A: Polynomial
    P_theta: Polynomial
    factors_ok: tuple[bool, bool]
    matrices: dict

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "d_T": self.d_T.to_list(),
            "P_A": self.P_A.to_list(),
            "P_theta": self.P_theta.to_list(),
            "factor_certificates": list(self.factors_ok),
            "certificate": self.certificate.to_dict(),
        }


def tensor_diagram(dm_y: DiagramMatrices, dm_x: DiagramMatrices) -> dict:
    """Kronecker-lifted matrices, fiber factor first."""
    out = {name: kron(getattr(dm_y, name), getattr(dm_x, name))
           for name in ("boundary", "omega", "alpha", "beta", "gamma")}
    out["theta"] = out["gamma"] @ out["omega"]
    out["A"] = out["beta"] @ out["alpha"]
    return out


def verify_theorem_4_1(
    data_x: KneadingData,
    data_y: KneadingData,
    dm_x: DiagramMatrices | None = None,
    dm_y: DiagramMatrices | None = None,
) -> TensorLiftCheck:
    """D_T * P_cyc = P_A = P_Theta for the lifted system, with both tensor squares commuting."""
    if data_x.modality != 1:
        raise NotApplicableError("the basis kneading data must be unimodal")
    if data_y.modality == 0:
        raise NotApplicableError("a monotone fiber has no chain complex to lift")
    dm_x = dm_x or build_diagram(data_x)
    dm_y = dm_y or build_diagram(data_y)
    t = tensor_diagram(dm_y, dm_x)
    cert = _certify(t["omega"], t["alpha"], t["theta"], t["A"], t["boundary"])
    tk = triangular_kneading(kneading_matrix(data_y), kneading_matrix(data_x))
    fx, fy = verify_diagram(dm_x).valid, verify_diagram(dm_y).valid
    a_direct = product_transition(transition_matrix_symbolic(data_y), transition_matrix_symbolic(data_x)).matrix
    holds = (
        cert.commutes_0 and cert.commutes_1 and cert.charpoly_equal
        and tk.d_T == cert.P_A == cert.P_theta and a_direct == t["A"]
    )
    return TensorLiftCheck(holds, cert, tk.d_T, cert.P_A, cert.P_theta, (fx, fy), t)
