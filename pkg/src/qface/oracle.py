"""Independent ground truth for faces of DE(Q).

A subset S of edges spans a face exactly when some functional c and offset
b satisfy <c, eps_e> = b on S and <c, eps_e> <= b - 1 off S.  Feasibility is
decided by an exact phase-one simplex over fractions; nothing here consults
rank functions, components or contractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from qface import _config
from qface.errors import CertificateError, TooLarge
from qface.faces import FaceLattice, face_lattice
from qface.geometry import RationalVector, affine_dim, dim_de, edge_vector
from qface.quiver import EdgeSubset, Quiver

ZERO = Fraction(0)
ONE = Fraction(1)

# callables invoked as listener(q, mask, certificate) for every emitted certificate
_certificate_listeners: list = []


def add_certificate_listener(listener) -> None:
    _certificate_listeners.append(listener)


def remove_certificate_listener(listener) -> None:
    _certificate_listeners.remove(listener)


@dataclass(frozen=True)
class SupportCertificate:
    normal: RationalVector
    offset: Fraction

    def value(self, q: Quiver, edge: int) -> Fraction:
        t, h = q.edges[edge]
        return self.normal.coords[t] - self.normal.coords[h]

    def violations(self, q: Quiver, mask: int) -> list[str]:
        """Constraints this certificate breaks for the face ``mask`` (empty if valid)."""
        bad = []
        for i in range(q.n_edges):
            v = self.value(q, i)
            if mask >> i & 1:
                if v != self.offset:
                    bad.append(f"edge {i}: value {v} != offset {self.offset}")
            elif self.offset - v < 1:
                bad.append(f"edge {i}: slack {self.offset - v} < 1")
        return bad

    def validate(self, q: Quiver, mask: int) -> None:
        bad = self.violations(q, mask)
        if bad:
            raise CertificateError("; ".join(bad))

    def scaled(self, factor) -> SupportCertificate:
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("scale factor must be positive")
        return SupportCertificate(self.normal.scaled(f), self.offset * f)

    def normalized(self, q: Quiver, mask: int) -> SupportCertificate:
        """Rescale so the smallest slack off the face is exactly 1."""
        slacks = [self.offset - self.value(q, i) for i in range(q.n_edges) if not mask >> i & 1]
        if not slacks or min(slacks) <= 0:
            return self
        return self.scaled(1 / min(slacks))


@dataclass
class LPProblem:
    """Free variables x with rows ``eq @ x == eq_rhs`` and ``ge @ x >= ge_rhs``."""

    n_vars: int
    eq: list[list[Fraction]] = field(default_factory=list)
    eq_rhs: list[Fraction] = field(default_factory=list)
    ge: list[list[Fraction]] = field(default_factory=list)
    ge_rhs: list[Fraction] = field(default_factory=list)

    def __post_init__(self):
        for row in self.eq + self.ge:
            if len(row) != self.n_vars:
                raise ValueError("row length does not match the variable count")
        if len(self.eq) != len(self.eq_rhs) or len(self.ge) != len(self.ge_rhs):
            raise ValueError("each row needs a right-hand side")


def solve_feasibility(problem: LPProblem) -> list[Fraction] | None:
    """A feasible point of the system, or None.

    Phase one of the simplex method with Bland's rule on the standard form
    x = x_plus - x_minus, ge rows with surplus variables, one artificial
    variable per row.
    """
    n = problem.n_vars
    rows, rhs = [], []
    n_ge = len(problem.ge)
    n_struct = 2 * n + n_ge
    for k, (row, r) in enumerate(list(zip(problem.eq, problem.eq_rhs)) + list(zip(problem.ge, problem.ge_rhs))):
        coeffs = [Fraction(a) for a in row] + [-Fraction(a) for a in row] + [ZERO] * n_ge
        if k >= len(problem.eq):
            coeffs[2 * n + k - len(problem.eq)] = -ONE
        r = Fraction(r)
        if r < 0:
            coeffs = [-a for a in coeffs]
            r = -r
        rows.append(coeffs)
        rhs.append(r)
    m = len(rows)
    if m == 0:
        return [ZERO] * n
    width = n_struct + m
    tableau = [row + [ONE if j == i else ZERO for j in range(m)] for i, row in enumerate(rows)]
    basis = [n_struct + i for i in range(m)]
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [-sum(row[j] for row in rows) for j in range(n_struct)] + [ZERO] * m
    cost_rhs = -sum(rhs)

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:  # pragma: no cover - phase one is bounded below by 0
            break
        pivot_row = tableau[leave]
        p = pivot_row[entering]
        if p != 1:
            pivot_row[:] = [a / p for a in pivot_row]
            rhs[leave] /= p
        for i in range(m):
            if i == leave:
                continue
            factor = tableau[i][entering]
            if factor:
                row = tableau[i]
                for j in range(width):
                    if pivot_row[j]:
                        row[j] -= factor * pivot_row[j]
                rhs[i] -= factor * rhs[leave]
        factor = cost[entering]
        for j in range(width):
            if pivot_row[j]:
                cost[j] -= factor * pivot_row[j]
        cost_rhs -= factor * rhs[leave]
        basis[leave] = entering

    if cost_rhs != 0:
        return None
    values = [ZERO] * width
    for i, j in enumerate(basis):
        values[j] = rhs[i]
    return [values[j] - values[n + j] for j in range(n)]


def face_problem(q: Quiver, mask: int) -> LPProblem:
    """Variables are the coordinates of c followed by b."""
    n = q.n_vertices
    problem = LPProblem(n + 1)
    for i, (t, h) in enumerate(q.edges):
        row = [ZERO] * (n + 1)
        if mask >> i & 1:
            row[t], row[h], row[n] = ONE, -ONE, -ONE
            problem.eq.append(row)
            problem.eq_rhs.append(ZERO)
        else:
            row[t], row[h], row[n] = -ONE, ONE, ONE
            problem.ge.append(row)
            problem.ge_rhs.append(ONE)
    return problem


def is_face_oracle(q: Quiver, s: EdgeSubset | int) -> SupportCertificate | None:
    """Certificate that ``s`` is exactly the vertex set of a face, or None."""
    mask = s.mask if isinstance(s, EdgeSubset) else int(s)
    zeros = (ZERO,) * q.n_vertices
    if mask == 0:
        cert = SupportCertificate(RationalVector(q.vertices, zeros), ONE)
    elif mask == q.full_mask:
        cert = SupportCertificate(RationalVector(q.vertices, zeros), ZERO)
    else:
        solution = solve_feasibility(face_problem(q, mask))
        if solution is None:
            return None
        cert = SupportCertificate(RationalVector(q.vertices, tuple(solution[:-1])), solution[-1])
    cert.validate(q, mask)
    for listener in _certificate_listeners:
        listener(q, mask, cert)
    return cert


def _guard(q: Quiver) -> None:
    limit = _config.oracle_limit()
    if q.n_edges > limit:
        raise TooLarge(f"brute force limited to {limit} edges, got {q.n_edges}")


def brute_force_lattice(q: Quiver) -> FaceLattice:
    """Probe all 2^|Q1| edge subsets with the LP and take affine dimensions."""
    _guard(q)
    vectors = [edge_vector(q, i) for i in range(q.n_edges)]
    dims, certs = {}, {}
    for mask in range(1 << q.n_edges):
        cert = is_face_oracle(q, mask)
        if cert is None:
            continue
        certs[mask] = cert
        dims[mask] = affine_dim([vectors[i] for i in range(q.n_edges) if mask >> i & 1])
    return FaceLattice(q, dims, certs)


@dataclass(frozen=True)
class VerifyReport:
    match: bool
    n_faces: int
    dim: int
    discrepancy: str | None = None

    def __str__(self):
        if self.match:
            return f"MATCH: {self.n_faces} faces, dim {self.dim}"
        return f"MISMATCH: {self.discrepancy}"


def _describe(q: Quiver, mask: int) -> str:
    return "{" + ", ".join(f"{t}->{h}" for t, h in EdgeSubset(q, mask).edge_ids()) + "}"


def compare_lattices(q: Quiver, theorem: FaceLattice, oracle: FaceLattice) -> str | None:
    """First difference between two lattices of q, or None."""
    for mask in sorted(set(theorem.dims) | set(oracle.dims)):
        a, b = theorem.dims.get(mask), oracle.dims.get(mask)
        if a is None:
            return f"face {_describe(q, mask)} found only by the oracle"
        if b is None:
            return f"face {_describe(q, mask)} found only by the theorem pipeline"
        if a != b:
            return f"face {_describe(q, mask)}: dimension {a} vs oracle {b}"
    return None


def verify(q: Quiver, inject_fault: bool = False) -> VerifyReport:
    """Compare the theorem pipeline with the oracle on q.

    ``inject_fault`` deletes one face from the theorem side first; it exists
    to exercise the mismatch path.
    """
    _guard(q)
    expected_dim = affine_dim([edge_vector(q, i) for i in range(q.n_edges)])
    theorem_dim = dim_de(q)
    theorem = face_lattice(q)
    if inject_fault:
        victim = max(m for m in theorem.dims if m != q.full_mask)
        theorem = FaceLattice(q, {m: d for m, d in theorem.dims.items() if m != victim})
    if theorem_dim != expected_dim:
        return VerifyReport(False, len(theorem), theorem_dim, f"dimension {theorem_dim} vs affine hull {expected_dim}")
    problem = compare_lattices(q, theorem, brute_force_lattice(q))
    return VerifyReport(problem is None, len(theorem), theorem_dim, problem)

