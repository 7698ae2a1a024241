"""Exact vertex vectors of DE(Q), the incidence matrix, and affine dimension."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from qface import _kernels
from qface.errors import UnknownEdge
from qface.quiver import EdgeSubset, Quiver, _as_subset, coconnectivity
from qface.rank import find_rank_function

Rational = Fraction

# Bareiss entries are minors and the update multiplies two of them, so the
# int64 kernel is used only while the Hadamard bound stays below 2**31.
_INT64_MINOR_BOUND = 2**31


@dataclass(frozen=True)
class RationalVector:
    """A point of R^{Q0}: one exact coordinate per vertex."""

    vertices: tuple[str, ...]
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.coords):
            raise ValueError("coordinate count must match the vertex count")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __getitem__(self, vertex_id) -> Fraction:
        return self.coords[self.vertices.index(str(vertex_id))]

    def dot(self, other: RationalVector | Sequence) -> Fraction:
        theirs = other.coords if isinstance(other, RationalVector) else other
        if len(theirs) != len(self.coords):
            raise ValueError("dimension mismatch")
        return sum((a * Fraction(b) for a, b in zip(self.coords, theirs)), Fraction(0))

    def scaled(self, factor) -> RationalVector:
        f = Fraction(factor)
        return RationalVector(self.vertices, tuple(c * f for c in self.coords))

    @classmethod
    def indicator(cls, vertices: Sequence[str], subset: Iterable[str]) -> RationalVector:
        chosen = {str(v) for v in subset}
        return cls(tuple(vertices), tuple(Fraction(int(v in chosen)) for v in vertices))


@dataclass(frozen=True)
class IncidenceMatrix:
    """Rows follow the vertex order, columns the canonical edge order."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    matrix: np.ndarray

    def rank(self) -> int:
        return integer_rank(self.matrix)


def _edge_position(q: Quiver, e) -> int:
    if isinstance(e, int):
        if not 0 <= e < q.n_edges:
            raise UnknownEdge(f"edge index {e} out of range")
        return e
    tail, head = e
    return q.find_edge(tail, head)


def edge_vector(q: Quiver, e) -> RationalVector:
    """The vertex of DE(Q) for edge ``e``: +1 at the tail, -1 at the head.

    ``e`` is an edge index or a ``(tail id, head id)`` pair.
    """
    t, h = q.edges[_edge_position(q, e)]
    coords = [Fraction(0)] * q.n_vertices
    coords[t] = Fraction(1)
    coords[h] = Fraction(-1)
    return RationalVector(q.vertices, tuple(coords))


def vertex_vectors(r: Quiver | EdgeSubset) -> list[RationalVector]:
    r = _as_subset(r)
    return [edge_vector(r.parent, i) for i in r.indices]


def incidence_matrix(q: Quiver) -> IncidenceMatrix:
    m = np.zeros((q.n_vertices, q.n_edges), dtype=np.int64)
    for j, (t, h) in enumerate(q.edges):
        m[t, j] = 1
        m[h, j] = -1
    return IncidenceMatrix(q.vertices, tuple(q.edge_ids()), m)


def _hadamard_bound(rows: list[list[int]]) -> float:
    if not rows:
        return 1.0
    bound = 1.0
    for j in range(len(rows[0])):
        norm = math.sqrt(sum(float(row[j]) ** 2 for row in rows))
        bound *= max(1.0, norm)
    return bound


def integer_rank(matrix) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    rows = [[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]
    if not rows or not rows[0]:
        return 0
    if _hadamard_bound(rows) < _INT64_MINOR_BOUND:
        return int(_kernels.bareiss_rank(np.array(rows, dtype=np.int64)))
    # arbitrary precision path: the same elimination over Python ints
    return int(_kernels.python_impl(_kernels.bareiss_rank)(np.array(rows, dtype=object)))


def affine_dim(vectors: Sequence[RationalVector | Sequence]) -> int:
    """Dimension of the affine hull; -1 for no points.

    Each point becomes a column with an extra coordinate 1; columns are
    cleared of denominators (a positive rescaling keeps the rank).
    """
    if not vectors:
        return -1
    columns = []
    for v in vectors:
        coords = list(v.coords) if isinstance(v, RationalVector) else [Fraction(x) for x in v]
        coords.append(Fraction(1))
        scale = math.lcm(*(c.denominator for c in coords))
        columns.append([int(c * scale) for c in coords])
    height = len(columns[0])
    if any(len(c) != height for c in columns):
        raise ValueError("points must share one ambient dimension")
    matrix = [[col[i] for col in columns] for i in range(height)]
    return integer_rank(matrix) - 1


def dim_de(q: Quiver | EdgeSubset) -> int:
    """dim DE(Q) from coconnectivity and rank-function existence.

    The edgeless quiver gives -1 (empty polytope): it has coconnectivity 0
    and the zero labeling is a rank function.
    """
    c = coconnectivity(q)
    return c - 1 if find_rank_function(q) is not None else c
