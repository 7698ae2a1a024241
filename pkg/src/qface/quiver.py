"""Quivers, lluf subquivers, connectivity, contraction and the double."""

from __future__ import annotations

import graphlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from qface import _config, _kernels
from qface.errors import (
    DuplicateEdge,
    EmptyVertexSet,
    LoopEdge,
    NotComponentwiseFull,
    TooLarge,
    UnknownEdge,
    UnknownFormat,
)


@dataclass(frozen=True)
class Quiver:
    """A finite quiver without loops or multiple edges.

    ``vertices`` holds opaque string ids in first-appearance order and
    ``edges`` holds ``(tail, head)`` index pairs sorted by tail then head.
    Use :meth:`from_edges` to build one from vertex ids.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("vertex ids must be distinct")
        seen = set()
        for t, h in self.edges:
            if not (0 <= t < n and 0 <= h < n):
                raise UnknownEdge(f"edge ({t}, {h}) has an endpoint outside the vertex list")
            if t == h:
                raise LoopEdge(f"loop at vertex {self.vertices[t]!r}")
            if (t, h) in seen:
                raise DuplicateEdge(f"duplicate edge {self.vertices[t]!r} -> {self.vertices[h]!r}")
            seen.add((t, h))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[object, object]], vertices: Sequence[object] = ()) -> Quiver:
        """Build a quiver from id pairs; ids are stringified.

        Explicit ``vertices`` come first (allowing isolated vertices), then
        any further endpoints in order of first appearance.
        """
        order: dict[str, int] = {}
        for v in vertices:
            order.setdefault(str(v), len(order))
        pairs = []
        seen = set()
        for t, h in edges:
            t, h = str(t), str(h)
            if t == h:
                raise LoopEdge(f"loop at vertex {t!r}")
            order.setdefault(t, len(order))
            order.setdefault(h, len(order))
            key = (order[t], order[h])
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {t!r} -> {h!r}")
            seen.add(key)
            pairs.append(key)
        return cls(tuple(order), tuple(pairs))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def tails(self) -> np.ndarray:
        return np.array([t for t, _ in self.edges], dtype=np.int64)

    @cached_property
    def heads(self) -> np.ndarray:
        return np.array([h for _, h in self.edges], dtype=np.int64)

    @property
    def full_mask(self) -> int:
        return (1 << self.n_edges) - 1

    def kernel_args(self):
        """``(n, tails, heads)`` for the bitmask kernels, which hold edge sets in an int64."""
        if self.n_edges > _config.MAX_KERNEL_EDGES:
            raise TooLarge(f"at most {_config.MAX_KERNEL_EDGES} edges are supported, got {self.n_edges}")
        return self.n_vertices, self.tails, self.heads

    def edge_ids(self) -> list[tuple[str, str]]:
        return [(self.vertices[t], self.vertices[h]) for t, h in self.edges]

    def find_edge(self, tail: object, head: object) -> int:
        """Index of the edge ``tail -> head`` given vertex ids."""
        try:
            key = (self.index[str(tail)], self.index[str(head)])
            return self.edge_index[key]
        except KeyError:
            raise UnknownEdge(f"no edge {tail!r} -> {head!r}") from None

    def subset(self, edges: Iterable[tuple[object, object]]) -> EdgeSubset:
        """The lluf subquiver on the given edges (given as vertex-id pairs)."""
        mask = 0
        for t, h in edges:
            mask |= 1 << self.find_edge(t, h)
        return EdgeSubset(self, mask)

    def everything(self) -> EdgeSubset:
        return EdgeSubset(self, self.full_mask)

    def is_asymmetric(self) -> bool:
        es = set(self.edges)
        return all((h, t) not in es for t, h in es)

    def is_symmetric(self) -> bool:
        es = set(self.edges)
        return all((h, t) in es for t, h in es)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edge_ids()]}

    def to_edgelist(self) -> str:
        return "".join(f"{t} {h}\n" for t, h in self.edge_ids())


@dataclass(frozen=True)
class EdgeSubset:
    """A lluf subquiver of ``parent``: every parent vertex, the masked edges."""

    parent: Quiver
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.parent.n_edges:
            raise UnknownEdge(f"mask {self.mask:#x} names edges outside the parent")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, index: int) -> bool:
        return bool(self.mask >> index & 1)

    @property
    def indices(self) -> list[int]:
        return [i for i in range(self.parent.n_edges) if self.mask >> i & 1]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [self.parent.edges[i] for i in self.indices]

    def edge_ids(self) -> list[tuple[str, str]]:
        vs = self.parent.vertices
        return [(vs[t], vs[h]) for t, h in self.edges]

    def complement(self) -> EdgeSubset:
        return EdgeSubset(self.parent, self.parent.full_mask & ~self.mask)

    def as_quiver(self) -> Quiver:
        """The subquiver as a standalone quiver on all parent vertices."""
        return Quiver(self.parent.vertices, tuple(self.edges))

    def is_proper(self) -> bool:
        return self.mask != self.parent.full_mask


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class ContractedQuiver:
    """Q/R: classes are components of R, edges come from Q1 minus R1."""

    classes: tuple[frozenset[int], ...]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)


def _as_subset(q) -> EdgeSubset:
    return q if isinstance(q, EdgeSubset) else q.everything()


def components(q: Quiver | EdgeSubset) -> ComponentDecomposition:
    """Connected components of a quiver (or of a lluf subquiver)."""
    r = _as_subset(q)
    labels, k = _kernels.component_labels(*r.parent.kernel_args(), r.mask)
    groups = [set() for _ in range(k)]
    for v, c in enumerate(labels):
        groups[int(c)].add(v)
    return ComponentDecomposition(tuple(frozenset(g) for g in groups), tuple(int(c) for c in labels))


def coconnectivity(q: Quiver | EdgeSubset) -> int:
    r = _as_subset(q)
    return r.parent.n_vertices - len(components(r))


def is_full(r: EdgeSubset, component_restricted: bool = True) -> bool:
    """Fullness of r in its parent.

    With ``component_restricted`` every connected component of r must contain
    every parent edge between its own vertices.  Without it r is tested as a
    whole; a lluf subquiver keeps every vertex, so that means r is the parent.
    """
    q = r.parent
    if component_restricted:
        labels = components(r).component_of
        return all(labels[t] != labels[h] for i, (t, h) in enumerate(q.edges) if not r.mask >> i & 1)
    return r.mask == q.full_mask


def is_directed_acyclic(q: Quiver | ContractedQuiver) -> bool:
    if isinstance(q, ContractedQuiver):
        nodes, edges = range(len(q.classes)), q.edges
    else:
        nodes, edges = range(q.n_vertices), q.edges
    graph = {v: set() for v in nodes}
    for t, h in edges:
        if t == h:
            return False
        graph[h].add(t)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError:
        return False
    return True


def contract(r: EdgeSubset) -> ContractedQuiver:
    if not is_full(r, component_restricted=True):
        raise NotComponentwiseFull("some component of the subquiver is not full in its parent")
    dec = components(r)
    labels = dec.component_of
    edges = {
        (labels[t], labels[h]) for i, (t, h) in enumerate(r.parent.edges) if not r.mask >> i & 1
    }
    return ContractedQuiver(dec.components, frozenset(edges))


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph; each edge listed once."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[object, object]], vertices: Sequence[object] = ()) -> Graph:
        """Accepts a symmetric edge list too: repeated or reversed pairs collapse."""
        order: dict[str, None] = {str(v): None for v in vertices}
        undirected = []
        seen = set()
        for a, b in edges:
            a, b = str(a), str(b)
            if a == b:
                raise LoopEdge(f"loop at vertex {a!r}")
            order.setdefault(a, None)
            order.setdefault(b, None)
            key = frozenset((a, b))
            if key not in seen:
                seen.add(key)
                undirected.append((a, b))
        return cls(tuple(order), tuple(undirected))

    def is_connected(self) -> bool:
        return len(components(double(self))) <= 1


def double(g: Graph | Iterable[tuple[object, object]], vertices: Sequence[object] = ()) -> Quiver:
    """D(G): both orientations of every undirected edge of a simple graph."""
    if not isinstance(g, Graph):
        g = Graph.from_edges(g, vertices)
    directed = [e for a, b in g.edges for e in ((a, b), (b, a))]
    return Quiver.from_edges(directed, g.vertices)


def underlying_edges(q: Quiver) -> list[tuple[int, int]]:
    """Undirected edges of a quiver as sorted index pairs, deduplicated."""
    return sorted({(min(t, h), max(t, h)) for t, h in q.edges})


def spanning_polyforest(q: Quiver) -> EdgeSubset:
    """Greedy spanning forest in canonical edge order (one tree per component)."""
    parent = list(range(q.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    mask = 0
    for i, (t, h) in enumerate(q.edges):
        a, b = find(t), find(h)
        if a != b:
            parent[b] = a
            mask |= 1 << i
    return EdgeSubset(q, mask)


def parse_quiver(text: str) -> Quiver:
    """Parse an edge-list or JSON quiver description."""
    stripped = text.strip()
    if not stripped:
        raise EmptyVertexSet("input declares no vertices")
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return _parse_edgelist(text)


def _parse_edgelist(text: str) -> Quiver:
    order: dict[str, int] = {}
    pairs = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise UnknownFormat(f"expected 'tail head', got {raw.strip()!r}", line=lineno)
        t, h = tokens
        if t == h:
            raise LoopEdge(f"loop at vertex {t!r}", line=lineno)
        if (t, h) in seen:
            raise DuplicateEdge(f"edge {t} -> {h} already given on line {seen[t, h]}", line=lineno)
        seen[t, h] = lineno
        order.setdefault(t, len(order))
        order.setdefault(h, len(order))
        pairs.append((order[t], order[h]))
    if not order:
        raise EmptyVertexSet("input declares no vertices")
    return Quiver(tuple(order), tuple(pairs))


def _parse_json(text: str) -> Quiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UnknownFormat(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict) or not isinstance(data.get("edges", []), list):
        raise UnknownFormat("JSON input must be an object with 'vertices' and 'edges'")
    vertices = data.get("vertices", [])
    if not isinstance(vertices, list):
        raise UnknownFormat("'vertices' must be a list")
    edges = []
    for k, e in enumerate(data.get("edges", [])):
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise UnknownFormat(f"edge #{k} is not a [tail, head] pair")
        edges.append((e[0], e[1]))
    q = Quiver.from_edges(edges, vertices)
    if q.n_vertices == 0:
        raise EmptyVertexSet("input declares no vertices")
    return q
