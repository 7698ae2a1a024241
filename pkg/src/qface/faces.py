"""Facets, faces and f-vectors of directed edge polytopes.

Faces are identified with edge masks: the face DE(R) of DE(Q) is stored
under the bitmask of R's edges in Q's canonical edge order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from qface import _config, _kernels
from qface.errors import BadParams, HigashitaniReject, NoRankFunction, ParentNotDouble, TooLarge
from qface.quiver import EdgeSubset, Graph, Quiver, components, double

_REASONS = {
    _kernels.FACET_CONDITION_1: "facet: one more component, components full, acyclic contraction",
    _kernels.FACET_CONDITION_2: "facet: same components, rank function with constant sign on excluded edges",
    _kernels.FAIL_DIMENSION: "not a facet: dimension is not one less than the polytope",
    _kernels.FAIL_COMPONENT_COUNT: "not a facet: component count differs from the polytope by more than one",
    _kernels.FAIL_NOT_FULL: "not a facet: some component is not a full subquiver",
    _kernels.FAIL_CONTRACTION_CYCLIC: "not a facet: the contraction has a directed cycle",
    _kernels.FAIL_NO_RANK_FUNCTION: "not a facet: the subquiver has no rank function",
    _kernels.FAIL_SIGN: "not a facet: excluded edges do not share one strict sign",
}


@dataclass(frozen=True)
class FacetVerdict:
    is_facet: bool
    condition: int | None
    reason: str

    def __bool__(self):
        return self.is_facet


@dataclass(frozen=True)
class FVector:
    """Proper nonempty face counts ``counts[d] = f_d`` for d < dim."""

    counts: tuple[int, ...]
    dim: int

    def euler_sum(self) -> int:
        return sum((-1) ** i * f for i, f in enumerate(self.counts))

    def euler_expected(self) -> int:
        return 1 - (-1) ** self.dim

    def __str__(self):
        return f"dim {self.dim}; f = " + " ".join(str(f) for f in self.counts)


@dataclass
class FaceLattice:
    """All faces of DE(Q), including the empty face and DE(Q) itself.

    ``dims`` maps each face's edge mask to its dimension.  Oracle-built
    lattices also carry the supporting-hyperplane certificate of each face.
    """

    quiver: Quiver
    dims: dict[int, int]
    certificates: dict = field(default_factory=dict, compare=False, repr=False)

    def __len__(self):
        return len(self.dims)

    def __contains__(self, mask) -> bool:
        if isinstance(mask, EdgeSubset):
            mask = mask.mask
        return mask in self.dims

    def __iter__(self) -> Iterator[EdgeSubset]:
        for mask in sorted(self.dims):
            yield EdgeSubset(self.quiver, mask)

    def __eq__(self, other):
        if not isinstance(other, FaceLattice):
            return NotImplemented
        return self.quiver == other.quiver and self.dims == other.dims

    @property
    def dim(self) -> int:
        return self.dims[self.quiver.full_mask]

    def dim_of(self, mask) -> int:
        return self.dims[mask.mask if isinstance(mask, EdgeSubset) else mask]

    def by_dim(self) -> dict[int, list[int]]:
        groups = defaultdict(list)
        for mask, d in sorted(self.dims.items()):
            groups[d].append(mask)
        return dict(groups)

    def proper_faces(self) -> dict[int, int]:
        """Masks of proper nonempty faces with their dimensions."""
        full = self.quiver.full_mask
        return {m: d for m, d in self.dims.items() if m != full and d >= 0}

    def f_vector(self) -> FVector:
        d = self.dim
        counts = [0] * max(d, 0)
        for dd in self.proper_faces().values():
            counts[dd] += 1
        return FVector(tuple(counts), d)

    def facets_of(self, mask: int) -> list[int]:
        """Faces of this lattice that are facets of the face ``mask``."""
        d = self.dims[mask]
        return sorted(m for m, dd in self.dims.items() if dd == d - 1 and m & ~mask == 0)


def _mask_of(q: Quiver, r) -> int:
    if isinstance(r, EdgeSubset):
        if r.parent != q:
            raise ValueError("edge subset belongs to a different quiver")
        return r.mask
    return int(r)


def _facet_code(q: Quiver, qmask: int, rmask: int) -> int:
    return int(_kernels.facet_code(*q.kernel_args(), qmask, rmask))


def is_facet(q: Quiver, r: EdgeSubset | int) -> FacetVerdict:
    """Decide whether DE(r) is a facet of DE(q); the reason names the deciding check."""
    code = _facet_code(q, q.full_mask, _mask_of(q, r))
    return FacetVerdict(code > 0, code if code > 0 else None, _REASONS[code])


def is_face_ranked(q: Quiver, r: EdgeSubset | int) -> bool:
    """Face test for a quiver with a rank function.

    A proper r gives a face iff every component of r is full in q and the
    contraction q/r is acyclic.
    """
    mask = _mask_of(q, r)
    if not _kernels.has_rank_function(*q.kernel_args(), q.full_mask):
        raise NoRankFunction("the quiver has no rank function; use face_lattice instead")
    if mask == q.full_mask:
        raise ValueError("the subquiver must be proper")
    return _kernels.ranked_face_code(*q.kernel_args(), q.full_mask, mask) == 0


# -- facet enumeration ---------------------------------------------------------


def _vertex_groups(q: Quiver, mask: int) -> list[list[int]]:
    labels, k = _kernels.component_labels(*q.kernel_args(), mask)
    groups = [[] for _ in range(k)]
    for v, c in enumerate(labels):
        groups[int(c)].append(v)
    return groups


def _condition_1_candidates(q: Quiver, qmask: int) -> Iterator[int]:
    """Masks obtained by cutting one component in two along one-way edges."""
    edges = [(i, t, h) for i, (t, h) in enumerate(q.edges) if qmask >> i & 1]
    for group in _vertex_groups(q, qmask):
        if len(group) < 2:
            continue
        first, rest = group[0], group[1:]
        inner = [(i, t, h) for i, t, h in edges if t in group]
        for bits in range(1 << len(rest)):
            side = {first} | {v for j, v in enumerate(rest) if bits >> j & 1}
            if len(side) == len(group):
                continue
            forward = backward = 0
            for i, t, h in inner:
                if (t in side) != (h in side):
                    if t in side:
                        forward |= 1 << i
                    else:
                        backward |= 1 << i
            if forward and backward:
                continue
            yield qmask & ~(forward | backward)


def _tight_potentials(q: Quiver, qmask: int, group: list[int], upper: bool) -> list[dict[int, int]]:
    """Integer labelings of one component whose tight edges connect it.

    An edge (t, h) is tight when rho(h) - rho(t) == 1.  With ``upper`` every
    edge satisfies rho(h) - rho(t) <= 1, otherwise >= 1.  Labelings are grown
    one tight edge at a time from the component's first vertex.
    """
    edges = [(t, h) for i, (t, h) in enumerate(q.edges) if qmask >> i & 1 and t in group]
    if len(group) == 1:
        return [{group[0]: 0}]
    incident = defaultdict(list)
    for t, h in edges:
        incident[t].append((t, h))
        incident[h].append((t, h))

    def admissible(rho, v):
        for t, h in incident[v]:
            if t in rho and h in rho:
                diff = rho[h] - rho[t]
                if (upper and diff > 1) or (not upper and diff < 1):
                    return False
        return True

    found = {}
    seen = set()
    stack = [{group[0]: 0}]
    while stack:
        rho = stack.pop()
        key = frozenset(rho.items())
        if key in seen:
            continue
        seen.add(key)
        if len(rho) == len(group):
            found[key] = rho
            continue
        for t, h in edges:
            if (t in rho) == (h in rho):
                continue
            nxt = dict(rho)
            if t in rho:
                nxt[h] = rho[t] + 1
                new = h
            else:
                nxt[t] = rho[h] - 1
                new = t
            if admissible(nxt, new):
                stack.append(nxt)
    return list(found.values())


def _condition_2_candidates(q: Quiver, qmask: int) -> Iterator[int]:
    """Tight-edge masks of labelings that are rank functions of a spanning subquiver."""
    if _kernels.has_rank_function(*q.kernel_args(), qmask):
        return
    groups = _vertex_groups(q, qmask)
    for upper in (True, False):
        per_group = [_tight_potentials(q, qmask, g, upper) for g in groups]
        if any(not options for options in per_group):
            continue
        choices = [[]]
        for options in per_group:
            choices = [acc + [rho] for acc in choices for rho in options]
        for combo in choices:
            rho = {}
            for part in combo:
                rho.update(part)
            mask = 0
            for i, (t, h) in enumerate(q.edges):
                if qmask >> i & 1 and rho[h] - rho[t] == 1:
                    mask |= 1 << i
            yield mask


def _pruned_facets(q: Quiver, qmask: int) -> list[int]:
    found = set()
    for cand in _condition_1_candidates(q, qmask):
        if _facet_code(q, qmask, cand) == _kernels.FACET_CONDITION_1:
            found.add(cand)
    for cand in _condition_2_candidates(q, qmask):
        if _facet_code(q, qmask, cand) == _kernels.FACET_CONDITION_2:
            found.add(cand)
    return sorted(found)


def _exhaustive_facets(q: Quiver, qmask: int) -> list[int]:
    return sorted(int(m) for m in _kernels.scan_facets(*q.kernel_args(), qmask))


def facet_masks(q: Quiver, qmask: int | None = None, method: str = "auto") -> list[int]:
    """Facet masks of DE of the subquiver ``qmask`` (default: all of q).

    ``method`` is ``"pruned"``, ``"exhaustive"`` or ``"auto"``; auto scans
    every submask when the subquiver has at most the exhaustive limit of
    edges (default 16, ``QFACE_EDGE_LIMIT``) and runs the pruned search
    otherwise.
    """
    if qmask is None:
        qmask = q.full_mask
    if q.n_edges > _config.MAX_KERNEL_EDGES:
        raise TooLarge(f"at most {_config.MAX_KERNEL_EDGES} edges are supported")
    size = qmask.bit_count()
    limit = _config.exhaustive_limit()
    if method == "auto":
        method = "exhaustive" if size <= limit else "pruned"
    if method == "exhaustive":
        if size > limit:
            raise TooLarge(f"exhaustive facet scan limited to {limit} edges, got {size}")
        return _exhaustive_facets(q, qmask)
    if method == "pruned":
        return _pruned_facets(q, qmask)
    raise ValueError(f"unknown method {method!r}")


def enumerate_facets(q: Quiver, method: str = "auto") -> list[EdgeSubset]:
    return [EdgeSubset(q, m) for m in facet_masks(q, method=method)]


# -- face lattice ----------------------------------------------------------------


def face_lattice(q: Quiver, method: str = "auto") -> FaceLattice:
    """Every face of DE(q) keyed by edge mask.

    With a rank function the face test above is applied to every edge
    subset.  Without one, facets are taken repeatedly, since each face
    DE(R) is the directed edge polytope of R in its own right.
    """
    if q.n_edges > _config.MAX_KERNEL_EDGES:
        raise TooLarge(f"at most {_config.MAX_KERNEL_EDGES} edges are supported")
    args = q.kernel_args()
    full = q.full_mask
    if _kernels.has_rank_function(*args, full):
        masks, dims = _kernels.scan_ranked_faces(*args, full)
        return FaceLattice(q, {int(m): int(d) for m, d in zip(masks, dims)})
    dims = {full: int(_kernels.dim_code(*args, full))}
    pending = [full]
    while pending:
        mask = pending.pop()
        for facet in facet_masks(q, mask, method):
            if facet not in dims:
                dims[facet] = int(_kernels.dim_code(*args, facet))
                pending.append(facet)
    dims[0] = -1
    return FaceLattice(q, dims)


def f_vector(q: Quiver) -> FVector:
    return face_lattice(q).f_vector()


# -- symmetric edge polytopes ---------------------------------------------------------


def _check_double(g: Graph, r: EdgeSubset) -> Quiver:
    q = r.parent
    expected = double(g)
    if set(q.vertices) != set(expected.vertices) or set(q.edge_ids()) != set(expected.edge_ids()):
        raise ParentNotDouble("the subquiver's parent is not the double of the graph")
    return q


def _difference_labeling(vertices, constraints: Mapping) -> dict | None:
    """Solve rho(a) - rho(b) = d over an undirected constraint graph, or None."""
    adj = defaultdict(list)
    for (a, b), d in constraints.items():
        adj[a].append((b, d))
        adj[b].append((a, -d))
    rho = {}
    for start in vertices:
        if start in rho:
            continue
        rho[start] = 0
        stack = [start]
        while stack:
            a = stack.pop()
            for b, d in adj[a]:
                # rho(a) - rho(b) = d
                want = rho[a] - d
                if b in rho:
                    if rho[b] != want:
                        return None
                else:
                    rho[b] = want
                    stack.append(b)
    return rho


def is_facet_symmetric(g: Graph, r: EdgeSubset) -> bool:
    """Facet test for SE(g) through a labeling of g's vertices.

    Needs c(r) = c(D(g)) and a labeling with rho(v) - rho(w) equal to 1 when
    (v, w) is in r, -1 when (w, v) is in r, and 0 otherwise.
    """
    q = _check_double(g, r)
    args = q.kernel_args()
    if _kernels.dim_code(*args, r.mask) != _kernels.dim_code(*args, q.full_mask) - 1:
        return False
    if len(components(r)) != len(components(q)):
        return False
    chosen = set(r.edge_ids())
    constraints = {}
    for a, b in g.edges:
        ab, ba = (a, b) in chosen, (b, a) in chosen
        if ab and ba:
            return False
        constraints[a, b] = 1 if ab else -1 if ba else 0
    return _difference_labeling(g.vertices, constraints) is not None


def higashitani_check(g: Graph, rho: Mapping) -> EdgeSubset:
    """Validate a labeling of a connected graph and return E^rho.

    E^rho holds the edges (v, w) of D(g) with rho(v) = rho(w) + 1.  Rejects
    when some edge has |rho(v) - rho(w)| > 1 (condition 1) or when E^rho
    does not connect every vertex of g (condition 2).
    """
    if not g.is_connected():
        raise BadParams("the graph must be connected")
    values = {str(k): int(v) for k, v in rho.items()}
    missing = [v for v in g.vertices if v not in values]
    if missing:
        raise BadParams(f"labeling misses vertices {missing}")
    for a, b in g.edges:
        if abs(values[a] - values[b]) > 1:
            raise HigashitaniReject(1, f"edge {a} - {b} has label gap {abs(values[a] - values[b])}")
    q = double(g)
    chosen = [(v, w) for v, w in q.edge_ids() if values[v] == values[w] + 1]
    sub = q.subset(chosen)
    if len(components(sub)) != 1:
        raise HigashitaniReject(2, "E^rho does not span the graph")
    return sub


def higashitani_labeling(r: EdgeSubset) -> dict[str, int]:
    """The labeling rho with E^rho = r: the negated rank function of r."""
    from qface.rank import find_rank_function

    rank = find_rank_function(r)
    if rank is None:
        raise NoRankFunction("the subquiver has no rank function")
    top = max(rank.values, default=0)
    return {v: top - x for v, x in zip(r.parent.vertices, rank.values)}
