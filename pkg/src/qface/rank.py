"""Rank functions: vertex labelings with rho(tail) + 1 == rho(head)."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from qface import _kernels
from qface.quiver import EdgeSubset, Quiver, _as_subset


@dataclass(frozen=True)
class RankFunction:
    """Normalized rank function: minimum 0 on every connected component."""

    quiver: Quiver
    values: tuple[int, ...]

    def __getitem__(self, vertex_id) -> int:
        return self.values[self.quiver.index[str(vertex_id)]]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.quiver.vertices, self.values))


def find_rank_function(q: Quiver | EdgeSubset) -> RankFunction | None:
    """Return the normalized rank function of q, or None when none exists.

    Each component is labeled from a base vertex by propagating +1/-1 along
    edges; any conflicting label means no rank function exists.
    """
    r = _as_subset(q)
    ok, rho = _kernels.rank_values(*r.parent.kernel_args(), r.mask)
    if not ok:
        return None
    return RankFunction(r.parent, tuple(int(x) for x in rho))


def check_cycle_balance(q: Quiver | EdgeSubset) -> bool:
    """Asymmetric, and every undirected cycle has as many forward as backward edges.

    Checks the fundamental cycles of a cycle basis of the underlying graph;
    does not use rank-function propagation.
    """
    r = _as_subset(q)
    edges = set(r.edges)
    if any((h, t) in edges for t, h in edges):
        return False
    graph = nx.Graph()
    graph.add_nodes_from(range(r.parent.n_vertices))
    graph.add_edges_from(edges)
    for cycle in nx.cycle_basis(graph):
        balance = 0
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            balance += 1 if (a, b) in edges else -1
        if balance != 0:
            return False
    return True
