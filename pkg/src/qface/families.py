"""Generators for standard quiver families and their closed-form f-vectors."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from qface.errors import BadParams, ClosedFormUnavailable
from qface.faces import FVector
from qface.quiver import Quiver, double

FAMILIES = ("path", "polygon", "double-cycle", "double-complete", "random")

_SIGNS = {"+": 1, "-": -1, "−": -1}


@dataclass(frozen=True)
class OrientationWord:
    """Edge i of an m-gon joins i-1 and i; '+' points it forward."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) < 3:
            raise BadParams("an orientation word needs at least 3 letters")
        if any(s not in (1, -1) for s in self.signs):
            raise BadParams("orientation signs must be +1 or -1")

    @classmethod
    def parse(cls, word: str) -> OrientationWord:
        try:
            return cls(tuple(_SIGNS[ch] for ch in word.strip()))
        except KeyError as exc:
            raise BadParams(f"orientation words use '+' and '-', got {exc.args[0]!r}") from None

    @property
    def forward(self) -> int:
        return self.signs.count(1)

    @property
    def backward(self) -> int:
        return self.signs.count(-1)

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)


def path(n: int) -> Quiver:
    """0 -> 1 -> ... -> n."""
    if n < 1:
        raise BadParams("a path needs at least one edge")
    return Quiver.from_edges([(i - 1, i) for i in range(1, n + 1)])


def polygon(word: OrientationWord | str) -> Quiver:
    if isinstance(word, str):
        word = OrientationWord.parse(word)
    m = len(word.signs)
    edges = []
    for i, s in enumerate(word.signs, start=1):
        a, b = (i - 1) % m, i % m
        edges.append((a, b) if s > 0 else (b, a))
    return Quiver.from_edges(edges, range(m))


def double_cycle(m: int) -> Quiver:
    if m < 3:
        raise BadParams("a cycle needs at least 3 vertices")
    return double([(i, (i + 1) % m) for i in range(m)], range(m))


def double_complete(m: int) -> Quiver:
    if m < 1:
        raise BadParams("a complete graph needs at least 1 vertex")
    return double([(i, j) for i in range(m) for j in range(i + 1, m)], range(m))


def random_quiver(n_vertices: int, n_edges: int, seed: int) -> Quiver:
    """Uniform loop-free, duplicate-free edges by rejection sampling.

    Uses ``random.Random(seed)``; every vertex 0..n-1 is kept, isolated or not.
    """
    if n_vertices < 1 or n_edges < 0 or n_edges > n_vertices * (n_vertices - 1):
        raise BadParams(f"cannot place {n_edges} edges on {n_vertices} vertices")
    rng = random.Random(seed)
    chosen: list[tuple[int, int]] = []
    seen = set()
    while len(chosen) < n_edges:
        t, h = rng.randrange(n_vertices), rng.randrange(n_vertices)
        if t == h or (t, h) in seen:
            continue
        seen.add((t, h))
        chosen.append((t, h))
    return Quiver.from_edges(chosen, range(n_vertices))


def gen(family: str, *params) -> Quiver:
    """Build a family member: ``path n``, ``polygon WORD``, ``double-cycle m``,
    ``double-complete m`` or ``random V E SEED``."""
    try:
        if family == "path":
            (n,) = params
            return path(int(n))
        if family == "polygon":
            (word,) = params
            return polygon(word if isinstance(word, OrientationWord) else str(word))
        if family == "double-cycle":
            (m,) = params
            return double_cycle(int(m))
        if family == "double-complete":
            (m,) = params
            return double_complete(int(m))
        if family == "random":
            v, e, seed = params
            return random_quiver(int(v), int(e), int(seed))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(f"bad parameters for {family}: {params!r}") from None
    raise BadParams(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


# -- closed forms ---------------------------------------------------------------


def _binom(m: int, k: int) -> int:
    return comb(m, k) if 0 <= k <= m else 0


def simplex_fvector(n_edges: int) -> FVector:
    """An (n-1)-simplex: every proper nonempty subset of vertices is a face."""
    return FVector(tuple(_binom(n_edges, d + 1) for d in range(n_edges - 1)), n_edges - 1)


def balanced_polygon_fvector(n: int) -> FVector:
    """Asymmetric 2n-gon with n forward and n backward edges."""
    return FVector(tuple(_binom(2 * n, d + 1) - 2 * _binom(n, d + 1 - n) for d in range(2 * n - 2)), 2 * n - 2)


def _cycle_sum(m: int, d: int, bound: int, strict: bool) -> int:
    """sum of C(m, i) C(m - i, d + 1 - i) over i with both i and d + 1 - i under the bound."""
    total = 0
    for i in range(d + 2):
        j = d + 1 - i
        if (i < bound and j < bound) if strict else (i <= bound and j <= bound):
            total += _binom(m, i) * _binom(m - i, j)
    return total


def even_cycle_fvector(n: int) -> FVector:
    """SE(C_2n): the sum formula below the facets, C(2n, n) facets."""
    if n < 2:
        raise BadParams("even cycles need n >= 2")
    counts = [_cycle_sum(2 * n, d, n, strict=True) for d in range(2 * n - 2)]
    counts.append(_binom(2 * n, n))
    return FVector(tuple(counts), 2 * n - 1)


def even_cycle_simplified(n: int, d: int) -> int:
    """C(2n, d+1) 2^(d+1); only valid while d + 1 < n."""
    if not 0 <= d + 1 < n:
        raise BadParams("the simplified count needs d + 1 < n")
    return _binom(2 * n, d + 1) * 2 ** (d + 1)


def odd_cycle_fvector(n: int) -> FVector:
    """SE(C_{2n+1}): every face is a simplex spanned by at most n edges of
    each orientation at distinct positions."""
    if n < 1:
        raise BadParams("odd cycles need n >= 1")
    m = 2 * n + 1
    return FVector(tuple(_cycle_sum(m, d, n, strict=False) for d in range(2 * n)), 2 * n)


def odd_cycle_facets(n: int) -> int:
    return (2 * n + 1) * _binom(2 * n, n)


def closed_form_fvector(family: str, *params) -> FVector:
    """Closed-form f-vector for a family member, or ClosedFormUnavailable."""
    if family == "path":
        (n,) = params
        return simplex_fvector(int(n))
    if family == "polygon":
        (word,) = params
        word = word if isinstance(word, OrientationWord) else OrientationWord.parse(str(word))
        if word.forward != word.backward:
            raise ClosedFormUnavailable("only balanced polygons (n forward, n backward) have a closed form")
        return balanced_polygon_fvector(word.forward)
    if family == "double-cycle":
        (m,) = params
        m = int(m)
        if m < 3:
            raise BadParams("a cycle needs at least 3 vertices")
        return even_cycle_fvector(m // 2) if m % 2 == 0 else odd_cycle_fvector(m // 2)
    if family in FAMILIES:
        raise ClosedFormUnavailable(f"no closed form for {family}")
    raise BadParams(f"unknown family {family!r}")
