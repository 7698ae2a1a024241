import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qface.families import double_cycle, path, random_quiver
from qface.quiver import Quiver, double
from qface.rank import check_cycle_balance, find_rank_function

from corpus import BALANCED_SQUARE, all_small_quivers, seeded_random_quivers


def test_path_rank():
    assert find_rank_function(path(2)).as_dict() == {"0": 0, "1": 1, "2": 2}


def test_symmetric_pair_has_none():
    assert find_rank_function(double([(0, 1)])) is None


def test_balanced_square():
    assert find_rank_function(BALANCED_SQUARE).as_dict() == {"0": 0, "1": 1, "2": 0, "3": 1}


def test_normalized_per_component():
    q = Quiver.from_edges([(0, 1), (3, 2), (2, 4)], range(6))
    rho = find_rank_function(q)
    assert rho.as_dict() == {"0": 0, "1": 1, "2": 1, "3": 0, "4": 2, "5": 0}
    assert rho[4] == 2


def test_edgeless_has_zero_rank_function():
    assert find_rank_function(Quiver.from_edges([], range(3))).values == (0, 0, 0)


@pytest.mark.parametrize(
    "q, expected",
    [
        (Quiver.from_edges([(0, 1), (1, 2), (2, 0)]), False),
        (BALANCED_SQUARE, True),
        (Quiver.from_edges([(0, 1), (2, 1), (2, 3), (4, 2)]), True),
        (double_cycle(4), False),
    ],
)
def test_cycle_balance(q, expected):
    assert check_cycle_balance(q) is expected


def test_equivalence_on_small_corpus():
    count = 0
    for q in list(all_small_quivers(4, 6)) + seeded_random_quivers(300, 8, seed=7):
        rho = find_rank_function(q)
        assert (rho is not None) == check_cycle_balance(q), q.edge_ids()
        if rho is not None:
            assert q.is_asymmetric()
            for t, h in q.edges:
                assert rho.values[t] + 1 == rho.values[h]
        count += 1
    assert count > 2500


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 7), st.integers(0, 12), st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_relabeling_invariance(n, e, seed, rng):
    e = min(e, n * (n - 1))
    q = random_quiver(n, e, seed)
    perm = list(range(n))
    rng.shuffle(perm)
    names = {str(v): f"v{perm[v]}" for v in range(n)}
    relabeled = Quiver.from_edges(
        [(names[t], names[h]) for t, h in q.edge_ids()], [names[v] for v in sorted(q.vertices, key=lambda v: perm[int(v)])]
    )
    a, b = find_rank_function(q), find_rank_function(relabeled)
    assert (a is None) == (b is None)
    if a is not None:
        assert {names[v]: x for v, x in a.as_dict().items()} == b.as_dict()
