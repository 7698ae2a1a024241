"""Bitmask kernels for the combinatorial hot loops.

A quiver is passed as ``(n, tails, heads)`` with ``tails``/``heads`` int64
arrays in canonical edge order; an edge subset is an int64 bitmask over those
edge indices.  Every kernel is exact integer arithmetic.

The kernels are compiled with numba when it is importable and
``QFACE_DISABLE_JIT`` is unset; otherwise the identical source runs as plain
Python on numpy arrays.
"""

import numpy as np

from qface._config import jit_disabled

JIT_ENABLED = False

if not jit_disabled():
    try:
        from numba import njit as _numba_njit

        JIT_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass


def njit(func):
    if JIT_ENABLED:
        return _numba_njit(cache=True)(func)
    return func


def python_impl(func):
    """Return the uncompiled function behind a kernel."""
    return getattr(func, "py_func", func)


# facet_code results
FACET_CONDITION_1 = 1
FACET_CONDITION_2 = 2
FAIL_DIMENSION = 0
FAIL_COMPONENT_COUNT = -1
FAIL_NOT_FULL = -2
FAIL_CONTRACTION_CYCLIC = -3
FAIL_NO_RANK_FUNCTION = -4
FAIL_SIGN = -5


@njit
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit
def component_labels(n, tails, heads, mask):
    """Label vertices by connected component of the masked subquiver.

    Labels are 0..k-1 in order of each component's smallest vertex index.
    Returns ``(labels, k)``.
    """
    parent = np.arange(n)
    for i in range(tails.shape[0]):
        if (mask >> i) & 1:
            a = _find(parent, tails[i])
            b = _find(parent, heads[i])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    labels = np.full(n, -1, dtype=np.int64)
    root_label = np.full(n, -1, dtype=np.int64)
    k = 0
    for v in range(n):
        r = _find(parent, v)
        if root_label[r] < 0:
            root_label[r] = k
            k += 1
        labels[v] = root_label[r]
    return labels, k


@njit
def rank_values(n, tails, heads, mask):
    """Propagate ``rho(tail) + 1 == rho(head)`` along undirected walks.

    Returns ``(ok, rho)``; ``rho`` has minimum 0 on every component when ok.
    """
    m = tails.shape[0]
    rho = np.zeros(n, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        rho[start] = 0
        queue[0] = start
        head_q = 0
        tail_q = 1
        while head_q < tail_q:
            u = queue[head_q]
            head_q += 1
            for i in range(m):
                if not (mask >> i) & 1:
                    continue
                if tails[i] == u:
                    w = heads[i]
                    want = rho[u] + 1
                elif heads[i] == u:
                    w = tails[i]
                    want = rho[u] - 1
                else:
                    continue
                if seen[w]:
                    if rho[w] != want:
                        return False, rho
                else:
                    seen[w] = True
                    rho[w] = want
                    queue[tail_q] = w
                    tail_q += 1
        low = rho[queue[0]]
        for j in range(tail_q):
            if rho[queue[j]] < low:
                low = rho[queue[j]]
        for j in range(tail_q):
            rho[queue[j]] -= low
    return True, rho


@njit
def has_rank_function(n, tails, heads, mask):
    ok, _ = rank_values(n, tails, heads, mask)
    return ok


@njit
def dim_code(n, tails, heads, mask):
    """Dimension of DE of the masked subquiver by the rank-function formula."""
    _, k = component_labels(n, tails, heads, mask)
    c = n - k
    if has_rank_function(n, tails, heads, mask):
        return c - 1
    return c


@njit
def components_full(tails, heads, qmask, rmask, labels):
    """Every edge of q joining two vertices of one r-component lies in r."""
    for i in range(tails.shape[0]):
        if (qmask >> i) & 1 and not (rmask >> i) & 1:
            if labels[tails[i]] == labels[heads[i]]:
                return False
    return True


@njit
def contraction_acyclic(tails, heads, qmask, rmask, labels, k):
    """Kahn's algorithm on the class quiver induced by edges of q outside r.

    An excluded edge inside one class is a loop and counts as a cycle.
    """
    adj = np.zeros((k, k), dtype=np.bool_)
    for i in range(tails.shape[0]):
        if (qmask >> i) & 1 and not (rmask >> i) & 1:
            a = labels[tails[i]]
            b = labels[heads[i]]
            if a == b:
                return False
            adj[a, b] = True
    indeg = np.zeros(k, dtype=np.int64)
    for a in range(k):
        for b in range(k):
            if adj[a, b]:
                indeg[b] += 1
    stack = np.empty(k, dtype=np.int64)
    top = 0
    for a in range(k):
        if indeg[a] == 0:
            stack[top] = a
            top += 1
    removed = 0
    while top > 0:
        top -= 1
        a = stack[top]
        removed += 1
        for b in range(k):
            if adj[a, b]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    stack[top] = b
                    top += 1
    return removed == k


@njit
def ranked_face_code(n, tails, heads, qmask, rmask):
    """Components of r full in q and q/r acyclic (0 ok, else a FAIL_* code)."""
    labels, k = component_labels(n, tails, heads, rmask)
    if not components_full(tails, heads, qmask, rmask, labels):
        return FAIL_NOT_FULL
    if not contraction_acyclic(tails, heads, qmask, rmask, labels, k):
        return FAIL_CONTRACTION_CYCLIC
    return 0


@njit
def facet_code(n, tails, heads, qmask, rmask):
    """Decide whether DE(r) is a facet of DE(q) by the two-condition test.

    ``rmask`` must be a submask of ``qmask``.  Positive results name the
    condition that fired; non-positive ones name the failed check.
    """
    if dim_code(n, tails, heads, rmask) != dim_code(n, tails, heads, qmask) - 1:
        return FAIL_DIMENSION
    _, kq = component_labels(n, tails, heads, qmask)
    labels, kr = component_labels(n, tails, heads, rmask)
    if kr == kq + 1:
        if not components_full(tails, heads, qmask, rmask, labels):
            return FAIL_NOT_FULL
        if not contraction_acyclic(tails, heads, qmask, rmask, labels, kr):
            return FAIL_CONTRACTION_CYCLIC
        return FACET_CONDITION_1
    if kr == kq:
        ok, rho = rank_values(n, tails, heads, rmask)
        if not ok:
            return FAIL_NO_RANK_FUNCTION
        sign = 0
        for i in range(tails.shape[0]):
            if (qmask >> i) & 1 and not (rmask >> i) & 1:
                value = rho[tails[i]] - rho[heads[i]] + 1
                if value == 0:
                    return FAIL_SIGN
                s = 1 if value > 0 else -1
                if sign == 0:
                    sign = s
                elif s != sign:
                    return FAIL_SIGN
        return FACET_CONDITION_2
    return FAIL_COMPONENT_COUNT


@njit
def scan_facets(n, tails, heads, qmask):
    """Exhaustive facet test over every submask of ``qmask``."""
    out = []
    sub = qmask
    while True:
        if facet_code(n, tails, heads, qmask, sub) > 0:
            out.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & qmask
    result = np.empty(len(out), dtype=np.int64)
    for j in range(len(out)):
        result[j] = out[len(out) - 1 - j]
    return result


@njit
def scan_ranked_faces(n, tails, heads, qmask):
    """All submasks passing the full-components/acyclic-contraction test.

    Returns ``(masks, dims)`` in increasing mask order; ``qmask`` itself is
    always included.
    """
    masks = []
    dims = []
    sub = qmask
    while True:
        if sub == qmask or ranked_face_code(n, tails, heads, qmask, sub) == 0:
            masks.append(sub)
            dims.append(dim_code(n, tails, heads, sub))
        if sub == 0:
            break
        sub = (sub - 1) & qmask
    count = len(masks)
    out_masks = np.empty(count, dtype=np.int64)
    out_dims = np.empty(count, dtype=np.int64)
    for j in range(count):
        out_masks[j] = masks[count - 1 - j]
        out_dims[j] = dims[count - 1 - j]
    return out_masks, out_dims


@njit
def bareiss_rank(matrix):
    """Rank by fraction-free Gaussian elimination (works on a copy)."""
    a = matrix.copy()
    rows, cols = a.shape
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        pivot = -1
        for r in range(rank, rows):
            if a[r, col] != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for j in range(cols):
                tmp = a[rank, j]
                a[rank, j] = a[pivot, j]
                a[pivot, j] = tmp
        p = a[rank, col]
        for r in range(rank + 1, rows):
            factor = a[r, col]
            for j in range(col + 1, cols):
                a[r, j] = (p * a[r, j] - factor * a[rank, j]) // prev
            a[r, col] = 0
        prev = p
        rank += 1
    return rank
