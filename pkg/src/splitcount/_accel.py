"""Optional numba kernel for the d = 2 sweep.

The kernel computes sigma(2;T) and g_T(-1) for a contiguous index range
with plain int64 arithmetic.  It mirrors ``sigma_fast`` and
``invariant_gf_value`` and is cross-checked against them in the tests.
Without numba, ``AVAILABLE`` is False and callers use the Python path.
"""

from __future__ import annotations

try:
    import numpy as np
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    AVAILABLE = False
    njit = None
else:
    AVAILABLE = True

__all__ = ["AVAILABLE", "d2_sweep", "d2_values"]


def _d2_eval(succ, indeg, cnt0, prodg, g, queue, seen):
    """(sigma(2;T), g_T(-1)) for the 0-based map ``succ``."""
    n = succ.shape[0]
    for v in range(n):
        indeg[v] = 0
        cnt0[v] = 0
        prodg[v] = 1
        seen[v] = 0
    for v in range(n):
        indeg[succ[v]] += 1
    head = 0
    tail = 0
    for v in range(n):
        if indeg[v] == 0:
            queue[tail] = v
            tail += 1
    # leaves first: each tree node is final once all its preimages are
    sigma = 1
    while head < tail:
        v = queue[head]
        head += 1
        seen[v] = 1
        if cnt0[v] > 1:
            sigma = 0
        w = succ[v]
        if cnt0[v] == 0:
            cnt0[w] += 1
        g[v] = 1 - prodg[v]
        prodg[w] *= g[v]
        indeg[w] -= 1
        if indeg[w] == 0:
            queue[tail] = w
            tail += 1
    value = 1
    for s in range(n):
        if seen[s]:
            continue
        r = 0
        prod = 1
        c = s
        while True:
            seen[c] = 1
            r += 1
            prod *= prodg[c]
            if cnt0[c] > 1:
                sigma = 0
            c = succ[c]
            if c == s:
                break
        value *= 1 + (prod if r % 2 == 0 else -prod)
        if sigma:
            accepted = 0
            for x in range(2):
                prev = x
                good = True
                c = succ[s]
                for i in range(1, r + 1):
                    tok = 1 if cnt0[c] == 1 else -1
                    if prev == 0:
                        if tok >= 0:
                            good = False
                            break
                        tok = 1
                    lab = tok if tok >= 0 else 0
                    if i == r:
                        good = lab == x
                    prev = lab
                    c = succ[c]
                if good:
                    accepted += 1
            sigma *= accepted
    return sigma, value


def _advance(succ, n):
    pos = n - 1
    while pos >= 0:
        if succ[pos] < n - 1:
            succ[pos] += 1
            return
        succ[pos] = 0
        pos -= 1


def _start(n, start):
    succ = np.zeros(n, np.int64)
    rem = start
    for pos in range(n - 1, -1, -1):
        succ[pos] = rem % n
        rem //= n
    return succ


def _d2_kernel(n, start, stop, max_fail, fail_idx):
    succ = _start(n, start)
    w = np.zeros((5, n), np.int64)
    seen = np.zeros(n, np.int64)
    applicable = 0
    failed = 0
    for idx in range(start, stop):
        sigma, value = _d2_eval(succ, w[0], w[1], w[2], w[3], w[4], seen)
        if sigma > 0:
            applicable += 1
            if sigma != value:
                if failed < max_fail:
                    fail_idx[failed] = idx
                failed += 1
        _advance(succ, n)
    return applicable, failed


def _d2_table(n, start, stop, out):
    succ = _start(n, start)
    w = np.zeros((5, n), np.int64)
    seen = np.zeros(n, np.int64)
    for k in range(stop - start):
        sigma, value = _d2_eval(succ, w[0], w[1], w[2], w[3], w[4], seen)
        out[k, 0] = sigma
        out[k, 1] = value
        _advance(succ, n)


if AVAILABLE:
    _d2_eval = njit(cache=True)(_d2_eval)
    _advance = njit(cache=True)(_advance)
    _start = njit(cache=True)(_start)
    _d2_kernel = njit(cache=True)(_d2_kernel)
    _d2_table = njit(cache=True)(_d2_table)


def d2_values(n: int, start: int, stop: int) -> list[tuple[int, int]]:
    """Per-map (sigma(2;T), g_T(-1)) over ``[start, stop)``; for testing."""
    out = np.zeros((stop - start, 2), np.int64)
    _d2_table(n, start, stop, out)
    return [(int(a), int(b)) for a, b in out]


def d2_sweep(n: int, start: int, stop: int, max_fail: int):
    """(applicable, failed, failing indices) for d = 2 over ``[start, stop)``."""
    fail_idx = np.zeros(max(max_fail, 1), np.int64)
    applicable, failed = _d2_kernel(n, start, stop, max_fail, fail_idx)
    return int(applicable), int(failed), [int(i) for i in fail_idx[: min(failed, max_fail)]]
