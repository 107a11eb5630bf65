"""Generating functions for T-invariant subsets and d-flags of them.

``invariant_gf`` and ``flag_gf`` follow the structural recursions over
cycles and attached trees; ``invariant_subsets_bruteforce`` and
``flag_count_bruteforce`` are the independent oracles that test them.
"""

from __future__ import annotations

from .core import AttachedTree, Endofunction, _tree_order
from .errors import CapExceeded, InvalidD
from .cyclotomic import CyclotomicInteger
from .poly import MultiPoly, UniPoly

__all__ = [
    "invariant_gf",
    "invariant_gf_value",
    "flag_gf",
    "flag_gf_tree",
    "flag_gf_at_roots",
    "invariant_subsets_bruteforce",
    "flag_count_bruteforce",
    "INVARIANT_CAP",
    "FLAG_CAP",
]

INVARIANT_CAP = 20
FLAG_CAP = 12

_ONE = UniPoly((1,))
_T = UniPoly((0, 1))


def _check_d(d):
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidD(f"d must be a positive integer, got {d!r}")


def _tree_invariant_gf(root, preds) -> UniPoly:
    g = {}
    for v in reversed(_tree_order(root, preds)):
        prod = _ONE
        for u in preds[v]:
            prod = prod * g[u]
        g[v] = _ONE + _T * prod
    return g[root]


def invariant_gf(T: Endofunction) -> UniPoly:
    """Coefficient of t^i = number of T-invariant subsets of size i."""
    cycles, preds, on_cycle = T._shape
    total = _ONE
    for cyc in cycles:
        inner = UniPoly.monomial(len(cyc))
        for c in cyc:
            for root in preds[c]:
                if not on_cycle[root]:
                    inner = inner * _tree_invariant_gf(root, preds)
        total = total * (_ONE + inner)
    return total


def invariant_gf_value(T: Endofunction, x: int) -> int:
    """invariant_gf(T) evaluated at the integer ``x``, without building it."""
    cycles, preds, on_cycle = T._shape
    total = 1
    for cyc in cycles:
        inner = x ** len(cyc)
        for c in cyc:
            for root in preds[c]:
                if on_cycle[root]:
                    continue
                g = {}
                for v in reversed(_tree_order(root, preds)):
                    prod = 1
                    for u in preds[v]:
                        prod *= g[u]
                    g[v] = 1 + x * prod
                inner *= g[root]
        total *= 1 + inner
    return total


def _tree_flag_table(root, preds, d: int, lo: int = 1) -> dict:
    """Memo of (node, offset) -> flag gf of the subtree at node in t_offset..t_d.

    Stored as ``table[v][l]`` for l in lo..d (index 0..lo-1 unused).  For a
    node with children c_j,  S(v, l) = t_l * prod_j S(c_j, l) + S(v, l+1).
    """
    table = {}
    for v in reversed(_tree_order(root, preds)):
        row = [None] * (d + 2)
        row[d + 1] = MultiPoly.zero(d)
        for l in range(d, lo - 1, -1):
            prod = MultiPoly.var(d, l)
            for u in preds[v]:
                prod = prod * table[u][l]
            row[l] = prod + row[l + 1]
        table[v] = row
    return table


def flag_gf_tree(tree: AttachedTree, l: int, d: int) -> MultiPoly:
    """Flag gf of a rooted tree in the variables t_l..t_d.

    The result lives in ``d`` variables with t_1..t_(l-1) absent.
    """
    _check_d(d)
    if not 1 <= l <= d:
        raise InvalidD(f"offset {l} outside 1..{d}")
    table = _tree_flag_table(tree.root, tree.children, d, l)
    return table[tree.root][l]


def flag_gf(T: Endofunction, d: int) -> MultiPoly:
    """Coefficient of t^J = number of d-flags with |U_i| = j_1 + ... + j_i."""
    _check_d(d)
    cycles, preds, on_cycle = T._shape
    total = MultiPoly.one(d)
    for cyc in cycles:
        r = len(cyc)
        tables = []
        for c in cyc:
            for root in preds[c]:
                if not on_cycle[root]:
                    tables.append(_tree_flag_table(root, preds, d)[root])
        comp = MultiPoly.zero(d)
        for l in range(1, d + 1):
            term = MultiPoly.var(d, l, r)
            for row in tables:
                term = term * row[l]
            comp = comp + term
        total = total * comp
    return total


def _cyc_mul(a: list, b: list, d: int) -> list:
    out = [0] * d
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % d] += x * y
    return out


def _cyc_shift(a: list, e: int, d: int) -> list:
    e %= d
    return a[-e:] + a[:-e] if e else list(a)


def flag_gf_at_roots(T: Endofunction, d: int) -> CyclotomicInteger:
    """g_T(z, z^2, ..., z^d) without expanding g_T.

    Substitution is a ring homomorphism, so the flag recursion is run
    directly on values in Z[x]/(x^d - 1) and reduced once at the end.
    """
    _check_d(d)
    cycles, preds, on_cycle = T._shape
    unit = [1] + [0] * (d - 1)
    total = unit
    for cyc in cycles:
        r = len(cyc)
        rows = []
        for c in cyc:
            for root in preds[c]:
                if on_cycle[root]:
                    continue
                vals = {}
                for v in reversed(_tree_order(root, preds)):
                    row = [None] * (d + 2)
                    row[d + 1] = [0] * d
                    for l in range(d, 0, -1):
                        prod = unit
                        for u in preds[v]:
                            prod = _cyc_mul(prod, vals[u][l], d)
                        shifted = _cyc_shift(prod, l, d)
                        row[l] = [x + y for x, y in zip(shifted, row[l + 1])]
                    vals[v] = row
                rows.append(vals[root])
        comp = [0] * d
        for l in range(1, d + 1):
            term = _cyc_shift(unit, l * r, d)
            for row in rows:
                term = _cyc_mul(term, row[l], d)
            comp = [x + y for x, y in zip(comp, term)]
        total = _cyc_mul(total, comp, d)
    return CyclotomicInteger.from_cyclic(d, total)


# ---------------------------------------------------------------------------
# oracles


def _invariant_masks(T: Endofunction) -> list[int]:
    n = T.n
    succ = T.succ
    img = [0] * (1 << n)
    out = [0]
    for mask in range(1, 1 << n):
        low = mask & -mask
        img[mask] = img[mask ^ low] | (1 << succ[low.bit_length() - 1])
        if img[mask] & ~mask == 0:
            out.append(mask)
    return out


def invariant_subsets_bruteforce(T: Endofunction, cap: int = INVARIANT_CAP) -> UniPoly:
    """Tally invariant subsets by size over all 2^n bitmasks."""
    if T.n > cap:
        raise CapExceeded(f"n={T.n} exceeds brute-force cap {cap}")
    counts = [0] * (T.n + 1)
    for mask in _invariant_masks(T):
        counts[bin(mask).count("1")] += 1
    return UniPoly(counts)


def flag_count_bruteforce(T: Endofunction, d: int, cap: int = FLAG_CAP) -> MultiPoly:
    """Count d-flags of invariant subsets by DP over the invariant lattice.

    ``f[U]`` maps the size-increment prefix (j_1..j_i) to the number of
    chains U_0 = {} <= U_1 <= ... <= U_i = U of invariant subsets.
    """
    _check_d(d)
    n = T.n
    if n > cap:
        raise CapExceeded(f"n={n} exceeds flag brute-force cap {cap}")
    inv = _invariant_masks(T)
    size = {m: bin(m).count("1") for m in inv}
    full = (1 << n) - 1
    f = {m: {(size[m],): 1} for m in inv}
    for step in range(2, d + 1):
        targets = [full] if step == d else inv
        g = {}
        for u in targets:
            acc: dict = {}
            su = size[u]
            for v in inv:
                if v & u != v:
                    continue
                dj = su - size[v]
                for prefix, c in f[v].items():
                    key = prefix + (dj,)
                    acc[key] = acc.get(key, 0) + c
            g[u] = acc
        f = g
    if d == 1:
        return MultiPoly(1, {(n,): 1})
    return MultiPoly(d, f[full])
