"""Counting d-splitting subsets.

A subset W with |W| = n/d splits T when W, TW, ..., T^(d-1)W cover [n].
Each T^iW has at most n/d elements, so a cover is an exact partition and
W is equivalent to a labeling of the nodes by 0..d-1 (``label(v) = i`` iff
``v`` lies in ``T^iW``).  A labeling is valid iff every node receives at
most one token, where a node ``u`` with label ``<= d-2`` sends the token
``label(u) + 1`` to ``T(u)``, and each node's label is its token (0 if it
gets none).  Tree labels are forced bottom-up; on a cycle only the label
of one node is free, which gives at most ``d`` labelings per component.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Optional

from .core import AttachedTree, Component, Endofunction, _tree_order
from .errors import CapExceeded, InputError, InvalidD, NotATree

__all__ = [
    "SplittingResult",
    "is_splitting",
    "sigma_bruteforce",
    "sigma_fast",
    "tree_unique_splitting",
    "has_splitting_with_root",
    "has_splitting_alone",
    "default_cap",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10**8


def default_cap() -> int:
    """Brute-force subset cap; ``SPLITCOUNT_CAP`` overrides the default."""
    raw = os.environ.get("SPLITCOUNT_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"SPLITCOUNT_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise InputError("SPLITCOUNT_CAP must be non-negative")
    return cap


@dataclass(frozen=True)
class SplittingResult:
    sigma: int
    method: str
    witnesses: Optional[tuple[frozenset[int], ...]] = None

    def witness_lists(self) -> list[list[int]] | None:
        if self.witnesses is None:
            return None
        return [sorted(w) for w in self.witnesses]


def _check_d(n: int, d: int) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidD(f"d must be a positive integer, got {d!r}")
    if n % d:
        raise InvalidD(f"d={d} does not divide n={n}")


# ---------------------------------------------------------------------------
# label propagation


def _tree_labels(root, preds, d, labels) -> bool:
    """Fill ``labels`` for the tree at ``root``; False on a token collision."""
    top = d - 1
    for v in reversed(_tree_order(root, preds)):
        tok = -1
        for u in preds[v]:
            lu = labels[u]
            if lu < top:
                if tok >= 0:
                    return False
                tok = lu + 1
        labels[v] = tok if tok >= 0 else 0
    return True


def _tree_root_label(root, preds, d) -> int | None:
    """Forced label of a tree's root, or None if the tree admits no labeling.

    The tree alone (root sent to itself) splits iff this is ``d - 1``; the
    tree with one extra node below its root splits iff it is ``d - 2``
    (or ``d == 1``).
    """
    labels = {}
    if not _tree_labels(root, preds, d, labels):
        return None
    return labels[root]


def _component_labelings(cyc, preds, on_cycle, d, labels):
    """Valid cycle labelings of one component.

    Tree labels are written into ``labels``.  Returns a list of cycle label
    lists aligned with ``cyc`` (empty when the component has no valid
    labeling).
    """
    top = d - 1
    incoming = []
    for c in cyc:
        tok = -1
        for root in preds[c]:
            if on_cycle[root]:
                continue
            if not _tree_labels(root, preds, d, labels):
                return []
            lr = labels[root]
            if lr < top:
                if tok >= 0:
                    return []
                tok = lr + 1
        incoming.append(tok)
    r = len(cyc)
    accepted = []
    for x in range(d):
        seq = [x]
        prev = x
        ok = True
        for i in range(1, r + 1):
            tok = incoming[i % r]
            if prev < top:
                if tok >= 0:
                    ok = False
                    break
                tok = prev + 1
            lab = tok if tok >= 0 else 0
            if i == r:
                ok = lab == x
            else:
                seq.append(lab)
                prev = lab
        if ok:
            accepted.append(seq)
    return accepted


def sigma_fast(T: Endofunction, d: int, witnesses: bool = False) -> SplittingResult:
    """sigma(d; T) by label propagation, O(n*d)."""
    _check_d(T.n, d)
    cycles, preds, on_cycle = T._shape
    labels = {}
    total = 1
    per_component = []
    for cyc in cycles:
        accepted = _component_labelings(cyc, preds, on_cycle, d, labels)
        if not accepted:
            total = 0
            break
        total *= len(accepted)
        per_component.append((cyc, accepted))
    if not witnesses:
        return SplittingResult(total, "LabelDP")
    if total == 0:
        return SplittingResult(0, "LabelDP", ())
    tree_zero = frozenset(v + 1 for v, lab in labels.items() if lab == 0)
    choices = []
    for cyc, accepted in per_component:
        choices.append([
            frozenset(c + 1 for c, lab in zip(cyc, seq) if lab == 0) for seq in accepted
        ])
    ws = [tree_zero.union(*combo) for combo in product(*choices)]
    ws.sort(key=sorted)
    return SplittingResult(total, "LabelDP", tuple(ws))


# ---------------------------------------------------------------------------
# brute force


def is_splitting(T: Endofunction, d: int, W: Iterable[int]) -> bool:
    n = T.n
    _check_d(n, d)
    ws = set(W)
    for v in ws:
        if isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n:
            raise InputError(f"node {v!r} outside 1..{n}")
    if len(ws) != n // d:
        return False
    succ = T.succ
    mask = 0
    for v in ws:
        mask |= 1 << (v - 1)
    union = cur = mask
    for _ in range(d - 1):
        cur = _image_mask(cur, succ)
        union |= cur
    return union == (1 << n) - 1


def _image_mask(mask: int, succ) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << succ[low.bit_length() - 1]
        mask ^= low
    return out


def sigma_bruteforce(
    T: Endofunction, d: int, witnesses: bool = False, cap: int | None = None
) -> SplittingResult:
    """sigma(d; T) by testing every subset of size n/d."""
    n = T.n
    _check_d(n, d)
    m = n // d
    if cap is None:
        cap = default_cap()
    if comb(n, m) > cap:
        raise CapExceeded(f"C({n},{m}) = {comb(n, m)} subsets exceeds cap {cap}")
    succ = T.succ
    bit = [1 << succ[v] for v in range(n)]
    full = (1 << n) - 1
    count = 0
    found = []
    for combo in combinations(range(n), m):
        cur = 0
        for v in combo:
            cur |= 1 << v
        union = cur
        for _ in range(d - 1):
            nxt = 0
            c = cur
            while c:
                low = c & -c
                nxt |= bit[low.bit_length() - 1]
                c ^= low
            cur = nxt
            union |= cur
        if union == full:
            count += 1
            if witnesses:
                found.append(frozenset(v + 1 for v in combo))
    if not witnesses:
        return SplittingResult(count, "BruteForce")
    found.sort(key=sorted)
    return SplittingResult(count, "BruteForce", tuple(found))


# ---------------------------------------------------------------------------
# trees


def _tree_preds(tree: AttachedTree) -> dict:
    return {v: kids for v, kids in tree.children.items()}


def has_splitting_alone(tree: AttachedTree, d: int) -> bool:
    """Whether the tree, with its root sent to itself, has a d-splitting subset."""
    lab = _tree_root_label(tree.root, _tree_preds(tree), d)
    return lab is not None and lab == d - 1


def has_splitting_with_root(tree: AttachedTree, d: int) -> bool:
    """Whether the tree plus one extra node below its root has a d-splitting subset."""
    lab = _tree_root_label(tree.root, _tree_preds(tree), d)
    return lab is not None and (d == 1 or lab == d - 2)


def tree_unique_splitting(component: Component, d: int) -> frozenset[int] | None:
    """The unique d-splitting subset of a tree component, or None."""
    if component.cycle_len != 1:
        raise NotATree(f"component has a cycle of length {component.cycle_len}")
    _check_d(component.size, d)
    root = component.cycle[0]
    preds: dict = {root: tuple(t.root for t in component.attached_trees)}
    for t in component.attached_trees:
        preds.update(t.children)
    labels = {}
    top = d - 1
    tok = -1
    for t in component.attached_trees:
        if not _tree_labels(t.root, preds, d, labels):
            return None
        if labels[t.root] < top:
            if tok >= 0:
                return None
            tok = labels[t.root] + 1
    # the root's own self-loop forces its label to d-1
    if d > 1 and tok != top:
        return None
    labels[root] = top
    return frozenset(v for v, lab in labels.items() if lab == 0)
