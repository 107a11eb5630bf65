"""Endofunctions on [n] and their functional-graph structure.

All public interfaces are 1-indexed: ``Endofunction((2, 3, 4, 4))`` is the
chain 1 -> 2 -> 3 -> 4 -> 4.  Internally the algorithms work on the
0-based successor tuple ``T.succ``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .errors import (
    EmptyInput,
    ImageOutOfRange,
    InputError,
    InvalidD,
    NonIntegerToken,
    OverflowGuard,
)

__all__ = [
    "Endofunction",
    "AttachedTree",
    "Component",
    "FunctionalGraph",
    "Tag",
    "StructureClass",
    "parse_endofunction",
    "decompose",
    "classify",
    "enumerate_endofunctions",
    "endofunction_at",
    "endofunction_index",
    "random_endofunction",
    "INDEX_LIMIT",
]

# Largest n^n accepted by the enumerator; indices must fit a signed 64-bit int.
INDEX_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class Endofunction:
    """A total map [n] -> [n] given by its 1-indexed image sequence."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if not image:
            raise EmptyInput()
        n = len(image)
        for pos, v in enumerate(image, start=1):
            if isinstance(v, bool) or not isinstance(v, int):
                raise NonIntegerToken(pos, v)
            if not 1 <= v <= n:
                raise ImageOutOfRange(pos, v)
        object.__setattr__(self, "image", image)

    @classmethod
    def _trusted(cls, image: tuple[int, ...]) -> "Endofunction":
        obj = object.__new__(cls)
        object.__setattr__(obj, "image", image)
        return obj

    @classmethod
    def from_succ(cls, succ: Sequence[int]) -> "Endofunction":
        """Build from a 0-based successor list."""
        return cls(tuple(v + 1 for v in succ))

    @property
    def n(self) -> int:
        return len(self.image)

    @cached_property
    def succ(self) -> tuple[int, ...]:
        return tuple(v - 1 for v in self.image)

    @cached_property
    def _shape(self):
        return _shape(self.succ)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def relabel(self, perm: Sequence[int]) -> "Endofunction":
        """Conjugate by the relabeling i -> perm[i-1] (1-indexed)."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise InputError("relabeling must be a permutation of 1..n")
        new = [0] * self.n
        for i, v in enumerate(self.image, start=1):
            new[perm[i - 1] - 1] = perm[v - 1]
        return Endofunction(tuple(new))

    def __str__(self):
        return " ".join(map(str, self.image))


def parse_endofunction(text: str) -> Endofunction:
    tokens = text.split()
    if not tokens:
        raise EmptyInput()
    image = []
    for pos, tok in enumerate(tokens, start=1):
        try:
            image.append(int(tok))
        except ValueError:
            raise NonIntegerToken(pos, tok) from None
    return Endofunction(tuple(image))


# ---------------------------------------------------------------------------
# decomposition


def _shape(succ: Sequence[int]):
    """Cycles, predecessor lists and cycle membership for a 0-based map.

    Cycles come out in order of their component's smallest node, each
    rotated to start at its smallest node.  Predecessor lists are sorted.
    """
    n = len(succ)
    preds: list[list[int]] = [[] for _ in range(n)]
    for v, w in enumerate(succ):
        preds[w].append(v)
    state = bytearray(n)  # 0 unseen, 1 on current walk, 2 settled
    on_cycle = bytearray(n)
    cycles = []
    for s in range(n):
        if state[s]:
            continue
        path = []
        v = s
        while not state[v]:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:
            cyc = path[path.index(v):]
            k = cyc.index(min(cyc))
            cyc = cyc[k:] + cyc[:k]
            for c in cyc:
                on_cycle[c] = 1
            cycles.append(cyc)
        for u in path:
            state[u] = 2
    return cycles, preds, on_cycle


def _tree_order(root: int, preds) -> list[int]:
    """Breadth-first listing of the tree hanging at ``root``."""
    order = [root]
    i = 0
    while i < len(order):
        order.extend(preds[order[i]])
        i += 1
    return order


@dataclass(frozen=True)
class AttachedTree:
    """A maximal tree hanging off a cycle node.

    ``children`` maps every tree node to its sorted preimages; leaves map
    to ``()``.
    """

    root: int
    anchor: int
    children: Mapping[int, tuple[int, ...]] = field(hash=False)
    size: int

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.children))

    def is_chain(self) -> bool:
        return all(len(c) <= 1 for c in self.children.values())


@dataclass(frozen=True)
class Component:
    cycle: tuple[int, ...]
    attached_trees: tuple[AttachedTree, ...]

    @property
    def cycle_len(self) -> int:
        return len(self.cycle)

    @property
    def size(self) -> int:
        return self.cycle_len + sum(t.size for t in self.attached_trees)

    @property
    def nodes(self) -> tuple[int, ...]:
        out = list(self.cycle)
        for t in self.attached_trees:
            out.extend(t.children)
        return tuple(sorted(out))

    def image_map(self) -> dict[int, int]:
        """T restricted to this component, as node -> image."""
        m = {}
        r = self.cycle_len
        for j, c in enumerate(self.cycle):
            m[c] = self.cycle[(j + 1) % r]
        for t in self.attached_trees:
            m[t.root] = t.anchor
            for v, kids in t.children.items():
                for u in kids:
                    m[u] = v
        return m


@dataclass(frozen=True)
class FunctionalGraph:
    components: tuple[Component, ...]
    node_to_component: Mapping[int, int] = field(hash=False)

    def summary(self) -> list[dict]:
        out = []
        for comp in self.components:
            out.append({
                "cycle": list(comp.cycle),
                "cycle_len": comp.cycle_len,
                "size": comp.size,
                "attached_trees": [
                    {"root": t.root, "anchor": t.anchor, "size": t.size,
                     "nodes": list(t.nodes)}
                    for t in comp.attached_trees
                ],
            })
        return out


def decompose(T: Endofunction) -> FunctionalGraph:
    cycles, preds, on_cycle = T._shape
    components = []
    node_to_component = {}
    for cid, cyc in enumerate(cycles):
        trees = []
        for c in cyc:
            for root in preds[c]:
                if on_cycle[root]:
                    continue
                order = _tree_order(root, preds)
                children = {v + 1: tuple(u + 1 for u in preds[v]) for v in sorted(order)}
                trees.append(AttachedTree(root + 1, c + 1, children, len(order)))
        comp = Component(tuple(c + 1 for c in cyc), tuple(trees))
        for v in comp.nodes:
            node_to_component[v] = cid
        components.append(comp)
    return FunctionalGraph(tuple(components), node_to_component)


# ---------------------------------------------------------------------------
# classification


class Tag(str, Enum):
    CHAIN = "Chain"
    CYCLE = "Cycle"
    TREE = "Tree"
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    PRODUCT = "ProductOfTypes"
    OTHER = "Other"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class StructureClass:
    tag: Tag
    d: int
    detail: Mapping = field(default_factory=dict, hash=False)

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "d": self.d, "detail": dict(self.detail)}


def _component_shape(cyc, preds, on_cycle) -> str:
    roots = [u for c in cyc for u in preds[c] if not on_cycle[u]]
    if len(cyc) == 1:
        if len(roots) <= 1 and all(
            len(preds[v]) <= 1 for root in roots for v in _tree_order(root, preds)
        ):
            return "Chain"
        return "Tree"
    if not roots:
        return "Cycle"
    return "Rho"


def _component_type(cyc, preds, on_cycle, d):
    """Return ("Type1"|"Type2"|None, detail) for one component."""
    from .splitting import _tree_root_label

    r = len(cyc)
    alone, with_anchor = [], []
    for c in cyc:
        for root in preds[c]:
            if on_cycle[root]:
                continue
            lab = _tree_root_label(root, preds, d)
            a = lab is not None and lab == d - 1
            w = lab is not None and (d == 1 or lab == d - 2)
            alone.append(a)
            with_anchor.append((root, w and not a))
    if r % d == 0 and r >= d and all(alone):
        return "Type1", {}
    if r % d == 1 % d:
        consuming = [root for root, ok in with_anchor if ok]
        others_ok = sum(1 for a in alone if not a) == 1
        if len(consuming) == 1 and others_ok:
            return "Type2", {"anchor_consuming_root": consuming[0] + 1}
    return None, {}


def classify(T: Endofunction, d: int) -> StructureClass:
    """Most specific structural tag of ``T`` relative to ``d``.

    Connected maps are tagged Chain or Tree by shape first (trees are
    components whose cycle is a fixed point), then Type1/Type2, then Cycle.
    A cycle whose length d divides is reported as Type1 with
    ``detail["shape"] == "Cycle"``.  Disconnected maps are ProductOfTypes
    when every component is Type1 or Type2, else Other.
    """
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InvalidD(f"d must be a positive integer, got {d!r}")
    cycles, preds, on_cycle = T._shape
    per = []
    for cyc in cycles:
        shape = _component_shape(cyc, preds, on_cycle)
        typ, info = _component_type(cyc, preds, on_cycle, d)
        per.append((shape, typ, info))
    comp_detail = [
        {"shape": s, "type": t, **info} for s, t, info in per
    ]
    if len(per) == 1:
        shape, typ, info = per[0]
        detail = {"shape": shape, **info}
        if shape == "Chain":
            return StructureClass(Tag.CHAIN, d, detail)
        if shape == "Tree":
            return StructureClass(Tag.TREE, d, detail)
        if typ == "Type1":
            return StructureClass(Tag.TYPE1, d, detail)
        if typ == "Type2":
            return StructureClass(Tag.TYPE2, d, detail)
        if shape == "Cycle":
            return StructureClass(Tag.CYCLE, d, detail)
        return StructureClass(Tag.OTHER, d, detail)
    detail = {"shape": "Disconnected", "components": comp_detail}
    if all(t is not None for _, t, _ in per):
        return StructureClass(Tag.PRODUCT, d, detail)
    return StructureClass(Tag.OTHER, d, detail)


# ---------------------------------------------------------------------------
# enumeration and sampling


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")


def _check_count(n: int, limit: int) -> int:
    _check_n(n)
    total = n**n
    if total > limit:
        raise OverflowGuard(f"{n}^{n} = {total} exceeds index limit {limit}")
    return total


def endofunction_at(n: int, index: int) -> Endofunction:
    """The ``index``-th map in lexicographic order of image sequences."""
    total = _check_count(n, INDEX_LIMIT)
    if not 0 <= index < total:
        raise InputError(f"index {index} outside [0, {total})")
    digits = [0] * n
    for pos in range(n - 1, -1, -1):
        index, digits[pos] = divmod(index, n)
    return Endofunction._trusted(tuple(x + 1 for x in digits))


def endofunction_index(T: Endofunction) -> int:
    idx = 0
    for v in T.image:
        idx = idx * T.n + (v - 1)
    return idx


def enumerate_endofunctions(
    n: int, start: int = 0, stop: int | None = None, limit: int = INDEX_LIMIT
) -> Iterator[Endofunction]:
    """Yield the maps with lexicographic indices in ``[start, stop)``.

    The default range covers all ``n**n`` maps; contiguous sub-ranges are
    the shards used by parallel sweeps.
    """
    total = _check_count(n, limit)
    if stop is None:
        stop = total
    if not 0 <= start <= stop <= total:
        raise InputError(f"shard [{start}, {stop}) outside [0, {total})")
    if start == stop:
        return
    digits = list(endofunction_at(n, start).image)
    trusted = Endofunction._trusted
    for _ in range(stop - start):
        yield trusted(tuple(digits))
        pos = n - 1
        while pos >= 0:
            if digits[pos] < n:
                digits[pos] += 1
                break
            digits[pos] = 1
            pos -= 1


def random_endofunction(n: int, seed: int) -> Endofunction:
    """Uniform random map from a fixed seed.

    The generator is CPython's MT19937 (:class:`random.Random`) seeded with
    the integer ``seed``; each image is ``randrange(n) + 1`` drawn in
    position order.
    """
    _check_n(n)
    rng = random.Random(seed)
    return Endofunction._trusted(tuple(rng.randrange(n) + 1 for _ in range(n)))


def random_endofunctions(n: int, count: int, seed: int) -> Iterator[Endofunction]:
    """``count`` maps drawn from one MT19937 stream seeded with ``seed``."""
    _check_n(n)
    rng = random.Random(seed)
    for _ in range(count):
        yield Endofunction._trusted(tuple(rng.randrange(n) + 1 for _ in range(n)))
