"""Shared builders for tests: cycles, chains and all rooted trees."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from splitcount import Endofunction


def cycle(n: int) -> Endofunction:
    return Endofunction(tuple(list(range(2, n + 1)) + [1]))


def chain(n: int) -> Endofunction:
    """1 -> 2 -> ... -> n -> n."""
    return Endofunction(tuple(list(range(2, n + 1)) + [n]))


@lru_cache(maxsize=None)
def rooted_trees(n: int) -> tuple[tuple, ...]:
    """Every unlabeled rooted tree on n nodes, as nested tuples of children.

    A tree is the sorted tuple of its subtrees, so each isomorphism class
    appears exactly once.
    """
    if n == 1:
        return ((),)
    out = set()

    def build(remaining: int, max_size: int, prefix: tuple):
        if remaining == 0:
            out.add(tuple(sorted(prefix)))
            return
        for size in range(min(remaining, max_size), 0, -1):
            for count in range(1, remaining // size + 1):
                for combo in combinations_with_replacement(rooted_trees(size), count):
                    build(remaining - size * count, size - 1, prefix + combo)

    build(n - 1, n - 1, ())
    return tuple(sorted(out))


def tree_endofunction(tree: tuple) -> Endofunction:
    """Label a nested-tuple tree in BFS order; the root (node n) is fixed."""
    parents = []
    queue = [(tree, None)]
    i = 0
    while i < len(queue):
        node, parent = queue[i]
        for child in node:
            queue.append((child, i))
        parents.append(parent)
        i += 1
    n = len(parents)
    # BFS index k becomes node n - k, so the root is n
    image = [0] * n
    for k, p in enumerate(parents):
        image[n - k - 1] = n if p is None else n - p
    return Endofunction(tuple(image))
