from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import chain, cycle, rooted_trees, tree_endofunction
from splitcount import (
    CapExceeded,
    Endofunction,
    InputError,
    InvalidD,
    NotATree,
    decompose,
    enumerate_endofunctions,
    has_splitting_alone,
    has_splitting_with_root,
    is_splitting,
    parse_endofunction,
    sigma_bruteforce,
    sigma_fast,
    tree_unique_splitting,
)
from splitcount import splitting


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def maps_with_divisor(max_n=10):
    return st.integers(1, max_n).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(1, n), min_size=n, max_size=n),
            st.sampled_from(divisors(n)),
        )
    ).map(lambda p: (Endofunction(tuple(p[0])), p[1]))


def images(T, W, d):
    """W, TW, ..., T^(d-1)W as sets."""
    out = [set(W)]
    for _ in range(d - 1):
        out.append({T(v) for v in out[-1]})
    return out


def test_cycle_counts():
    for n in range(1, 9):
        for d in divisors(n):
            assert sigma_fast(cycle(n), d).sigma == d


def test_golden_witnesses():
    res = sigma_fast(cycle(6), 3, witnesses=True)
    assert res.witness_lists() == [[1, 4], [2, 5], [3, 6]]
    res = sigma_fast(parse_endofunction("2 3 4 5 6 2"), 3, witnesses=True)
    assert res.sigma == 1 and res.witness_lists() == [[1, 4]]
    assert sigma_fast(chain(6), 3, witnesses=True).witness_lists() == [[1, 4]]


def test_ten_node_example_has_no_2_split():
    # leaves 1 and 2 both map to 3, so both would have to lie in W
    T = parse_endofunction("3 3 4 6 6 10 10 9 10 4")
    assert sigma_fast(T, 2).sigma == 0
    assert sigma_bruteforce(T, 2).sigma == 0


def test_mixed_component_sizes():
    # a fixed point and a 3-cycle: n = 4 but no component has even size
    T = parse_endofunction("1 3 4 2")
    assert sigma_fast(T, 2).sigma == sigma_bruteforce(T, 2).sigma == 0


@settings(max_examples=150)
@given(maps_with_divisor(9))
def test_witnesses_match_bruteforce_and_cover_exactly(pair):
    T, d = pair
    fast = sigma_fast(T, d, witnesses=True)
    brute = sigma_bruteforce(T, d, witnesses=True)
    assert fast.sigma == brute.sigma == len(fast.witnesses)
    assert fast.witnesses == brute.witnesses
    for W in fast.witnesses:
        assert is_splitting(T, d, W)
        parts = images(T, W, d)
        assert sum(len(p) for p in parts) == T.n
        assert set().union(*parts) == set(range(1, T.n + 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_is_splitting_exhaustive(n):
    for T in enumerate_endofunctions(n):
        for d in divisors(n):
            count = sum(
                is_splitting(T, d, W) for W in combinations(range(1, n + 1), n // d)
            )
            assert count == sigma_fast(T, d).sigma


def test_is_splitting_validation():
    T = cycle(4)
    assert not is_splitting(T, 2, [1])
    assert is_splitting(T, 2, [1, 3])
    with pytest.raises(InputError):
        is_splitting(T, 2, [0, 1])
    with pytest.raises(InvalidD):
        sigma_fast(T, 3)
    with pytest.raises(InvalidD):
        sigma_fast(T, 0)


def test_bruteforce_cap(monkeypatch):
    with pytest.raises(CapExceeded):
        sigma_bruteforce(cycle(10), 2, cap=100)
    monkeypatch.setenv("SPLITCOUNT_CAP", "5")
    assert splitting.default_cap() == 5
    with pytest.raises(CapExceeded):
        sigma_bruteforce(cycle(4), 2)
    monkeypatch.setenv("SPLITCOUNT_CAP", "lots")
    with pytest.raises(InputError):
        splitting.default_cap()


# ---------------------------------------------------------------------------
# trees


def _alone_map(tree):
    """The subtree as its own endofunction, root sent to itself."""
    nodes = sorted(tree.children)
    pos = {v: i + 1 for i, v in enumerate(nodes)}
    image = [0] * len(nodes)
    image[pos[tree.root] - 1] = pos[tree.root]
    for v, kids in tree.children.items():
        for u in kids:
            image[pos[u] - 1] = pos[v]
    return Endofunction(tuple(image))


def _with_root_map(tree):
    """The subtree plus one extra fixed node below its root."""
    alone = _alone_map(tree)
    n = alone.n
    image = list(alone.image) + [n + 1]
    root = next(i for i, v in enumerate(alone.image, start=1) if v == i)
    image[root - 1] = n + 1
    return Endofunction(tuple(image))


def _subtrees(T):
    (comp,) = decompose(T).components
    return comp.attached_trees


def _brute_positive(T, d):
    return T.n % d == 0 and sigma_bruteforce(T, d).sigma > 0


@pytest.mark.parametrize("n", range(2, 11))
def test_tree_splitting_criterion(n):
    """A rooted tree splits iff exactly one subtree splits together with the
    root and every other subtree splits alone."""
    for tree in rooted_trees(n):
        T = tree_endofunction(tree)
        subs = _subtrees(T)
        for d in divisors(n):
            if d < 2:
                continue
            with_root = [has_splitting_with_root(s, d) for s in subs]
            alone = [has_splitting_alone(s, d) for s in subs]
            predicted = sum(with_root) == 1 and all(
                a for a, w in zip(alone, with_root) if not w)
            assert predicted == _brute_positive(T, d), (T.image, d)


@pytest.mark.parametrize("n", range(1, 9))
def test_subtree_predicates_match_bruteforce(n):
    for tree in rooted_trees(n):
        for sub in _subtrees(tree_endofunction(tree)):
            for d in range(2, 5):
                assert has_splitting_alone(sub, d) == _brute_positive(_alone_map(sub), d)
                assert has_splitting_with_root(sub, d) == _brute_positive(
                    _with_root_map(sub), d)


@pytest.mark.parametrize("n", range(1, 10))
def test_tree_unique_splitting(n):
    for tree in rooted_trees(n):
        T = tree_endofunction(tree)
        (comp,) = decompose(T).components
        for d in divisors(n):
            brute = sigma_bruteforce(T, d, witnesses=True)
            assert brute.sigma in (0, 1)
            got = tree_unique_splitting(comp, d)
            if brute.sigma:
                assert got == brute.witnesses[0]
            else:
                assert got is None


def test_tree_unique_splitting_errors():
    (comp,) = decompose(cycle(4)).components
    with pytest.raises(NotATree):
        tree_unique_splitting(comp, 2)
    (comp,) = decompose(chain(3)).components
    with pytest.raises(InvalidD):
        tree_unique_splitting(comp, 2)
