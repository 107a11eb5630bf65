"""Small exact examples, one per operation."""

from __future__ import annotations

from helpers import chain, cycle
from splitcount import (
    MultiPoly,
    UniPoly,
    as_integer,
    complete_homogeneous,
    cyclotomic_polynomial,
    decompose,
    eval_at_roots,
    flag_count_bruteforce,
    flag_gf,
    gaussian_binomial,
    has_splitting_with_root,
    invariant_gf,
    invariant_subsets_bruteforce,
    is_splitting,
    parse_endofunction,
    root_power,
    sigma_bruteforce,
    sigma_fast,
    tree_unique_splitting,
)

T1 = UniPoly((0, 1))
CHAINS_TREE = parse_endofunction("2 4 4 8 6 7 8 9 9")
TEN = parse_endofunction("3 3 4 6 6 10 10 9 10 4")


def _subtree(T, root):
    (comp,) = decompose(T).components
    (sub,) = [s for s in comp.attached_trees if s.root == root]
    return sub


def test_multipoly_examples():
    t1, t2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    assert t1 * t2 == MultiPoly(2, {(1, 1): 1})
    assert (t1 + t2) * (t1 + t2) == t1**2 + 2 * t1 * t2 + t2**2
    assert (t2**3).scale_shift(1, 5) == MultiPoly(2, {(5, 3): 1})
    assert complete_homogeneous(2, [1, 2]) == t1**2 + t1 * t2 + t2**2
    assert complete_homogeneous(4, [1, 2, 3]) == flag_gf(chain(4), 3)


def test_unipoly_examples():
    assert (1 + T1) * (1 + T1) == 1 + 2 * T1 + T1**2
    assert gaussian_binomial(1, 1) == 1 + T1
    assert cyclotomic_polynomial(1) == T1 - 1


def test_root_examples():
    z = root_power(3, 1)
    assert root_power(2, 1) == -1
    assert root_power(2, 2) == 1
    assert z + z**2 + z**3 == 0
    assert (2 + z) * 1 == 2 + z
    n = 6
    assert as_integer(z**n + z**(2 * n) + z**(3 * n)) == 3
    quartic = MultiPoly(4, {(4, 0, 0, 0): 1, (0, 4, 0, 0): 1, (0, 0, 4, 0): 1, (0, 0, 0, 4): 1})
    assert eval_at_roots(quartic, 4) == 4 == as_integer(eval_at_roots(flag_gf(cycle(4), 4), 4))
    assert eval_at_roots(complete_homogeneous(6, [1, 2, 3]), 3) == 1


def test_is_splitting_examples():
    T = parse_endofunction("2 3 4 5 6 2")
    assert is_splitting(T, 3, {1, 4})
    assert is_splitting(cycle(6), 2, {1, 3, 5})
    assert is_splitting(T, 1, range(1, 7))


def test_tree_unique_splitting_examples():
    (comp,) = decompose(chain(2)).components
    assert tree_unique_splitting(comp, 2) == {1}
    (comp,) = decompose(chain(6)).components
    assert tree_unique_splitting(comp, 3) == {1, 4}
    (comp,) = decompose(parse_endofunction("3 3 4 4")).components
    assert tree_unique_splitting(comp, 2) is None


def test_has_splitting_with_root_examples():
    assert has_splitting_with_root(_subtree(chain(2), 1), 2)
    assert not has_splitting_with_root(_subtree(chain(3), 2), 2)
    assert not has_splitting_with_root(_subtree(parse_endofunction("3 3 4 4"), 3), 2)


def test_chains_tree_on_nine():
    for d in (1, 2, 3):
        assert flag_gf(CHAINS_TREE, d) == flag_count_bruteforce(CHAINS_TREE, d)
    for d in (1, 3, 9):
        assert sigma_fast(CHAINS_TREE, d).sigma == sigma_bruteforce(CHAINS_TREE, d).sigma
    assert invariant_gf(CHAINS_TREE) == invariant_subsets_bruteforce(CHAINS_TREE)


def test_ten_node_map_gf():
    assert invariant_gf(TEN) == invariant_subsets_bruteforce(TEN)
    assert flag_gf(TEN, 2) == flag_count_bruteforce(TEN, 2)


def test_identity_on_one():
    T = parse_endofunction("1")
    assert invariant_gf(T) == 1 + T1
    assert sigma_fast(T, 1).sigma == 1
