from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import chain, cycle, rooted_trees, tree_endofunction
from splitcount import (
    CapExceeded,
    Endofunction,
    InvalidD,
    MultiPoly,
    UniPoly,
    complete_homogeneous,
    decompose,
    enumerate_endofunctions,
    eval_at_roots,
    flag_count_bruteforce,
    flag_gf,
    flag_gf_at_roots,
    flag_gf_tree,
    invariant_gf,
    invariant_gf_value,
    invariant_subsets_bruteforce,
    parse_endofunction,
)

T = UniPoly((0, 1))


def maps(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n)
    ).map(lambda img: Endofunction(tuple(img)))


def test_invariant_examples():
    assert invariant_gf(chain(4)).to_text() == "1 + t + t^2 + t^3 + t^4"
    assert invariant_gf(parse_endofunction("2 3 4 5 6 2")).to_text() == "1 + t^5 + t^6"
    assert invariant_gf(cycle(6)) == 1 + T**6
    assert invariant_gf(parse_endofunction("1 2")) == (1 + T) ** 2


def test_flag_examples():
    t = [MultiPoly.var(3, i) for i in (1, 2, 3)]
    assert flag_gf(cycle(4), 3) == t[0] ** 4 + t[1] ** 4 + t[2] ** 4
    assert flag_gf(parse_endofunction("2 3 4 5 6 2"), 3).to_text() == (
        "t1^6 + t1^5*t2 + t1^5*t3 + t2^6 + t2^5*t3 + t3^6")
    assert flag_gf(chain(3), 1).to_text() == "t1^3"


@pytest.mark.parametrize("k", range(1, 8))
@pytest.mark.parametrize("d", range(1, 5))
def test_chain_is_complete_homogeneous(k, d):
    assert flag_gf(chain(k), d) == complete_homogeneous(k, range(1, d + 1), d=d)


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("d", range(1, 5))
def test_cycle_is_power_sum(n, d):
    expected = MultiPoly.zero(d)
    for i in range(1, d + 1):
        expected = expected + MultiPoly.var(d, i, n)
    assert flag_gf(cycle(n), d) == expected


@settings(max_examples=80)
@given(maps(10))
def test_invariant_matches_bruteforce(T):
    assert invariant_gf(T) == invariant_subsets_bruteforce(T)


@settings(max_examples=80)
@given(maps(8), st.integers(1, 4))
def test_flag_matches_bruteforce(T, d):
    assert flag_gf(T, d) == flag_count_bruteforce(T, d)


@given(maps(8), st.integers(1, 4))
def test_flag_homogeneous_of_degree_n(T, d):
    assert flag_gf(T, d).total_degrees() == {T.n}


@given(maps(8))
def test_two_flags_specialize_to_invariant_gf(T):
    g = flag_gf(T, 2)
    assert g.to_univariate([1, 0]) == invariant_gf(T)
    assert g.evaluate([1, 1]) == invariant_gf(T).eval_int(1)


@given(maps(8), st.integers(-3, 3))
def test_invariant_value(T, x):
    assert invariant_gf_value(T, x) == invariant_gf(T).eval_int(x)


@given(maps(7), st.integers(1, 4))
def test_all_ones_counts_multichains(T, d):
    # d-flags with all sizes free: evaluating at 1 counts chains in the lattice
    assert flag_gf(T, d).evaluate([1] * d) == flag_count_bruteforce(T, d).evaluate([1] * d)
    if d == 2:
        assert flag_gf(T, d).evaluate([1, 1]) == invariant_gf(T).eval_int(1)


@pytest.mark.parametrize("n", range(1, 6))
def test_root_evaluation_fast_path_exhaustive(n):
    for S in enumerate_endofunctions(n):
        for d in range(1, n + 1):
            if n % d == 0:
                assert flag_gf_at_roots(S, d) == eval_at_roots(flag_gf(S, d), d)


@settings(max_examples=60)
@given(maps(9), st.integers(1, 6))
def test_root_evaluation_fast_path_random(T, d):
    assert flag_gf_at_roots(T, d) == eval_at_roots(flag_gf(T, d), d)


@pytest.mark.parametrize("n", range(2, 9))
def test_subtree_flag_gf_degrees(n):
    for tree in rooted_trees(n):
        (comp,) = decompose(tree_endofunction(tree)).components
        for d in range(1, 4):
            for sub in comp.attached_trees:
                for l in range(1, d + 1):
                    g = flag_gf_tree(sub, l, d)
                    assert g.total_degrees() == {sub.size}


def test_flag_gf_tree_single_node():
    (comp,) = decompose(chain(2)).components
    (sub,) = comp.attached_trees
    assert flag_gf_tree(sub, 2, 3).to_text() == "t2 + t3"
    with pytest.raises(InvalidD):
        flag_gf_tree(sub, 4, 3)


def test_caps_and_errors():
    with pytest.raises(CapExceeded):
        invariant_subsets_bruteforce(cycle(21))
    with pytest.raises(CapExceeded):
        flag_count_bruteforce(cycle(13), 2)
    with pytest.raises(InvalidD):
        flag_gf(cycle(3), 0)
