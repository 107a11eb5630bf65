from __future__ import annotations

import pytest

from splitcount import _accel, enumerate_endofunctions, exhaustive_verify, invariant_gf, sigma_fast

pytestmark = pytest.mark.skipif(not _accel.AVAILABLE, reason="numba not installed")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_kernel_matches_python_per_map(n):
    values = _accel.d2_values(n, 0, n**n)
    for T, (sigma, value) in zip(enumerate_endofunctions(n), values):
        expected_sigma = sigma_fast(T, 2).sigma if n % 2 == 0 else None
        if expected_sigma is not None:
            assert sigma == expected_sigma, T.image
        assert value == invariant_gf(T).eval_int(-1), T.image


def test_kernel_shard_start():
    full = _accel.d2_values(6, 0, 6**6)
    assert _accel.d2_values(6, 1234, 2000) == full[1234:2000]


@pytest.mark.parametrize("n", [2, 4, 6])
def test_kernel_report_matches_python_report(n):
    fast = exhaustive_verify(n, 2, suite="d2", accel=True).to_json(timing=False)
    slow = exhaustive_verify(n, 2, suite="d2", accel=False).to_json(timing=False)
    assert fast == slow


def test_kernel_counterexample_path(monkeypatch):
    # make every applicable map "fail" by lying about g_T(-1)
    real = _accel._d2_kernel

    def lying(n, start, stop, max_fail, fail_idx):
        applicable, _ = real(n, start, stop, max_fail, fail_idx)
        for i in range(min(applicable, max_fail)):
            fail_idx[i] = start + i
        return applicable, applicable

    monkeypatch.setattr(_accel, "_d2_kernel", lying)
    r = exhaustive_verify(4, 2, suite="d2", accel=True, max_counterexamples=3)
    assert r.tallies["D2_MAIN"]["failed"] == r.tallies["D2_MAIN"]["applicable"]
    assert len(r.counterexamples) == 3 and r.truncated
    assert [c["index"] for c in r.counterexamples] == [0, 1, 2]
