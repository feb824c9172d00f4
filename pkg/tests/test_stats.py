"""Signed-rank test and mean-rank tables against independent oracles."""

import numpy as np
import pytest

from oracles import wilcoxon_enumerated
from sinepath.stats import (
    RankTable,
    friedman_mean_ranks,
    wilcoxon_signed_rank,
)


def test_wilcoxon_matches_enumeration_small_n():
    rng = np.random.default_rng(91)
    for trial in range(60):
        n = int(rng.integers(5, 11))
        a = rng.normal(10.0, 2.0, size=n)
        b = a + rng.normal(0.0, 1.5, size=n)
        got = wilcoxon_signed_rank(a, b)
        w_plus, w_minus, n_eff, p_ref = wilcoxon_enumerated(a, b)
        assert got.w_plus == pytest.approx(w_plus, abs=1e-12)
        assert got.w_minus == pytest.approx(w_minus, abs=1e-12)
        assert got.n_effective == int(n_eff)
        assert got.p_value == pytest.approx(p_ref, abs=1e-12)


def test_wilcoxon_with_tied_magnitudes():
    # repeated |difference| values force average ranks
    a = np.array([10.0, 10.0, 10.0, 10.0, 10.0, 10.0])
    b = np.array([11.0, 9.0, 11.0, 12.0, 8.0, 12.0])
    got = wilcoxon_signed_rank(a, b)
    _, _, _, p_ref = wilcoxon_enumerated(a, b)
    assert got.p_value == pytest.approx(p_ref, abs=1e-12)
    assert got.w_plus + got.w_minus == pytest.approx(21.0)  # 6*7/2


def test_wilcoxon_identical_samples():
    a = np.array([3.0, 4.0, 5.0, 6.0, 7.0])
    res = wilcoxon_signed_rank(a, a.copy())
    assert res.verdict == "equal"
    assert res.p_value == 1.0
    assert res.n_effective == 0
    assert res.statistic == 0.0


def test_wilcoxon_preconditions():
    with pytest.raises(ValueError, match="at least 5"):
        wilcoxon_signed_rank([1.0] * 4, [2.0] * 4)
    with pytest.raises(ValueError, match="equally long"):
        wilcoxon_signed_rank([1.0] * 6, [2.0] * 5)


def test_wilcoxon_strict_dominance_20_pairs():
    rng = np.random.default_rng(92)
    b = rng.uniform(50.0, 100.0, size=20)
    a = b - rng.uniform(1.0, 5.0, size=20)  # a strictly lower everywhere
    res = wilcoxon_signed_rank(a, b)
    assert res.w_plus == 0.0
    # doubled lower tail of W+ = 0 over 2^20 equally likely sign vectors
    assert res.p_value == pytest.approx(2.0 / 2.0**20, rel=1e-12)
    assert res.p_value < 0.05
    assert res.verdict == "better"
    flipped = wilcoxon_signed_rank(b, a)
    assert flipped.verdict == "worse"
    assert flipped.p_value == res.p_value


def test_wilcoxon_normal_approximation_branch():
    rng = np.random.default_rng(93)
    b = rng.uniform(50.0, 100.0, size=30)
    a = b - rng.uniform(1.0, 5.0, size=30)
    res = wilcoxon_signed_rank(a, b)  # n=30 > exact limit
    assert res.verdict == "better"
    assert 0.0 < res.p_value < 1e-4

    # near the exact/approx boundary the two branches should agree closely
    b24 = rng.uniform(50.0, 100.0, size=24)
    a24 = b24 + rng.normal(0.0, 3.0, size=24)
    exact = wilcoxon_signed_rank(a24, b24)
    from sinepath.stats import _normal_two_sided_p
    from scipy.stats import rankdata

    diff = a24 - b24
    diff = diff[diff != 0]
    ranks = rankdata(np.abs(diff))
    w_min = min(ranks[diff > 0].sum(), ranks[diff < 0].sum())
    approx = _normal_two_sided_p(ranks, w_min)
    assert approx == pytest.approx(exact.p_value, rel=0.2)


def test_friedman_always_best():
    means = {
        f"inst{i}": {"a": 1.0, "b": 2.0 + i, "c": 3.0 + i} for i in range(10)
    }
    table = friedman_mean_ranks(means)
    assert table.mean_ranks["a"] == 1.0
    assert table.ordering() == ("a", "b", "c")


def test_friedman_ties_average():
    means = {"i1": {"a": 5.0, "b": 5.0}, "i2": {"a": 7.0, "b": 7.0}}
    table = friedman_mean_ranks(means)
    assert table.mean_ranks == {"a": 1.5, "b": 1.5}
    assert table.ordering() == ("a", "b")  # tie broken by name


def test_friedman_rank_sums():
    rng = np.random.default_rng(94)
    for _ in range(20):
        n_alg = int(rng.integers(2, 6))
        algs = [f"alg{k}" for k in range(n_alg)]
        means = {
            f"inst{i}": {a: float(rng.uniform(1, 10)) for a in algs}
            for i in range(int(rng.integers(2, 8)))
        }
        table = friedman_mean_ranks(means)
        expected_sum = n_alg * (n_alg + 1) / 2
        for ranks in table.per_instance.values():
            assert sum(ranks.values()) == pytest.approx(expected_sum, abs=1e-12)
        for a in algs:
            assert 1.0 <= table.mean_ranks[a] <= n_alg


def test_friedman_incomplete_instance_skipped():
    means = {
        "full1": {"a": 1.0, "b": 2.0},
        "full2": {"a": 2.0, "b": 1.0},
        "partial": {"a": 1.0},
    }
    with pytest.warns(UserWarning, match="partial"):
        table = friedman_mean_ranks(means)
    assert set(table.per_instance) == {"full1", "full2"}
    assert table.mean_ranks == {"a": 1.5, "b": 1.5}


def test_friedman_preconditions():
    with pytest.raises(ValueError, match="2 algorithms"):
        friedman_mean_ranks({"i1": {"a": 1.0}, "i2": {"a": 2.0}})
    with pytest.raises(ValueError, match="2 complete instances"):
        friedman_mean_ranks({"i1": {"a": 1.0, "b": 2.0}})


def test_rank_table_ordering():
    table = RankTable(
        algorithms=("x", "y", "z"),
        mean_ranks={"x": 2.0, "y": 1.2, "z": 2.8},
        per_instance={},
    )
    assert table.ordering() == ("y", "x", "z")
