import itertools
import math

import numpy as np
import pytest
import scipy.stats as sps
from hypothesis import given, settings
from hypothesis import strategies as st

from antnest import reference, stats
from antnest.stats import UndefinedTestError

from tables import TABLE6, TABLE7, TABLE8, TABLE9, TABLE10


# --- describe -----------------------------------------------------------------

def test_describe_examples():
    assert stats.describe([1.0, 2.0, 3.0]) == (2.0, 1.0)
    m, s = stats.describe([2, 4, 4, 4, 5, 5, 7, 9])
    assert m == 5.0
    assert s == pytest.approx(math.sqrt(32 / 7))


def test_describe_single_value_has_no_std():
    with pytest.raises(UndefinedTestError):
        stats.describe([1.0])


def test_describe_rejects_nonfinite():
    with pytest.raises(ValueError):
        stats.mean([1.0, float("nan")])


def test_describe_matches_compensated_oracle():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(10**4) * 10.0 ** rng.integers(-8, 9, 10**4)
    m = math.fsum(x.tolist()) / x.size
    v = math.fsum((xi - m) ** 2 for xi in x.tolist()) / (x.size - 1)
    got_m, got_s = stats.describe(x)
    assert got_m == pytest.approx(m, rel=1e-12)
    assert got_s == pytest.approx(math.sqrt(v), rel=1e-12)


def test_a5_f9_mean_against_table3():
    # The per-run F9 column averages to 24.995 while the summary table prints 25.462.
    a5 = reference.a5_finals()
    assert stats.mean(a5["F9_ANA"]) == pytest.approx(25.4622, abs=1e-3)


# --- ranking ------------------------------------------------------------------

def _table3_ranks():
    algs, functions, means = reference.means_table("table3_means.csv")
    return stats.rank(means, algs, functions)


def test_rank_reproduces_table6():
    t = _table3_ranks()
    for f, row in zip(t.functions, t.ranks):
        assert row.tolist() == TABLE6[f], f


def test_rank_counts_reproduce_table7():
    assert np.array_equal(_table3_ranks().place_counts().T, TABLE7)


def test_rank_group_averages_reproduce_table10():
    t = _table3_ranks()
    totals = t.group_totals()
    for kind, (total, avg) in TABLE10.items():
        assert totals[kind][0][0] == total
        assert t.group_averages()[kind][0] == pytest.approx(avg, abs=1e-12)


def test_rank_reproduces_tables8_and_9():
    algs, functions, means = reference.means_table("table4_means.csv")
    t = stats.rank(means, algs, functions)
    for f, row in zip(t.functions, t.ranks):
        assert row.tolist() == TABLE8[f], f
    assert np.array_equal(t.place_counts().T, TABLE9)


def test_rank_ties_share_lowest_rank():
    t = stats.rank([[1.0, 1.0, 0.5]], ["a", "b", "c"], ["F1"])
    assert t.ranks.tolist() == [[2, 2, 1]]


def test_rank_missing_mean_names_cell():
    with pytest.raises(ValueError, match="b on F2"):
        stats.rank([[1.0, 2.0], [1.0, np.nan]], ["a", "b"], ["F1", "F2"])


def test_rank_counts_sum_to_function_count():
    rng = np.random.default_rng(4)
    m = rng.integers(0, 5, (20, 6)).astype(float)
    t = stats.rank(m, list("abcdef"), [f"F{i}" for i in range(20)])
    assert np.all(t.place_counts().sum(axis=1) == 20)
    assert np.all(t.ranks.min(axis=1) == 1)


def test_function_type():
    assert stats.function_type("F7") == "unimodal"
    assert stats.function_type("F12") == "multimodal"
    assert stats.function_type("CF2") == "composite"
    assert stats.function_type("F6") is None


# --- t-tests ------------------------------------------------------------------

def _student_oracle(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    na, nb = len(a), len(b)
    sp = (((a - a.mean()) ** 2).sum() + ((b - b.mean()) ** 2).sum()) / (na + nb - 2)
    t = (a.mean() - b.mean()) / math.sqrt(sp * (1 / na + 1 / nb))
    return 2 * sps.t.sf(abs(t), na + nb - 2)


def test_student_identical_samples():
    assert stats.student_t([1, 2, 3], [1, 2, 3]) == 1.0


def test_student_textbook_example():
    p = stats.student_t([1, 2, 3, 4, 5], [2, 3, 4, 5, 6])
    assert p == pytest.approx(_student_oracle([1, 2, 3, 4, 5], [2, 3, 4, 5, 6]), rel=1e-12)
    assert p == pytest.approx(0.3465935070873343, rel=1e-12)


def test_student_zero_pooled_variance():
    with pytest.raises(UndefinedTestError):
        stats.student_t([1.0, 1.0], [2.0, 2.0])


def test_student_one_tailed_matches_published_f5():
    a5 = reference.a5_finals()
    assert stats.student_t(a5["F5_ANA"], a5["F5_FDO"], tails=1) == pytest.approx(0.04671, abs=5e-5)


def test_welch_examples():
    assert stats.welch_t([1, 2, 3], [1, 2, 3]) == 1.0
    a, b = [0, 0, 0, 0], [1, 1, 1, 1.0001]
    ref = sps.ttest_ind(a, b, equal_var=False).pvalue
    assert stats.welch_t(a, b) == pytest.approx(ref, rel=1e-9)
    assert stats.welch_t(a, b) < 1e-6
    with pytest.raises(UndefinedTestError):
        stats.welch_t([1, 1], [1, 1])


def test_welch_published_f5():
    a5 = reference.a5_finals()
    assert stats.welch_t(a5["F5_ANA"], a5["F5_FDO"]) == pytest.approx(0.0976895, abs=1e-6)


@pytest.mark.parametrize("seed", range(5))
def test_t_tests_match_scipy(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(0, 1, 12), rng.normal(0.5, 2, 17)
    assert stats.student_t(a, b) == pytest.approx(sps.ttest_ind(a, b).pvalue, rel=1e-10)
    assert stats.welch_t(a, b) == pytest.approx(
        sps.ttest_ind(a, b, equal_var=False).pvalue, rel=1e-10)


# --- Wilcoxon -----------------------------------------------------------------

def test_wilcoxon_matches_bruteforce_exactly():
    rng = np.random.default_rng(12)
    for _ in range(100):
        n = int(rng.integers(1, 13))
        # Rounded values produce ties and zero differences.
        a = np.round(rng.normal(0, 1, n), 1)
        b = np.round(rng.normal(0, 1, n), 1)
        if np.all(a == b):
            continue
        assert stats.wilcoxon_signed_rank(a, b) == stats.wilcoxon_bruteforce(a, b)


def test_wilcoxon_all_positive_n30():
    a = np.arange(1, 31, dtype=float)
    assert stats.wilcoxon_signed_rank(a, np.zeros(30)) == 2 / 2**30


def test_wilcoxon_a_equals_b():
    with pytest.raises(UndefinedTestError):
        stats.wilcoxon_signed_rank([1, 2, 3], [1, 2, 3])


def test_wilcoxon_small_enumeration():
    d = [1, -2, 3, 4, 5]
    # W+ = 13; sign vectors with positive rank sum <= 2 or >= 13 (by symmetry).
    le = sum(1 for s in itertools.product((0, 1), repeat=5)
             if sum(r for r, on in zip(range(1, 6), s) if on) >= 13)
    assert stats.wilcoxon_signed_rank(d, [0] * 5) == 2 * le / 32
    assert stats.wilcoxon_signed_rank(d, [0] * 5) == 0.1875
    assert stats.wilcoxon_signed_rank(d, [0] * 5) == pytest.approx(
        sps.wilcoxon(d, method="exact").pvalue, rel=1e-12)


def test_wilcoxon_swap_symmetry():
    rng = np.random.default_rng(2)
    a, b = rng.normal(size=15), rng.normal(size=15)
    assert stats.wilcoxon_signed_rank(a, b) == stats.wilcoxon_signed_rank(b, a)


def test_wilcoxon_large_n_normal_approximation():
    rng = np.random.default_rng(5)
    a, b = rng.normal(size=60), rng.normal(0.3, 1, 60)
    ref = sps.wilcoxon(a, b, method="approx", correction=False).pvalue
    assert stats.wilcoxon_signed_rank(a, b) == pytest.approx(ref, rel=1e-9)


def test_wilcoxon_published_a5():
    a5 = reference.a5_finals()
    assert stats.wilcoxon_signed_rank(a5["F1_ANA"], a5["F1_FDO"]) == pytest.approx(1.86e-9, rel=0.01)
    assert stats.wilcoxon_signed_rank(a5["F7_ANA"], a5["F7_FDO"]) == pytest.approx(0.00761214, rel=1e-5)


def test_wilcoxon_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        stats.wilcoxon_signed_rank([1, 2], [1, 2, 3])


# --- Shapiro-Wilk / Levene ----------------------------------------------------

def test_shapiro_constant_sample():
    with pytest.raises(UndefinedTestError):
        stats.shapiro_wilk([3.0] * 30)


def test_shapiro_against_scipy():
    x = np.arange(1, 31, dtype=float)
    w_ref, p_ref = sps.shapiro(x)
    assert stats.shapiro_wilk_w(x) == pytest.approx(w_ref, abs=1e-6)
    assert stats.shapiro_wilk(x) == pytest.approx(p_ref, abs=1e-6)


def test_shapiro_skewed_sample_rejected():
    assert stats.shapiro_wilk(np.arange(1, 31, dtype=float) ** 2) < 0.01


@pytest.mark.parametrize("n", [3, 4, 5, 8, 11, 12, 25, 50])
def test_shapiro_random_samples_match_scipy(n):
    x = np.random.default_rng(n).lognormal(size=n)
    assert stats.shapiro_wilk(x) == pytest.approx(sps.shapiro(x).pvalue, abs=1e-6)


def test_levene_shifted_copy():
    a = np.array([1.0, 3.0, 4.0, 8.0, 9.5])
    assert stats.levene(a, a + 10) == pytest.approx(1.0, abs=1e-12)


def test_levene_against_scipy():
    a = np.arange(1, 11, dtype=float)
    b = np.round(np.arange(1.0, 2.0, 0.1), 10)
    ref = sps.levene(a, b, center="mean").pvalue
    assert stats.levene(a, b) == pytest.approx(ref, rel=1e-10)
    assert stats.levene(a, b) < 0.01


def test_levene_published_f7():
    a5 = reference.a5_finals()
    assert stats.levene(a5["F7_ANA"], a5["F7_FDO"]) == pytest.approx(0.898, abs=0.05)


def test_levene_degenerate():
    with pytest.raises(UndefinedTestError):
        stats.levene([1, 1], [2, 2])


# --- box-whisker --------------------------------------------------------------

def test_box_whisker_examples():
    assert stats.box_whisker([1, 2, 3, 4, 5]) == (1, 2, 3, 4, 5)
    assert stats.box_whisker([7.5]) == (7.5,) * 5
    five = stats.box_whisker([1, 2, 3, 4])
    assert (five.q1, five.median, five.q3) == (1.75, 2.5, 3.25)


# --- shared properties --------------------------------------------------------

samples = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=3, max_size=15)


@settings(max_examples=200, deadline=None)
@given(samples, samples)
def test_pvalues_in_unit_interval_and_symmetric(a, b):
    for test in (stats.student_t, stats.welch_t, stats.levene):
        try:
            p = test(a, b)
        except UndefinedTestError:
            continue
        assert 0.0 <= p <= 1.0
        assert test(b, a) == pytest.approx(p, rel=1e-12, abs=1e-300)
    n = min(len(a), len(b))
    try:
        p = stats.wilcoxon_signed_rank(a[:n], b[:n])
    except UndefinedTestError:
        return
    assert 0.0 <= p <= 1.0
    assert stats.wilcoxon_signed_rank(b[:n], a[:n]) == p
