from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expando.agreement import (
    CoincidenceMatrix,
    UndefinedAlphaError,
    accuracy,
    coincidence,
    krippendorff_alpha,
    pairwise_metrics,
    read_coincidence,
    write_coincidence,
)
from expando.resources import data_text


def table10():
    return read_coincidence(data_text("table10_coincidence.tsv"))


def test_unanimous_unit_weight():
    # five annotators agreeing on one unit: 20 ordered pairs / (5-1)
    cm = coincidence([["b"], ["b"], ["b"], ["b"], ["b"]])
    assert cm.cell("b", "b") == 5.0


def test_single_disagreeing_pair():
    cm = coincidence([["a"], ["b"]])
    assert cm.cell("a", "b") == 1.0
    assert cm.cell("b", "a") == 1.0
    assert cm.cell("a", "a") == 0.0


def test_units_with_single_judgment_contribute_nothing():
    cm = coincidence([["a", "a"], [None, "a"]], values=["a", "b"])
    assert cm.n == 2.0  # only the second unit is pairable


def test_table10_fixture_shape():
    cm = table10()
    assert cm.values == ("a", "b", "c", "d", "e", "f")
    assert cm.n == 2615.0
    assert cm.diagonal_sum == 1808.0
    assert cm.cell("a", "a") == 698.0
    assert cm.cell("b", "d") == 91.0
    # marginal consistency
    assert sum(cm.marginal(i) for i in range(6)) == cm.n


def test_table10_alpha_and_accuracy():
    cm = table10()
    assert abs(krippendorff_alpha(cm) - 0.582) <= 0.001
    assert abs(accuracy(cm) - 0.691) <= 0.001
    assert abs(accuracy(cm) - 1808 / 2615) <= 1e-12


def test_perfect_agreement_alpha_one():
    cm = coincidence([["a", "b", "a"], ["a", "b", "a"], ["a", "b", "a"]])
    assert krippendorff_alpha(cm) == pytest.approx(1.0)
    assert accuracy(cm) == pytest.approx(1.0)


def test_zero_diagonal_negative_alpha():
    cm = CoincidenceMatrix(values=("a", "b"), cells=[[0.0, 2.0], [2.0, 0.0]])
    alpha = krippendorff_alpha(cm)
    assert alpha < 0.0
    # independent observed/expected disagreement computation
    n = cm.n
    do = sum(
        cm.cells[i][j] for i in range(2) for j in range(2) if i != j
    ) / n
    de = sum(
        cm.marginal(i) * cm.marginal(j) for i in range(2) for j in range(2) if i != j
    ) / (n * (n - 1))
    assert alpha == pytest.approx(1.0 - do / de, abs=1e-12)


def test_degenerate_alpha_raises():
    cm = coincidence([["a", "a"], ["a", "a"]])
    with pytest.raises(UndefinedAlphaError):
        krippendorff_alpha(cm)


def test_accuracy_bounds():
    assert accuracy(
        CoincidenceMatrix(values=("a",), cells=[[4.0]])
    ) == pytest.approx(1.0)
    assert accuracy(
        CoincidenceMatrix(values=("a", "b"), cells=[[0.0, 1.0], [1.0, 0.0]])
    ) == pytest.approx(0.0)


def test_asymmetric_matrix_rejected():
    with pytest.raises(ValueError):
        CoincidenceMatrix(values=("a", "b"), cells=[[1.0, 2.0], [1.0, 1.0]])


def test_pairwise_identical_annotators():
    rows = [["a", "b", "a", "b"], ["a", "b", "a", "b"], ["a", "a", "a", "b"]]
    alphas, accuracies = pairwise_metrics(rows)
    assert accuracies[0][1] == pytest.approx(1.0)
    assert alphas[0][1] == pytest.approx(1.0)
    assert alphas[0][0] is None and accuracies[2][2] is None


def test_pairwise_matches_per_pair_recomputation():
    rows = [
        ["a", "b", "c", "a", "b", None],
        ["a", "b", "b", "a", "e", "c"],
        ["d", "b", "c", "a", "b", "c"],
    ]
    values = ["a", "b", "c", "d", "e", "f"]
    alphas, accuracies = pairwise_metrics(rows, values)
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            cm = coincidence([rows[i], rows[j]], values)
            assert alphas[i][j] == pytest.approx(krippendorff_alpha(cm))
            assert accuracies[i][j] == pytest.approx(accuracy(cm))
            assert alphas[i][j] == alphas[j][i]
            assert accuracies[i][j] == accuracies[j][i]


def test_coincidence_roundtrip_format():
    cm = table10()
    assert write_coincidence(cm) == data_text("table10_coincidence.tsv")


def brute_force_coincidence(rows, values):
    """Independent oracle: per-unit value counts, exact rational weights."""
    k = len(values)
    index = {v: i for i, v in enumerate(values)}
    cells = [[Fraction(0)] * k for _ in range(k)]
    n_units = max(len(r) for r in rows)
    for u in range(n_units):
        judged = [r[u] for r in rows if u < len(r) and r[u] is not None]
        m = len(judged)
        if m < 2:
            continue
        counts = {v: judged.count(v) for v in set(judged)}
        for a, ca in counts.items():
            for b, cb in counts.items():
                pairs = ca * (ca - 1) if a == b else ca * cb
                cells[index[a]][index[b]] += Fraction(pairs, m - 1)
    return cells


_values = ["a", "b", "c", "d", "e", "f"]
_reliability = st.lists(
    st.lists(st.sampled_from(_values + [None]), min_size=1, max_size=20),
    min_size=2,
    max_size=5,
).map(lambda rows: [row + [None] * (max(map(len, rows)) - len(row)) for row in rows])


@settings(max_examples=80, deadline=None)
@given(_reliability)
def test_coincidence_matches_brute_force(rows):
    cm = coincidence(rows, _values)
    oracle = brute_force_coincidence(rows, _values)
    for i in range(len(_values)):
        for j in range(len(_values)):
            assert cm.cells[i][j] == float(oracle[i][j])
    assert sum(cm.marginal(i) for i in range(len(_values))) == pytest.approx(cm.n)


@settings(max_examples=80, deadline=None)
@given(_reliability)
def test_alpha_matches_do_de_oracle(rows):
    cm = coincidence(rows, _values)
    n = cm.n
    if n <= 1:
        return
    k = len(_values)
    do = sum(cm.cells[i][j] for i in range(k) for j in range(k) if i != j) / n
    de_num = sum(
        cm.marginal(i) * cm.marginal(j) for i in range(k) for j in range(k) if i != j
    )
    de = de_num / (n * (n - 1))
    if de == 0:
        with pytest.raises(UndefinedAlphaError):
            krippendorff_alpha(cm)
        return
    assert krippendorff_alpha(cm) == pytest.approx(1.0 - do / de, abs=1e-9)
