"""Inter-annotator agreement: coincidence matrix, alpha, accuracy.

The reliability input is annotators-by-units; missing judgments are None.
Each unit with m >= 2 judgments contributes every ordered pair of its
judgments, weighted 1/(m-1), to the coincidence matrix, which is therefore
symmetric and sums to the number of pairable judgments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

_SYMMETRY_TOLERANCE = 1e-9


class UndefinedAlphaError(Exception):
    """Alpha has no value (no pairable variation to correct for)."""


@dataclass
class CoincidenceMatrix:
    values: tuple[str, ...]
    cells: list[list[float]]

    def __post_init__(self):
        k = len(self.values)
        if len(self.cells) != k or any(len(row) != k for row in self.cells):
            raise ValueError("cells must be square over the value list")
        for i in range(k):
            for j in range(k):
                if abs(self.cells[i][j] - self.cells[j][i]) > _SYMMETRY_TOLERANCE:
                    raise ValueError(
                        f"matrix not symmetric at ({self.values[i]}, {self.values[j]})"
                    )

    @property
    def n(self) -> float:
        return sum(sum(row) for row in self.cells)

    def marginal(self, index: int) -> float:
        return sum(self.cells[index])

    @property
    def diagonal_sum(self) -> float:
        return sum(self.cells[i][i] for i in range(len(self.values)))

    def cell(self, a: str, b: str) -> float:
        return self.cells[self.values.index(a)][self.values.index(b)]


def coincidence(
    reliability: Sequence[Sequence[str | None]],
    values: Sequence[str] | None = None,
) -> CoincidenceMatrix:
    """Tabulate pairable judgments from an annotators-by-units matrix."""
    if len(reliability) < 2:
        raise ValueError("need at least two annotators")
    n_units = max((len(row) for row in reliability), default=0)
    if values is None:
        found = {
            v for row in reliability for v in row if v is not None
        }
        values = sorted(found)
    values = tuple(values)
    index = {v: i for i, v in enumerate(values)}
    # exact rational accumulation so cell values are independent of the
    # order units are visited in
    cells = [[Fraction(0)] * len(values) for _ in values]
    for u in range(n_units):
        judgments = [
            row[u]
            for row in reliability
            if u < len(row) and row[u] is not None
        ]
        m = len(judgments)
        if m < 2:
            continue
        weight = Fraction(1, m - 1)
        for i, a in enumerate(judgments):
            for j, b in enumerate(judgments):
                if i == j:
                    continue
                cells[index[a]][index[b]] += weight
    return CoincidenceMatrix(
        values=values, cells=[[float(x) for x in row] for row in cells]
    )


def krippendorff_alpha(cm: CoincidenceMatrix) -> float:
    """Nominal-data alpha from a coincidence matrix.

    alpha = ((n-1) * sum_c o_cc - sum_c n_c (n_c - 1))
            / (n (n-1) - sum_c n_c (n_c - 1))
    """
    n = cm.n
    if n <= 1:
        raise UndefinedAlphaError("fewer than two pairable judgments")
    marg = sum(cm.marginal(i) * (cm.marginal(i) - 1) for i in range(len(cm.values)))
    denominator = n * (n - 1) - marg
    if abs(denominator) <= _SYMMETRY_TOLERANCE:
        raise UndefinedAlphaError("expected disagreement is zero")
    return ((n - 1) * cm.diagonal_sum - marg) / denominator


def accuracy(cm: CoincidenceMatrix) -> float:
    """Share of pairable judgments on the matrix diagonal."""
    n = cm.n
    if n <= 0:
        raise ValueError("empty coincidence matrix")
    return cm.diagonal_sum / n


def pairwise_metrics(
    reliability: Sequence[Sequence[str | None]],
    values: Sequence[str] | None = None,
) -> tuple[list[list[float | None]], list[list[float | None]]]:
    """Alpha and accuracy for every annotator pair; diagonals are None."""
    k = len(reliability)
    if k < 2:
        raise ValueError("need at least two annotators")
    if values is None:
        values = sorted(
            {v for row in reliability for v in row if v is not None}
        )
    alphas: list[list[float | None]] = [[None] * k for _ in range(k)]
    accuracies: list[list[float | None]] = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            cm = coincidence([reliability[i], reliability[j]], values)
            try:
                a = krippendorff_alpha(cm)
            except UndefinedAlphaError:
                a = None
            alphas[i][j] = alphas[j][i] = a
            acc = accuracy(cm) if cm.n > 0 else None
            accuracies[i][j] = accuracies[j][i] = acc
    return alphas, accuracies


def read_coincidence(text: str) -> CoincidenceMatrix:
    """Read the fixture format: a category line, then matrix rows."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty coincidence file")
    values = tuple(lines[0].split("\t"))
    cells = []
    for line in lines[1:]:
        cells.append([float(x) for x in line.split("\t")])
    return CoincidenceMatrix(values=values, cells=cells)


def write_coincidence(cm: CoincidenceMatrix) -> str:
    lines = ["\t".join(cm.values)]
    for row in cm.cells:
        lines.append("\t".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return str(int(x)) if x == int(x) else str(x)
