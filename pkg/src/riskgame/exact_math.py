"""Exact linear algebra over rationals.

Small dense systems only; elimination is fraction-free (integer cross
multiplication with exact division) so intermediate values stay integers of
modest size instead of rationals with compounding denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Hashable, Mapping, Sequence

BigRational = Fraction


class SingularSystem(Exception):
    """No unique solution: a pivot column vanished."""


@dataclass
class LinearSystem:
    """rows @ x = rhs, one variable per label."""

    labels: list[Hashable]
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    _index: dict[Hashable, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        m = len(self.labels)
        if len(set(self.labels)) != m:
            raise ValueError("duplicate variable labels")
        if len(self.rows) != m or len(self.rhs) != m:
            raise ValueError(f"need {m} equations for {m} variables")
        for row in self.rows:
            if len(row) != m:
                raise ValueError("ragged coefficient row")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dimension(self) -> int:
        return len(self.labels)

    @classmethod
    def from_maps(cls, labels: Sequence[Hashable],
                  equations: Sequence[tuple[Mapping[Hashable, Fraction], Fraction]],
                  ) -> "LinearSystem":
        """Build from sparse rows {label: coefficient} plus right-hand sides."""
        labels = list(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        rows = []
        rhs = []
        for coeffs, const in equations:
            row = [Fraction(0)] * len(labels)
            for lab, coeff in coeffs.items():
                row[index[lab]] += Fraction(coeff)
            rows.append(row)
            rhs.append(Fraction(const))
        return cls(labels, rows, rhs)

    def residual(self, solution: Mapping[Hashable, Fraction]) -> list[Fraction]:
        vals = [solution[lab] for lab in self.labels]
        return [sum(r * v for r, v in zip(row, vals)) - b
                for row, b in zip(self.rows, self.rhs)]


def solve_exact(system: LinearSystem) -> dict[Hashable, Fraction]:
    """Solve exactly; raises SingularSystem if the matrix is singular.

    Rows are first scaled to integers, then eliminated Bareiss-style: every
    intermediate entry is an integer and each cross-multiplication step
    divides exactly by the previous pivot.
    """
    m = system.dimension
    mat: list[list[int]] = []
    for row, b in zip(system.rows, system.rhs):
        scale = lcm(*(f.denominator for f in row), b.denominator)
        mat.append([int(f * scale) for f in row] + [int(b * scale)])

    prev = 1
    for k in range(m):
        pivot_row = next((i for i in range(k, m) if mat[i][k] != 0), None)
        if pivot_row is None:
            raise SingularSystem(f"no pivot in column {k} "
                                 f"({system.labels[k]!r})")
        if pivot_row != k:
            mat[k], mat[pivot_row] = mat[pivot_row], mat[k]
        pivot = mat[k][k]
        for i in range(k + 1, m):
            head = mat[i][k]
            row_i, row_k = mat[i], mat[k]
            for j in range(k + 1, m + 1):
                row_i[j] = (row_i[j] * pivot - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot

    values: list[Fraction] = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        acc = Fraction(mat[i][m])
        for j in range(i + 1, m):
            if mat[i][j]:
                acc -= mat[i][j] * values[j]
        values[i] = acc / mat[i][i]
    return {lab: values[i] for i, lab in enumerate(system.labels)}
