"""Exact two-phase simplex over the rationals with Bland's rule.

Problems have the form: maximize c.x subject to A x = b, x >= 0. All
arithmetic uses :class:`fractions.Fraction`; there are no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MalformedLP

Row = tuple[tuple[Fraction, ...], Fraction]


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    rows: tuple[Row, ...]
    objective: tuple[Fraction, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise MalformedLP("an LP needs at least one variable")
        for i, (coeffs, _) in enumerate(self.rows):
            if len(coeffs) != self.num_vars:
                raise MalformedLP(f"row {i} has width {len(coeffs)}, expected {self.num_vars}")
        if len(self.objective) != self.num_vars:
            raise MalformedLP(f"objective has width {len(self.objective)}, expected {self.num_vars}")

    @classmethod
    def build(cls, num_vars: int, rows, objective) -> "LinearProgram":
        fr = lambda seq: tuple(Fraction(v) for v in seq)  # noqa: E731
        return cls(num_vars, tuple((fr(c), Fraction(b)) for c, b in rows), fr(objective))

    def dump(self) -> str:
        out = [f"vars {self.num_vars}"]
        for coeffs, rhs in self.rows:
            out.append("eq " + " ".join(map(str, coeffs)) + f" = {rhs}")
        out.append("obj " + " ".join(map(str, self.objective)))
        return "\n".join(out) + "\n"

    @classmethod
    def parse(cls, text: str) -> "LinearProgram":
        num_vars, rows, objective = None, [], None
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            try:
                if parts[0] == "vars":
                    num_vars = int(parts[1])
                elif parts[0] == "eq":
                    eq = parts.index("=")
                    rows.append((parts[1:eq], parts[eq + 1]))
                elif parts[0] == "obj":
                    objective = parts[1:]
                else:
                    raise MalformedLP(f"unknown line {line!r}")
            except (ValueError, IndexError):
                raise MalformedLP(f"cannot parse {line!r}") from None
        if num_vars is None or objective is None:
            raise MalformedLP("missing 'vars' or 'obj' line")
        return cls.build(num_vars, rows, objective)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Optional[Fraction] = None
    vertex: Optional[tuple[Fraction, ...]] = None
    # for "infeasible": y with y.A >= 0 componentwise and y.b < 0
    certificate: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def independent_rows(rows: Sequence[Row]) -> list[int]:
    """Indices of a maximal linearly independent subset of the augmented rows."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, normalized vector)
    keep = []
    for idx, (coeffs, rhs) in enumerate(rows):
        v = list(coeffs) + [rhs]
        for p, b in basis:
            f = v[p]
            if f:
                v = [vi - f * bi for vi, bi in zip(v, b)]
        pivot = next((k for k, x in enumerate(v) if x), None)
        if pivot is None:
            continue
        lead = v[pivot]
        basis.append((pivot, [x / lead for x in v]))
        keep.append(idx)
    return keep


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.z: list[Fraction] = []

    def set_objective(self, cost: Sequence[Fraction]) -> None:
        width = len(self.rows[0]) if self.rows else len(cost) + 1
        z = [-Fraction(c) for c in cost] + [Fraction(0)]
        z += [Fraction(0)] * (width - len(z))
        for r, bvar in zip(self.rows, self.basis):
            cb = cost[bvar]
            if cb:
                z = [zj + cb * rj for zj, rj in zip(z, r)]
        self.z = z

    def pivot(self, k: int, j: int) -> None:
        row = self.rows[k]
        p = row[j]
        row = [x / p for x in row]
        self.rows[k] = row
        for i, other in enumerate(self.rows):
            f = other[j]
            if i != k and f:
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
        f = self.z[j]
        if f:
            self.z = [a - f * b for a, b in zip(self.z, row)]
        self.basis[k] = j

    def run(self, ncols: int) -> str:
        """Bland's rule on the first ``ncols`` columns; 'optimal' or 'unbounded'."""
        while True:
            j = next((c for c in range(ncols) if self.z[c] < 0), None)
            if j is None:
                return "optimal"
            best = None
            for k, r in enumerate(self.rows):
                if r[j] > 0:
                    key = (r[-1] / r[j], self.basis[k])
                    if best is None or key < best[0]:
                        best = (key, k)
            if best is None:
                return "unbounded"
            self.pivot(best[1], j)


class SimplexSolver:
    """Phase 1 runs once in the constructor; :meth:`maximize` reuses the basis."""

    def __init__(self, num_vars: int, rows: Sequence[Row]):
        self.num_vars = n = num_vars
        sel = independent_rows(rows)
        m = len(sel)
        signs, table = [], []
        for k, idx in enumerate(sel):
            coeffs, rhs = rows[idx]
            sign = -1 if rhs < 0 else 1
            signs.append(sign)
            art = [Fraction(0)] * m
            art[k] = Fraction(1)
            table.append([sign * Fraction(c) for c in coeffs] + art + [sign * Fraction(rhs)])
        tab = _Tableau(table, [n + k for k in range(m)])
        tab.set_objective([Fraction(0)] * n + [Fraction(-1)] * m)
        if m:
            tab.run(n + m)
        self.certificate: Optional[tuple[Fraction, ...]] = None
        self.feasible = not m or tab.z[-1] == 0
        if not self.feasible:
            y = [Fraction(0)] * len(rows)
            for k, idx in enumerate(sel):
                # reduced cost of artificial k is y_k + 1
                y[idx] = signs[k] * (tab.z[n + k] - 1)
            self.certificate = tuple(y)
            self._tableau = None
            return
        for k in range(m):
            if tab.basis[k] >= n:
                j = next((c for c in range(n) if tab.rows[k][c]), None)
                if j is None:  # cannot happen after independent_rows
                    raise AssertionError("redundant row survived row selection")
                tab.pivot(k, j)
        tab.rows = [r[:n] + [r[-1]] for r in tab.rows]
        self._tableau = tab

    def maximize(self, objective: Sequence[Fraction]) -> LPResult:
        if len(objective) != self.num_vars:
            raise MalformedLP(f"objective has width {len(objective)}, expected {self.num_vars}")
        if not self.feasible:
            return LPResult("infeasible", certificate=self.certificate)
        src = self._tableau
        tab = _Tableau([list(r) for r in src.rows], list(src.basis))
        tab.set_objective([Fraction(c) for c in objective])
        if tab.run(self.num_vars) == "unbounded":
            return LPResult("unbounded")
        x = [Fraction(0)] * self.num_vars
        for r, bvar in zip(tab.rows, tab.basis):
            x[bvar] = r[-1]
        return LPResult("optimal", tab.z[-1], tuple(x))


def simplex_solve(lp: LinearProgram) -> LPResult:
    return SimplexSolver(lp.num_vars, lp.rows).maximize(lp.objective)


def check_farkas(rows: Sequence[Row], y: Sequence[Fraction]) -> bool:
    """y certifies infeasibility of A x = b, x >= 0 iff y.A >= 0 and y.b < 0."""
    if len(y) != len(rows):
        return False
    n = len(rows[0][0]) if rows else 0
    for j in range(n):
        if sum(yi * c[j] for yi, (c, _) in zip(y, rows)) < 0:
            return False
    return sum(yi * b for yi, (_, b) in zip(y, rows)) < 0
