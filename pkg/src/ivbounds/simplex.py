"""Exact simplex over the rationals.

Solves ``max / min c.x  subject to  A x = b, x >= 0`` with no floating
point anywhere.  The tableau is kept fraction-free: entries are integers
equal to ``den`` times the true rational tableau, where ``den`` is the
previous pivot's integer value (integer pivoting in the style of Bareiss
elimination).  Each update ``(a * piv - f * b) / den`` divides exactly, so
entries stay subdeterminant-sized instead of accumulating denominators.

Pivoting discipline: Dantzig's rule (largest reduced cost) for speed, with
an automatic and permanent switch to Bland's smallest-index rule after a
run of degenerate pivots.  Any non-terminating run would need infinitely
many degenerate pivots, which trips the switch, and Bland's rule cannot
cycle, so the solver terminates on every instance.

Every outcome is re-verified by substitution in plain Fraction arithmetic
against the caller's original rows before it is returned:

- optimal: the solution satisfies every row exactly and reproduces the
  objective value;
- infeasible: a Farkas certificate ``y`` with ``y.A >= 0`` componentwise and
  ``y.b < 0`` is checked exactly;
- unbounded: a feasible point plus an improving ray ``r`` with ``A r = 0``,
  ``r >= 0``, ``c.r != 0`` in the improving direction is checked exactly.

A small wrapper, :func:`solve_linear_program`, accepts inequality rows and
free variables and reduces them to the standard form above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import LpFailure

_BLAND_TRIGGER = 12     # consecutive degenerate pivots before switching rule
_PIVOT_LIMIT = 200_000  # hard safety net; never reached on sane inputs

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class SimplexResult:
    """Outcome of one optimization call.

    ``solution`` and ``value`` are set when optimal.  ``farkas`` holds one
    multiplier per original row when infeasible.  ``ray`` holds an improving
    recession direction when unbounded (``solution`` then holds the feasible
    point it improves from).  ``pivots`` counts pivots spent on this call.
    """

    status: str
    value: Fraction | None = None
    solution: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None
    pivots: int = 0


class ExactTableau:
    """Standard-form exact LP: equality rows over nonnegative variables.

    Feasibility (phase one) runs once; afterwards any number of objectives
    can be optimized over the same rows, each warm-starting from the last
    optimal basis.
    """

    def __init__(self, rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
        if len(rows) != len(rhs):
            raise LpFailure("row/rhs length mismatch")
        # Entries may be int or Fraction (ints satisfy the Rational protocol).
        self._orig_rows = [tuple(row) for row in rows]
        self._orig_rhs = list(rhs)
        self._n = len(self._orig_rows[0]) if self._orig_rows else 0
        for row in self._orig_rows:
            if len(row) != self._n:
                raise LpFailure("ragged constraint matrix")

        m = len(self._orig_rows)
        self._m = m
        scaled = []
        self._row_scale: list[Fraction] = []
        for row, b in zip(self._orig_rows, self._orig_rhs):
            mult = Fraction(lcm(b.denominator, *(a.denominator for a in row))
                            if row else b.denominator)
            if b * mult < 0:
                mult = -mult
            scaled.append([int(a * mult) for a in row] + [int(b * mult)])
            self._row_scale.append(mult)

        # Layout: structural columns, one artificial per row, rhs last.
        self._rhs_col = self._n + m
        V = []
        for i, row in enumerate(scaled):
            art = [0] * m
            art[i] = 1
            V.append(row[:-1] + art + [row[-1]])
        V.append([0] * (self._rhs_col + 1))  # objective row, installed later
        self._V: list[list[int]] = V
        self._den = 1
        self._basis = [self._n + i for i in range(m)]
        self._feasible: bool | None = None
        self._phase1_result: SimplexResult | None = None
        self.total_pivots = 0

    # -- integer pivoting core ------------------------------------------------

    def _pivot(self, r: int, c: int) -> None:
        V = self._V
        den = self._den
        prow = V[r]
        piv = prow[c]
        if piv <= 0:
            raise LpFailure("internal: nonpositive pivot")
        for i, row in enumerate(V):
            if i == r:
                continue
            f = row[c]
            if f:
                row[:] = [(a * piv - f * b) // den for a, b in zip(row, prow)]
            elif piv != den:
                row[:] = [a * piv // den for a in row]
        self._den = piv
        self._basis[r] = c
        self.total_pivots += 1

    def _install_objective(self, coeffs: list[int]) -> None:
        """Set the objective row from integer costs over all non-rhs columns."""
        den = self._den
        z = [cj * den for cj in coeffs] + [0]
        for i, bi in enumerate(self._basis):
            cb = coeffs[bi]
            if cb:
                row = self._V[i]
                z = [a - cb * v for a, v in zip(z, row)]
        self._V[-1] = z

    def _run(self, width: int) -> str:
        """Pivot to optimality over entering columns [0, width)."""
        V = self._V
        rhs = self._rhs_col
        bland = False
        streak = 0
        pivots0 = self.total_pivots
        while True:
            if self.total_pivots - pivots0 > _PIVOT_LIMIT:
                raise LpFailure("pivot limit exceeded")
            z = V[-1]
            col = -1
            if bland:
                for j in range(width):
                    if z[j] > 0:
                        col = j
                        break
            else:
                best = 0
                for j in range(width):
                    if z[j] > best:
                        best = z[j]
                        col = j
            if col < 0:
                return OPTIMAL
            row = -1
            rnum = rden = None
            for i in range(self._m):
                vic = V[i][col]
                if vic > 0:
                    bi = V[i][rhs]
                    if row < 0 or bi * rden < rnum * vic or \
                            (bi * rden == rnum * vic and self._basis[i] < self._basis[row]):
                        row, rnum, rden = i, bi, vic
            if row < 0:
                self._unbounded_col = col
                return UNBOUNDED
            degenerate = V[row][rhs] == 0
            self._pivot(row, col)
            if degenerate:
                streak += 1
                if streak >= _BLAND_TRIGGER:
                    bland = True
            else:
                streak = 0

    # -- phase one -------------------------------------------------------------

    def ensure_feasible(self) -> SimplexResult | None:
        """Run phase one once.  Returns None if feasible, else the
        infeasibility result with a verified Farkas certificate."""
        if self._feasible is not None:
            return self._phase1_result
        n, m = self._n, self._m
        coeffs = [0] * n + [-1] * m
        self._install_objective(coeffs)
        status = self._run(n)  # artificials never re-enter
        if status != OPTIMAL:
            raise LpFailure("internal: phase one cannot be unbounded")
        z = self._V[-1]
        value = Fraction(-z[self._rhs_col], self._den)
        if value > 0:
            raise LpFailure("internal: positive phase-one optimum")
        if value < 0:
            farkas = self._extract_farkas()
            self._feasible = False
            self._phase1_result = SimplexResult(
                status=INFEASIBLE, farkas=farkas, pivots=self.total_pivots)
            return self._phase1_result
        self._cleanup_artificials()
        self._feasible = True
        return None

    def _extract_farkas(self) -> tuple[Fraction, ...]:
        # Reduced cost of artificial i is -1 - y_i, read off the objective row.
        z = self._V[-1]
        den = self._den
        y = []
        for i in range(self._m):
            red = Fraction(z[self._n + i], den)
            y.append(-1 - red)
        mapped = [yi * s for yi, s in zip(y, self._row_scale)]
        self._verify_farkas(mapped)
        return tuple(mapped)

    def _verify_farkas(self, y: Sequence[Fraction]) -> None:
        for j in range(self._n):
            combo = sum((yi * row[j] for yi, row in zip(y, self._orig_rows)), Fraction(0))
            if combo < 0:
                raise LpFailure(f"farkas certificate fails on column {j}")
        if sum((yi * bi for yi, bi in zip(y, self._orig_rhs)), Fraction(0)) >= 0:
            raise LpFailure("farkas certificate fails on rhs")

    def _cleanup_artificials(self) -> None:
        """Drive zero-level artificials out of the basis, drop redundant rows,
        then strip the artificial columns from the tableau."""
        n = self._n
        dead = []
        for r in range(self._m):
            if self._basis[r] < n:
                continue
            row = self._V[r]
            col = next((j for j in range(n) if row[j]), None)
            if col is None:
                dead.append(r)  # equation is a rational combination of others
                continue
            if row[col] < 0:
                row[:] = [-a for a in row]
            self._pivot(r, col)
        if dead:
            keep = [i for i in range(self._m) if i not in set(dead)]
            self._V = [self._V[i] for i in keep] + [self._V[-1]]
            self._basis = [self._basis[i] for i in keep]
            self._m = len(keep)
        rhs = self._rhs_col
        self._V = [row[:n] + [row[rhs]] for row in self._V]
        self._rhs_col = n

    # -- optimization -----------------------------------------------------------

    def optimize(self, objective: Sequence[Fraction], maximize: bool = True) -> SimplexResult:
        """Optimize one objective over the shared rows (warm-started)."""
        infeasible = self.ensure_feasible()
        if infeasible is not None:
            return infeasible
        pivots0 = self.total_pivots
        c = [Fraction(x) for x in objective]
        if len(c) != self._n:
            raise LpFailure("objective length mismatch")
        sign = 1 if maximize else -1
        lam = lcm(*(x.denominator for x in c)) if c else 1
        coeffs = [sign * int(x * lam) for x in c]
        self._install_objective(coeffs)
        status = self._run(self._n)
        solution = self._current_solution()
        if status == UNBOUNDED:
            ray = self._extract_ray(self._unbounded_col)
            self._verify_point(solution)
            self._verify_ray(ray, c, maximize)
            return SimplexResult(status=UNBOUNDED, solution=solution, ray=ray,
                                 pivots=self.total_pivots - pivots0)
        z = self._V[-1]
        value = Fraction(-sign * z[self._rhs_col], lam * self._den)
        self._verify_point(solution)
        check = sum((cj * xj for cj, xj in zip(c, solution)), Fraction(0))
        if check != value:
            raise LpFailure("objective value fails substitution check")
        return SimplexResult(status=OPTIMAL, value=value, solution=solution,
                             pivots=self.total_pivots - pivots0)

    def _current_solution(self) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * self._n
        rhs = self._rhs_col
        for i, bi in enumerate(self._basis):
            if bi < self._n:
                x[bi] = Fraction(self._V[i][rhs], self._den)
        return tuple(x)

    def _extract_ray(self, col: int) -> tuple[Fraction, ...]:
        ray = [Fraction(0)] * self._n
        ray[col] = Fraction(1)
        for i, bi in enumerate(self._basis):
            if bi < self._n:
                ray[bi] = Fraction(-self._V[i][col], self._den)
        return tuple(ray)

    def _verify_point(self, x: Sequence[Fraction]) -> None:
        support = [(j, xj) for j, xj in enumerate(x) if xj]
        for row, b in zip(self._orig_rows, self._orig_rhs):
            if sum((xj * row[j] for j, xj in support), Fraction(0)) != b:
                raise LpFailure("solution fails substitution check")
        if any(xj < 0 for _, xj in support):
            raise LpFailure("solution violates nonnegativity")

    def _verify_ray(self, ray: Sequence[Fraction], c: Sequence[Fraction],
                    maximize: bool) -> None:
        support = [(j, rj) for j, rj in enumerate(ray) if rj]
        if any(rj < 0 for _, rj in support):
            raise LpFailure("ray violates nonnegativity")
        for row in self._orig_rows:
            if sum((rj * row[j] for j, rj in support), Fraction(0)) != 0:
                raise LpFailure("ray fails A r = 0 check")
        gain = sum((c[j] * rj for j, rj in support), Fraction(0))
        if (gain <= 0) if maximize else (gain >= 0):
            raise LpFailure("ray does not improve the objective")


def solve_linear_program(objective: Sequence[Fraction], *,
                         maximize: bool = True,
                         A_eq: Sequence[Sequence[Fraction]] = (),
                         b_eq: Sequence[Fraction] = (),
                         A_ub: Sequence[Sequence[Fraction]] = (),
                         b_ub: Sequence[Fraction] = (),
                         free: Sequence[bool] | None = None) -> SimplexResult:
    """General-form exact LP via reduction to standard form.

    ``free[j]`` marks variable j as sign-unrestricted (it is split into a
    difference of two nonnegative parts); others are nonnegative.  Inequality
    rows get one slack each.  The returned solution is in the original
    variables.
    """
    n = len(objective)
    free = list(free) if free is not None else [False] * n
    if len(free) != n:
        raise LpFailure("free-mask length mismatch")

    cols: list[tuple[int, int]] = []  # (original var, sign)
    for j in range(n):
        cols.append((j, 1))
        if free[j]:
            cols.append((j, -1))
    n_slack = len(A_ub)

    def expand(row):
        out = [Fraction(row[j]) * s for j, s in cols]
        return out

    rows = []
    rhs = []
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row) + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append(expand(row) + slack)
        rhs.append(Fraction(b))
    c_full = expand(objective) + [Fraction(0)] * n_slack

    tableau = ExactTableau(rows, rhs)
    result = tableau.optimize(c_full, maximize=maximize)
    if result.status != OPTIMAL:
        return result

    x = [Fraction(0)] * n
    for (j, s), xj in zip(cols, result.solution):
        x[j] += s * xj
    return SimplexResult(status=OPTIMAL, value=result.value, solution=tuple(x),
                         pivots=result.pivots)
