"""Exact-rational linear programming with verifiable certificates.

Dense two-phase primal simplex over :class:`fractions.Fraction` with
Bland's anti-cycling rule.  Every solve returns an exact certificate:

* ``OPTIMAL``  - primal and dual solutions with duality gap exactly 0,
* ``INFEASIBLE`` - Farkas multipliers aggregating the constraints into
  an impossible inequality,
* ``UNBOUNDED`` - a feasible point plus an improving ray.

An independent checker, :func:`check_certificate`, re-validates each
certificate from the original problem data; :func:`solve_lp` runs it
before returning, so a returned solution is always verified.

The intended instances are tiny (tens of variables), so a dense exact
tableau is the right trade: no tolerances, no conditioning questions.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]

LEQ = "<="
EQ = "="
GEQ = ">="
_RELATIONS = (LEQ, EQ, GEQ)


class MalformedProblem(ValueError):
    """Dimension mismatch or invalid relation/bound specification."""


class CertificateError(RuntimeError):
    """A solver certificate failed exact re-verification (solver bug)."""


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _frac(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise MalformedProblem(f"expected exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class LPProblem:
    """maximize objective @ x subject to rows, relations, rhs and bounds.

    ``lower[j]`` is 0 or None (unbounded below); ``upper[j]`` is a finite
    rational or None (unbounded above).
    """

    objective: Tuple[Fraction, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]
    relations: Tuple[str, ...]
    rhs: Tuple[Fraction, ...]
    lower: Tuple[Optional[Fraction], ...]
    upper: Tuple[Optional[Fraction], ...]

    @staticmethod
    def build(objective: Sequence[Rational],
              rows: Sequence[Sequence[Rational]],
              relations: Sequence[str],
              rhs: Sequence[Rational],
              lower: Optional[Sequence[Optional[Rational]]] = None,
              upper: Optional[Sequence[Optional[Rational]]] = None) -> "LPProblem":
        n = len(objective)
        if lower is None:
            lower = [0] * n
        if upper is None:
            upper = [None] * n
        if not (len(lower) == len(upper) == n):
            raise MalformedProblem("bounds length must match objective length")
        if not (len(rows) == len(relations) == len(rhs)):
            raise MalformedProblem("rows, relations and rhs must have equal length")
        obj = tuple(_frac(c) for c in objective)
        mat = []
        for row in rows:
            if len(row) != n:
                raise MalformedProblem("constraint row length must match objective length")
            mat.append(tuple(_frac(a) for a in row))
        for rel in relations:
            if rel not in _RELATIONS:
                raise MalformedProblem(f"unknown relation {rel!r}")
        lo = []
        for b in lower:
            if b is None:
                lo.append(None)
            elif _frac(b) == 0:
                lo.append(Fraction(0))
            else:
                raise MalformedProblem("lower bounds must be 0 or None")
        up = tuple(None if b is None else _frac(b) for b in upper)
        return LPProblem(obj, tuple(mat), tuple(relations), tuple(_frac(b) for b in rhs),
                         tuple(lo), up)

    def n_vars(self) -> int:
        return len(self.objective)

    def to_json(self) -> str:
        def fmt(v):
            return str(v)

        payload = {
            "objective": [fmt(c) for c in self.objective],
            "rows": [[fmt(a) for a in row] for row in self.rows],
            "relations": list(self.relations),
            "rhs": [fmt(b) for b in self.rhs],
            "lower": ["-inf" if b is None else fmt(b) for b in self.lower],
            "upper": ["inf" if b is None else fmt(b) for b in self.upper],
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "LPProblem":
        payload = json.loads(text)
        return LPProblem.build(
            [Fraction(c) for c in payload["objective"]],
            [[Fraction(a) for a in row] for row in payload["rows"]],
            payload["relations"],
            [Fraction(b) for b in payload["rhs"]],
            [None if b == "-inf" else Fraction(b) for b in payload["lower"]],
            [None if b == "inf" else Fraction(b) for b in payload["upper"]],
        )


@dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    x: Optional[Tuple[Fraction, ...]] = None
    objective_value: Optional[Fraction] = None
    row_duals: Optional[Tuple[Fraction, ...]] = None
    bound_duals: Optional[Tuple[Fraction, ...]] = None
    farkas_rows: Optional[Tuple[Fraction, ...]] = None
    farkas_bounds: Optional[Tuple[Fraction, ...]] = None
    ray: Optional[Tuple[Fraction, ...]] = None
    ray_origin: Optional[Tuple[Fraction, ...]] = None


# ----------------------------------------------------------------------
# internal normalized form
# ----------------------------------------------------------------------


class _Normalized:
    """Equality-form tableau data for the simplex.

    Original variables are expanded to nonnegative columns (free ones are
    split), finite upper bounds become extra <= rows, and rows with
    negative right-hand sides are sign-flipped so b >= 0 throughout.
    """

    def __init__(self, p: LPProblem):
        self.problem = p
        n = p.n_vars()
        # var j -> (positive column, optional negative column)
        self.var_cols: list[Tuple[int, Optional[int]]] = []
        col = 0
        for j in range(n):
            if p.lower[j] is None:
                self.var_cols.append((col, col + 1))
                col += 2
            else:
                self.var_cols.append((col, None))
                col += 1
        self.n_struct = col

        rows: list[list[Fraction]] = []
        relations: list[str] = []
        rhs: list[Fraction] = []
        # original rows
        for i, row in enumerate(p.rows):
            rows.append(self._expand(row))
            relations.append(p.relations[i])
            rhs.append(p.rhs[i])
        # upper bounds as rows; remember which internal row serves var j
        self.bound_row_of_var: dict[int, int] = {}
        for j in range(n):
            if p.upper[j] is not None:
                unit = [Fraction(0)] * n
                unit[j] = Fraction(1)
                self.bound_row_of_var[j] = len(rows)
                rows.append(self._expand(unit))
                relations.append(LEQ)
                rhs.append(p.upper[j])

        # flip rows to make rhs nonnegative
        self.flip: list[int] = []
        for i in range(len(rows)):
            if rhs[i] < 0:
                rows[i] = [-a for a in rows[i]]
                rhs[i] = -rhs[i]
                relations[i] = {LEQ: GEQ, GEQ: LEQ, EQ: EQ}[relations[i]]
                self.flip.append(-1)
            else:
                self.flip.append(1)

        self.rows = rows
        self.relations = relations
        self.rhs = rhs
        self.n_rows = len(rows)

    def _expand(self, row: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.n_struct
        for j, a in enumerate(row):
            pos, neg = self.var_cols[j]
            out[pos] = a
            if neg is not None:
                out[neg] = -a
        return out

    def expanded_objective(self) -> list[Fraction]:
        out = [Fraction(0)] * self.n_struct
        for j, c in enumerate(self.problem.objective):
            pos, neg = self.var_cols[j]
            out[pos] = c
            if neg is not None:
                out[neg] = -c
        return out

    def collapse(self, struct_values: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        out = []
        for pos, neg in self.var_cols:
            v = struct_values[pos]
            if neg is not None:
                v -= struct_values[neg]
            out.append(v)
        return tuple(out)


class _Tableau:
    def __init__(self, norm: _Normalized):
        self.norm = norm
        m = norm.n_rows
        self.matrix: list[list[Fraction]] = [list(row) for row in norm.rows]
        self.b = list(norm.rhs)
        self.basis: list[int] = []
        self.row_ids = list(range(m))  # live tableau row -> internal row index
        n_struct = norm.n_struct

        # attach slack/surplus/artificial columns
        self.slack_col_of_row: dict[int, int] = {}
        self.art_cols: set[int] = set()
        self.init_col_of_row: list[int] = [0] * m
        col = n_struct
        for i in range(m):
            rel = norm.relations[i]
            if rel == LEQ:
                self._append_unit(i, col, Fraction(1))
                self.slack_col_of_row[i] = col
                self.init_col_of_row[i] = col
                self.basis.append(col)
                col += 1
            elif rel == GEQ:
                self._append_unit(i, col, Fraction(-1))
                self.slack_col_of_row[i] = col
                col += 1
                self._append_unit(i, col, Fraction(1))
                self.art_cols.add(col)
                self.init_col_of_row[i] = col
                self.basis.append(col)
                col += 1
            else:
                self._append_unit(i, col, Fraction(1))
                self.art_cols.add(col)
                self.init_col_of_row[i] = col
                self.basis.append(col)
                col += 1
        self.n_cols = col

    def _append_unit(self, row: int, col: int, value: Fraction):
        for i in range(len(self.matrix)):
            current = len(self.matrix[i])
            while current <= col:
                self.matrix[i].append(Fraction(0))
                current += 1
        self.matrix[row][col] = value

    # -- simplex machinery ------------------------------------------------

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        """z_j - c_j for every column under the current basis."""
        m = len(self.matrix)
        out = []
        for j in range(self.n_cols):
            z = Fraction(0)
            for i in range(m):
                cb = cost[self.basis[i]]
                if cb:
                    z += cb * self.matrix[i][j]
            out.append(z - cost[j])
        return out

    def objective_value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[self.basis[i]] * self.b[i] for i in range(len(self.b))),
                   Fraction(0))

    def pivot(self, row: int, col: int):
        piv = self.matrix[row][col]
        inv = Fraction(1) / piv
        self.matrix[row] = [a * inv for a in self.matrix[row]]
        self.b[row] *= inv
        for i in range(len(self.matrix)):
            if i == row:
                continue
            factor = self.matrix[i][col]
            if factor:
                prow = self.matrix[row]
                self.matrix[i] = [a - factor * pa for a, pa in zip(self.matrix[i], prow)]
                self.b[i] -= factor * self.b[row]
        self.basis[row] = col

    def run(self, cost: Sequence[Fraction], allowed) -> Optional[int]:
        """Bland-rule simplex; returns an unbounded entering column or None."""
        guard = 0
        limit = 20000 + 200 * (self.n_cols + len(self.matrix))
        while True:
            guard += 1
            if guard > limit:  # pragma: no cover - Bland's rule prevents this
                raise CertificateError("simplex iteration limit exceeded")
            reduced = self.reduced_costs(cost)
            entering = None
            for j in range(self.n_cols):
                if allowed(j) and reduced[j] < 0:
                    entering = j
                    break
            if entering is None:
                return None
            leaving = None
            best = None
            for i in range(len(self.matrix)):
                a = self.matrix[i][entering]
                if a > 0:
                    ratio = self.b[i] / a
                    if best is None or ratio < best or (
                            ratio == best and self.basis[i] < self.basis[leaving]):
                        best = ratio
                        leaving = i
            if leaving is None:
                return entering
            self.pivot(leaving, entering)

    def drop_row(self, row: int):
        del self.matrix[row]
        del self.b[row]
        del self.basis[row]
        del self.row_ids[row]

    def duals(self, cost: Sequence[Fraction]) -> list[Fraction]:
        """y_i per internal row (dropped redundant rows get dual 0)."""
        reduced = self.reduced_costs(cost)
        out = [Fraction(0)] * self.norm.n_rows
        for internal in set(self.row_ids):
            col = self.init_col_of_row[internal]
            out[internal] = reduced[col] + cost[col]
        return out


def solve_lp(problem: LPProblem, verify: bool = True) -> LPSolution:
    """Solve and (by default) re-verify the returned certificate."""
    norm = _Normalized(problem)
    tab = _Tableau(norm)
    m = norm.n_rows

    # phase 1: maximize -(sum of artificials)
    cost1 = [Fraction(0)] * tab.n_cols
    for j in tab.art_cols:
        cost1[j] = Fraction(-1)
    unbounded = tab.run(cost1, lambda j: True)
    if unbounded is not None:  # pragma: no cover - phase 1 is always bounded
        raise CertificateError("phase 1 reported unbounded")

    if tab.objective_value(cost1) != 0:
        y = tab.duals(cost1)
        solution = _infeasible_solution(norm, y)
    else:
        _purge_artificials(tab)
        cost2 = norm.expanded_objective() + [Fraction(0)] * (tab.n_cols - norm.n_struct)
        entering = tab.run(cost2, lambda j: j not in tab.art_cols)
        if entering is None:
            solution = _optimal_solution(norm, tab, cost2)
        else:
            solution = _unbounded_solution(norm, tab, entering)

    if verify:
        check_certificate(problem, solution)
    return solution


def _purge_artificials(tab: _Tableau):
    """Pivot zero-level artificials out of the basis; drop redundant rows."""
    i = 0
    while i < len(tab.matrix):
        if tab.basis[i] in tab.art_cols:
            target = None
            for j in range(tab.n_cols):
                if j not in tab.art_cols and tab.matrix[i][j] != 0:
                    target = j
                    break
            if target is None:
                tab.drop_row(i)
                continue
            tab.pivot(i, target)
        i += 1


def _struct_values(tab: _Tableau) -> list[Fraction]:
    values = [Fraction(0)] * tab.n_cols
    for i, col in enumerate(tab.basis):
        values[col] = tab.b[i]
    return values[:tab.norm.n_struct]


def _optimal_solution(norm: _Normalized, tab: _Tableau, cost2) -> LPSolution:
    p = norm.problem
    x = norm.collapse(_struct_values(tab))
    value = tab.objective_value(cost2)
    y = tab.duals(cost2)
    row_duals = tuple(norm.flip[i] * y[i] for i in range(len(p.rows)))
    bound_duals = [Fraction(0)] * p.n_vars()
    for j, internal in norm.bound_row_of_var.items():
        bound_duals[j] = norm.flip[internal] * y[internal]
    return LPSolution(LPStatus.OPTIMAL, x=x, objective_value=value,
                      row_duals=row_duals, bound_duals=tuple(bound_duals))


def _infeasible_solution(norm: _Normalized, y) -> LPSolution:
    p = norm.problem
    farkas_rows = tuple(norm.flip[i] * y[i] for i in range(len(p.rows)))
    farkas_bounds = [Fraction(0)] * p.n_vars()
    for j, internal in norm.bound_row_of_var.items():
        farkas_bounds[j] = norm.flip[internal] * y[internal]
    return LPSolution(LPStatus.INFEASIBLE, farkas_rows=farkas_rows,
                      farkas_bounds=tuple(farkas_bounds))


def _unbounded_solution(norm: _Normalized, tab: _Tableau, entering: int) -> LPSolution:
    origin = norm.collapse(_struct_values(tab))
    direction = [Fraction(0)] * tab.n_cols
    direction[entering] = Fraction(1)
    for i, col in enumerate(tab.basis):
        direction[col] = -tab.matrix[i][entering]
    ray = norm.collapse(direction[:norm.n_struct])
    return LPSolution(LPStatus.UNBOUNDED, ray=ray, ray_origin=origin)


# ----------------------------------------------------------------------
# independent certificate checker
# ----------------------------------------------------------------------


def _require(condition: bool, message: str):
    if not condition:
        raise CertificateError(message)


def _check_primal_feasible(p: LPProblem, x: Sequence[Fraction]):
    _require(len(x) == p.n_vars(), "primal vector has wrong length")
    for j in range(p.n_vars()):
        if p.lower[j] is not None:
            _require(x[j] >= p.lower[j], f"variable {j} below lower bound")
        if p.upper[j] is not None:
            _require(x[j] <= p.upper[j], f"variable {j} above upper bound")
    for i, row in enumerate(p.rows):
        lhs = sum((a * v for a, v in zip(row, x)), Fraction(0))
        rel = p.relations[i]
        if rel == LEQ:
            _require(lhs <= p.rhs[i], f"row {i} violated")
        elif rel == GEQ:
            _require(lhs >= p.rhs[i], f"row {i} violated")
        else:
            _require(lhs == p.rhs[i], f"row {i} violated")


def _check_multiplier_signs(p: LPProblem, mults: Sequence[Fraction], label: str):
    for i, rel in enumerate(p.relations):
        if rel == LEQ:
            _require(mults[i] >= 0, f"{label} sign wrong on <= row {i}")
        elif rel == GEQ:
            _require(mults[i] <= 0, f"{label} sign wrong on >= row {i}")


def check_certificate(p: LPProblem, sol: LPSolution):
    """Re-validate a solution from the original data; raises CertificateError."""
    if sol.status is LPStatus.OPTIMAL:
        _require(sol.x is not None and sol.row_duals is not None
                 and sol.bound_duals is not None and sol.objective_value is not None,
                 "optimal solution missing fields")
        _check_primal_feasible(p, sol.x)
        value = sum((c * v for c, v in zip(p.objective, sol.x)), Fraction(0))
        _require(value == sol.objective_value, "objective value mismatch")
        _check_multiplier_signs(p, sol.row_duals, "dual")
        dual_value = sum((y * b for y, b in zip(sol.row_duals, p.rhs)), Fraction(0))
        for j in range(p.n_vars()):
            u = sol.bound_duals[j]
            _require(u >= 0, f"upper-bound dual {j} negative")
            if p.upper[j] is None:
                _require(u == 0, f"dual on absent upper bound {j}")
            else:
                dual_value += u * p.upper[j]
            slack = sum((sol.row_duals[i] * p.rows[i][j] for i in range(len(p.rows))),
                        Fraction(0)) + u - p.objective[j]
            if p.lower[j] is None:
                _require(slack == 0, f"dual constraint {j} not tight for free variable")
            else:
                _require(slack >= 0, f"dual constraint {j} violated")
        _require(dual_value == sol.objective_value,
                 "duality gap nonzero")
    elif sol.status is LPStatus.INFEASIBLE:
        _require(sol.farkas_rows is not None and sol.farkas_bounds is not None,
                 "infeasibility certificate missing")
        _check_multiplier_signs(p, sol.farkas_rows, "Farkas")
        total = sum((lam * b for lam, b in zip(sol.farkas_rows, p.rhs)), Fraction(0))
        for j in range(p.n_vars()):
            mu = sol.farkas_bounds[j]
            _require(mu >= 0, f"Farkas bound multiplier {j} negative")
            if p.upper[j] is None:
                _require(mu == 0, f"Farkas multiplier on absent upper bound {j}")
            else:
                total += mu * p.upper[j]
            aggregated = sum((sol.farkas_rows[i] * p.rows[i][j]
                              for i in range(len(p.rows))), Fraction(0)) + mu
            if p.lower[j] is None:
                _require(aggregated == 0, f"Farkas aggregation nonzero on free variable {j}")
            else:
                _require(aggregated >= 0, f"Farkas aggregation negative on variable {j}")
        _require(total < 0, "Farkas certificate does not prove infeasibility")
    elif sol.status is LPStatus.UNBOUNDED:
        _require(sol.ray is not None and sol.ray_origin is not None,
                 "unboundedness certificate missing")
        _check_primal_feasible(p, sol.ray_origin)
        gain = Fraction(0)
        for j in range(p.n_vars()):
            gain += p.objective[j] * sol.ray[j]
            if p.lower[j] is not None:
                _require(sol.ray[j] >= 0, f"ray leaves lower bound of variable {j}")
            if p.upper[j] is not None:
                _require(sol.ray[j] <= 0, f"ray leaves upper bound of variable {j}")
        for i, row in enumerate(p.rows):
            move = sum((a * r for a, r in zip(row, sol.ray)), Fraction(0))
            rel = p.relations[i]
            if rel == LEQ:
                _require(move <= 0, f"ray violates <= row {i}")
            elif rel == GEQ:
                _require(move >= 0, f"ray violates >= row {i}")
            else:
                _require(move == 0, f"ray violates = row {i}")
        _require(gain > 0, "ray does not improve the objective")
    else:  # pragma: no cover
        raise CertificateError(f"unknown status {sol.status!r}")
