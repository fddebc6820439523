"""Exact admissibility verdicts for finite decision problems.

Domination and admissibility are decided against the full randomized
class by linear programming over the product of per-observation action
simplices.  The extreme points of that polytope are the nonrandomized
rules, so verdicts against "all randomized procedures" and against
"all mixtures of nonrandomized rules" coincide; no enumeration of the
|A|^|X| nonrandomized rules is ever needed.

All verdicts are exact: epsilon-star is the exact optimum of a rational
LP, and witnesses are procedures extracted from the LP solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .decision import (FiniteProblem, Procedure, ShapeMismatch, risk_vector)
from .lcnum import LCNumber, approx_eq
from .ratlp import LEQ, EQ, LPProblem, LPStatus, solve_lp

ALL_RANDOMIZED = "all-randomized"


@dataclass(frozen=True)
class DominationQuery:
    problem: FiniteProblem
    candidate: Procedure
    epsilon: Fraction = Fraction(0)
    challenger_class: Union[str, Tuple[Procedure, ...]] = ALL_RANDOMIZED

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    extended_admissible: bool
    epsilon_star: Fraction
    witness: Optional[Procedure] = None


def check_domination(query: DominationQuery, challenger: Procedure) -> bool:
    """Does the challenger epsilon-dominate the query's candidate?

    Clause 1: challenger risk <= candidate risk - epsilon at every state.
    Clause 2: risks differ at some state; implied by clause 1 when
    epsilon > 0, so it is only evaluated at epsilon = 0.
    """
    cand = risk_vector(query.problem, query.candidate)
    chal = risk_vector(query.problem, challenger)
    eps = query.epsilon
    if any(c > r - eps for c, r in zip(chal, cand)):
        return False
    if eps > 0:
        return True
    return any(c != r for c, r in zip(chal, cand))


def is_epsilon_dominated(query: DominationQuery) -> Tuple[bool, Optional[Procedure]]:
    """Decide epsilon-domination within the query's challenger class.

    For an explicit challenger list, each challenger is tested directly.
    Against all randomized procedures the decision reduces to the
    uniform-improvement LP: for epsilon > 0 a dominator exists iff
    epsilon <= epsilon*, and for epsilon = 0 iff the candidate is
    inadmissible (the LP witnesses are returned).
    """
    if isinstance(query.challenger_class, tuple):
        for challenger in query.challenger_class:
            if check_domination(query, challenger):
                return True, challenger
        return False, None
    if query.challenger_class != ALL_RANDOMIZED:
        raise ValueError(f"unknown challenger class {query.challenger_class!r}")
    epsilon_star, witness = max_uniform_improvement(query.problem, query.candidate)
    if query.epsilon > 0:
        if query.epsilon <= epsilon_star:
            return True, witness
        return False, None
    verdict = check_admissible(query.problem, query.candidate)
    if not verdict.admissible:
        return True, verdict.witness
    return False, None


def _score_table(problem: FiniteProblem) -> list[list[list[Fraction]]]:
    """score[theta][x][a] = P_theta(x) * loss(theta, a)."""
    table = []
    for s in range(problem.n_states):
        model_row = problem.model[s]
        loss_row = problem.loss[s]
        table.append([[model_row[x] * loss_row[a] for a in range(problem.n_actions)]
                      for x in range(problem.n_observations)])
    return table


def _procedure_from_values(problem: FiniteProblem, values: Sequence[Fraction],
                           offset: int) -> Procedure:
    rows = []
    for x in range(problem.n_observations):
        start = offset + x * problem.n_actions
        rows.append(tuple(values[start:start + problem.n_actions]))
    return Procedure("randomized", matrix_rows=tuple(rows))


def max_uniform_improvement(problem: FiniteProblem,
                            procedure: Procedure) -> Tuple[Fraction, Procedure]:
    """The largest uniform risk improvement available over the candidate.

    Solves: maximize e over randomized rules D with
    risk(theta, D) <= risk(theta, candidate) - e for every theta.
    Taking D = candidate shows e = 0 is always feasible, so the optimum
    is >= 0; the candidate is extended admissible (among all randomized
    procedures) exactly when the optimum is 0.
    """
    target = risk_vector(problem, procedure)
    n_obs, n_act = problem.n_observations, problem.n_actions
    n_vars = 1 + n_obs * n_act  # e, then delta(x, a) row-major
    score = _score_table(problem)

    objective = [Fraction(0)] * n_vars
    objective[0] = Fraction(1)
    rows, relations, rhs = [], [], []
    for s in range(problem.n_states):
        row = [Fraction(0)] * n_vars
        row[0] = Fraction(1)
        for x in range(n_obs):
            for a in range(n_act):
                row[1 + x * n_act + a] = score[s][x][a]
        rows.append(row)
        relations.append(LEQ)
        rhs.append(target[s])
    for x in range(n_obs):
        row = [Fraction(0)] * n_vars
        for a in range(n_act):
            row[1 + x * n_act + a] = Fraction(1)
        rows.append(row)
        relations.append(EQ)
        rhs.append(Fraction(1))

    lower: list[Optional[Fraction]] = [None] + [Fraction(0)] * (n_obs * n_act)
    lp = LPProblem.build(objective, rows, relations, rhs, lower=lower)
    sol = solve_lp(lp)
    assert sol.status is LPStatus.OPTIMAL
    witness = _procedure_from_values(problem, sol.x, offset=1)
    return sol.objective_value, witness


def check_admissible(problem: FiniteProblem, procedure: Procedure) -> AdmissibilityVerdict:
    """Exact admissibility and extended admissibility in one verdict.

    Admissibility: maximize the total slack sum_theta s_theta subject to
    risk(theta, D) + s_theta = risk(theta, candidate), s >= 0, over
    randomized D.  The candidate is admissible iff the optimum is 0;
    otherwise the optimizing D dominates it (weakly everywhere, strictly
    where s_theta > 0).
    """
    target = risk_vector(problem, procedure)
    n_states, n_obs, n_act = problem.n_states, problem.n_observations, problem.n_actions
    n_vars = n_states + n_obs * n_act  # s_theta, then delta(x, a)
    score = _score_table(problem)

    objective = [Fraction(1)] * n_states + [Fraction(0)] * (n_obs * n_act)
    rows, relations, rhs = [], [], []
    for s in range(n_states):
        row = [Fraction(0)] * n_vars
        row[s] = Fraction(1)
        for x in range(n_obs):
            for a in range(n_act):
                row[n_states + x * n_act + a] = score[s][x][a]
        rows.append(row)
        relations.append(EQ)
        rhs.append(target[s])
    for x in range(n_obs):
        row = [Fraction(0)] * n_vars
        for a in range(n_act):
            row[n_states + x * n_act + a] = Fraction(1)
        rows.append(row)
        relations.append(EQ)
        rhs.append(Fraction(1))

    lp = LPProblem.build(objective, rows, relations, rhs)
    sol = solve_lp(lp)
    assert sol.status is LPStatus.OPTIMAL
    admissible = sol.objective_value == 0

    epsilon_star, uniform_witness = max_uniform_improvement(problem, procedure)
    extended = epsilon_star == 0

    witness = None
    if not admissible:
        witness = _procedure_from_values(problem, sol.x, offset=n_states)
    elif not extended:
        witness = uniform_witness
    return AdmissibilityVerdict(admissible=admissible, extended_admissible=extended,
                                epsilon_star=epsilon_star, witness=witness)


def check_lc_domination(candidate_risks: Sequence[LCNumber],
                        challenger_risks: Sequence[LCNumber],
                        epsilon,
                        standard_points: Optional[Sequence[bool]] = None,
                        clause_two_mode: str = "standard") -> bool:
    """Domination with infinitesimal comparisons over a tagged grid.

    Clause 1 (challenger <= candidate - epsilon) is checked at every grid
    point.  Clause 2 (risks not infinitesimally close) is checked on the
    standard-tagged points when ``clause_two_mode == "standard"``, or on
    all points with ``"all"``.  With an infinitesimal gap everywhere,
    clause 2 fails and the challenger does not dominate.
    """
    if len(candidate_risks) != len(challenger_risks):
        raise ShapeMismatch("risk vectors must have equal length")
    if standard_points is None:
        standard_points = [True] * len(candidate_risks)
    if len(standard_points) != len(candidate_risks):
        raise ShapeMismatch("one standard tag per grid point")
    if clause_two_mode not in ("standard", "all"):
        raise ValueError("clause_two_mode must be 'standard' or 'all'")

    for cand, chal in zip(candidate_risks, challenger_risks):
        if not (chal <= cand - epsilon):
            return False
    for cand, chal, tagged in zip(candidate_risks, challenger_risks, standard_points):
        if clause_two_mode == "all" or tagged:
            if not approx_eq(chal, cand):
                return True
    return False
