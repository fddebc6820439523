"""Finite statistical decision problems: model, loss, procedures, risk.

A problem tabulates states, observations and actions together with a
row-stochastic observation model P[state][obs] and a nonnegative loss
L[state][action], all exact rationals.  Procedures are nonrandomized
(one action per observation) or randomized (row-stochastic matrix).

Risk is the double sum sum_x P(x|theta) sum_a delta(x,a) L(theta,a) and
is computed exactly.  Bayes risk is generic in the prior's scalar field:
rational weights give a rational, Levi-Civita weights give a Levi-Civita
number, because :class:`lcbayes.lcnum.LCNumber` mixes with Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]


class InvalidProblem(ValueError):
    """Model/loss tables violate the problem invariants."""


class IndexOutOfRange(IndexError):
    pass


class SupportMismatch(ValueError):
    """Prior support does not live inside the problem's states."""


class WeightError(ValueError):
    """Mixture weights are negative or do not sum to one."""


class ShapeMismatch(ValueError):
    """Two procedures (or risk vectors) have incompatible shapes."""


class NoEmbedding(ValueError):
    """Actions carry no numeric values, so means are undefined."""


class SchemaError(ValueError):
    """JSON input does not conform to the problem/procedure schema."""


def _frac(value, context: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {value!r} in {context}") from exc
    raise SchemaError(f"expected exact rational in {context}, got {type(value).__name__}")


@dataclass(frozen=True)
class FiniteProblem:
    state_labels: Tuple[str, ...]
    observation_labels: Tuple[str, ...]
    action_labels: Tuple[str, ...]
    model: Tuple[Tuple[Fraction, ...], ...]
    loss: Tuple[Tuple[Fraction, ...], ...]
    state_coords: Tuple[Optional[Tuple[Fraction, ...]], ...] = ()
    action_values: Tuple[Optional[Fraction], ...] = ()

    @staticmethod
    def build(states: Sequence, observations: Sequence[str], actions: Sequence,
              model: Sequence[Sequence], loss: Sequence[Sequence]) -> "FiniteProblem":
        """Construct and validate.

        ``states`` entries are labels or (label, coords) pairs; ``actions``
        entries are labels or (label, value) pairs.
        """
        state_labels, state_coords = [], []
        for s in states:
            if isinstance(s, tuple):
                label, coords = s
                state_labels.append(str(label))
                state_coords.append(tuple(_frac(c, "state coords") for c in coords))
            else:
                state_labels.append(str(s))
                state_coords.append(None)
        action_labels, action_values = [], []
        for a in actions:
            if isinstance(a, tuple):
                label, value = a
                action_labels.append(str(label))
                action_values.append(None if value is None else _frac(a[1], "action value"))
            else:
                action_labels.append(str(a))
                action_values.append(None)
        obs_labels = tuple(str(o) for o in observations)

        n_states, n_obs, n_actions = len(state_labels), len(obs_labels), len(action_labels)
        if n_states == 0 or n_obs == 0 or n_actions == 0:
            raise InvalidProblem("states, observations and actions must be nonempty")
        model_rows = []
        for i, row in enumerate(model):
            if len(row) != n_obs:
                raise InvalidProblem(f"model row {i} has wrong length")
            vals = tuple(_frac(v, "model") for v in row)
            for v in vals:
                if v < 0 or v > 1:
                    raise InvalidProblem(f"model entry {v} outside [0,1]")
            if sum(vals) != 1:
                raise InvalidProblem(f"model row {i} does not sum to 1")
            model_rows.append(vals)
        if len(model_rows) != n_states:
            raise InvalidProblem("model must have one row per state")
        loss_rows = []
        for i, row in enumerate(loss):
            if len(row) != n_actions:
                raise InvalidProblem(f"loss row {i} has wrong length")
            vals = tuple(_frac(v, "loss") for v in row)
            for v in vals:
                if v < 0:
                    raise InvalidProblem("loss entries must be nonnegative")
            loss_rows.append(vals)
        if len(loss_rows) != n_states:
            raise InvalidProblem("loss must have one row per state")
        return FiniteProblem(tuple(state_labels), obs_labels, tuple(action_labels),
                             tuple(model_rows), tuple(loss_rows),
                             tuple(state_coords), tuple(action_values))

    @property
    def n_states(self) -> int:
        return len(self.state_labels)

    @property
    def n_observations(self) -> int:
        return len(self.observation_labels)

    @property
    def n_actions(self) -> int:
        return len(self.action_labels)


@dataclass(frozen=True)
class Procedure:
    """A decision rule; randomized rows are exactly row-stochastic."""

    kind: str  # "randomized" | "nonrandomized"
    matrix_rows: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    action_map: Optional[Tuple[int, ...]] = None

    @staticmethod
    def nonrandomized(action_map: Sequence[int]) -> "Procedure":
        return Procedure("nonrandomized", action_map=tuple(int(a) for a in action_map))

    @staticmethod
    def randomized(rows: Sequence[Sequence[Rational]]) -> "Procedure":
        mat = []
        for row in rows:
            vals = tuple(_frac(v, "procedure") for v in row)
            for v in vals:
                if v < 0 or v > 1:
                    raise InvalidProblem(f"procedure entry {v} outside [0,1]")
            if sum(vals) != 1:
                raise InvalidProblem("procedure row does not sum to 1")
            mat.append(vals)
        return Procedure("randomized", matrix_rows=tuple(mat))

    def matrix(self, n_actions: int) -> Tuple[Tuple[Fraction, ...], ...]:
        """Row-stochastic view; nonrandomized rules become 0/1 rows."""
        if self.kind == "randomized":
            return self.matrix_rows
        rows = []
        for a in self.action_map:
            if a < 0 or a >= n_actions:
                raise IndexOutOfRange(f"action index {a} out of range")
            row = [Fraction(0)] * n_actions
            row[a] = Fraction(1)
            rows.append(tuple(row))
        return tuple(rows)

    def n_rows(self) -> int:
        if self.kind == "randomized":
            return len(self.matrix_rows)
        return len(self.action_map)


@dataclass(frozen=True)
class Prior:
    """Probability weights over a finite support.

    ``support`` defaults to state indices 0..k-1; weights may be exact
    rationals or Levi-Civita numbers (for infinitesimally-supported
    beliefs over the same finite state set).
    """

    weights: tuple
    support: Optional[tuple] = None

    def __post_init__(self):
        total = None
        for w in self.weights:
            if w < 0:
                raise WeightError("prior weights must be nonnegative")
            total = w if total is None else total + w
        if total is None or total != 1:
            raise WeightError("prior weights must sum exactly to 1")
        if self.support is not None and len(self.support) != len(self.weights):
            raise WeightError("support and weights must have equal length")

    def items(self, n_states: int):
        if self.support is None:
            if len(self.weights) != n_states:
                raise SupportMismatch("prior without explicit support must weight every state")
            support = tuple(range(n_states))
        else:
            support = self.support
        for idx, w in zip(support, self.weights):
            if not isinstance(idx, int) or idx < 0 or idx >= n_states:
                raise SupportMismatch(f"support point {idx!r} is not a state index")
            yield idx, w

    @staticmethod
    def uniform(n: int) -> "Prior":
        return Prior(tuple(Fraction(1, n) for _ in range(n)))

    @staticmethod
    def point(index: int, n: int) -> "Prior":
        weights = [Fraction(0)] * n
        weights[index] = Fraction(1)
        return Prior(tuple(weights))


# ----------------------------------------------------------------------
# risk machinery
# ----------------------------------------------------------------------


def _check_shapes(problem: FiniteProblem, procedure: Procedure):
    if procedure.n_rows() != problem.n_observations:
        raise ShapeMismatch("procedure has one row per observation")
    if procedure.kind == "randomized":
        for row in procedure.matrix_rows:
            if len(row) != problem.n_actions:
                raise ShapeMismatch("procedure row length must match actions")


def risk(problem: FiniteProblem, procedure: Procedure, state_index: int) -> Fraction:
    """Expected loss at one state, exact."""
    if state_index < 0 or state_index >= problem.n_states:
        raise IndexOutOfRange(f"state index {state_index} out of range")
    _check_shapes(problem, procedure)
    mat = procedure.matrix(problem.n_actions)
    model_row = problem.model[state_index]
    loss_row = problem.loss[state_index]
    total = Fraction(0)
    for x in range(problem.n_observations):
        px = model_row[x]
        if px == 0:
            continue
        inner = Fraction(0)
        for a in range(problem.n_actions):
            w = mat[x][a]
            if w:
                inner += w * loss_row[a]
        total += px * inner
    return total


def risk_vector(problem: FiniteProblem, procedure: Procedure) -> Tuple[Fraction, ...]:
    return tuple(risk(problem, procedure, s) for s in range(problem.n_states))


def bayes_risk(problem: FiniteProblem, procedure: Procedure, prior: Prior):
    """Prior-weighted risk; exact in the prior's scalar field."""
    risks = risk_vector(problem, procedure)
    total = None
    for idx, w in prior.items(problem.n_states):
        contribution = w * risks[idx]
        total = contribution if total is None else total + contribution
    return total


def convex_combine(procedures: Sequence[Procedure], weights: Sequence[Rational],
                   n_actions: Optional[int] = None) -> Procedure:
    """Rowwise mixture; risk is linear in the mixture, exactly."""
    if not procedures:
        raise WeightError("need at least one procedure")
    ws = [_frac(w, "weights") for w in weights]
    if len(ws) != len(procedures):
        raise WeightError("one weight per procedure")
    for w in ws:
        if w < 0:
            raise WeightError("mixture weights must be nonnegative")
    if sum(ws) != 1:
        raise WeightError("mixture weights must sum exactly to 1")
    if n_actions is None:
        n_actions = max((max(p.action_map) + 1 if p.kind == "nonrandomized"
                         else len(p.matrix_rows[0])) for p in procedures)
    n_rows = procedures[0].n_rows()
    for p in procedures:
        if p.n_rows() != n_rows:
            raise ShapeMismatch("all procedures must share the observation set")
    mats = [p.matrix(n_actions) for p in procedures]
    mixed = []
    for x in range(n_rows):
        row = [Fraction(0)] * n_actions
        for w, mat in zip(ws, mats):
            for a in range(n_actions):
                row[a] += w * mat[x][a]
        mixed.append(tuple(row))
    return Procedure("randomized", matrix_rows=tuple(mixed))


def loss_convex_along_embedding(problem: FiniteProblem) -> bool:
    """Discrete convexity of each loss row along the embedded action values.

    Checked by nondecreasing difference quotients between consecutive
    embedded actions (exact second-difference test for uneven spacing).
    """
    values = problem.action_values
    if any(v is None for v in values):
        raise NoEmbedding("actions carry no numeric embedding")
    idx = sorted(range(problem.n_actions), key=lambda a: values[a])
    for loss_row in problem.loss:
        for k in range(len(idx) - 2):
            a0, a1, a2 = idx[k], idx[k + 1], idx[k + 2]
            left = (loss_row[a1] - loss_row[a0]) / (values[a1] - values[a0])
            right = (loss_row[a2] - loss_row[a1]) / (values[a2] - values[a1])
            if right < left:
                return False
    return True


def derandomize(problem: FiniteProblem, procedure: Procedure) -> Procedure:
    """Replace each randomized row by its mean action.

    The mean of the embedded action values is snapped to the nearest
    embedded action (ties to the lower index).  When the mean lies
    exactly on an embedded action and the loss is convex along the
    embedding, the result's risk is pointwise no worse.
    """
    if procedure.kind == "nonrandomized":
        return procedure
    values = problem.action_values
    if any(v is None for v in values):
        raise NoEmbedding("actions carry no numeric embedding")
    _check_shapes(problem, procedure)
    chosen = []
    for row in procedure.matrix_rows:
        mean = sum((w * values[a] for a, w in enumerate(row)), Fraction(0))
        best, best_dist = 0, None
        for a in range(problem.n_actions):
            dist = abs(values[a] - mean)
            if best_dist is None or dist < best_dist:
                best, best_dist = a, dist
        chosen.append(best)
    return Procedure.nonrandomized(chosen)


# ----------------------------------------------------------------------
# JSON interchange
# ----------------------------------------------------------------------


def problem_to_json(problem: FiniteProblem) -> str:
    states = []
    for label, coords in zip(problem.state_labels, problem.state_coords):
        entry = {"label": label}
        if coords is not None:
            entry["coords"] = [str(c) for c in coords]
        states.append(entry)
    actions = []
    for label, value in zip(problem.action_labels, problem.action_values):
        entry = {"label": label}
        if value is not None:
            entry["value"] = str(value)
        actions.append(entry)
    payload = {
        "states": states,
        "observations": list(problem.observation_labels),
        "actions": actions,
        "model": [[str(v) for v in row] for row in problem.model],
        "loss": [[str(v) for v in row] for row in problem.loss],
    }
    return json.dumps(payload, sort_keys=True)


def problem_from_json(text: str) -> FiniteProblem:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    try:
        states = []
        for entry in payload["states"]:
            if "coords" in entry:
                states.append((entry["label"],
                               tuple(_frac(c, "coords") for c in entry["coords"])))
            else:
                states.append(entry["label"])
        actions = []
        for entry in payload["actions"]:
            if "value" in entry and entry["value"] is not None:
                actions.append((entry["label"], _frac(entry["value"], "action value")))
            else:
                actions.append(entry["label"])
        return FiniteProblem.build(states, payload["observations"], actions,
                                   payload["model"], payload["loss"])
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"problem JSON missing field: {exc}") from exc
    except InvalidProblem as exc:
        raise SchemaError(str(exc)) from exc


def procedure_to_json_dict(procedure: Procedure) -> dict:
    if procedure.kind == "nonrandomized":
        return {"kind": "nonrandomized", "map": list(procedure.action_map)}
    return {"kind": "randomized",
            "matrix": [[str(v) for v in row] for row in procedure.matrix_rows]}


def procedure_from_json_dict(payload: dict) -> Procedure:
    try:
        kind = payload["kind"]
        if kind == "nonrandomized":
            return Procedure.nonrandomized(payload["map"])
        if kind == "randomized":
            return Procedure.randomized(payload["matrix"])
    except (KeyError, TypeError, InvalidProblem) as exc:
        raise SchemaError(f"bad procedure JSON: {exc}") from exc
    raise SchemaError(f"unknown procedure kind {payload.get('kind')!r}")


def procedures_from_json(text: str) -> Tuple[Procedure, ...]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, list):
        raise SchemaError("procedures file must contain a JSON array")
    return tuple(procedure_from_json_dict(entry) for entry in payload)
