"""Command-line surface: classify procedures, run example reports, evaluate
Levi-Civita expressions, and emit machine-readable certificates.

Commands::

    lcbayes finite classify <problem.json> --procedures <file>
    lcbayes finite synthesize-prior <problem.json> --procedure <index>
    lcbayes example {normal-location | bernoulli-boundary} [--dim D] [--order N]
    lcbayes lc eval <expr> [--order N]

Global flags: ``--format json|text`` and ``--order N`` (default 8).

Machine output is exact: rationals as "p/q" strings and Levi-Civita
values in the canonical series syntax; decimal approximations appear
only in text format.  Identical inputs and flags produce byte-identical
JSON.  Exit codes: 0 success, 2 malformed input or unknown example,
3 internal certificate failure, 4 division by zero in ``lc eval``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .decision import (SchemaError, problem_from_json,
                       procedure_to_json_dict, procedures_from_json)
from .families import (BernoulliBoundaryReport, NormalLocationReport,
                       bernoulli_boundary_report, normal_location_report)
from .lcnum import LCNumber, LCParseError, NotNearStandard, evaluate
from .priors import ClassificationReport, GameAnalysis, classify, synthesize_prior
from .ratlp import CertificateError

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_CERTIFICATE = 3
EXIT_DIV_ZERO = 4


def _rat(value: Fraction) -> str:
    return str(value)


def _lc(value: LCNumber) -> str:
    return str(value)


def _emit_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=2)


def _st_fields(value: LCNumber) -> dict:
    v = value.valuation()
    out = {"valuation": "+inf" if v is None else _rat(v)}
    if value.is_near_standard():
        out["st"] = _rat(value.standard_part())
    else:
        out["st"] = "undefined"
    return out


# ----------------------------------------------------------------------
# payload builders
# ----------------------------------------------------------------------


def classification_payload(report: ClassificationReport) -> dict:
    payload = {
        "procedure": procedure_to_json_dict(report.procedure),
        "admissible": report.admissible,
        "extended_admissible": report.extended_admissible,
        "epsilon_star": _rat(report.epsilon_star),
        "game_value": _rat(report.game_value),
        "prior": [_rat(w) for w in report.witness_prior.weights],
        "bayes_slack": _rat(report.bayes_slack),
    }
    if report.witness is not None:
        payload["witness"] = procedure_to_json_dict(report.witness)
    return payload


def game_payload(game: GameAnalysis) -> dict:
    return {
        "game_value": _rat(game.value),
        "prior": [_rat(w) for w in game.witness_prior.weights],
        "slack": _rat(game.slack),
        "inner_best_responses": [list(acts) for acts in game.inner_best_responses],
        "prior_possibly_nonunique": game.prior_possibly_nonunique,
    }


def normal_location_payload(report: NormalLocationReport) -> dict:
    regularity = {
        "verdict": report.regularity.verdict,
        "epsilon": _lc(report.regularity_epsilon),
    }
    if report.regularity.witness is not None:
        center, radius = report.regularity.witness
        regularity["witness_probe"] = {
            "center": [_rat(c) for c in center],
            "radius": _rat(radius),
        }
    payload = {
        "example": "normal-location",
        "dim": report.dim,
        "order": report.order,
        "prior_scale": _lc(report.scale),
        "shrinkage": _lc(report.shrinkage),
        "shrinkage_st": _rat(report.shrinkage_st),
        "shrinkage_bayes_risk": _lc(report.shrinkage_bayes_risk),
        "sample_mean_bayes_risk": _lc(report.sample_mean_bayes_risk),
        "gap": _lc(report.gap),
        "gap_closed_form": report.gap_closed_form,
        "gap_is_infinitesimal": report.gap_is_infinitesimal,
        "gap_st": _rat(report.gap.standard_part()),
        "risk_constant_coefficient": _lc(report.risk_constant_coefficient),
        "risk_norm_coefficient": _lc(report.risk_norm_coefficient),
        "regularity": regularity,
    }
    if report.discrepancy_note is not None:
        payload["regularity_discrepancy_note"] = report.discrepancy_note
    return payload


def bernoulli_payload(report: BernoulliBoundaryReport) -> dict:
    return {
        "example": "bernoulli-boundary",
        "order": report.order,
        "lc_point": _lc(report.lc_point),
        "lc_bayes_risk": _lc(report.lc_bayes_risk),
        "lc_bayes_risk_st": _rat(report.lc_bayes_risk_st),
        "risk_at_half": _rat(report.risk_at_half),
        "risk_at_zero": _rat(report.risk_at_zero),
        "non_bayes": [
            {
                "prior": entry.prior_label,
                "optimal_rule": [_rat(entry.optimal_rule[0]), _rat(entry.optimal_rule[1])],
                "optimal_bayes_risk": _rat(entry.optimal_bayes_risk),
                "candidate_bayes_risk": _rat(entry.candidate_bayes_risk),
                "excess": _rat(entry.excess),
            }
            for entry in report.non_bayes
        ],
        "no_dominator_found": not report.dominators_found,
        "dominators": [[_rat(a), _rat(b)] for a, b in report.dominators_found],
        "challenger_count": report.challenger_count,
        "state_count": report.state_count,
    }


# ----------------------------------------------------------------------
# text rendering
# ----------------------------------------------------------------------


def _render_text(payload, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    if isinstance(payload, dict):
        width = max((len(k) for k in payload), default=0)
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key.ljust(width)}  {value}")
    elif isinstance(payload, list):
        for i, value in enumerate(payload):
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}[{i}]")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {value}")
    else:
        lines.append(f"{pad}{payload}")
    return lines


def _decimal(value: str) -> str:
    try:
        return f"{float(Fraction(value)):.6g}"
    except (ValueError, ZeroDivisionError):
        return ""


def _print_payload(payload, fmt: str):
    if fmt == "json":
        print(_emit_json(payload))
    else:
        lines = _render_text(payload)
        # annotate exact standard parts with a decimal approximation
        annotated = []
        for line in lines:
            key = line.strip().split(" ", 1)[0]
            if key.rstrip(":") in ("st", "gap_st", "shrinkage_st", "lc_bayes_risk_st"):
                parts = line.rsplit(" ", 1)
                approx = _decimal(parts[-1]) if len(parts) == 2 else ""
                if approx:
                    line = f"{line}  (~ {approx})"
            annotated.append(line)
        print("\n".join(annotated))


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def _cmd_finite_classify(args, fmt: str) -> int:
    try:
        problem = problem_from_json(Path(args.problem).read_text())
        procedures = procedures_from_json(Path(args.procedures).read_text())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    reports = []
    for procedure in procedures:
        reports.append(classification_payload(classify(problem, procedure)))
    _print_payload(reports, fmt)
    return EXIT_OK


def _cmd_finite_synthesize(args, fmt: str) -> int:
    try:
        problem = problem_from_json(Path(args.problem).read_text())
        procedures = procedures_from_json(Path(args.procedures).read_text()) \
            if args.procedures else None
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if procedures is None:
        print("error: --procedures file required to pick --procedure from",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.procedure < 0 or args.procedure >= len(procedures):
        print(f"error: procedure index {args.procedure} out of range",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    game = synthesize_prior(problem, procedures[args.procedure])
    _print_payload(game_payload(game), fmt)
    return EXIT_OK


def _cmd_example(args, fmt: str, order: int) -> int:
    if args.name == "normal-location":
        if args.dim < 1:
            print("error: --dim must be >= 1", file=sys.stderr)
            return EXIT_BAD_INPUT
        report = normal_location_report(args.dim, order=order)
        _print_payload(normal_location_payload(report), fmt)
        return EXIT_OK
    if args.name == "bernoulli-boundary":
        report = bernoulli_boundary_report(order=order)
        _print_payload(bernoulli_payload(report), fmt)
        return EXIT_OK
    print(f"error: unknown example {args.name!r}", file=sys.stderr)
    return EXIT_BAD_INPUT


def _cmd_lc_eval(args, fmt: str, order: int) -> int:
    try:
        value = evaluate(args.expr, order=order)
    except LCParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ZeroDivisionError:
        print("error: division by zero", file=sys.stderr)
        return EXIT_DIV_ZERO
    payload = {"value": _lc(value), "order": order}
    payload.update(_st_fields(value))
    _print_payload(payload, fmt)
    return EXIT_OK


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcbayes",
        description="Exact decision-theory certificates over rational and "
                    "Levi-Civita arithmetic.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--order", type=int, default=8,
                        help="Levi-Civita truncation order (default 8)")
    sub = parser.add_subparsers(dest="command", required=True)

    finite = sub.add_parser("finite", help="finite decision problem commands")
    finite_sub = finite.add_subparsers(dest="subcommand", required=True)
    cls = finite_sub.add_parser("classify", help="classify procedures")
    cls.add_argument("problem")
    cls.add_argument("--procedures", required=True)
    syn = finite_sub.add_parser("synthesize-prior", help="witness prior for one procedure")
    syn.add_argument("problem")
    syn.add_argument("--procedures", required=True)
    syn.add_argument("--procedure", type=int, required=True)

    ex = sub.add_parser("example", help="built-in example reports")
    ex.add_argument("name")
    ex.add_argument("--dim", type=int, default=1)
    ex.add_argument("--order", dest="sub_order", type=int, default=None)
    ex.add_argument("--format", dest="sub_format", choices=("json", "text"), default=None)

    lc = sub.add_parser("lc", help="Levi-Civita arithmetic")
    lc_sub = lc.add_subparsers(dest="subcommand", required=True)
    ev = lc_sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr")
    ev.add_argument("--order", dest="sub_order", type=int, default=None)
    ev.add_argument("--format", dest="sub_format", choices=("json", "text"), default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "sub_format", None) or args.format
    order = getattr(args, "sub_order", None) or args.order
    if order < 1:
        print("error: --order must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        if args.command == "finite" and args.subcommand == "classify":
            return _cmd_finite_classify(args, fmt)
        if args.command == "finite" and args.subcommand == "synthesize-prior":
            return _cmd_finite_synthesize(args, fmt)
        if args.command == "example":
            return _cmd_example(args, fmt, order)
        if args.command == "lc" and args.subcommand == "eval":
            return _cmd_lc_eval(args, fmt, order)
    except CertificateError as exc:
        print(f"internal certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    except NotNearStandard as exc:  # pragma: no cover - reports catch this
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    parser.error("unknown command")
    return EXIT_BAD_INPUT  # pragma: no cover


def entry():  # console-script entry point
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
