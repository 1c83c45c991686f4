"""Command-line entry point.

Subcommands: ``basis``, ``decompose``, ``bounds``, ``classify``, ``measure``,
``tradeoff``, ``verify``. States come either from a JSON document
(``--state FILE``) or inline (``--builtin NAME --d ... [--parties/--x]``).
Reports print as JSON (``--format json``) or as indented text carrying the
same values. Exit codes: 0 on success, 1 when a verification sweep fails,
2 on input or validation errors (one diagnostic line on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .basis import generate_basis
from .bloch import bloch_tensor, full_decomposition, tensor_norm_sq
from .bounds import (
    CLASS_LABELS,
    COMPARISON_TOL,
    bound_table,
    classify,
    et_bound_audit,
    et_measure,
    et_upper_bound,
    separability_thresholds,
    tradeoff_check,
)
from .serialize import BUILTIN_NAMES, as_density, state_from_json, state_to_json
from .states import DensityMatrix, as_pure, purity
from .sweeps import MIXED_GINIBRE, PURE_HAAR, SampleSpec, available_checks, run_sweep

TOL_ENV_VAR = "BLOCHBOUNDS_TOL"


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _build_parser():
    parser = _Parser(prog="blochbounds", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    basis = subs.add_parser("basis", help="print the generator basis for one dimension")
    basis.add_argument("--d", type=int, required=True, help="local dimension")
    _format_argument(basis)
    basis.set_defaults(handler=_cmd_basis)

    decompose = subs.add_parser("decompose", help="correlation tensors of a state")
    _state_arguments(decompose)
    decompose.add_argument(
        "--subset", help="restrict to one party subset, e.g. 1,2,4 (default: all)"
    )
    decompose.add_argument(
        "--dump-state", metavar="FILE", help="also write the validated state as matrix-kind JSON"
    )
    _format_argument(decompose)
    decompose.set_defaults(handler=_cmd_decompose)

    bounds_cmd = subs.add_parser("bounds", help="closed-form bounds and thresholds")
    bounds_cmd.add_argument("--d", type=int, required=True, help="local dimension")
    _format_argument(bounds_cmd)
    bounds_cmd.set_defaults(handler=_cmd_bounds)

    classify_cmd = subs.add_parser(
        "classify", help="excluded separability classes of a four-party state"
    )
    _state_arguments(classify_cmd)
    _tol_argument(classify_cmd)
    _format_argument(classify_cmd)
    classify_cmd.set_defaults(handler=_cmd_classify)

    measure = subs.add_parser("measure", help="tensor-norm measure of a pure state")
    _state_arguments(measure)
    _format_argument(measure)
    measure.set_defaults(handler=_cmd_measure)

    tradeoff = subs.add_parser(
        "tradeoff", help="joint three-party norm budget of a four-party state"
    )
    _state_arguments(tradeoff)
    _tol_argument(tradeoff)
    _format_argument(tradeoff)
    tradeoff.set_defaults(handler=_cmd_tradeoff)

    verify = subs.add_parser("verify", help="randomized sweep over bounds and identities")
    verify.add_argument("--d", type=int, required=True, help="local dimension")
    verify.add_argument("--parties", type=int, required=True, help="party count")
    verify.add_argument("--samples", type=int, required=True, help="number of samples")
    verify.add_argument("--seed", type=int, required=True, help="64-bit base seed")
    verify.add_argument(
        "--kind", choices=(PURE_HAAR, MIXED_GINIBRE), default=PURE_HAAR
    )
    verify.add_argument("--rank", type=int, help="rank cap for mixed-ginibre samples")
    verify.add_argument(
        "--checks",
        help="comma-separated check names (default: all applicable); "
        f"known: {','.join(available_checks())}",
    )
    _tol_argument(verify)
    _format_argument(verify)
    verify.set_defaults(handler=_cmd_verify)
    return parser


def _format_argument(sub):
    sub.add_argument("--format", choices=("json", "text"), default="text")


def _tol_argument(sub):
    sub.add_argument(
        "--tol",
        type=float,
        help=f"comparison tolerance (default {COMPARISON_TOL}, or ${TOL_ENV_VAR})",
    )


def _state_arguments(sub):
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument("--state", metavar="FILE", help="JSON state document")
    source.add_argument("--builtin", choices=BUILTIN_NAMES, help="inline builtin state")
    sub.add_argument("--d", type=int, help="local dimension (builtin only)")
    sub.add_argument("--parties", type=int, help="party count (builtin ghz only)")
    sub.add_argument("--x", type=float, help="mixing weight (builtin isotropic_ghz4 only)")


def _resolve_tol(args):
    tol = getattr(args, "tol", None)
    if tol is None:
        raw = os.environ.get(TOL_ENV_VAR)
        if raw is not None:
            try:
                tol = float(raw)
            except ValueError:
                raise _CliError(f"{TOL_ENV_VAR} must be a number, got {raw!r}") from None
    if tol is None:
        return None
    if not tol > 0:
        raise _CliError(f"tolerance must be positive, got {tol}")
    return tol


def _load_state(args):
    if args.state:
        with open(args.state, "r", encoding="utf-8") as handle:
            return state_from_json(json.load(handle))
    if args.d is None:
        raise _CliError("--builtin requires --d")
    obj = {"kind": "builtin", "name": args.builtin, "d": args.d, "params": {}}
    if args.builtin == "ghz":
        if args.parties is None:
            raise _CliError("--builtin ghz requires --parties")
        obj["parties"] = args.parties
    elif args.builtin == "isotropic_ghz4":
        if args.x is None:
            raise _CliError("--builtin isotropic_ghz4 requires --x")
        obj["params"]["x"] = args.x
    return state_from_json(obj)


def _parse_subset(raw):
    try:
        return tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise _CliError(f"--subset must be comma-separated integers, got {raw!r}") from None


def _cmd_basis(args):
    basis = generate_basis(args.d)
    generators = []
    for label, matrix in zip(basis.labels, basis):
        generators.append(
            {
                "label": label,
                "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in matrix],
            }
        )
    return {"d": basis.local_dim, "count": len(basis), "generators": generators}, 0


def _cmd_decompose(args):
    rho = as_density(_load_state(args))
    if args.dump_state:
        with open(args.dump_state, "w", encoding="utf-8") as handle:
            json.dump(state_to_json(rho), handle)
    if args.subset:
        tensors = [bloch_tensor(rho, _parse_subset(args.subset))]
    else:
        decomp = full_decomposition(rho)
        tensors = [decomp.tensors[s] for s in decomp.subsets()]
    report = {
        "d": rho.local_dim,
        "parties": rho.num_parties,
        "purity": purity(rho),
        "tensors": [
            {
                "subset": list(t.subset),
                "norm_sq": tensor_norm_sq(t),
                "coefficients": [float(c) for c in t.coefficients],
            }
            for t in tensors
        ],
    }
    return report, 0


def _cmd_bounds(args):
    table = bound_table(args.d)
    thresholds = separability_thresholds(args.d).as_dict()
    inner, outer = table.ball_radii
    audit = et_bound_audit(args.d)
    return {
        "d": table.local_dim,
        "bipartite": table.bipartite_bound,
        "tripartite": table.tripartite_bound,
        "fourpartite": table.fourpartite_bound,
        "tradeoff": table.tradeoff_bound,
        "ball_radii": {"inner": inner, "outer": outer},
        "separability_thresholds": {label: thresholds[label] for label in CLASS_LABELS},
        "measure_upper_bounds": {str(n): audit[n] for n in sorted(audit)},
    }, 0


def _cmd_classify(args):
    rho = as_density(_load_state(args))
    tol = _resolve_tol(args)
    report = classify(rho, tol) if tol is not None else classify(rho)
    return {
        "d": report.local_dim,
        "norm_sq_1234": report.norm_sq_1234,
        "thresholds": {
            label: report.thresholds.as_dict()[label] for label in CLASS_LABELS
        },
        "margins": {label: report.margins[label] for label in CLASS_LABELS},
        "excluded": [label for label in CLASS_LABELS if label in report.excluded],
        "note": report.verdict_note,
    }, 0


def _cmd_measure(args):
    state = _load_state(args)
    if isinstance(state, DensityMatrix):
        state = as_pure(state)
    value = et_measure(state)
    d, n = state.local_dim, state.num_parties
    norm_sq = tensor_norm_sq(bloch_tensor(state.density(), tuple(range(1, n + 1))))
    report = {
        "d": d,
        "parties": n,
        "norm_sq": norm_sq,
        "norm": math.sqrt(norm_sq),
        "value": value,
        "value_clamped": max(value, 0.0),
        "upper_bound": et_upper_bound(d, n) if n in (3, 4) else None,
    }
    if n in (3, 4):
        report["upper_bound_routes"] = et_bound_audit(d)[n]
    return report, 0


def _cmd_tradeoff(args):
    rho = as_density(_load_state(args))
    tol = _resolve_tol(args)
    result = tradeoff_check(rho, tol) if tol is not None else tradeoff_check(rho)
    per_triple = []
    for triple in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
        per_triple.append(
            {
                "subset": list(triple),
                "norm_sq": tensor_norm_sq(bloch_tensor(rho, triple)),
            }
        )
    return {
        "d": rho.local_dim,
        "sum_sq": result.sum_sq,
        "bound": result.bound,
        "satisfied": result.satisfied,
        "per_triple": per_triple,
    }, 0


def _cmd_verify(args):
    spec = SampleSpec(
        local_dim=args.d,
        num_parties=args.parties,
        kind=args.kind,
        count=args.samples,
        base_seed=args.seed,
        rank=args.rank,
    )
    checks = args.checks.split(",") if args.checks else None
    report = run_sweep(spec, checks=checks, tol=_resolve_tol(args))
    payload = {
        "d": spec.local_dim,
        "parties": spec.num_parties,
        "kind": spec.kind,
        "rank": spec.rank,
        "samples": spec.count,
        "seed": spec.base_seed,
        "checks": [
            {
                "name": c.name,
                "samples": c.samples,
                "max_observed": c.max_observed,
                "bound": c.bound,
                "worst_margin": c.worst_margin,
                "tolerance": c.tolerance,
                "passed": c.passed,
            }
            for c in report.checks
        ],
        "passed": report.passed,
    }
    return payload, 0 if report.passed else 1


def _inline(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return "null"
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    return str(value)


def _is_scalar_list(value):
    return isinstance(value, list) and all(
        not isinstance(item, (dict, list)) or _is_scalar_list(item) for item in value
    )


def _render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, dict) or (
                isinstance(value, list) and not _is_scalar_list(value)
            ):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) or (
                isinstance(item, list) and not _is_scalar_list(item)
            ):
                lines.append(f"{pad}-")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report, code = args.handler(args)
    except (_CliError, ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(_render_text(report)))
    return code


if __name__ == "__main__":
    sys.exit(main())
