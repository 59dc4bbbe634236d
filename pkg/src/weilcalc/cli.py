"""Command-line front end.

    weilcalc bracket --dim 2 --x "0,x1" --y "1,0"
    weilcalc verify diagrams --json
    weilcalc prolong --dim 1 --map "x1^3" --algebra D_2 --point "2 + e1"

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
parse errors.  ``--json`` prints one object with the keys ``command``,
``inputs``, ``results`` and ``passed``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

from . import category, liecalc, prolongation
from .errors import WeilError
from .expr import ExprSyntaxError, format_poly, parse_components
from .infinitesimal import InfObject
from .poly import as_scalar
from .weil import WeilElement, normal_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunReport:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)
    passed: bool = False
    exit_code: int = EXIT_OK

    def to_dict(self):
        return {"command": self.command, "inputs": self.inputs, "results": self.results, "passed": self.passed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; we want the message back
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- formatting ---------------------------------------------------------------


def _fmt_field(X: liecalc.VectorField) -> List[str]:
    return [format_poly(c) for c in X.components]


def _fmt_element(e: WeilElement, prefix: str = "X") -> str:
    return format_poly(e.to_poly(), prefix)


def _fmt_family(T: liecalc.TransformationFamily) -> List[Dict[str, str]]:
    """One ``{basis monomial: coefficient}`` dict per component, in basis order."""
    from .expr import format_monomial

    out = []
    for comp in T.components:
        out.append({
            format_monomial(T.algebra.basis[k], "d"): format_poly(p)
            for k, p in sorted(comp.parts.items())
        })
    return out


def _color(text: str, ok: bool, stream) -> str:
    if os.environ.get("NO_COLOR") is not None or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _mark(ok: bool, stream) -> str:
    return _color("PASS" if ok else "FAIL", ok, stream)


# -- input handling -----------------------------------------------------------


def _load_fields(args, names: Sequence[str]):
    """Parse the requested fields from ``--x/--y/--z`` or a ``--fields`` file."""
    data: Dict[str, Any] = {}
    if args.fields:
        try:
            with open(args.fields) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read fields file {args.fields}: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("fields file must hold a JSON object")
    dim = args.dim if args.dim is not None else data.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise UsageError("a positive --dim is required")
    fields = []
    for name in names:
        text = getattr(args, name)
        if text is None:
            raw = data.get(name)
            if raw is None:
                raise UsageError(f"missing field --{name}")
            text = ",".join(raw) if isinstance(raw, list) else str(raw)
        comps = parse_components(text, dim)
        if len(comps) != dim:
            raise UsageError(f"--{name} has {len(comps)} components, expected {dim}")
        fields.append(liecalc.VectorField.of(comps))
    return dim, fields


_BLOCK_RE = re.compile(r"D(?:\((\d+)\))?(?:_(\d+))?(?:\^(\d+))?$")


def parse_inf_object(name: str) -> InfObject:
    """``D``, ``D_3``, ``D(2)``, ``D(2)_2``, ``D^2`` and products joined by ``*`` or ``x``."""
    name = name.replace(" ", "")
    if name == "1":
        return InfObject(())
    blocks = []
    for part in re.split(r"[*x]", name):
        m = _BLOCK_RE.match(part)
        if not m:
            raise UsageError(f"cannot read infinitesimal object {part!r}")
        size, order, power = (int(g) if g else 1 for g in m.groups())
        blocks.extend([(size, order)] * power)
    return InfObject(blocks)


# -- subcommands -------------------------------------------------------------


def _cmd_bracket(args, report: RunReport):
    dim, (X, Y) = _load_fields(args, ("x", "y"))
    report.inputs = {"dim": dim, "x": _fmt_field(X), "y": _fmt_field(Y), "order": args.order}
    B = liecalc.lie_bracket(X, Y, args.order)
    report.results = {"components": _fmt_field(B)}
    report.passed = True


def _cmd_add(args, report: RunReport):
    dim, (X, Y) = _load_fields(args, ("x", "y"))
    report.inputs = {"dim": dim, "x": _fmt_field(X), "y": _fmt_field(Y), "order": args.order}
    S = liecalc.add_fields_via_D2(X, Y, args.order)
    pointwise = liecalc.VectorField.of([f + g for f, g in zip(X.components, Y.components)])
    report.results = {"components": _fmt_field(S), "equals_pointwise_sum": S == pointwise}
    report.passed = S == pointwise


def _cmd_commutator(args, report: RunReport):
    dim, (X, Y) = _load_fields(args, ("x", "y"))
    report.inputs = {"dim": dim, "x": _fmt_field(X), "y": _fmt_field(Y), "order": args.order}
    C = liecalc.commutator_family(X, Y, args.order)
    restrictions = liecalc.commutator_restrictions(C)
    identity = liecalc.identity_family(liecalc.W_D, dim)
    labels = ("(d,0)", "(0,d)", "(0,0)")
    support_ok = set(C.support()) <= {(0, 0), (1, 1)}
    report.results = {
        "family": _fmt_family(C),
        "support_in_1_and_d1d2": support_ok,
        "restrictions": {
            label: {"family": _fmt_family(R), "is_identity": R == identity}
            for label, R in zip(labels, restrictions)
        },
    }
    report.passed = support_ok and all(R == identity for R in restrictions)


def _dims(args):
    return [args.dim] if args.dim is not None else [1, 2, 3]


def _verify_module_axioms(args, report: RunReport):
    trials = args.trials if args.trials is not None else 100
    report.inputs = {"suite": "module-axioms", "dims": _dims(args), "trials": trials, "seed": args.seed}
    results = {}
    for n in _dims(args):
        r = prolongation.verify_module_axioms(n, trials, args.seed)
        results[f"n={n}"] = {"passed": r.passed, **{k: v for k, v in r.details.items() if k != "trials"}}
    report.results = results
    report.passed = all(r["passed"] for r in results.values())


def _random_triples(args, default_trials):
    """Explicit ``--x/--y/--z`` fields, or seeded random triples."""
    if args.x is not None or args.fields:
        dim, fields = _load_fields(args, ("x", "y", "z"))
        return [fields], {"dim": dim, "x": _fmt_field(fields[0]), "y": _fmt_field(fields[1]),
                          "z": _fmt_field(fields[2])}
    trials = args.trials if args.trials is not None else default_trials
    rng = random.Random(args.seed)
    triples = []
    for _ in range(trials):
        n = args.dim if args.dim is not None else rng.choice(_dims(args))
        triples.append([liecalc.random_field(rng, n) for _ in range(3)])
    return triples, {"dims": _dims(args), "trials": trials, "seed": args.seed}


def _verify_ass_laws(args, report: RunReport):
    triples, inputs = _random_triples(args, 10)
    report.inputs = {"suite": "ass-laws", **inputs}
    failures = 0
    counts: Dict[str, int] = {}
    for X, Y, Z in triples:
        r = liecalc.verify_ass_laws(*(liecalc.lift_field(F) for F in (X, Y, Z)))
        for k, v in r.details.items():
            counts[k] = counts.get(k, 0) + (not v)
        failures += not r.passed
    report.results = {"laws": {k: counts[k] == 0 for k in counts}, "failed_trials": failures}
    report.passed = failures == 0


def _verify_lie_axioms(args, report: RunReport):
    triples, inputs = _random_triples(args, 20)
    scalars = [as_scalar(s) for s in args.scalars.split(",")]
    report.inputs = {"suite": "lie-axioms", **inputs, "scalars": [str(s) for s in scalars]}
    failures = 0
    counts: Dict[str, int] = {}
    residual = None
    for fields in triples:
        r = liecalc.verify_lie_axioms(fields, scalars)
        for k, v in r.details.items():
            counts[k] = counts.get(k, 0) + (not v)
        if not r.passed:
            failures += 1
            if residual is None:
                residual = _fmt_field(r.witness["jacobi_residual"])
    report.results = {"axioms": {k: counts[k] == 0 for k in counts}, "failed_trials": failures}
    if residual is not None:
        report.results["first_jacobi_residual"] = residual
    report.passed = failures == 0


def _verify_diagrams(args, report: RunReport):
    report.inputs = {"suite": "diagrams"}
    pb = category.d2_pullback_report()
    eq = category.mult_equalizer_report()
    report.results = {
        "pullback": {"passed": pb.passed, "expected_dim": pb.expected_dim, "actual_dim": pb.actual_dim},
        "joint_equalizer": {
            "passed": eq.passed,
            "expected_dim": eq.expected_dim,
            "actual_dim": eq.actual_dim,
            "equalizer_basis": [_fmt_element(e) for e in eq.details["equalizer_basis"]],
        },
    }
    report.passed = pb.passed and eq.passed


_SUITES = {
    "module-axioms": _verify_module_axioms,
    "ass-laws": _verify_ass_laws,
    "lie-axioms": _verify_lie_axioms,
    "diagrams": _verify_diagrams,
}


def _cmd_verify(args, report: RunReport):
    _SUITES[args.suite](args, report)


def _cmd_prolong(args, report: RunReport):
    if args.dim is None or args.dim < 1:
        raise UsageError("a positive --dim is required")
    comps = parse_components(args.map, args.dim)
    f = prolongation.PolyMap.of(comps) if comps else None
    W = parse_inf_object(args.algebra).algebra
    coords = [normal_form(q, W) for q in parse_components(args.point, W.num_vars, prefix="e")]
    point = prolongation.WPoint(W, coords)
    report.inputs = {
        "dim": args.dim,
        "map": [format_poly(c) for c in comps],
        "algebra": args.algebra,
        "point": [_fmt_element(c, "e") for c in coords],
    }
    image = prolongation.prolong_map(f, W)(point)
    report.results = {
        "image": [_fmt_element(c, "e") for c in image.coords],
        "base": [str(b) for b in image.base()],
    }
    report.passed = True


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int)

    fields = _Parser(add_help=False)
    fields.add_argument("--dim", type=int)
    fields.add_argument("--x", help="comma-separated components of the first field")
    fields.add_argument("--y")
    fields.add_argument("--z")
    fields.add_argument("--fields", help='JSON file {"dim": n, "x": [...], "y": [...]}')
    fields.add_argument("--order", choices=(liecalc.FORWARD, liecalc.REVERSE), default=liecalc.FORWARD)

    parser = _Parser(prog="weilcalc", description="Exact Weil-algebra calculus of vector fields.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name, helptext in (
        ("bracket", "Lie bracket of two polynomial vector fields"),
        ("add", "sum of two fields through the D(2) construction"),
        ("commutator", "the commutator family over D^2 and its three restrictions"),
    ):
        sub.add_parser(name, parents=[common, fields], help=helptext)

    verify = sub.add_parser("verify", parents=[common, fields], help="run a verification suite")
    verify.add_argument("suite", choices=sorted(_SUITES))
    verify.add_argument("--scalars", default="2,-3,1/2", help="scalars for the bilinearity checks")

    prolong = sub.add_parser("prolong", parents=[common], help="apply a Weil prolongation to a W-point")
    prolong.add_argument("--dim", type=int, help="number of space variables x1..xn")
    prolong.add_argument("--map", required=True, help="comma-separated components in x1..xn")
    prolong.add_argument("--algebra", required=True, help="infinitesimal object, e.g. D, D_3, D(2), D^2*D")
    prolong.add_argument("--point", required=True, help="comma-separated coordinates in e1..ek")
    return parser


_COMMANDS = {
    "bracket": _cmd_bracket,
    "add": _cmd_add,
    "commutator": _cmd_commutator,
    "verify": _cmd_verify,
    "prolong": _cmd_prolong,
}


def _print_text(report: RunReport, out):
    print(f"{report.command}: {_mark(report.passed, out)}", file=out)
    for key, value in report.inputs.items():
        print(f"  {key}: {value}", file=out)
    _print_results(report.results, out, indent=2)


def _print_results(results, out, indent):
    pad = " " * indent
    for key, value in results.items():
        if isinstance(value, dict) and "passed" in value:
            print(f"{pad}{key}: {_mark(value['passed'], out)}", file=out)
            _print_results({k: v for k, v in value.items() if k != "passed"}, out, indent + 2)
        elif isinstance(value, dict):
            print(f"{pad}{key}:", file=out)
            _print_results(value, out, indent + 2)
        elif isinstance(value, bool):
            print(f"{pad}{key}: {_mark(value, out)}", file=out)
        else:
            print(f"{pad}{key}: {value}", file=out)


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> RunReport:
    """Parse ``argv``, run the command, print its report and return it."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    command = " ".join(argv[:2]) if argv[:1] == ["verify"] else (argv[0] if argv else "")
    report = RunReport(command)
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            report.exit_code = exc.code if isinstance(exc.code, int) else EXIT_OK
            report.passed = report.exit_code == EXIT_OK
            return report
        _COMMANDS[args.command](args, report)
        report.exit_code = EXIT_OK if report.passed else EXIT_FAIL
    except ExprSyntaxError as exc:
        report.inputs = {"argv": argv}
        report.results = {"error": exc.message, "position": exc.position, "text": exc.text}
        report.passed, report.exit_code = False, EXIT_USAGE
        print(f"error: {exc.message} at position {exc.position}\n{exc.caret()}", file=err)
    except (UsageError, WeilError) as exc:
        report.inputs = {"argv": argv}
        report.results = {"error": str(exc)}
        report.passed, report.exit_code = False, EXIT_USAGE
        print(f"error: {exc}", file=err)
    if want_json:
        print(report.to_json(), file=out)
    elif report.exit_code != EXIT_USAGE:
        _print_text(report, out)
    return report


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(argv).exit_code


if __name__ == "__main__":
    sys.exit(main())
