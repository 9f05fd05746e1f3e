"""Command-line front end.

Usage: ``braidcheck <command> <inputs> [options]``.  Commands:

    verify                run the axiom battery for whatever the file holds
    factorizable          Drinfeld-map rank test on a quasitriangular hopf file
    invertibility-report  both non-degeneracy criteria, cross-checked
    modular-check         modular-data axioms plus the non-degeneracy verdict
    muger-center          list transparent labels of modular data
    witt-op               product / reverse / double on representatives
    azumaya               two-route Azumaya report for an algebra file
    build-example         write a built-in presentation as a hopf file

Exit codes: 0 verdict true or all checks pass; 1 verdict false (a valid
negative answer); 2 input error; 3 internal inconsistency (two provably
equivalent criteria disagreed, which is a bug, never a verdict).

Reports go to stdout as stable JSON (sorted keys); ``--format text`` renders
a short human summary instead.  Identical inputs produce byte-identical
reports except for the duration field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .azumaya import is_azumaya, verify_algebra
from .coend import invertibility_report
from .errors import (
    BraidcheckError,
    ConventionMismatch,
    DescentFailure,
    InternalInconsistency,
    NotAGroup,
    ParseError,
    ValidationError,
)
from .examples_zoo import build_example
from .groups import group_from_table
from .hopf import drinfeld_double, is_factorizable, verify_hopf, verify_quasitriangular
from .io_formats import (
    detect_kind,
    group_to_text,
    hopf_to_text,
    modular_to_text,
    parse_algebra_text,
    parse_group_text,
    parse_hopf_text,
    parse_modular_text,
    parse_module_text,
)
from .modular import (
    deligne_product,
    double_modular_data,
    is_nondegenerate_modular,
    muger_center,
    reverse_data,
    verify_modular_data,
)
from .rep import verify_module

SCHEMA_VERSION = 1
DEFAULT_MAX_DIM = 64

CONVENTIONS = {
    "coadjoint_action": "s-left",
    "crossing_reading": "nw-over-strand-evaluates-as-inverse-braiding",
    "pairing_closed_form": "monodromy-with-antipode-on-second-leg",
    "double_s_normalization": "commuting-pairs-over-group-order",
}


@dataclass
class CheckReport:
    command: str
    inputs: list
    results: dict
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS))
    duration_ms: int = 0
    schema_version: int = SCHEMA_VERSION

    def as_dict(self):
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "conventions": self.conventions,
            "duration_ms": self.duration_ms,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_text(self):
        lines = [f"braidcheck {self.command} (schema {self.schema_version})"]
        for item in self.inputs:
            lines.append(f"  input: {item['path']} sha256={item['sha256'][:16]}...")
        for key, val in sorted(self.results.items()):
            lines.append(f"  {key}: {val}")
        lines.append(f"  duration: {self.duration_ms} ms")
        return "\n".join(lines) + "\n"


def _digest(path, data):
    return {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _read(path):
    with open(path, "rb") as fh:
        data = fh.read()
    return data, data.decode("utf-8")


def _max_dim(args):
    if args.max_dim is not None:
        return args.max_dim
    env = os.environ.get("BRAIDCHECK_MAX_DIM")
    return int(env) if env else DEFAULT_MAX_DIM


def _check_dim(value, limit, what):
    if value > limit:
        raise ValidationError("max-dim", f"{what} {value} exceeds the cap {limit}")


def _check_field(args, conductor):
    if args.field is None:
        return
    want = args.field
    if not (want.startswith("zeta(") and want.endswith(")")):
        raise ValidationError("field", f"bad --field {want!r}")
    if int(want[5:-1]) != conductor:
        raise ValidationError(
            "field", f"input declares zeta({conductor}), --field wants {want}"
        )


# ---------------------------------------------------------------------------
# command handlers: each returns (results_dict, verdict_or_None)
# ---------------------------------------------------------------------------


def _load_hopf(path, text, args, need_r=False, validate=True):
    limit = _max_dim(args)
    H, R = parse_hopf_text(text, validate=validate)
    _check_dim(H.dim, limit, "hopf dimension")
    _check_field(args, H.conductor)
    if need_r and R is None:
        raise ValidationError("rmatrix", "this command needs an rmatrix block")
    return H, R


def _cmd_verify(args):
    data, text = _read(args.inputs[0])
    kind = detect_kind(text)
    limit = _max_dim(args)
    if kind == "hopf":
        H, R = _load_hopf(args.inputs[0], text, args, validate=False)
        rep = verify_hopf(H)
        checks = dict(rep.checks)
        if R is not None:
            checks.update(verify_quasitriangular(H, R).checks)
        return {"kind": kind, "checks": checks}, all(checks.values())
    if kind == "modular":
        md = parse_modular_text(text)
        _check_dim(md.rank, limit, "modular rank")
        rep = verify_modular_data(md)
        return {"kind": kind, "checks": dict(rep.checks)}, rep.passed
    if kind == "algebra":
        alg = parse_algebra_text(text, validate=False)
        _check_dim(alg.dim, limit, "algebra dimension")
        _check_field(args, alg.conductor)
        try:
            verify_algebra(alg)
            return {"kind": kind, "checks": {"associative_unital": True}}, True
        except ValidationError as exc:
            return {"kind": kind, "checks": {"associative_unital": False},
                    "failure": exc.axiom}, False
    if kind == "group":
        try:
            g = parse_group_text(text)
            _check_dim(g.order, limit, "group order")
            return {"kind": kind, "checks": {"group_axioms": True},
                    "order": g.order}, True
        except ValidationError as exc:
            return {"kind": kind, "checks": {"group_axioms": False},
                    "failure": str(exc)}, False
    if kind == "module":
        base = os.path.dirname(os.path.abspath(args.inputs[0]))
        X = parse_module_text(text, _hopf_resolver(base), validate=False)
        _check_dim(X.dim, limit, "module dimension")
        ok = verify_module(X)
        return {"kind": kind, "checks": {"module_axioms": ok}}, ok
    raise ParseError(1, 1, f"unknown presentation kind {kind!r}")


def _hopf_resolver(base_dir):
    def resolve(ref):
        if "(" in ref:
            name, _, rest = ref.partition("(")
            params = {}
            for part in rest.rstrip(")").split(","):
                if part.strip():
                    k, _, v = part.partition("=")
                    params[k.strip()] = int(v)
            H, _ = build_example(name.strip(), **params)
            return H
        _, text = _read(os.path.join(base_dir, ref))
        H, _ = parse_hopf_text(text)
        return H

    return resolve


def _cmd_factorizable(args):
    data, text = _read(args.inputs[0])
    H, R = _load_hopf(args.inputs[0], text, args, need_r=True)
    res = is_factorizable(H, R)
    return {"dim": res["dim"], "drinfeld_rank": res["rank"],
            "verdict": res["verdict"]}, res["verdict"]


def _cmd_invertibility_report(args):
    data, text = _read(args.inputs[0])
    H, R = _load_hopf(args.inputs[0], text, args, need_r=True)
    rep = invertibility_report(H, R)
    return rep.as_dict(), rep.verdict


def _cmd_modular_check(args):
    data, text = _read(args.inputs[0])
    md = parse_modular_text(text)
    _check_dim(md.rank, _max_dim(args), "modular rank")
    rep = verify_modular_data(md)
    results = {"rank": md.rank, "checks": dict(rep.checks)}
    if rep.passed:
        results["nondegenerate"] = is_nondegenerate_modular(md)
    return results, rep.passed


def _cmd_muger_center(args):
    data, text = _read(args.inputs[0])
    md = parse_modular_text(text)
    _check_dim(md.rank, _max_dim(args), "modular rank")
    center = muger_center(md)
    trivial = center == [md.labels[0]]
    return {"rank": md.rank, "transparent_labels": list(center),
            "trivial": trivial}, trivial


def _cmd_witt_op(args):
    op = args.op
    limit = _max_dim(args)
    if op == "product":
        if len(args.inputs) != 2:
            raise ValidationError("arguments", "product needs two modular files")
        d1 = parse_modular_text(_read(args.inputs[0])[1])
        d2 = parse_modular_text(_read(args.inputs[1])[1])
        _check_dim(d1.rank * d2.rank, limit, "product rank")
        out = deligne_product(d1, d2)
    elif op == "reverse":
        if len(args.inputs) != 1:
            raise ValidationError("arguments", "reverse needs one modular file")
        src = parse_modular_text(_read(args.inputs[0])[1])
        _check_dim(src.rank, limit, "modular rank")
        out = reverse_data(src)
    elif op == "double":
        if len(args.inputs) != 1:
            raise ValidationError("arguments", "double needs one group file")
        g = parse_group_text(_read(args.inputs[0])[1])
        out = double_modular_data(g)
        _check_dim(out.rank, limit, "double rank")
    else:
        raise ValidationError("arguments", f"unknown witt operation {op!r}")
    body = modular_to_text(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    results = {"operation": op, "rank": out.rank, "labels": list(out.labels)}
    if args.out:
        results["written"] = args.out
    else:
        results["modular_text"] = body
    return results, True


def _cmd_azumaya(args):
    data, text = _read(args.inputs[0])
    alg = parse_algebra_text(text)
    _check_dim(alg.dim, _max_dim(args), "algebra dimension")
    _check_field(args, alg.conductor)
    rep = is_azumaya(alg)
    return rep.as_dict(), rep.verdict


def _cmd_build_example(args):
    params = {}
    for item in args.param:
        k, _, v = item.partition("=")
        if not _:
            raise ValidationError("arguments", f"--param wants k=v, got {item!r}")
        params[k] = int(v)
    H, R = build_example(args.inputs[0], **params)
    if args.double:
        H, R = drinfeld_double(H)
    _check_dim(H.dim, _max_dim(args), "hopf dimension")
    body = hopf_to_text(H, R)
    results = {"name": H.name, "dim": H.dim, "conductor": H.conductor}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
        results["written"] = args.out
    else:
        results["hopf_text"] = body
    return results, True


_COMMANDS = {
    "verify": (_cmd_verify, 1),
    "factorizable": (_cmd_factorizable, 1),
    "invertibility-report": (_cmd_invertibility_report, 1),
    "modular-check": (_cmd_modular_check, 1),
    "muger-center": (_cmd_muger_center, 1),
    "azumaya": (_cmd_azumaya, 1),
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="braidcheck",
        description="exact invertibility checks for braided tensor category presentations",
    )
    parser.add_argument("--version", action="version", version=f"braidcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--field", default=None, metavar="zeta(n)")
    for name in _COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("inputs", nargs=1)
    p = sub.add_parser("witt-op", parents=[common])
    p.add_argument("op", choices=("product", "reverse", "double"))
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", default=None)
    p = sub.add_parser("build-example", parents=[common])
    p.add_argument("inputs", nargs=1, metavar="name")
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--double", action="store_true")
    p.add_argument("--out", default=None)
    return parser


def run_command(argv):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = dict(_COMMANDS)
    handlers["witt-op"] = (_cmd_witt_op, None)
    handlers["build-example"] = (_cmd_build_example, None)
    handler, _ = handlers[args.command]
    started = time.monotonic_ns()
    inputs = []
    for path in getattr(args, "inputs", []):
        if args.command != "build-example" and os.path.exists(path):
            raw, _text = _read(path)
            inputs.append(_digest(path, raw))
        elif args.command == "build-example":
            inputs.append({"path": path, "sha256": hashlib.sha256(path.encode()).hexdigest()})
        else:
            raise OSError(f"no such input file: {path}")
    results, verdict = handler(args)
    duration = (time.monotonic_ns() - started) // 1_000_000
    report = CheckReport(
        command=args.command, inputs=inputs, results=results, duration_ms=duration
    )
    return report, (0 if verdict else 1), args.format


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, code, fmt = run_command(argv)
    except (ParseError, ValidationError, NotAGroup, OSError, ValueError) as exc:
        print(f"braidcheck: input error: {exc}", file=sys.stderr)
        return 2
    except (InternalInconsistency, ConventionMismatch, DescentFailure) as exc:
        print(f"braidcheck: internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except BraidcheckError as exc:
        print(f"braidcheck: input error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.to_text() if fmt == "text" else report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
