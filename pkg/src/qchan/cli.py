"""Command-line front end.

Exit codes: 0 ok, 2 bad input, 3 relation out of scope, 4 falsification
found violations.
"""
from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import logging
import math
import operator
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .bases import basis_from_json
from .bounds import check_relation
from .channels import PRESETS, channel_from_json, make_preset
from .coherence import Measure, coherence
from .errors import QchanError, TheoremScopeError
from .verify import Target, run_falsification

EXIT_OK, EXIT_PARSE, EXIT_SCOPE, EXIT_VIOLATION = 0, 2, 3, 4

log = logging.getLogger("qchan")


class UsageError(QchanError):
    pass


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_number(text: str) -> float:
    """Evaluate a numeric literal or simple arithmetic in ``pi`` (e.g. ``3*pi/4``)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError

    try:
        value = ev(ast.parse(str(text).strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse number {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"number {text!r} is not finite")
    return value


def parse_channel(text: str):
    """``{json}``, ``preset=name,k=v,...`` or a bare preset name."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed channel JSON: {exc.msg}") from None
        return channel_from_json(obj)
    name, params = _parse_kv(text)
    return make_preset(name, {k: parse_number(v) for k, v in params.items()})


def _parse_kv(text: str) -> tuple[str, dict]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("empty channel spec")
    head = parts[0]
    name = head.split("=", 1)[1] if head.startswith("preset=") else head
    params = {}
    for p in parts[1:]:
        if "=" not in p:
            raise UsageError(f"expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        params[k.strip()] = v.strip()
    return name, params


def parse_basis(text: str):
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed basis JSON: {exc.msg}") from None
        return basis_from_json(obj)
    return basis_from_json(text)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_coherence(args) -> int:
    channel = parse_channel(args.channel)
    basis = parse_basis(args.basis)
    _emit(coherence(channel, basis, Measure.parse(args.measure)).to_dict())
    return EXIT_OK


def cmd_bound(args) -> int:
    channel = parse_channel(args.channel)
    b1, b2 = parse_basis(args.basis1), parse_basis(args.basis2)
    c = parse_number(args.c_max) if args.c_max is not None else None
    _emit(check_relation(channel, b1, b2, Measure.parse(args.measure), c).to_dict())
    return EXIT_OK


@dataclass(frozen=True)
class SweepSpec:
    channel_template: str
    parameter: str
    start: float
    stop: float
    step: float
    basis1: str
    basis2: str
    measure: Measure
    fixed: dict | None = None
    c_override: float | None = None

    def __post_init__(self):
        if self.channel_template not in PRESETS:
            raise UsageError(f"unknown preset {self.channel_template!r}")
        names = PRESETS[self.channel_template][1]
        if self.parameter not in names or self.parameter == "U":
            raise UsageError(f"preset {self.channel_template!r} has no sweepable parameter {self.parameter!r}")
        if not self.step > 0:
            raise UsageError("step must be positive")
        if self.start > self.stop:
            raise UsageError("start must not exceed stop")

    def grid(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(n)]


def _fmt(x: float) -> str:
    return format(x, ".12g")


def sweep_rows(spec: SweepSpec) -> list[list[str]]:
    b1, b2 = parse_basis(spec.basis1), parse_basis(spec.basis2)
    rows = []
    for value in spec.grid():
        params = dict(spec.fixed or {})
        params[spec.parameter] = value
        channel = make_preset(spec.channel_template, params)
        rep = check_relation(channel, b1, b2, spec.measure, spec.c_override)
        rows.append([_fmt(value), _fmt(rep.sum_coherence), _fmt(rep.lower_bound), _fmt(rep.slack),
                     "true" if rep.saturated else "false"])
    return rows


SWEEP_HEADER = ["param", "sum_coherence", "lower_bound", "slack", "saturated"]


def render_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


GNUPLOT_TEMPLATE = """set datafile separator ","
set key top right
set xlabel "{param}"
set ylabel "coherence sum"
plot "{csv}" using 1:2 skip 1 with lines title "sum", \\
     "{csv}" using 1:3 skip 1 with lines title "lower bound"
"""


def cmd_sweep(args) -> int:
    name, fixed = _parse_kv(args.channel)
    spec = SweepSpec(
        channel_template=name,
        parameter=args.param,
        start=parse_number(args.start),
        stop=parse_number(args.stop),
        step=parse_number(args.step),
        basis1=args.basis1,
        basis2=args.basis2,
        measure=Measure.parse(args.measure),
        fixed={k: parse_number(v) for k, v in fixed.items()},
        c_override=parse_number(args.c_max) if args.c_max is not None else None,
    )
    out = Path(args.out)
    if out.exists() and not args.force:
        raise UsageError(f"{out} exists; pass --force to overwrite")
    text = render_csv(sweep_rows(spec))
    out.write_text(text, encoding="utf-8", newline="")
    if args.gnuplot:
        Path(args.gnuplot).write_text(GNUPLOT_TEMPLATE.format(param=spec.parameter, csv=out.name), encoding="utf-8")
    log.info("wrote %d rows to %s", text.count("\n") - 1, out)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        target = Target(args.target)
    except ValueError:
        raise UsageError(f"unknown target {args.target!r}") from None
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    c = parse_number(args.c_max) if args.c_max is not None else None
    report = run_falsification(target, args.trials, args.seed, args.jobs, c)
    sys.stdout.write(report.to_json() + "\n")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_presets(args) -> int:
    _emit({name: list(names) for name, (_, names) in PRESETS.items()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qchan", description="Coherence uncertainty relations of qubit channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="coherence of a channel in one basis")
    p.add_argument("--channel", required=True)
    p.add_argument("--basis", "--basis1", dest="basis", default="computational")
    p.add_argument("--measure", default="rel")
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("bound", help="two-basis coherence sum against its lower bound")
    p.add_argument("--channel", required=True)
    p.add_argument("--basis1", default="computational")
    p.add_argument("--basis2", default="plus-minus")
    p.add_argument("--measure", default="rel")
    p.add_argument("--c-max", dest="c_max")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="parameter sweep to CSV")
    p.add_argument("--channel", required=True, help="preset name, optionally with fixed k=v parameters")
    p.add_argument("--param", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--stop", required=True)
    p.add_argument("--step", required=True)
    p.add_argument("--basis1", default="computational")
    p.add_argument("--basis2", default="plus-minus")
    p.add_argument("--measure", default="rel")
    p.add_argument("--c-max", dest="c_max")
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true")
    p.add_argument("--gnuplot", help="also write a gnuplot script to this path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="randomized falsification run")
    p.add_argument("target", help="theorem1, theorem2, lemma1, lemma2 or gmin")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--c-max", dest="c_max")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("presets", help="list preset channels and their parameters")
    p.set_defaults(func=cmd_presets)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("QCHAN_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TheoremScopeError as exc:
        print(f"qchan: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except QchanError as exc:
        print(f"qchan: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
