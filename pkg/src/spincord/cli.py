"""Command-line driver: parameter sweeps as CSV and a reference-value table.

Usage::

    spincord trimer-sweep   [--j J] [--sweep eps:0:1:201] [--fixed T=0.1,0.5,1] [--out F]
    spincord trimer-field   [--j J] [--eps E] [--sweep h:0:2:201] [--fixed T=0] [--out F]
    spincord tetramer-sweep [--j1 J1] [--j2 J2] [--pair nn|nnn] [--sweep T:0:3:201] [--out F]
    spincord dephasing      [--alpha A] [--sweep gamma:0:1:201] [--out F]
    spincord verify

CSV goes to ``--out`` or standard output; summaries go to standard error.
Exit status is 0 on success, 1 on a usage error and 2 if ``verify`` finds a
failing row.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import clusters, decoherence
from .clusters import PairKind, TetramerParams, TrimerParams
from .xstate import analytic_report, analyze, concurrence
from .verify import verify_rows

DEFAULT_STEPS = 201
EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class Sweep:
    axis: str
    lo: float
    hi: float
    steps: int

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def parse_sweep(text: str) -> Sweep:
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected <axis>:<lo>:<hi>:<steps>, got {text!r}")
    axis, lo, hi, steps = parts
    try:
        lo_f, hi_f, n = float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad numbers in sweep {text!r}") from None
    if not (math.isfinite(lo_f) and math.isfinite(hi_f)):
        raise argparse.ArgumentTypeError("sweep range must be finite")
    if n < 2:
        raise argparse.ArgumentTypeError("sweep needs at least 2 steps")
    return Sweep(axis, lo_f, hi_f, n)


def parse_fixed(text: str) -> tuple[str, list[float]]:
    axis, sep, values = text.partition("=")
    if not sep or not values:
        raise argparse.ArgumentTypeError(f"expected <axis>=v1,v2,..., got {text!r}")
    try:
        vals = [float(v) for v in values.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value list in {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("fixed values must be finite")
    return axis, vals


def fmt(v: float) -> str:
    s = f"{v:.6g}"
    return "0" if s == "-0" else s


def write_csv(header: Sequence[str], rows: Iterable[Sequence[float]], out: str | None) -> None:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _axes(args, allowed: dict[str, str], default_sweep: str, default_fixed: dict[str, str]):
    sweep = args.sweep or parse_sweep(default_sweep)
    if sweep.axis not in allowed:
        raise UsageError(f"cannot sweep {sweep.axis!r}; choose from {', '.join(allowed)}")
    other = allowed[sweep.axis]
    fixed_axis, fixed_vals = args.fixed or parse_fixed(default_fixed[sweep.axis])
    if fixed_axis != other:
        raise UsageError(f"with --sweep {sweep.axis} the fixed axis must be {other!r}")
    return sweep, other, fixed_vals


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def run_trimer_sweep(args) -> int:
    sweep, fixed_axis, fixed_vals = _axes(
        args, {"eps": "T", "T": "eps"}, "eps:0:1:201", {"eps": "T=0.1,0.5,1.0", "T": "eps=0.25,0.5,0.75,1.0"}
    )
    if args.h != 0:
        raise UsageError("trimer-sweep is zero-field; use trimer-field for h != 0")
    rows = []
    for fv in fixed_vals:
        for x in sweep.grid:
            vals = {sweep.axis: float(x), fixed_axis: fv}
            p = TrimerParams(args.j, vals["eps"], 0.0, vals["T"])
            if p.T > 0:
                rep = analytic_report(clusters.trimer_thermal_xstate(p))
            else:
                rep = analyze(clusters.trimer_ground_rdm(p))
            rows.append((x, fv, rep.I, rep.C, rep.Q))
    write_csv([sweep.axis, fixed_axis, "I", "C", "Q"], rows, args.out)
    return EXIT_OK


def run_trimer_field(args) -> int:
    sweep, fixed_axis, fixed_vals = _axes(
        args, {"h": "T", "T": "h"}, "h:0:2:201", {"h": "T=0", "T": "h=0,0.5,1.0"}
    )
    rows = []
    for fv in fixed_vals:
        qs = []
        for x in sweep.grid:
            vals = {sweep.axis: float(x), fixed_axis: fv}
            rep = analyze(clusters.trimer_rdm(TrimerParams(args.j, args.eps, vals["h"], vals["T"])))
            qs.append(rep.Q)
            rows.append((x, fv, rep.I, rep.C, rep.Q, rep.CN))
        if sweep.axis == "h" and fv == 0:
            for lo, hi in clusters.detect_jumps(sweep.grid, qs):
                _note(f"discord jump between h={fmt(lo)} and h={fmt(hi)}")
    write_csv([sweep.axis, fixed_axis, "I", "C", "Q", "CN"], rows, args.out)
    return EXIT_OK


def run_tetramer_sweep(args) -> int:
    sweep = args.sweep or parse_sweep("T:0:3:201")
    if sweep.axis != "T":
        raise UsageError("tetramer-sweep only sweeps T")
    if args.fixed:
        raise UsageError("tetramer-sweep takes no --fixed axis; set --j1/--j2/--pair")
    pair = PairKind(args.pair)
    rows, signed_cn = [], []
    for T in sweep.grid:
        p = TetramerParams(args.j1, args.j2, float(T))
        x = clusters.tetramer_thermal_xstate(p, pair) if p.T > 0 else clusters.tetramer_ground_rdm(p, pair)
        rep = analytic_report(x)
        rows.append((T, rep.Q, rep.CN, rep.C))
        signed_cn.append(concurrence(x, signed=True))
    write_csv(["T", "Q", "CN", "C"], rows, args.out)
    t0 = decoherence.first_zero(sweep.grid, signed_cn)
    if t0 is None:
        _note(f"{pair.value} concurrence stays positive up to T={fmt(sweep.hi)}")
    elif t0 == sweep.grid[0]:
        _note(f"{pair.value} concurrence is zero from T={fmt(t0)}")
    else:
        _note(f"{pair.value} concurrence first reaches zero at T={fmt(t0)}")
    return EXIT_OK


def run_dephasing(args) -> int:
    sweep = args.sweep or parse_sweep("gamma:0:1:201")
    if sweep.axis != "gamma":
        raise UsageError("dephasing only sweeps gamma")
    if not (0 <= sweep.lo < sweep.hi <= 1):
        raise UsageError("gamma range must satisfy 0 <= lo < hi <= 1")
    traj = decoherence.trajectory(args.alpha, sweep.steps, sweep.lo, sweep.hi)
    write_csv(["gamma", "CN", "Q"], ((r.gamma, r.concurrence, r.discord) for r in traj.rows), args.out)
    g = decoherence.sudden_death_gamma(args.alpha)
    if g is None:
        _note("concurrence survives up to gamma=1")
    else:
        _note(f"concurrence is zero from gamma={fmt(g)}")
    return EXIT_OK


def run_verify(args) -> int:
    rows = verify_rows()
    width = max(len(r.label) for r in rows)
    for r in rows:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.label:<{width}}  computed={r.computed:.8g}  expected={r.expected:.8g}  tol={r.tolerance:g}")
    failed = sum(not r.passed for r in rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS: dict[str, tuple[Callable, str]] = {
    "trimer-sweep": (run_trimer_sweep, "trimer I, C, Q versus anisotropy or temperature"),
    "trimer-field": (run_trimer_field, "trimer correlations versus field or temperature at fixed field"),
    "tetramer-sweep": (run_tetramer_sweep, "tetramer Q, CN, C versus temperature"),
    "dephasing": (run_dephasing, "Werner-state CN and Q under local dephasing"),
    "verify": (run_verify, "check computed values against reference numbers"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--j", type=float, default=1.0, help="trimer exchange J; sign picks AFM (>0) or FM (<0)")
    common.add_argument("--eps", type=float, default=1.0, help="trimer anisotropy (<= 1)")
    common.add_argument("--h", type=float, default=0.0, help="trimer field")
    common.add_argument("--j1", type=float, default=1.0, help="tetramer edge coupling")
    common.add_argument("--j2", type=float, default=0.5, help="tetramer diagonal coupling")
    common.add_argument("--alpha", type=float, default=2 / 3, help="Werner weight")
    common.add_argument("--pair", choices=["nn", "nnn"], default="nn", help="tetramer pair type")
    common.add_argument("--sweep", type=parse_sweep, help="<axis>:<lo>:<hi>:<steps>")
    common.add_argument("--fixed", type=parse_fixed, help="<axis>=v1,v2,...")
    common.add_argument("--out", help="CSV output path (default: stdout)")

    parser = _Parser(prog="spincord", description="Quantum discord in spin trimers and tetramers.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="<command>")
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.out == "":
        print("spincord: error: --out needs a path", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command][0](args)
    except (UsageError, ValueError) as exc:
        print(f"spincord: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
