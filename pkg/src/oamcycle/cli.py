"""Command line front end.

Exit codes: 0 success, 1 verification/simulation failure, 2 usage or
document errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .analysis import discover_cycles, scaling_csv, scaling_table, verify_gate
from .elements import NonMultipleMode
from .model import ZeroState, normalize
from .serialization import (
    NetlistDocument,
    ParseError,
    SchemaVersionMismatch,
    export_dot,
    format_state,
    parse,
    parse_state,
    serialize,
)
from .simulation import (
    HopBudgetExceeded,
    NormDrift,
    SimulationConfig,
    apply_netlist,
    apply_portgraph,
)
from .synthesis import (
    InvalidDimension,
    NotSimplifiable,
    invert,
    shifted_gate,
    simplify,
    synth_arbitrary,
)

_WINDOW_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def _load_document(path_text: str) -> NetlistDocument:
    return parse(Path(path_text).read_text(encoding="utf-8"))


def _device_for(doc: NetlistDocument):
    if doc.variant == "simplified":
        return simplify(doc.netlist)
    return doc.netlist


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_synth(args) -> int:
    if args.variant == "simplified" and args.shift:
        raise ValueError("--shift cannot be combined with --variant simplified")
    base = synth_arbitrary(args.d)
    if args.variant == "inverse":
        netlist = invert(base)
    else:
        if args.variant == "simplified":
            simplify(base)  # validate before tagging the document
        netlist = base
    if args.shift:
        netlist = shifted_gate(netlist, args.shift)
    if args.variant == "standard":
        tag = "shifted" if args.shift else "standard"
    else:
        tag = args.variant
    _write_or_print(serialize(netlist, tag), args.out)
    return 0


def _cmd_simulate(args) -> int:
    doc = _load_document(args.netlist)
    state = parse_state(args.input, doc.netlist.input_path)
    if abs(state.norm() - 1.0) > 1e-9:
        print(f"note: input normalized (norm was {state.norm():.6g})", file=sys.stderr)
        state = normalize(state)
    config = SimulationConfig(mode=args.mode)
    device = _device_for(doc)
    if doc.variant == "simplified":
        out = apply_portgraph(device, state, config)
    else:
        out = apply_netlist(device, state, config)
    print(format_state(out))
    return 0


def _cmd_verify(args) -> int:
    variant = args.variant
    if args.shift and variant == "standard":
        variant = "shifted"
    report = verify_gate(args.d, variant=variant, shift=args.shift)
    window = f" shift={report.shift}" if report.shift else ""
    print(f"d={report.d} variant={report.variant}{window}")
    print(f"permutation: {len(report.mapping)}/{report.d} values correct"
          if report.permutation_ok
          else f"permutation: FAILED ({len(report.mapping)}/{report.d} values mapped)")
    print(f"splitters: {report.count_actual} (predicted {report.count_predicted})")
    if report.bound is not None:
        print(f"bound: {report.bound:.6g}")
    for violation in report.violations[:10]:
        print(f"violation: {violation}")
    if len(report.violations) > 10:
        print(f"... and {len(report.violations) - 10} more violations")
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _cmd_scaling(args) -> int:
    rows = scaling_table(args.min, args.max)
    text = scaling_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
        print(f"wrote {len(rows)} rows to {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_cycles(args) -> int:
    doc = _load_document(args.netlist)
    device = _device_for(doc)
    if args.window:
        match = _WINDOW_RE.match(args.window)
        if match is None:
            raise ValueError(f"--window must look like -44..44, got {args.window!r}")
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo > hi:
            raise ValueError(f"empty window {args.window!r}")
    else:
        lo, hi = -4 * doc.netlist.dimension, 4 * doc.netlist.dimension
    cycles = discover_cycles(device, lo, hi)
    for cycle in cycles:
        print("cycle:", " ".join(str(v) for v in cycle.modes))
    if not cycles:
        print(f"no closed cycles in window [{lo}, {hi}]")
    return 0


def _cmd_export(args) -> int:
    doc = _load_document(args.netlist)
    _write_or_print(export_dot(_device_for(doc)), args.dot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oamcycle",
        description="Synthesize, simulate and verify cyclic OAM mode-shift circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize a netlist and write it as JSON")
    p.add_argument("d", type=int, help="gate dimension (>= 2)")
    p.add_argument("--variant", choices=("standard", "simplified", "inverse"),
                   default="standard")
    p.add_argument("--shift", type=int, default=0, metavar="M",
                   help="operate on the OAM window starting at M")
    p.add_argument("--out", metavar="FILE", help="write here instead of stdout")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("simulate", help="propagate a state through a netlist")
    p.add_argument("netlist", help="netlist JSON file")
    p.add_argument("--input", required=True, metavar="STATE",
                   help="e.g. \"0.6*|2> + 0.8i*|7>\"")
    p.add_argument("--mode", choices=("strict", "physical"), default="strict")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="check a synthesized gate against its oracle")
    p.add_argument("d", type=int)
    p.add_argument("--variant", choices=("standard", "simplified", "inverse", "shifted"),
                   default="standard")
    p.add_argument("--shift", type=int, default=0, metavar="M")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scaling", help="splitter counts over a dimension range")
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, default=500)
    p.add_argument("--csv", metavar="FILE")
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("cycles", help="find closed OAM orbits in a window")
    p.add_argument("netlist")
    p.add_argument("--window", metavar="LO..HI",
                   help="default: -4d..4d for the netlist's dimension")
    p.set_defaults(func=_cmd_cycles)

    p = sub.add_parser("export", help="render a netlist as Graphviz DOT")
    p.add_argument("netlist")
    p.add_argument("--dot", metavar="FILE", help="write here instead of stdout")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # a window like -44..44 looks like an option flag to argparse
    for i in range(len(argv) - 1):
        if argv[i] == "--window" and _WINDOW_RE.match(argv[i + 1]):
            argv[i : i + 2] = [f"--window={argv[i + 1]}"]
            break
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NonMultipleMode, NormDrift, HopBudgetExceeded) as exc:
        print(f"simulation failed: {exc}", file=sys.stderr)
        return 1
    except (ParseError, SchemaVersionMismatch, InvalidDimension, NotSimplifiable,
            ZeroState, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
