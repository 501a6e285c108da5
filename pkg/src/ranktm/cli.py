"""Command-line entry point: ``ranktm <command> ...``.

Exit codes: 0 pass or halt, 1 usage or file error, 2 fuel exhausted,
3 conformance failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .encoding import dec_pos, enc_pos, parse_tape
from .harness import ConformanceReport, run_conformance, run_equivalence
from .ocf import fallback_revise
from .revision import CompiledOperator
from .simulate import JsonlTraceWriter, simulate_tm
from .turing import MachineError, TuringMachine, load_tm, run

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FUEL = 2
EXIT_FAIL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would collide with fuel exhaustion
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _machine(path: str) -> TuringMachine:
    try:
        return load_tm(path)
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read {path}: {exc.strerror or exc}"))
    except MachineError as exc:
        raise SystemExit(_fail(f"{path}: {exc}"))


def _fail(message: str) -> int:
    print(f"ranktm: {message}", file=sys.stderr)
    return EXIT_USAGE


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def _trim(word: str, blank: str) -> str:
    return word.strip(blank)


def cmd_run(args: argparse.Namespace) -> int:
    tm = _machine(args.machine)
    trace_file = None
    try:
        sink = None
        if args.trace:
            trace_file = open(args.trace, "w", encoding="utf-8")
            sink = JsonlTraceWriter(trace_file)
        result = simulate_tm(tm, args.input, args.fuel, trace=sink)
    except MachineError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(f"cannot write trace {args.trace}: {exc.strerror or exc}")
    finally:
        if trace_file is not None:
            trace_file.close()
    output = result.output
    if output is not None and args.trim:
        output = _trim(output, tm.blank)
    payload = {
        "outcome": result.outcome,
        "output": output,
        "steps": result.steps,
        "revisions_used": result.revisions_used,
    }
    if result.halted:
        _emit(args, payload, output)
        return EXIT_OK
    _emit(args, payload, f"fuel exhausted after {result.steps} steps ({result.revisions_used} revisions)")
    return EXIT_FUEL


def cmd_oracle(args: argparse.Namespace) -> int:
    tm = _machine(args.machine)
    try:
        result = run(tm, args.input, args.fuel)
    except MachineError as exc:
        return _fail(str(exc))
    output = result.output
    if output is not None and args.trim:
        output = _trim(output, tm.blank)
    payload = {
        "outcome": "halted" if result.halted else "fuel_exhausted",
        "output": output,
        "steps": result.steps,
        "final": {"state": result.final.state, "tape": str(result.final.tape)},
    }
    if result.halted:
        _emit(args, payload, output)
        return EXIT_OK
    _emit(args, payload, f"fuel exhausted after {result.steps} steps")
    return EXIT_FUEL


def _report(args: argparse.Namespace, report: ConformanceReport) -> int:
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.summary())
        for failure in report.failures[: args.show]:
            detail = f" {failure.detail}" if failure.detail else ""
            print(f"  #{failure.index} {failure.check}:{detail}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_compare(args: argparse.Namespace) -> int:
    tm = _machine(args.machine)
    report = run_equivalence(tm, args.max_len, args.fuel, check_revisions=not args.outputs_only)
    return _report(args, report)


def cmd_check(args: argparse.Namespace) -> int:
    choice = args.operator
    if choice == "fallback":
        op, suite = fallback_revise, "fallback"
    elif choice.startswith("compiled:"):
        path = choice.partition(":")[2]
        op, suite = CompiledOperator(_machine(path)), f"compiled:{Path(path).name}"
    else:
        return _fail(f"unknown operator {choice!r}; use 'fallback' or 'compiled:<machine-file>'")
    report = run_conformance(
        op,
        trials=args.samples,
        max_rank=args.max_rank,
        seed=args.seed,
        exhaustive=args.exhaustive,
        suite=suite,
    )
    return _report(args, report)


def cmd_encode(args: argparse.Namespace) -> int:
    tm = _machine(args.machine)
    try:
        code = enc_pos(tm, parse_tape(args.tape))
    except ValueError as exc:
        return _fail(str(exc))
    _emit(args, {"tape": args.tape, "code": str(code)}, str(code))
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    tm = _machine(args.machine)
    tape = dec_pos(tm, args.code)
    if tape is None:
        return _fail(f"{args.code} does not encode a tape position for this machine")
    _emit(args, {"code": str(args.code), "tape": str(tape)}, str(tape))
    return EXIT_OK


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="ranktm", description="Turing machines simulated by iterated belief revision.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", parents=[common], help="simulate a machine by revision")
    p.add_argument("machine")
    p.add_argument("input")
    p.add_argument("--fuel", type=_natural, default=10_000, help="maximum simulated steps")
    p.add_argument("--trace", metavar="FILE", help="write one JSON trace event per revision")
    p.add_argument("--trim", action="store_true", help="strip surrounding blanks from the output")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("oracle", parents=[common], help="run a machine directly")
    p.add_argument("machine")
    p.add_argument("input")
    p.add_argument("--fuel", type=_natural, default=10_000)
    p.add_argument("--trim", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("compare", parents=[common], help="check revision against the oracle on all short inputs")
    p.add_argument("machine")
    p.add_argument("--max-len", type=_natural, default=6)
    p.add_argument("--fuel", type=_natural, default=10_000)
    p.add_argument("--outputs-only", action="store_true",
                   help="skip per-revision shape and postulate checks")
    p.add_argument("--show", type=_natural, default=10, help="counterexamples to print")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check", parents=[common], help="postulate conformance battery")
    p.add_argument("--operator", default="fallback", help="'fallback' or 'compiled:<machine-file>'")
    p.add_argument("--samples", type=_natural, default=10_000)
    p.add_argument("--max-rank", type=_natural, default=3)
    p.add_argument("--seed", type=_natural, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--show", type=_natural, default=10)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("encode", parents=[common], help="tape position 'l|c|r' to its code")
    p.add_argument("tape", help="'~' stands for an empty part")
    p.add_argument("--machine", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="code to tape position")
    p.add_argument("code", type=_natural)
    p.add_argument("--machine", required=True)
    p.set_defaults(func=cmd_decode)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
