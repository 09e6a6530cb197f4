"""Command line front end.

Decisions are exit codes so the tool scripts cleanly: 0 affirmative,
1 negative, 2 malformed input or arguments, 3 search budget exhausted.
Data goes to stdout or `-o` files, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable

from .lts import FormatError, Lts, format_lts, parse_lts, validate
from .petri import (
    BoundExceeded,
    PetriNet,
    format_net,
    parse_net,
    reachability_graph,
    synthesize,
    verify_embedding,
)
from .reduction import SubsetSumInstance, build_lts, params, subset_sum_brute
from .regions import NotEmbeddable, is_embeddable
from .splitting import SearchBudgetExhausted, decide, optimize, serialize_splitting


class _Fail(Exception):
    def __init__(self, code: int) -> None:
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
        raise _Fail(2) from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"{path}: {exc.strerror or exc}", file=sys.stderr)
        raise _Fail(2) from None


def _parse_file(path: str, parser: Callable[[str], object]) -> object:
    try:
        return parser(_read(path))
    except FormatError as exc:
        print(f"{path}:{exc.line}: {exc.message}", file=sys.stderr)
        raise _Fail(2) from None


def _load_lts(path: str) -> Lts:
    lts = _parse_file(path, parse_lts)
    assert isinstance(lts, Lts)
    problems = validate(lts)
    if problems:
        for p in problems:
            print(f"{path}: {p}", file=sys.stderr)
        raise _Fail(2)
    return lts


def _load_net(path: str) -> PetriNet:
    net = _parse_file(path, parse_net)
    assert isinstance(net, PetriNet)
    return net


def _values_list(raw: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")
    return values


def _instance(args: argparse.Namespace) -> SubsetSumInstance:
    try:
        return SubsetSumInstance(args.b, args.c)
    except ValueError as exc:
        print(f"bad instance: {exc}", file=sys.stderr)
        raise _Fail(2) from None


def _cmd_check(args: argparse.Namespace) -> int:
    report = is_embeddable(_load_lts(args.lts_file))
    if report.embeddable:
        print("embeddable")
        return 0
    assert report.witness is not None
    print(f"not-embeddable {report.witness[0]} {report.witness[1]}")
    return 1


def _cmd_synth(args: argparse.Namespace) -> int:
    lts = _load_lts(args.lts_file)
    try:
        net = synthesize(lts)
    except NotEmbeddable as exc:
        print(f"not-embeddable {exc.witness[0]} {exc.witness[1]}")
        return 1
    _write(args.output, format_net(net))
    return 0


def _cmd_rg(args: argparse.Namespace) -> int:
    net = _load_net(args.net_file)
    result = reachability_graph(net, max_states=args.bound)
    if isinstance(result, BoundExceeded):
        print("bound-exceeded")
        return 1
    text = format_lts(result)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    lts = _load_lts(args.lts_file)
    net = _load_net(args.net_file)
    try:
        outcome = verify_embedding(lts, net)
    except ValueError as exc:
        print(f"{args.lts_file} vs {args.net_file}: {exc}", file=sys.stderr)
        return 2
    if outcome.embeds:
        print("embeds")
        return 0
    print(f"does-not-embed {outcome.reason}")
    return 1


def _cmd_split(args: argparse.Namespace) -> int:
    lts = _load_lts(args.lts_file)
    if args.optimize:
        try:
            _, witness = optimize(lts, node_budget=args.node_budget)
        except SearchBudgetExhausted:
            print("budget-exhausted")
            return 3
        sys.stdout.write(serialize_splitting(lts, witness))
        return 0
    outcome = decide(lts, args.max_labels, node_budget=args.node_budget)
    if outcome.found:
        assert outcome.splitting is not None
        sys.stdout.write(serialize_splitting(lts, outcome.splitting))
        return 0
    if outcome.exhausted:
        print("budget-exhausted")
        return 3
    print("not-found")
    return 1


def _cmd_reduce(args: argparse.Namespace) -> int:
    instance = _instance(args)
    gadget = build_lts(instance)
    _write(args.output, format_lts(gadget))
    p = params(instance)
    print(f"k={p.max_bit} q={p.label_budget}")
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    solution = subset_sum_brute(_instance(args))
    if solution is None:
        print("none")
        return 1
    print(" ".join(str(i) for i in solution))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="labelsplit",
        description="Petri net embeddability, label splitting and subset-sum gadgets "
        "for labelled transition systems",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="is the LTS embeddable into some net's reachability graph")
    p.add_argument("lts_file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("synth", help="synthesize a witnessing net")
    p.add_argument("lts_file")
    p.add_argument("-o", dest="output", required=True, metavar="NET_FILE")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("rg", help="reachability graph of a net, in LTS format")
    p.add_argument("net_file")
    p.add_argument("--bound", type=int, default=10000, metavar="N")
    p.add_argument("-o", dest="output", default=None, metavar="LTS_FILE")
    p.set_defaults(func=_cmd_rg)

    p = sub.add_parser("verify", help="check the canonical embedding of an LTS into a net")
    p.add_argument("lts_file")
    p.add_argument("net_file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("split", help="search for a label splitting making the LTS embeddable")
    p.add_argument("lts_file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--max-labels", type=int, metavar="Q")
    mode.add_argument("--optimize", action="store_true")
    p.add_argument("--node-budget", type=int, default=None, metavar="N")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("reduce", help="build the gadget LTS of a subset-sum instance")
    p.add_argument("--b", type=int, required=True, metavar="TARGET")
    p.add_argument("--c", type=_values_list, required=True, metavar="C1,C2,...")
    p.add_argument("-o", dest="output", required=True, metavar="LTS_FILE")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("oracle", help="solve a subset-sum instance directly")
    p.add_argument("--b", type=int, required=True, metavar="TARGET")
    p.add_argument("--c", type=_values_list, required=True, metavar="C1,C2,...")
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints its own diagnostics; errors exit 2, --help exits 0
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _Fail as fail:
        return fail.code


if __name__ == "__main__":
    sys.exit(main())
