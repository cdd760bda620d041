"""Command-line front end: encode, decode, complexity, graph, verify, bench.

Exit codes are 0 on success, 1 when a verification suite fails and 2 for
usage or parse errors.  Every output except bench timings is a pure
function of the arguments and the input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass

from .encoder import simplest_code
from .hypergraph import build_a_graph, build_s_graph, dumps_json, to_dot
from .language import (
    CodeSyntaxError,
    MalformedCode,
    RESERVED,
    complexity,
    decode,
    format_code,
    format_elements,
    parse_code,
)
from .oracle import BudgetExceeded, EnumerationBudget, count_codes, naive_simplest_code
from . import verify


class UsageError(Exception):
    pass


_SHARED = ("command", "func", "json", "tokens", "seed", "budget", "workers", "dot", "input", "code")


@dataclass(frozen=True)
class RunConfig:
    """Everything besides the input that determines a run's output."""

    command: str
    input_mode: str = "chars"
    output: str = "text"
    seed: int = 0
    budget: int = 10**7
    workers: int | None = None
    params: tuple = ()

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        if args.json:
            output = "json"
        elif args.command == "graph":
            output = "dot"
        else:
            output = "text"
        params = tuple(sorted((k, v) for k, v in vars(args).items() if k not in _SHARED))
        return cls(args.command, "tokens" if args.tokens else "chars", output,
                   args.seed, args.budget, args.workers, params)

    def argv(self) -> list[str]:
        """Arguments that rebuild this configuration, without the input."""
        out = [self.command, "--seed", str(self.seed), "--budget", str(self.budget)]
        if self.input_mode == "tokens":
            out.append("--tokens")
        if self.output == "json":
            out.append("--json")
        if self.workers is not None:
            out += ["--workers", str(self.workers)]
        for name, value in self.params:
            flag = "--" + name.replace("_", "-")
            if value is True:
                out.append(flag)
            elif value not in (False, None):
                out += [flag, str(value)]
        return out


def _read_input(value: str | None) -> str:
    if value is not None:
        return value
    text = sys.stdin.read()
    return text[:-1] if text.endswith("\n") else text


def _elements(text: str, tokens: bool) -> tuple:
    if tokens:
        items = tuple(text.split())
    else:
        items = tuple(text)
    for item in items:
        if not item or any(ch.isspace() or ch in RESERVED for ch in item):
            raise UsageError(f"invalid symbol {item!r}")
    return items


def _parse_lengths(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad length list {text!r}") from None


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- commands


def cmd_encode(args) -> int:
    elements = _elements(_read_input(args.input), args.tokens)
    if not elements:
        raise UsageError("nothing to encode")
    result = simplest_code(elements, workers=args.workers)
    code_text = format_code(result.code, args.tokens)
    if args.json:
        # search-effort counters vary with the thread schedule, so only
        # values fixed by the result itself are printed
        stats = {k: result.stats[k] for k in ("length", "code_graph_edges")}
        stats["code_terms"] = len(result.code.terms)
        payload = {
            "input": format_elements(elements, args.tokens),
            "code": code_text,
            "sip": result.sip,
            "stats": stats,
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit(f"{code_text}  sip={result.sip}")
    return 0


def _parse(args):
    text = _read_input(args.code).strip()
    try:
        return parse_code(text, args.tokens)
    except CodeSyntaxError as exc:
        raise UsageError(f"syntax error: {exc}") from None
    except MalformedCode as exc:
        raise UsageError(f"malformed code: {exc}") from None


def cmd_decode(args) -> int:
    code = _parse(args)
    text = format_elements(decode(code), args.tokens)
    if args.json:
        _emit(json.dumps({"code": format_code(code, args.tokens), "string": text}, indent=2, sort_keys=True))
    else:
        _emit(text)
    return 0


def cmd_complexity(args) -> int:
    code = _parse(args)
    sip = complexity(code)
    if args.json:
        _emit(json.dumps({"code": format_code(code, args.tokens), "sip": sip}, indent=2, sort_keys=True))
    else:
        _emit(str(sip))
    return 0


def cmd_graph(args) -> int:
    elements = _elements(_read_input(args.input), args.tokens)
    if args.kind == "a":
        g = build_a_graph(elements, args.repeat)
    else:
        g = build_s_graph(elements)
    _emit(dumps_json(g) if args.json else to_dot(g))
    return 0


def cmd_verify(args) -> int:
    lengths = _parse_lengths(args.lengths) if args.lengths else None
    if args.input is not None and not args.input:
        # an explicitly empty input has nothing to check
        results = [verify.SuiteResult("empty input")]
    elif args.input is not None:
        s = "".join(_elements(args.input, False))
        results = [
            verify.a_graph_hyperstrings([s]), verify.s_graph_hyperstrings([s]), verify.s_graph_paths([s]), verify.identical_or_disjoint([s]),
            verify.oracle_equivalence([s]),
        ]
    else:
        results = []
        if not args.oracle_only:
            results += verify.graph_suites(args.seed, args.count, args.max_length)
        if args.exhaustive:
            strings = list(verify.all_strings(lengths or range(1, 7), args.alphabet))
            label = "oracle equivalence (exhaustive)"
        else:
            rng = random.Random(args.seed)
            span = lengths or list(range(1, 13))
            strings = [
                "".join(rng.choice(verify.ALPHABET[:args.alphabet]) for _ in range(rng.choice(span)))
                for _ in range(args.oracle_count)
            ]
            label = "oracle equivalence (random)"
        results.append(verify.oracle_equivalence(strings, name=label))
    failed = False
    if args.json:
        _emit(json.dumps([
            {"suite": r.name, "passed": r.passed, "cases": r.cases, "exhaustive": r.exhaustive,
             "violations": r.violations, "notes": r.notes}
            for r in results
        ], indent=2))
    for r in results:
        failed |= not r.passed
        if not args.json:
            _emit(r.line())
            for note in r.notes:
                _emit(f"  note: {note}")
            for v in r.violations[:10]:
                _emit(f"  {v}")
    return 1 if failed else 0


def _naive_cell(s: str, budget: int) -> tuple[str, int | None]:
    total = count_codes(s, EnumerationBudget(None, budget, None))
    if total > budget:
        return f"infeasible (>{budget} codes)", None
    start = time.process_time()
    try:
        res = naive_simplest_code(s, EnumerationBudget(None, budget, None))
    except BudgetExceeded:
        return f"infeasible (>{budget} codes)", None
    return f"{time.process_time() - start:.3f}s ({total} codes)", res.sip


def cmd_bench(args) -> int:
    lengths = _parse_lengths(args.lengths) if args.lengths else [10, 20, 40, 80]
    rng = random.Random(args.seed)
    rows = []
    for n in lengths:
        s = "".join(rng.choice("ab") for _ in range(n))
        start = time.process_time()
        res = simplest_code(s, workers=args.workers)
        enc_time = time.process_time() - start
        start = time.process_time()
        rep = simplest_code("a" * n)
        rep_time = time.process_time() - start
        naive, naive_sip = _naive_cell(s, args.budget)
        rows.append({
            "length": n, "string": s, "sip": res.sip, "encoder_s": round(enc_time, 3),
            "naive": naive, "naive_sip": naive_sip,
            "repeat_sip": rep.sip, "repeat_s": round(rep_time, 3),
        })
    if args.json:
        _emit(json.dumps(rows, indent=2))
        return 0
    head = f"{'N':>4}  {'sip':>4}  {'encoder':>9}  {'a^N sip':>7}  {'a^N time':>9}  naive oracle"
    _emit(head)
    for r in rows:
        _emit(f"{r['length']:>4}  {r['sip']:>4}  {r['encoder_s']:>8.3f}s  {r['repeat_sip']:>7}  "
              f"{r['repeat_s']:>8.3f}s  {r['naive']}")
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isacode", description="Simplest ISA codes of symbol strings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--tokens", action="store_true",
                        help="whitespace-separated multi-character symbols")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10**7, help="naive oracle code budget")
    common.add_argument("--workers", type=int, default=None,
                        help="threads for stretches of equal length")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="print a simplest code")
    p.add_argument("input", nargs="?")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="expand a code")
    p.add_argument("code", nargs="?")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("complexity", parents=[common], help="sip of a code")
    p.add_argument("code", nargs="?")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("graph", parents=[common], help="A- or S-graph as DOT or JSON")
    p.add_argument("input", nargs="?")
    p.add_argument("--kind", choices=["a", "s"], default="a")
    p.add_argument("--dot", action="store_true", help="DOT output (the default)")
    p.add_argument("--repeat", type=int, default=1, help="A-graph repeat length")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("input", nargs="?", help="check a single string instead")
    p.add_argument("--count", type=int, default=1000, help="strings per graph suite")
    p.add_argument("--max-length", type=int, default=40)
    p.add_argument("--lengths", help="oracle string lengths, e.g. 1..6 or 4,8")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--exhaustive", action="store_true", help="all strings of the given lengths")
    p.add_argument("--oracle-count", type=int, default=500)
    p.add_argument("--oracle-only", action="store_true", help="skip the graph suites")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="encoder against the naive oracle")
    p.add_argument("--lengths", help="string lengths, default 10,20,40,80")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "json", False) and getattr(args, "dot", False):
        print("isacode: --json and --dot are exclusive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"isacode: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
