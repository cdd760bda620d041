"""Executable property suites for graphs, hyperstrings and the encoder.

Each suite draws its cases from a seeded generator, so a run is fully
determined by its arguments.  Violations are collected as short strings;
a suite passes when it has none.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .hypergraph import (
    PIVOT,
    EdgeLabeledDag,
    all_substring_sets,
    build_a_graph,
    build_s_graph,
    decompose_hyperstrings,
    substring_set,
    verify_hyperstring,
)

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    exhaustive: int = 0
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f", {self.exhaustive} with exhaustive substring sets" if self.exhaustive else ""
        text = f"{status} {self.name}: {self.cases} cases{extra}, {len(self.violations)} violations"
        return text


def random_strings(seed: int, count: int, min_length: int = 1, max_length: int = 40,
                   alphabet_sizes: Iterable[int] = (1, 2, 3, 4)) -> Iterator[str]:
    rng = random.Random(seed)
    sizes = list(alphabet_sizes)
    for _ in range(count):
        n = rng.randint(min_length, max_length)
        k = rng.choice(sizes)
        yield "".join(rng.choice(ALPHABET[:k]) for _ in range(n))


def all_strings(lengths: Iterable[int], alphabet_size: int) -> Iterator[str]:
    for n in lengths:
        for t in itertools.product(ALPHABET[:alphabet_size], repeat=n):
            yield "".join(t)


# ------------------------------------------------------------ graph suites


def a_graph_hyperstrings(strings: Iterable[str], exhaustive_limit: int = 10_000) -> SuiteResult:
    """Every independent subgraph of an A-graph is a hyperstring."""
    res = SuiteResult("A-graph hyperstrings")
    for s in strings:
        res.cases += 1
        n = len(s)
        g = build_a_graph(s)
        hs = decompose_hyperstrings(g)
        if len(hs) > n // 2:
            res.violations.append(f"{s}: {len(hs)} hyperstrings exceed N/2")
        isolated = g.vertex_count - len(g.connected_vertices())
        if isolated > n + 1:
            res.violations.append(f"{s}: {isolated} disconnected vertices")
        for h in hs:
            report = verify_hyperstring(h, exhaustive_limit)
            res.exhaustive += report.substring_sets_checked
            res.violations.extend(f"{s}: {v}" for v in report.violations)
    return res


def s_graph_hyperstrings(strings: Iterable[str], exhaustive_limit: int = 10_000) -> SuiteResult:
    """Without sink and pivots, an S-graph splits into hyperstrings."""
    res = SuiteResult("S-graph hyperstrings")
    over_quarter = 0
    for s in strings:
        res.cases += 1
        n = len(s)
        hs = decompose_hyperstrings(build_s_graph(s))
        # each subgraph needs two of the N//2 + 1 vertices before the sink
        if len(hs) > (n // 2 + 1) // 2:
            res.violations.append(f"{s}: {len(hs)} hyperstrings exceed (N//2 + 1)//2")
        if len(hs) > n // 4:
            over_quarter += 1
        for h in hs:
            report = verify_hyperstring(h, exhaustive_limit)
            res.exhaustive += report.substring_sets_checked
            res.violations.extend(f"{s}: {v}" for v in report.violations)
    if over_quarter:
        res.notes.append(f"{over_quarter} strings have more than N//4 subgraphs")
    return res


def _reachable(edges: set, start: int) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for (a, b) in edges:
            if a == u and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def s_graph_paths(strings: Iterable[str]) -> SuiteResult:
    """S-graph edges leaving (or entering) one vertex are joined by a path."""
    res = SuiteResult("S-graph paths")
    for s in strings:
        res.cases += 1
        g = build_s_graph(s)
        edges = {k for k, e in g.edges.items() if e.kind != PIVOT}
        reach = {}
        for (i, j) in edges:
            for (a, b) in edges:
                if a == i and j < b:
                    lo, hi = j, b
                elif b == j and i < a:
                    lo, hi = i, a
                else:
                    continue
                if lo not in reach:
                    reach[lo] = _reachable(edges, lo)
                if hi not in reach[lo]:
                    res.violations.append(f"{s}: no path {lo}->{hi}")
    return res


def _most_paths(g: EdgeLabeledDag, vertices: list[int]) -> int:
    best = 0
    for u in vertices:
        counts = {u: 1}
        for v in vertices:
            c = counts.get(v)
            if c:
                best = max(best, c)
                for e in g.out_edges(v):
                    counts[e.v] = counts.get(e.v, 0) + c
    return best


def identical_or_disjoint(strings: Iterable[str], exhaustive_limit: int = 10_000) -> SuiteResult:
    """Substring sets anywhere in an S-graph are identical or disjoint."""
    res = SuiteResult("identical or disjoint sets")
    for s in strings:
        res.cases += 1
        g = build_s_graph(s)
        edges = [e for e in g.edges.values() if e.kind != PIVOT]
        if not edges:
            continue
        core = EdgeLabeledDag(g.vertex_count, edges, source=1, sink=g.sink)
        vertices = sorted(core.connected_vertices())
        if _most_paths(core, vertices) > exhaustive_limit:
            continue
        res.exhaustive += 1
        sets = all_substring_sets(core, vertices)
        ids: dict = {}
        set_id = {pair: ids.setdefault(x, len(ids)) for pair, x in sets.items()}
        owner: dict = {}
        for pair, strings_ in sets.items():
            for x in strings_:
                other = owner.setdefault(x, pair)
                if set_id[other] != set_id[pair]:
                    res.violations.append(f"{s}: sets {other} and {pair} overlap")
                    break
    return res


# ------------------------------------------------------------ encoder suite


def oracle_equivalence(strings: Iterable[str],
                       encode: Callable | None = None,
                       reference: Callable | None = None,
                       name: str = "oracle equivalence") -> SuiteResult:
    """The encoder reaches the exhaustive minimum on every string."""
    from .encoder import simplest_code
    from .language import complexity, decode
    from .oracle import naive_simplest_code

    encode = encode or simplest_code
    reference = reference or (lambda s: naive_simplest_code(s, None))
    res = SuiteResult(name)
    for s in strings:
        if not s:
            continue
        res.cases += 1
        got = encode(s)
        want = reference(s)
        if got.sip != want.sip:
            res.violations.append(f"{s}: encoder {got.sip} sip, oracle {want.sip} sip")
        if "".join(decode(got.code)) != s:
            res.violations.append(f"{s}: code does not decode to the input")
        if complexity(got.code) != got.sip:
            res.violations.append(f"{s}: reported sip differs from the code's complexity")
    return res


def graph_suites(seed: int = 0, count: int = 1000, max_length: int = 40,
                 exhaustive_limit: int = 10_000) -> list[SuiteResult]:
    """The four graph suites over the same seeded sample of strings."""
    sample = list(random_strings(seed, count, 1, max_length))
    return [
        a_graph_hyperstrings(sample, exhaustive_limit),
        s_graph_hyperstrings(sample, exhaustive_limit),
        s_graph_paths(sample),
        identical_or_disjoint(sample, exhaustive_limit),
    ]
