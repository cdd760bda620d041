"""Acceptance criteria, one test each.

Every test records a PASS or FAIL line through ``acceptance_log``; the
lines are repeated in the terminal summary of the pytest run.
"""

import random
import time

from isacode import verify
from isacode.cli import main
from isacode.encoder import simplest_code
from isacode.hypergraph import (
    PSEUDO,
    Hyperstring,
    build_a_graph,
    build_s_graph,
    decompose_hyperstrings,
    flatten,
    substring_set,
)
from isacode.language import complexity, decode, parse_code
from isacode.oracle import BudgetExceeded, EnumerationBudget, count_codes, naive_simplest_code

from acceptance_log import report
from samples import MIRROR_APART, MIRROR_SAME, ALTERNATION_EDGES, AKAG, TWO_SUBGRAPHS, SAMPLE_CODES, X, nested


def test_1_metric_calibration():
    codes = [parse_code(text) for text, _ in SAMPLE_CODES]
    want = [sip for _, sip in SAMPLE_CODES]
    got = [complexity(c) for c in codes]
    # best of several rounds, so a scheduler hiccup does not count
    elapsed = min(_timed(lambda: [complexity(c) for c in codes]) for _ in range(20))
    ok = got == want and elapsed < 1e-3
    assert report(1, "metric calibration", ok, f"sip {got}, {elapsed * 1e3:.3f} ms for all seven")


def test_2_decode_fidelity():
    out = ["".join(decode(parse_code(text))) for text, _ in SAMPLE_CODES[1:]]
    ok = all(s == X for s in out)
    assert report(2, "decode fidelity", ok, f"{sum(s == X for s in out)}/6 codes decode to {X}")


def test_3_a_graph_structure():
    g = build_a_graph(AKAG)
    hs = decompose_hyperstrings(g)
    pairwise = [set(a.order) & set(b.order) for i, a in enumerate(hs) for b in hs[i + 1:]]
    pseudo = (10, 11) in g.edges and g.edges[(10, 11)].kind == PSEUDO
    ok = g.vertex_count == 11 and len(hs) == 3 and all(p == {11} for p in pairwise) and pseudo
    detail = (f"{g.vertex_count} vertices, {len(hs)} hyperstrings, shared vertices "
              f"{sorted(set().union(*pairwise))}, pseudo edge (10,11): {pseudo}")
    assert report(3, "A-graph of akagakakag", ok, detail)


def test_4_s_graph_structure():
    hs = decompose_hyperstrings(build_s_graph(TWO_SUBGRAPHS))
    ok = len(hs) == 2
    assert report(4, "S-graph of ababfdedgpfdedgbaba", ok, f"{len(hs)} hyperstrings")


def test_5_identical_or_disjoint():
    results = []
    for s in (MIRROR_SAME, MIRROR_APART):
        (h,) = [h for h in decompose_hyperstrings(build_s_graph(s)) if 1 in h.order]
        results.append((substring_set(h, 1, 5), substring_set(h, 6, 10)))
    (a, b), (c, d) = results
    ok = a == b and not c & d
    detail = f"{MIRROR_SAME}: equal {a == b}; {MIRROR_APART}: disjoint {not c & d}"
    assert report(5, "identical or disjoint substring sets", ok, detail)


def test_6_hypersubstring_sets():
    h = Hyperstring.from_edges(ALTERNATION_EDGES)
    left = {"".join(flatten(p)) for p in substring_set(h, 1, 4)}
    right = {"".join(flatten(p)) for p in substring_set(h, 5, 8)}
    ok = left == right == {"abc", "xc", "ay"}
    assert report(6, "hypersubstring sets", ok, f"pi(1,4) = {sorted(left)}, pi(5,8) = {sorted(right)}")


def test_7_oracle_equivalence():
    start = time.perf_counter()
    strings = [s for k in (1, 2, 3) for s in verify.all_strings(range(1, 9), k)]
    exhaustive = verify.oracle_equivalence(strings)
    rng = random.Random(0)
    sample = ["".join(rng.choice(verify.ALPHABET[:rng.randint(1, 4)]) for _ in range(rng.randint(1, 12)))
              for _ in range(500)]
    randomised = verify.oracle_equivalence(sample)
    elapsed = time.perf_counter() - start
    ok = exhaustive.passed and randomised.passed and elapsed <= 600
    detail = (f"{exhaustive.cases} exhaustive + {randomised.cases} random strings, "
              f"{len(exhaustive.violations) + len(randomised.violations)} mismatches, {elapsed:.0f} s")
    assert report(7, "encoder matches oracle", ok, detail), exhaustive.violations + randomised.violations


def test_8_property_suites():
    results = verify.graph_suites(seed=0, count=1000)
    ok = all(r.passed for r in results)
    detail = "; ".join(f"{r.name} {r.cases} strings {len(r.violations)} violations" for r in results)
    assert report(8, "graph property suites", ok, detail), [v for r in results for v in r.violations[:5]]


def test_9_performance():
    cases = {f"random binary #{i}": _random_binary(i, 100) for i in range(3)}
    cases["(ab)^50"] = "ab" * 50
    cases["a^100"] = "a" * 100
    cases["nested symmetry, 63 symbols"] = nested(5)
    cases["nested symmetry, first 100 symbols"] = nested(6)[:100]
    times = {}
    for name, s in cases.items():
        start = time.process_time()
        r = simplest_code(s)
        times[name] = time.process_time() - start
        assert "".join(decode(r.code)) == s
    slowest = max(times, key=times.get)

    # the first a^N whose number of codes exceeds the budget
    budget = EnumerationBudget(None, 10**7, None)
    n = 1
    while count_codes("a" * n, budget) <= 10**7:
        n += 1
    try:
        naive_simplest_code("a" * n, budget)
        refused = False
    except BudgetExceeded:
        refused = True
    ok = times[slowest] <= 10 and refused and n <= 14
    detail = (f"slowest encode {times[slowest]:.1f} s ({slowest}); naive oracle exceeds "
              f"10^7 codes from a^{n} on")
    assert report(9, "performance", ok, detail), times


def test_10_determinism(capsys):
    inputs = [X, _random_binary(7, 60), nested(4)]
    ok = True
    for s in inputs:
        outputs = set()
        for argv in (["encode", "--json", s], ["encode", "--json", s],
                     ["encode", "--json", "--workers", "2", s], ["encode", "--json", "--workers", "4", s]):
            assert main(argv) == 0
            outputs.add(capsys.readouterr().out)
        ok &= len(outputs) == 1
    assert report(10, "determinism", ok, f"{len(inputs)} inputs, 4 runs each incl. 2 and 4 workers")


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def _random_binary(seed, n):
    rng = random.Random(seed)
    return "".join(rng.choice("ab") for _ in range(n))
