import itertools
from collections import Counter
from functools import lru_cache

import pytest

from isacode.language import (
    AFormLeft,
    AFormRight,
    Chunk,
    Code,
    IForm,
    Literal,
    Role,
    SForm,
    complexity,
    decode,
    format_code,
)
from isacode.oracle import (
    UNLIMITED,
    BudgetExceeded,
    EnumerationBudget,
    count_codes,
    enumerate_all_codes,
    naive_simplest_code,
)


def texts(s):
    return sorted(format_code(c) for c in enumerate_all_codes(s, UNLIMITED))


def test_enumeration_examples():
    assert texts("a") == ["a"]
    assert texts("ab") == ["a b"]
    assert texts("aa") == sorted(["a a", "2*(a)", "S[(a)]"])


def test_naive_examples():
    r = naive_simplest_code("aa")
    assert format_code(r.code) == "2*(a)" and r.sip == 1
    r = naive_simplest_code("abc")
    assert format_code(r.code) == "a b c" and r.sip == 3


def test_naive_ababfabab():
    # regression constant for the string of the code-graph example
    assert naive_simplest_code("ababfabab").sip == 4


# An independent generator: propose every form by its shape parameters
# alone and keep it when it decodes back to the target.


def _splits(x, pieces_min):
    n = len(x)
    for k in range(pieces_min, n + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(x[a:b] for a, b in zip(bounds, bounds[1:]))


@lru_cache(maxsize=None)
def gen_codes(x):
    out = set()
    for k in range(1, len(x) + 1):
        for head in gen_terms(x[:k]):
            if k == len(x):
                out.add(Code((head,)))
            else:
                out.update(Code((head,) + rest.terms) for rest in gen_codes(x[k:]))
    return frozenset(out)


def _plain(code):
    return all(isinstance(t, Literal) for t in code.terms)


@lru_cache(maxsize=None)
def gen_chunks(x, role):
    contents = {x} | {c for c in gen_codes(x) if len(x) > 1 and not _plain(c)}
    return frozenset(Chunk(c, role) for c in contents)


def gen_arguments(parts, role):
    out = set()
    for combo in itertools.product(*(gen_chunks(p, role) for p in parts)):
        out.add(combo)
        if len(combo) > 1:
            out.update(c for c in gen_codes(combo) if not _plain(c))
    return out


@lru_cache(maxsize=None)
def gen_terms(x):
    n = len(x)
    found = set()
    if n == 1:
        found.add(Literal(x[0]))
    for d in range(1, n):
        if n % d == 0:
            for ch in gen_chunks(x[:d], Role.REPEAT):
                found.add(IForm(n // d, ch))
    for h in range(1, n // 2 + 1):
        pivot = x[h:n - h]
        pivots = [Chunk(c.content, Role.PIVOT) for c in gen_chunks(pivot, Role.PIVOT)] if pivot else [None]
        for parts in _splits(x[:h], 1):
            for arg in gen_arguments(parts, Role.S_CHUNK):
                found.update(SForm(arg, pv) for pv in pivots)
    for L in range(1, n):
        for parts in _splits(x, 2):
            for side in "LR":
                rep = x[:L] if side == "L" else x[n - L:]
                if any(len(p) <= L for p in parts):
                    continue
                rest = tuple(p[L:] if side == "L" else p[:-L] for p in parts)
                for ch in gen_chunks(rep, Role.REPEAT):
                    for arg in gen_arguments(rest, Role.A_CHUNK):
                        found.add(AFormLeft(ch, arg) if side == "L" else AFormRight(arg, ch))
    return frozenset(t for t in found if decode(Code((t,))) == x)


def test_completeness_against_second_generator():
    for n in range(1, 7):
        for t in itertools.product("ab", repeat=n):
            s = "".join(t)
            got = Counter(enumerate_all_codes(s, UNLIMITED))
            assert max(got.values()) == 1, s
            assert set(got) == set(gen_codes(tuple(s))), s


def test_every_code_decodes():
    for s in ["abab", "aabaa", "abcabc", "aaaaaa"]:
        for code in enumerate_all_codes(s, UNLIMITED):
            assert "".join(decode(code)) == s


def test_count_matches_enumeration():
    for n in range(1, 8):
        for t in itertools.product("ab", repeat=n):
            s = "".join(t)
            assert count_codes(s) == sum(1 for _ in enumerate_all_codes(s, UNLIMITED))


def test_repetitive_counts_grow():
    counts = [count_codes("a" * n) for n in range(1, 14)]
    assert counts[:4] == [1, 3, 7, 34]
    assert all(a <= b for a, b in zip(counts, counts[1:]))
    assert counts[-1] == 8_988_862


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        naive_simplest_code("a" * 13, EnumerationBudget(max_length=12))
    with pytest.raises(BudgetExceeded):
        naive_simplest_code("a" * 14)
    with pytest.raises(BudgetExceeded):
        list(enumerate_all_codes("a" * 8, EnumerationBudget(max_codes=100)))


def test_capped_count_stops_early():
    assert count_codes("a" * 40, EnumerationBudget(None, 10**7, None)) > 10**7


def test_minimum_is_minimum():
    for s in ["abab", "aabaab", "abcba", "ababa"]:
        best = min(complexity(c) for c in enumerate_all_codes(s, UNLIMITED))
        assert naive_simplest_code(s).sip == best


def test_depth_budget_limits_recoding():
    shallow = set(enumerate_all_codes("aaaa", EnumerationBudget(None, None, 0)))
    full = set(enumerate_all_codes("aaaa", UNLIMITED))
    assert shallow < full
