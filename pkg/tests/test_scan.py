import itertools
import random

import pytest
from hypothesis import given, strategies as st

from isacode.scan import (
    PreconditionError,
    build_identity_table,
    iform_decompositions,
    overlap_decompose,
)


def test_eq_examples():
    t = build_identity_table("abab")
    assert t.eq(1, 3, 2)
    assert not t.eq(1, 2, 1)


def test_eq_akag_blocks():
    t = build_identity_table("akagakakag")
    # positions 1 and 7 both start "akag"; position 5 starts "akak"
    assert t.eq(1, 7, 4)
    assert not t.eq(1, 5, 4)
    assert t.eq(1, 5, 3)


def test_eq_matches_direct_comparison():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(0, 50)
        s = "".join(rng.choice("ab" if n % 2 else "abc") for _ in range(n))
        t = build_identity_table(s)
        for k in range(1, n + 1):
            for i in range(1, n - k + 2):
                for j in range(1, n - k + 2):
                    assert t.eq(i, j, k) == (s[i - 1:i - 1 + k] == s[j - 1:j - 1 + k])


def test_eq_out_of_range():
    with pytest.raises(IndexError):
        build_identity_table("abc").eq(1, 3, 2)


def test_iform_examples():
    assert iform_decompositions("aaaa", 1, 5) == [(1, 4), (2, 2)]
    assert iform_decompositions("abab", 1, 5) == [(2, 2)]
    assert iform_decompositions("abc", 1, 4) == []


def _trial_division(s, i, j):
    block = s[i - 1:j - 1]
    out = []
    for p in range(1, len(block)):
        if len(block) % p == 0 and block[:p] * (len(block) // p) == block:
            out.append((p, len(block) // p))
    return out


@given(st.text(alphabet="ab", min_size=1, max_size=24))
def test_iform_against_trial_division(s):
    n = len(s)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            got = iform_decompositions(s, i, j)
            assert got == _trial_division(s, i, j)
            for p, k in got:
                assert s[i - 1:i - 1 + p] * k == s[i - 1:j - 1]


def test_overlap_examples():
    r = overlap_decompose("ab", "abab")
    assert r.x == r.y == tuple("ab")
    r = overlap_decompose("a", "aa")
    assert r.x == r.y == ("a",)
    r = overlap_decompose("aba", "ababa")
    assert r.y == tuple("ab") and r.x == tuple("ba")
    assert r.v == ("a",) and r.w == ("b",)


def test_overlap_precondition():
    with pytest.raises(PreconditionError):
        overlap_decompose("ab", "abba")
    with pytest.raises(PreconditionError):
        overlap_decompose("ab", "ab")


def test_overlap_recomposes():
    for n in range(2, 11):
        for c2 in itertools.product("ab", repeat=n):
            for k in range(1, n):
                c1 = c2[:k]
                if c2[n - k:] != c1:
                    continue
                r = overlap_decompose(c1, c2)
                assert c1 + r.x == tuple(c2) == r.y + c1
                if r.v is not None:
                    assert r.y == r.v + r.w and r.x == r.w + r.v
