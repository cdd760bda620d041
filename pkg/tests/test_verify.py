from isacode import verify
from isacode.encoder import EncodeResult
from isacode.language import Code, Literal


def test_generators_are_seeded():
    a = list(verify.random_strings(3, 20))
    assert a == list(verify.random_strings(3, 20))
    assert a != list(verify.random_strings(4, 20))
    assert len(list(verify.all_strings(range(1, 4), 2))) == 2 + 4 + 8


def test_graph_suites_small():
    results = verify.graph_suites(seed=1, count=40, max_length=16)
    assert [r.cases for r in results] == [40] * 4
    for r in results:
        assert r.passed, r.violations
        assert r.line().startswith("PASS")
    assert results[0].exhaustive > 0


def test_s_graph_hyperstrings_notes_strings_over_a_quarter():
    # "aa" has one S-graph subgraph although N//4 is 0
    res = verify.s_graph_hyperstrings(["aa", "abccda"])
    assert res.passed
    assert res.notes == ["2 strings have more than N//4 subgraphs"]


def test_oracle_equivalence_passes():
    res = verify.oracle_equivalence(list(verify.all_strings(range(1, 5), 2)) + [""])
    assert res.cases == 30 and res.passed


def test_oracle_equivalence_catches_a_bad_encoder():
    def plain(s):
        return EncodeResult(Code(tuple(Literal(c) for c in s)), len(s), {})

    res = verify.oracle_equivalence(["ab", "aaaa"], encode=plain)
    assert not res.passed
    assert res.violations == ["aaaa: encoder 4 sip, oracle 1 sip"]
    assert res.line().startswith("FAIL")
