import pytest
from hypothesis import given, settings, strategies as st

from isacode.encoder import simplest_code
from isacode.language import (
    AFormLeft,
    ArityError,
    Chunk,
    Code,
    CodeSyntaxError,
    IForm,
    MalformedCode,
    Role,
    SForm,
    complexity,
    decode,
    format_code,
    literal_code,
    parse_code,
    validate_code,
)
from isacode.oracle import UNLIMITED, enumerate_all_codes

from samples import SAMPLE_CODES, X


@pytest.mark.parametrize("text,sip", SAMPLE_CODES)
def test_sample_codes_metric(text, sip):
    assert complexity(parse_code(text)) == sip


@pytest.mark.parametrize("text,_", SAMPLE_CODES)
def test_sample_codes_decode(text, _):
    assert "".join(decode(parse_code(text))) == X


def test_decode_examples():
    assert "".join(decode(parse_code("S[(ab)(acd)(acd)(ab)]"))) == X
    assert "".join(decode(parse_code("<(a)>/<(b)(c)>"))) == "abac"
    assert "".join(decode(parse_code("<(b)(c)>/<(a)>"))) == "baca"
    assert "".join(decode(parse_code("S[(a)(b),(c)]"))) == "abcba"


def test_iform_over_chunks_decodes_to_chunks():
    code = parse_code("2*((ab))")
    out = decode(code)
    assert len(out) == 2
    assert all(isinstance(e, Chunk) and e.content == ("a", "b") for e in out)


def test_parse_examples():
    code = parse_code("2*(acd)")
    (term,) = code.terms
    assert isinstance(term, IForm) and term.n == 2
    assert term.repeat.content == ("a", "c", "d")
    s = parse_code("S[(ab)(acd)(acd)(ab)]").terms[0]
    assert isinstance(s, SForm) and s.pivot is None and len(s.argument) == 4
    assert all(c.role is Role.S_CHUNK for c in s.argument)
    assert format_code(parse_code("<(a)>/<(b)(c)>")) == "<(a)>/<(b)(c)>"


def test_validate_examples():
    assert validate_code(parse_code("S[(a)]")) == []
    bad_i = Code((IForm(1, Chunk(("a",), Role.REPEAT)),))
    assert any("arity" in v for v in validate_code(bad_i))
    bad_a = Code((AFormLeft(Chunk(("a",), Role.REPEAT), (Chunk(("b",), Role.A_CHUNK),)),))
    assert any("arity" in v for v in validate_code(bad_a))


def test_arity_errors_from_parser():
    with pytest.raises(ArityError):
        parse_code("1*(a)")
    with pytest.raises(ArityError):
        parse_code("<(a)>/<(b)>")


@pytest.mark.parametrize("text", ["", "2*(a", "S[(a)", "a)", "<(a)>/(b)", "2*a", "S[a]"])
def test_syntax_errors(text):
    with pytest.raises((CodeSyntaxError, MalformedCode)):
        parse_code(text)


def test_syntax_error_carries_position():
    with pytest.raises(CodeSyntaxError) as info:
        parse_code("ab)")
    assert info.value.args


def test_chunk_cost_rule():
    # a chunk holding one S-chunk is free, one holding an A-chunk is not
    assert complexity(parse_code("S[S[((ab))((acd))]]")) == 7
    assert complexity(parse_code("2*(<(a)>/<S[((b))((cd))]>)")) == 8
    assert complexity(parse_code("2*(a)")) == 1
    assert complexity(parse_code("2*(ab)")) == 3


def test_empty_pivot_is_free():
    assert complexity(parse_code("S[(a)(b)]")) == 2
    assert complexity(parse_code("S[(a)(b),(c)]")) == 3


def test_tokens_mode():
    code = parse_code("2*(foo bar) baz", tokens=True)
    assert decode(code) == ("foo", "bar", "foo", "bar", "baz")
    assert format_code(code, tokens=True) == "2*(foo bar) baz"
    assert complexity(code) == 4


@given(st.text(alphabet="abcd", min_size=1, max_size=30))
def test_literal_complexity_is_length(s):
    assert complexity(literal_code(s)) == len(s)


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="abc", min_size=1, max_size=16))
def test_round_trip_encoder_codes(s):
    code = simplest_code(s).code
    again = parse_code(format_code(code))
    assert again == code
    assert format_code(again) == format_code(code)


@pytest.mark.parametrize("s", ["aa", "aba", "abab", "aabb", "abcab"])
def test_round_trip_all_codes(s):
    for code in enumerate_all_codes(s, UNLIMITED):
        assert parse_code(format_code(code)) == code


def test_digit_symbols_stay_apart():
    code = simplest_code("2222").code
    assert "".join(decode(parse_code(format_code(code)))) == "2222"
