"""The ISA coding language: code AST, decoding, complexity in sip, text syntax.

A code describes a string of *elements*.  An element is either a symbol
(a plain ``str`` token) or a :class:`Chunk`.  Input strings consist of
symbols only; the arguments of S- and A-forms are strings of chunks, and an
argument may itself be recoded into a code over those chunks.

Textual syntax (canonical printing shown)::

    a b 2*(acd) S[(a)(b),(a)] 2*(cda) b
    <(aba)>/<(cdacd)(bacdacdab)>
    S[S[((ab))((acd))]]
    2*(<(a)>/<S[((b))((cd))]>)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

RESERVED = frozenset("()[]<>/*,")


class MalformedCode(ValueError):
    """A code violates the structural rules of the coding language."""


class ArityError(MalformedCode):
    """An I-form factor or an argument length is out of range."""


class CodeSyntaxError(ValueError):
    """Text that does not follow the code grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Role(enum.Enum):
    REPEAT = "repeat"
    PIVOT = "pivot"
    S_CHUNK = "s-chunk"
    A_CHUNK = "a-chunk"


@dataclass(frozen=True)
class Chunk:
    """A parenthesised code part.

    ``content`` is either a tuple of elements (literal content) or a
    :class:`Code` (recoded content).  ``role`` records the syntactic position
    the chunk occupies; element chunks that are not part of any argument
    carry ``None``.
    """

    content: Union[tuple, "Code"]
    role: Role | None = None


Element = Union[str, Chunk]


@dataclass(frozen=True)
class Literal:
    element: Element


@dataclass(frozen=True)
class IForm:
    n: int
    repeat: Chunk


@dataclass(frozen=True)
class SForm:
    argument: Union[tuple, "Code"]
    pivot: Chunk | None = None


@dataclass(frozen=True)
class AFormLeft:
    repeat: Chunk
    argument: Union[tuple, "Code"]


@dataclass(frozen=True)
class AFormRight:
    argument: Union[tuple, "Code"]
    repeat: Chunk


CodeTerm = Union[Literal, IForm, SForm, AFormLeft, AFormRight]


@dataclass(frozen=True)
class Code:
    terms: tuple

    def __post_init__(self):
        if not isinstance(self.terms, tuple):
            object.__setattr__(self, "terms", tuple(self.terms))

    def __str__(self) -> str:
        return format_code(self)


def is_symbol(element: Element) -> bool:
    return isinstance(element, str)


def literal_code(elements: Iterable[Element]) -> Code:
    return Code(tuple(Literal(e) for e in elements))


# ---------------------------------------------------------------- decoding


def decode(code: Code) -> tuple:
    """Return the element string described by ``code``."""
    out: list = []
    for term in code.terms:
        out.extend(decode_term(term))
    return tuple(out)


def chunk_content(chunk: Chunk) -> tuple:
    """The element string a chunk stands for (recoded content decoded)."""
    if isinstance(chunk.content, Code):
        return decode(chunk.content)
    return tuple(chunk.content)


def argument_chunks(argument) -> tuple:
    """The chunks of an S- or A-argument, decoding a recoded argument."""
    if isinstance(argument, Code):
        chunks = decode(argument)
        if not all(isinstance(c, Chunk) for c in chunks):
            raise MalformedCode("recoded argument decodes to a bare symbol")
        return chunks
    return tuple(argument)


def decode_term(term: CodeTerm) -> tuple:
    if isinstance(term, Literal):
        return (term.element,)
    if isinstance(term, IForm):
        if term.n < 2:
            raise ArityError(f"I-form factor {term.n} < 2")
        return chunk_content(term.repeat) * term.n
    if isinstance(term, SForm):
        xs = [chunk_content(c) for c in argument_chunks(term.argument)]
        if not xs:
            raise ArityError("S-argument needs at least one chunk")
        pivot = chunk_content(term.pivot) if term.pivot is not None else ()
        out = [e for x in xs for e in x]
        out.extend(pivot)
        for x in reversed(xs):
            out.extend(x)
        return tuple(out)
    if isinstance(term, (AFormLeft, AFormRight)):
        xs = [chunk_content(c) for c in argument_chunks(term.argument)]
        if len(xs) < 2:
            raise ArityError("A-argument needs at least two chunks")
        y = chunk_content(term.repeat)
        out = []
        for x in xs:
            out.extend(y + x if isinstance(term, AFormLeft) else x + y)
        return tuple(out)
    raise MalformedCode(f"not a code term: {term!r}")


# ---------------------------------------------------------------- complexity


def complexity(code: Code) -> int:
    """Structural information load of ``code`` in sip.

    Every symbol occurrence costs 1.  A chunk costs 1 extra unless its
    content is a single symbol or a single S-chunk.  Repetition factors and
    empty pivots are free.
    """
    return sum(term_complexity(t) for t in code.terms)


def term_complexity(term: CodeTerm) -> int:
    if isinstance(term, Literal):
        return element_complexity(term.element)
    if isinstance(term, IForm):
        return chunk_complexity(term.repeat)
    if isinstance(term, SForm):
        cost = argument_complexity(term.argument)
        if term.pivot is not None:
            cost += chunk_complexity(term.pivot)
        return cost
    if isinstance(term, (AFormLeft, AFormRight)):
        return chunk_complexity(term.repeat) + argument_complexity(term.argument)
    raise MalformedCode(f"not a code term: {term!r}")


def element_complexity(element: Element) -> int:
    if isinstance(element, str):
        return 1
    return chunk_complexity(element)


def argument_complexity(argument) -> int:
    if isinstance(argument, Code):
        return complexity(argument)
    return sum(chunk_complexity(c) for c in argument)


def _single_element(content) -> Element | None:
    if isinstance(content, Code):
        terms = content.terms
        if len(terms) == 1 and isinstance(terms[0], Literal):
            return terms[0].element
        return None
    if len(content) == 1:
        return content[0]
    return None


def chunk_penalty(chunk: Chunk) -> int:
    """0 if the chunk holds one symbol or one S-chunk, else 1 (empty: 0)."""
    content = chunk.content
    if not isinstance(content, Code) and len(content) == 0:
        return 0
    single = _single_element(content)
    if single is None:
        return 1
    if isinstance(single, str) or single.role is Role.S_CHUNK:
        return 0
    return 1


def chunk_complexity(chunk: Chunk) -> int:
    content = chunk.content
    if isinstance(content, Code):
        inner = complexity(content)
    else:
        inner = sum(element_complexity(e) for e in content)
    return inner + chunk_penalty(chunk)


# ---------------------------------------------------------------- validation


def validate_code(code: Code) -> list[str]:
    """List every rule violation in ``code``; empty iff the code is valid."""
    problems: list[str] = []
    if not code.terms:
        problems.append("code has no terms")
    for term in code.terms:
        _validate_term(term, problems)
    return problems


def _validate_chunk(chunk: Chunk, problems: list[str], may_be_empty=False):
    content = chunk.content
    if isinstance(content, Code):
        problems.extend(validate_code(content))
        try:
            empty = not decode(content)
        except MalformedCode:
            return
    else:
        empty = len(content) == 0
        for e in content:
            _validate_element(e, problems)
    if empty and not may_be_empty:
        problems.append(f"empty {chunk.role.value if chunk.role else 'element'} chunk")


def _validate_element(element, problems):
    if isinstance(element, Chunk):
        _validate_chunk(element, problems)
    elif not isinstance(element, str) or not valid_symbol(element):
        problems.append(f"invalid symbol {element!r}")


def _validate_argument(argument, problems, minimum, kind):
    if isinstance(argument, Code):
        problems.extend(validate_code(argument))
        try:
            chunks = argument_chunks(argument)
        except MalformedCode as exc:
            problems.append(f"{kind}-argument: {exc}")
            return
        if all(isinstance(t, Literal) for t in argument.terms):
            problems.append(f"{kind}-argument recoding contains no form")
    else:
        chunks = tuple(argument)
        for c in chunks:
            if not isinstance(c, Chunk):
                problems.append(f"{kind}-argument holds a non-chunk {c!r}")
                return
            _validate_chunk(c, problems)
    if len(chunks) < minimum:
        problems.append(
            f"arity violation: {kind}-argument has {len(chunks)} chunk(s), needs >= {minimum}"
        )


def _validate_term(term, problems):
    if isinstance(term, Literal):
        _validate_element(term.element, problems)
    elif isinstance(term, IForm):
        if not isinstance(term.n, int) or term.n < 2:
            problems.append(f"arity violation: I-form factor {term.n} < 2")
        _validate_chunk(term.repeat, problems)
    elif isinstance(term, SForm):
        _validate_argument(term.argument, problems, 1, "S")
        if term.pivot is not None:
            _validate_chunk(term.pivot, problems, may_be_empty=True)
    elif isinstance(term, (AFormLeft, AFormRight)):
        _validate_chunk(term.repeat, problems)
        _validate_argument(term.argument, problems, 2, "A")
    else:
        problems.append(f"not a code term: {term!r}")


def check_code(code: Code) -> None:
    """Raise :class:`ArityError` / :class:`MalformedCode` on the first violation."""
    problems = validate_code(code)
    if problems:
        cls = ArityError if problems[0].startswith("arity") else MalformedCode
        raise cls(problems[0])


def valid_symbol(token: str) -> bool:
    return bool(token) and not any(ch.isspace() or ch in RESERVED for ch in token)


# ---------------------------------------------------------------- printing


def format_code(code: Code, tokens: bool = False) -> str:
    """Canonical text for ``code``.

    Top-level terms are separated by one space; nothing is spaced inside
    forms, except that ``tokens=True`` separates adjacent inner items by a
    space so multi-character symbols stay distinguishable.
    """
    return " ".join(_format_term(t, tokens) for t in code.terms)


def _join(parts: Sequence[str], tokens: bool) -> str:
    if tokens:
        return " ".join(parts)
    out = ""
    for part in parts:
        # keep a digit symbol from gluing onto a following repetition factor
        if out and out[-1].isdigit() and part[:1].isdigit():
            out += " "
        out += part
    return out


def _format_element(element: Element, tokens: bool) -> str:
    if isinstance(element, str):
        return element
    return _format_chunk(element, tokens)


def _format_seq(content, tokens: bool) -> str:
    if isinstance(content, Code):
        return _join([_format_term(t, tokens) for t in content.terms], tokens)
    return _join([_format_element(e, tokens) for e in content], tokens)


def _format_chunk(chunk: Chunk, tokens: bool) -> str:
    return "(" + _format_seq(chunk.content, tokens) + ")"


def _format_term(term: CodeTerm, tokens: bool) -> str:
    if isinstance(term, Literal):
        return _format_element(term.element, tokens)
    if isinstance(term, IForm):
        return f"{term.n}*{_format_chunk(term.repeat, tokens)}"
    if isinstance(term, SForm):
        text = "S[" + _format_seq(term.argument, tokens)
        if term.pivot is not None:
            text += "," + _format_chunk(term.pivot, tokens)
        return text + "]"
    if isinstance(term, AFormLeft):
        return (
            "<" + _format_chunk(term.repeat, tokens) + ">/<"
            + _format_seq(term.argument, tokens) + ">"
        )
    if isinstance(term, AFormRight):
        return (
            "<" + _format_seq(term.argument, tokens) + ">/<"
            + _format_chunk(term.repeat, tokens) + ">"
        )
    raise MalformedCode(f"not a code term: {term!r}")


def format_elements(elements: Iterable[Element], tokens: bool = False) -> str:
    """Text for a decoded element string."""
    parts = [_format_element(e, tokens) for e in elements]
    return " ".join(parts) if tokens else "".join(parts)


# ---------------------------------------------------------------- parsing


def parse_code(text: str, tokens: bool = False) -> Code:
    """Parse code text.

    In the default character mode every non-reserved, non-space character is
    a symbol.  With ``tokens=True`` a symbol is a maximal run of such
    characters.  Arity bounds are checked after parsing.
    """
    parser = _Parser(text, tokens)
    terms = parser.terms([None])
    parser.skip()
    if parser.pos != len(text):
        raise CodeSyntaxError(f"unexpected {text[parser.pos]!r}", parser.pos)
    if not terms:
        raise CodeSyntaxError("empty code", 0)
    code = Code(tuple(terms))
    check_code(code)
    return code


class _Parser:
    def __init__(self, text: str, tokens: bool):
        self.text = text
        self.tokens = tokens
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise CodeSyntaxError(f"expected {s!r}, found {found!r}", self.pos)
        self.pos += len(s)

    def _word(self) -> str:
        start = self.pos
        end = start
        while end < len(self.text):
            ch = self.text[end]
            if ch.isspace() or ch in RESERVED:
                break
            end += 1
            if not self.tokens:
                break
        return self.text[start:end]

    def _digits_then_star(self) -> str | None:
        end = self.pos
        while end < len(self.text) and self.text[end].isdigit():
            end += 1
        if end > self.pos and end < len(self.text) and self.text[end] == "*":
            return self.text[self.pos:end]
        return None

    def terms(self, roles: list) -> list:
        """Parse terms until a closing delimiter.

        ``roles[-1]`` is the role given to chunk literals at this level;
        their contents belong to the enclosing level ``roles[:-1]``.
        """
        out = []
        while True:
            ch = self.peek()
            if ch == "" or ch in ")]>,":
                return out
            out.append(self.term(roles))

    def term(self, roles):
        ch = self.peek()
        start = self.pos
        if ch == "(":
            outer = roles[:-1] or [None]
            return Literal(self.chunk(outer, roles[-1]))
        if ch == "<":
            return self.aform(roles)
        if ch == "S" and self.text.startswith("S[", self.pos):
            return self.sform(roles)
        if ch.isdigit():
            digits = self._digits_then_star()
            if digits is not None:
                self.pos += len(digits) + 1
                return IForm(int(digits), self.chunk(roles, Role.REPEAT))
        if ch in RESERVED:
            raise CodeSyntaxError(f"unexpected {ch!r}", start)
        return Literal(self._word_advance())

    def _word_advance(self) -> str:
        word = self._word()
        self.pos += len(word)
        return word

    def chunk(self, roles, role):
        self.expect("(")
        terms = self.terms(roles)
        self.expect(")")
        if all(isinstance(t, Literal) for t in terms):
            content = tuple(t.element for t in terms)
        else:
            content = Code(tuple(terms))
        return Chunk(content, role)

    def argument(self, roles, role):
        start = self.pos
        terms = self.terms(roles + [role])
        if not terms:
            raise CodeSyntaxError("empty argument", start)
        if all(isinstance(t, Literal) and isinstance(t.element, Chunk) for t in terms):
            return tuple(t.element for t in terms)
        return Code(tuple(terms))

    def sform(self, roles):
        self.expect("S[")
        argument = self.argument(roles, Role.S_CHUNK)
        pivot = None
        if self.peek() == ",":
            self.pos += 1
            pivot = self.chunk(roles, Role.PIVOT)
            if not pivot.content:
                pivot = None
        self.expect("]")
        return SForm(argument, pivot)

    def aform(self, roles):
        start = self.pos
        self.expect("<")
        left_terms = self.terms(roles + [Role.A_CHUNK])
        self.expect(">/<")
        right_terms = self.terms(roles + [Role.A_CHUNK])
        self.expect(">")

        def single_chunk(ts):
            return len(ts) == 1 and isinstance(ts[0], Literal) and isinstance(ts[0].element, Chunk)

        def as_argument(ts):
            if not ts:
                raise CodeSyntaxError("empty A-argument", start)
            if all(isinstance(t, Literal) and isinstance(t.element, Chunk) for t in ts):
                return tuple(t.element for t in ts)
            return Code(tuple(ts))

        def as_repeat(ts):
            # parsed in argument context; its content already has the
            # enclosing level's roles, only the chunk's own role changes
            return Chunk(ts[0].element.content, Role.REPEAT)

        if single_chunk(left_terms) and not single_chunk(right_terms):
            return AFormLeft(as_repeat(left_terms), as_argument(right_terms))
        if single_chunk(right_terms) and not single_chunk(left_terms):
            return AFormRight(as_argument(left_terms), as_repeat(right_terms))
        if single_chunk(left_terms) and single_chunk(right_terms):
            return AFormLeft(as_repeat(left_terms), as_argument(right_terms))
        raise CodeSyntaxError("A-form needs a single repeat chunk on one side", start)
