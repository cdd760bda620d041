"""Ground truth by exhaustive search over all codes of a string.

Nothing here is clever on purpose.  Every I-, S- and A-form is found by
trying every split of a substring explicitly, and every argument is recoded
by recursing on the chunk string it forms.  Costs always come from the
metric in :mod:`isacode.language`; this module never counts sip itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .language import (
    AFormLeft,
    AFormRight,
    Chunk,
    Code,
    IForm,
    Literal,
    Role,
    SForm,
    complexity,
    term_complexity,
)
from .encoder import KIND_RANK, EncodeResult


class BudgetExceeded(RuntimeError):
    """The requested enumeration would exceed its budget."""


@dataclass(frozen=True)
class EnumerationBudget:
    max_length: int | None = 12
    max_codes: int | None = 10**7
    max_depth: int | None = None

    def check_length(self, n: int):
        if self.max_length is not None and n > self.max_length:
            raise BudgetExceeded(f"string length {n} exceeds budget {self.max_length}")


UNLIMITED = EnumerationBudget(None, None, None)


# ---------------------------------------------------------------- structure


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``n`` as an ordered sum of positive parts."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _cut(x: tuple, sizes: tuple[int, ...]) -> list[tuple]:
    out, pos = [], 0
    for k in sizes:
        out.append(x[pos:pos + k])
        pos += k
    return out


@lru_cache(maxsize=None)
def i_shapes(x: tuple) -> tuple:
    """``(n, y)`` with ``x == y * n`` and ``n >= 2``."""
    out = []
    for d in range(1, len(x) // 2 + 1):
        if len(x) % d == 0 and x[:d] * (len(x) // d) == x:
            out.append((len(x) // d, x[:d]))
    return tuple(out)


@lru_cache(maxsize=None)
def s_shapes(x: tuple) -> tuple:
    """``(parts, pivot)`` with ``x == parts + pivot + reversed(parts)``."""
    out = []
    n = len(x)
    for h in range(1, n // 2 + 1):
        pivot = x[h:n - h]
        for sizes in _compositions(h):
            parts = _cut(x[:h], sizes)
            mirrored = [e for part in reversed(parts) for e in part]
            if tuple(mirrored) == x[n - h:]:
                out.append((tuple(parts), pivot))
    return tuple(out)


@lru_cache(maxsize=None)
def a_shapes(x: tuple) -> tuple:
    """``(side, y, parts)`` for every A-form reading of ``x``."""
    out = []
    n = len(x)
    for side in ("L", "R"):
        for L in range(1, n // 2):
            y = x[:L] if side == "L" else x[n - L:]
            for sizes in _compositions(n):
                if len(sizes) < 2 or any(k <= L for k in sizes):
                    continue
                pieces = _cut(x, sizes)
                if side == "L" and all(p[:L] == y for p in pieces):
                    out.append((side, y, tuple(p[L:] for p in pieces)))
                elif side == "R" and all(p[-L:] == y for p in pieces):
                    out.append((side, y, tuple(p[:-L] for p in pieces)))
    return tuple(out)


# ---------------------------------------------------------------- enumeration


class _Enumerator:
    def __init__(self, budget: EnumerationBudget):
        self.budget = budget

    def _deep_ok(self, depth):
        return self.budget.max_depth is None or depth <= self.budget.max_depth

    def codes(self, x: tuple, depth: int = 0) -> Iterator[Code]:
        for k in range(1, len(x) + 1):
            for term in self.terms(x[:k], depth):
                if k == len(x):
                    yield Code((term,))
                else:
                    for rest in self.codes(x[k:], depth):
                        yield Code((term,) + rest.terms)

    def contents(self, x: tuple, depth: int) -> Iterator:
        yield x
        if len(x) > 1 and self._deep_ok(depth + 1):
            for code in self.codes(x, depth + 1):
                if not all(isinstance(t, Literal) for t in code.terms):
                    yield code

    def chunks(self, x: tuple, role: Role, depth: int) -> Iterator[Chunk]:
        for content in self.contents(x, depth):
            yield Chunk(content, role)

    def arguments(self, parts: tuple, role: Role, depth: int) -> Iterator:
        choices = [list(self.chunks(p, role, depth)) for p in parts]
        for combo in itertools.product(*choices):
            yield tuple(combo)
            if len(combo) > 1 and self._deep_ok(depth + 1):
                for code in self.codes(tuple(combo), depth + 1):
                    if not all(isinstance(t, Literal) for t in code.terms):
                        yield code

    def terms(self, x: tuple, depth: int) -> Iterator:
        if len(x) == 1:
            yield Literal(x[0])
        for n, y in i_shapes(x):
            for ch in self.chunks(y, Role.REPEAT, depth):
                yield IForm(n, ch)
        for parts, pivot in s_shapes(x):
            pivots = [None] if not pivot else list(self.chunks(pivot, Role.PIVOT, depth))
            for argument in self.arguments(parts, Role.S_CHUNK, depth):
                for pv in pivots:
                    yield SForm(argument, pv)
        for side, y, parts in a_shapes(x):
            for rep in self.chunks(y, Role.REPEAT, depth):
                for argument in self.arguments(parts, Role.A_CHUNK, depth):
                    yield AFormLeft(rep, argument) if side == "L" else AFormRight(argument, rep)


def enumerate_all_codes(s: Sequence, budget: EnumerationBudget = EnumerationBudget()) -> Iterator[Code]:
    """Every valid code of ``s``, each exactly once, in a fixed order.

    The total is counted before the first code is produced, so an
    over-budget request fails immediately instead of part way through.
    """
    x = tuple(s)
    budget.check_length(len(x))
    if budget.max_codes is not None:
        total = count_codes(x, budget)
        if total > budget.max_codes:
            raise BudgetExceeded(f"{total} codes exceed the budget of {budget.max_codes}")
    return _Enumerator(budget).codes(x)


# ---------------------------------------------------------------- counting


@lru_cache(maxsize=None)
def _count_codes(x: tuple, depth: int, max_depth, cap) -> int:
    total = 0
    for k in range(1, len(x) + 1):
        head = _count_terms(x[:k], depth, max_depth, cap)
        if head:
            total += head * (1 if k == len(x) else _count_codes(x[k:], depth, max_depth, cap))
        if cap is not None and total > cap:
            return total
    return total


def _deep(depth, max_depth):
    return max_depth is None or depth <= max_depth


@lru_cache(maxsize=None)
def _count_contents(x: tuple, depth: int, max_depth, cap) -> int:
    if len(x) <= 1 or not _deep(depth + 1, max_depth):
        return 1
    # literal content, plus all codes except the all-literal one
    return _count_codes(x, depth + 1, max_depth, cap)


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for k in range(len(partition)):
            yield partition[:k] + [[first] + partition[k]] + partition[k + 1:]


def _falling(m: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= m - i
    return out


def _count_arguments(parts: tuple, depth: int, max_depth, cap) -> int:
    # Chunks made from different part strings always differ; chunks made
    # from equal part strings coincide when the same content is chosen.
    # The number of recodings only depends on which chosen chunks
    # coincide, so each coincidence pattern is counted once, weighted by
    # the number of chunk choices producing it.
    groups: dict = {}
    for pos, part in enumerate(parts):
        groups.setdefault(part, []).append(pos)
    group_list = list(groups.items())
    choices = [_count_contents(part, depth, max_depth, cap) for part, _ in group_list]
    recode = len(parts) > 1 and _deep(depth + 1, max_depth)
    total = 0
    for combo in itertools.product(*(list(_set_partitions(pos)) for _, pos in group_list)):
        weight = 1
        for m, partition in zip(choices, combo):
            weight *= _falling(m, len(partition))
        if not weight:
            continue
        if recode:
            canon = [0] * len(parts)
            label = 0
            for partition in combo:
                for block in partition:
                    for pos in block:
                        canon[pos] = label
                    label += 1
            total += weight * _count_codes(tuple(canon), depth + 1, max_depth, cap)
        else:
            total += weight
        if cap is not None and total > cap:
            return total
    return total


@lru_cache(maxsize=None)
def _count_terms(x: tuple, depth: int, max_depth, cap) -> int:
    total = 1 if len(x) == 1 else 0
    for n, y in i_shapes(x):
        total += _count_contents(y, depth, max_depth, cap)
    for parts, pivot in s_shapes(x):
        pv = 1 if not pivot else _count_contents(pivot, depth, max_depth, cap)
        total += _count_arguments(parts, depth, max_depth, cap) * pv
        if cap is not None and total > cap:
            return total
    for side, y, parts in a_shapes(x):
        total += _count_contents(y, depth, max_depth, cap) * _count_arguments(parts, depth, max_depth, cap)
        if cap is not None and total > cap:
            return total
    return total


def count_codes(s: Sequence, budget: EnumerationBudget = UNLIMITED) -> int:
    """Number of distinct valid codes of ``s``.

    With a code budget the count stops early once it is known to exceed
    the budget (the returned value is then only a lower bound).
    """
    return _count_codes(tuple(s), 0, budget.max_depth, budget.max_codes)


# ---------------------------------------------------------------- minimum


def _tie_key(code: Code) -> tuple:
    return (
        complexity(code),
        len(code.terms),
        tuple(KIND_RANK[_kind(t)] for t in code.terms),
    )


def _kind(term) -> str:
    if isinstance(term, Literal):
        return "lit"
    if isinstance(term, IForm):
        return "I"
    if isinstance(term, SForm):
        return "S"
    return "AL" if isinstance(term, AFormLeft) else "AR"


class _Minimiser:
    """Simplest code by exhaustive search over every form and argument.

    Codes are additive over terms and chunks, so the simplest code of a
    string is assembled from the simplest codes of its pieces.  Every piece
    is still obtained by trying all of its readings.
    """

    @lru_cache(maxsize=None)
    def best_code(self, x: tuple) -> Code:
        best = None
        for k in range(1, len(x) + 1):
            head = self.best_term(x[:k])
            if head is None:
                continue
            code = Code((head,) if k == len(x) else (head,) + self.best_code(x[k:]).terms)
            if best is None or _tie_key(code) < _tie_key(best):
                best = code
        return best

    @lru_cache(maxsize=None)
    def best_content(self, x: tuple):
        if len(x) <= 1:
            return x
        code = self.best_code(x)
        literal = Code(tuple(Literal(e) for e in x))
        if complexity(code) + 1 < complexity(literal) + 1 and not all(isinstance(t, Literal) for t in code.terms):
            return code
        return x

    def best_chunk(self, x: tuple, role: Role) -> Chunk:
        return Chunk(self.best_content(x), role)

    def best_argument(self, parts: tuple, role: Role):
        chunks = tuple(self.best_chunk(p, role) for p in parts)
        if len(chunks) > 1:
            code = self.best_code(chunks)
            if not all(isinstance(t, Literal) for t in code.terms):
                if complexity(code) < sum(term_complexity(Literal(c)) for c in chunks):
                    return code
        return chunks

    @lru_cache(maxsize=None)
    def best_term(self, x: tuple):
        candidates = []
        if len(x) == 1:
            candidates.append(Literal(x[0]))
        for n, y in i_shapes(x):
            candidates.append(IForm(n, self.best_chunk(y, Role.REPEAT)))
        for parts, pivot in s_shapes(x):
            pv = self.best_chunk(pivot, Role.PIVOT) if pivot else None
            candidates.append(SForm(self.best_argument(parts, Role.S_CHUNK), pv))
        for side, y, parts in a_shapes(x):
            rep = self.best_chunk(y, Role.REPEAT)
            arg = self.best_argument(parts, Role.A_CHUNK)
            candidates.append(AFormLeft(rep, arg) if side == "L" else AFormRight(arg, rep))
        if not candidates:
            return None
        return min(candidates, key=lambda t: (term_complexity(t), KIND_RANK[_kind(t)]))


_MINIMISER = _Minimiser()


def naive_simplest_code(s: Sequence, budget: EnumerationBudget | None = EnumerationBudget()) -> EncodeResult:
    """The true minimum-sip code of ``s``.

    With a budget that has ``max_codes`` set, the string is first checked to
    have no more codes than that, so the search stays within reach of plain
    enumeration.  Pass ``budget=None`` to lift every limit.
    """
    x = tuple(s)
    if not x:
        raise ValueError("cannot encode an empty string")
    if budget is not None:
        budget.check_length(len(x))
        if budget.max_codes is not None:
            total = count_codes(x, budget)
            if total > budget.max_codes:
                raise BudgetExceeded(f"{total} codes exceed the budget of {budget.max_codes}")
    code = _MINIMISER.best_code(x)
    return EncodeResult(code, complexity(code), {"length": len(x)})
