"""Guaranteed-simplest ISA codes.

The search works on *levels*.  A level is a string-like DAG laid over the
positions of the input string:

* the base level has every position as a vertex and one edge per element;
* an S-level (built for a centre ``c = p + q``) has an edge for every chunk
  that is mirrored around ``c``, so each path is one S-argument;
* an A-level (built for a repeat ``y`` of length ``L``) has a vertex at every
  occurrence of ``y`` and an edge for every A-chunk between occurrences.

Derived levels are hyperstrings: any two stretches of them describe either
identical or disjoint sets of chunk strings.  Every stretch therefore gets a
*key* such that equal keys mean identical sets, and the best code of a
stretch is computed once per key.  That single computation covers all the
(possibly exponentially many) arguments the stretch represents, which is
what keeps the search polynomial in practice.  Each level can spawn further
S- and A-levels over itself, giving the tree of hyperstrings.

Costs are pairs ``(sip, number of terms)`` compared lexicographically, so
among equally simple codes the one with fewer terms wins.
"""

from __future__ import annotations

import bisect
import gc
import itertools
import math
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .language import (
    AFormLeft,
    AFormRight,
    Chunk,
    Code,
    IForm,
    Literal,
    Role,
    SForm,
    chunk_penalty,
    element_complexity,
)
from .scan import IdentityTable

INF = 1 << 40

# kind ranks used for deterministic tie-breaking
KIND_RANK = {"lit": 0, "I": 1, "S": 2, "AL": 3, "AR": 4}


class DepthGuardError(RuntimeError):
    """Recoding nested deeper than the halving argument allows."""


@dataclass
class EncodeResult:
    code: Code
    sip: int
    stats: dict = field(default_factory=dict)


# ---------------------------------------------------------------- levels


class Level:
    kind = "?"
    free = True  # single-element content of a chunk costs no extra sip
    role: Role | None = None

    def __init__(self, enc: "Encoder", parent: "Level | None"):
        self.enc = enc
        self.parent = parent
        self.depth = 0 if parent is None else parent.depth + 1
        if self.depth > enc.max_depth:
            raise DepthGuardError(f"recoding depth {self.depth} exceeds {enc.max_depth}")
        self._keys: dict = {}
        self._s_levels: dict = {}
        self._a_levels: dict = {}
        self._vset: frozenset | None = None
        # exact results by position, in front of the key-based memo tables
        self.f_local: dict = {}
        self.f2_local: dict = {}
        self.c_local: dict = {}
        # best lower bounds found so far for stretches not yet exact
        self.f_low: dict = {}
        self.f2_low: dict = {}
        enc.level_count[self.kind] = enc.level_count.get(self.kind, 0) + 1
        enc.max_level_depth = max(enc.max_level_depth, self.depth)

    # subclasses provide: vertices(), key(p, q), single(p, q), element(p, q), inner(p, q)

    def lb(self, p: int, q: int) -> int:
        """A lower bound on the sip of any code of stretch (p, q)."""
        return 1

    def lb2(self, p: int, q: int) -> int:
        """Lower bound for codes describing at least two elements."""
        return self.lb(p, q)

    def lb2_fine(self, p: int, q: int) -> int:
        """A costlier bound for the same, tried only if :meth:`lb2` fails."""
        return 0

    def vertex(self, r: int) -> bool:
        if self._vset is None:
            self._vset = frozenset(self.vertices())
        return r in self._vset

    def s_level(self, c: int) -> "SLevel":
        lvl = self._s_levels.get(c)
        if lvl is None:
            lvl = self._s_levels.setdefault(c, SLevel(self.enc, self, c))
        return lvl

    def a_level(self, side: str, length: int, ykey: int, ycost: int) -> "ALevel":
        k = (side, length, ykey)
        lvl = self._a_levels.get(k)
        if lvl is None:
            lvl = self._a_levels.setdefault(k, ALevel(self.enc, self, side, length, ykey, ycost))
        return lvl


class BaseLevel(Level):
    kind = "B"

    def __init__(self, enc, elements: tuple, table: IdentityTable):
        super().__init__(enc, None)
        self.elements = elements
        self.table = table
        self.n = len(elements)
        self._weights = [element_complexity(e) for e in elements]
        self._pens = [chunk_penalty(Chunk((e,))) for e in elements]
        # every symbol of a stretch shows up at least once in any of its codes
        self._distinct = []
        for p in range(self.n):
            seen = set()
            row = []
            for e in elements[p:]:
                if isinstance(e, str):
                    seen.add(e)
                row.append(max(1, len(seen)))
            self._distinct.append(row)

    def lb(self, p, q):
        return self._distinct[p][q - p - 1]

    def vertices(self):
        return range(self.n + 1)

    def vertex(self, r):
        return 0 <= r <= self.n

    def key(self, p, q):
        k = self._keys.get((p, q))
        if k is None:
            k = self._keys.setdefault((p, q), self.enc.intern(("B", self.table.span_id(p, q))))
        return k

    def single(self, p, q):
        if q == p + 1:
            return self._weights[p], self._pens[p]
        return None

    def element(self, p, q):
        return self.elements[p]

    def inner(self, p, q):
        return range(p + 1, q)


class SLevel(Level):
    """Chunks mirrored around centre ``c``; one path per S-argument."""

    kind = "S"
    free = True
    role = Role.S_CHUNK

    def __init__(self, enc, parent: Level, c: int):
        super().__init__(enc, parent)
        self.c = c
        self._verts: list | None = None
        self._out: dict = {}
        self._reach: dict = {}

    def vertices(self):
        if self._verts is None:
            par, c = self.parent, self.c
            self._verts = [r for r in par.vertices() if 2 * r <= c and par.vertex(c - r)]
        return self._verts

    def key(self, p, q):
        k = self._keys.get((p, q))
        if k is None:
            par, c = self.parent, self.c
            k = self.enc.intern(("S", par.key(p, q), par.key(c - q, c - p)))
            k = self._keys.setdefault((p, q), k)
        return k

    def has_edge(self, i, j):
        par, c = self.parent, self.c
        return 2 * j <= c and par.key(i, j) == par.key(c - j, c - i)

    def out(self, i):
        res = self._out.get(i)
        if res is None:
            verts = self.vertices()
            start = bisect.bisect_right(verts, i)
            res = [j for j in verts[start:] if self.has_edge(i, j)]
            res = self._out.setdefault(i, res)
        return res

    def reach(self, p):
        """Sorted vertices reachable from ``p``."""
        res = self._reach.get(p)
        if res is None:
            seen = set()
            stack = [p]
            while stack:
                for j in self.out(stack.pop()):
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
            res = self._reach.setdefault(p, sorted(seen))
        return res

    def lb(self, p, q):
        # replacing each S-chunk of a code by its content gives an equally
        # simple code of the same stretch one level down
        return self.enc.lower(self.parent, p, q)

    def single(self, p, q):
        if self.has_edge(p, q):
            return self.enc.chunk(self.parent, p, q), 0
        return None

    def element(self, p, q):
        return self.enc.chunk_obj(self.parent, p, q, Role.S_CHUNK)

    def inner(self, p, q):
        reach = self.reach(p)
        lo = bisect.bisect_right(reach, p)
        hi = bisect.bisect_left(reach, q)
        return reach[lo:hi]


class ALevel(Level):
    """A-chunks between occurrences of a repeat of length ``length``.

    Left A-forms ``<(y)>/<(x1)(x2)...>`` put vertices at the starts of the
    occurrences of ``y``; right A-forms ``<(x1)(x2)...>/<(y)>`` at their
    ends.
    """

    free = False
    role = Role.A_CHUNK

    def __init__(self, enc, parent: Level, side: str, length: int, ykey: int, ycost: int):
        self.kind = "AL" if side == "L" else "AR"
        super().__init__(enc, parent)
        self.side = side
        self.length = length
        self.ykey = ykey
        self.ycost = ycost
        self._verts: list | None = None
        self._lb2: dict = {}
        self._floors: dict = {}

    def vertices(self):
        if self._verts is None:
            par, L, y = self.parent, self.length, self.ykey
            if self.side == "L":
                self._verts = [r for r in par.vertices() if par.vertex(r + L) and par.key(r, r + L) == y]
            else:
                self._verts = [r for r in par.vertices() if par.vertex(r - L) and par.key(r - L, r) == y]
        return self._verts

    def key(self, p, q):
        k = self._keys.get((p, q))
        if k is None:
            k = self.enc.intern((self.kind, self.length, self.ykey, self.parent.key(p, q)))
            k = self._keys.setdefault((p, q), k)
        return k

    def _lb_many(self, p, q):
        # a code C of two or more A-chunks yields the A-form <(y)>/<C> (or
        # <C>/<(y)>) for the same stretch one level down
        return self.enc.lower(self.parent, p, q) - self.ycost

    def lb(self, p, q):
        # a single A-chunk has no such A-form; it costs its chunk
        many = self._lb_many(p, q)
        if q - p > self.length:
            return max(1, min(many, self._element_floor(p, q)))
        return max(1, many)

    def lb2(self, p, q):
        # two or more A-chunks: literals cost 1 each, and any form wraps an
        # A-chunk in a chunk that pays for it
        return max(2, self._lb_many(p, q))

    def lb2_fine(self, p, q):
        # every code holds a literal for its first and for its last A-chunk
        res = self._lb2.get((p, q))
        if res is None:
            res = self._lb2[(p, q)] = self._ends_bound(p, q)
        return res

    def _element_floor(self, p, q):
        res = self._floors.get((p, q))
        if res is not None:
            return res
        a, b = self._chunk_span(p, q)
        enc, par = self.enc, self.parent
        res = par.c_local.get((a, b))
        if res is None:
            e = par.single(a, b)
            res = enc.lower(par, a, b) + 1
            if e is not None:
                res = min(res, e[0] + e[1])
        # a floor found once stays a valid lower bound
        self._floors[(p, q)] = res
        return res

    def _ends_bound(self, p, q):
        verts = self.vertices()
        L = self.length
        lo = bisect.bisect_left(verts, p + L + 1)
        hi = bisect.bisect_right(verts, q - L - 1)
        inner = verts[lo:hi]
        if not inner:
            return 0
        floor = self._element_floor
        first = [floor(p, r) for r in inner]
        last = [floor(r, q) for r in inner]
        # distinct first and last chunks pay twice, a shared one once
        res = min(first) + min(last)
        # a shared chunk has the same length at both ends
        where = {r: i for i, r in enumerate(inner)}
        for i, r in enumerate(inner):
            w = first[i]
            if w >= res:
                continue
            k = where.get(q - (r - p))
            if k is None or last[k] >= res:
                continue
            if self.key(p, r) == self.key(inner[k], q):
                res = max(w, last[k])
        return res

    def _chunk_span(self, p, q):
        return (p + self.length, q) if self.side == "L" else (p, q - self.length)

    def single(self, p, q):
        if q - p > self.length:
            a, b = self._chunk_span(p, q)
            return self.enc.chunk(self.parent, a, b), 1
        return None

    def element(self, p, q):
        a, b = self._chunk_span(p, q)
        return self.enc.chunk_obj(self.parent, a, b, Role.A_CHUNK)

    def inner(self, p, q):
        verts = self.vertices()
        L = self.length
        lo = bisect.bisect_left(verts, p + L + 1)
        hi = bisect.bisect_right(verts, q - L - 1)
        return verts[lo:hi]

    def has_inner(self, p, q) -> bool:
        verts = self.vertices()
        L = self.length
        lo = bisect.bisect_left(verts, p + L + 1)
        return lo < len(verts) and verts[lo] <= q - L - 1


class HyperLevel(Level):
    """An explicitly given hyperstring, positions are Hamiltonian indices."""

    kind = "H"

    def __init__(self, enc, hyperstring, weights: dict | None = None, free: bool = False,
                 role: Role | None = Role.A_CHUNK):
        super().__init__(enc, None)
        self.h = hyperstring
        self.free = free
        self.role = role
        self.m = len(hyperstring.order) - 1
        self.edges = {}
        pos = {v: k for k, v in enumerate(hyperstring.order)}
        for (u, v), e in hyperstring.graph.edges.items():
            label = tuple(e.label)
            if weights and (u, v) in weights:
                w = weights[(u, v)]
            else:
                w = sum(element_complexity(x) for x in label) + (1 if len(label) > 1 else 0)
            self.edges[(pos[u], pos[v])] = (w, label)

    def vertices(self):
        return range(self.m + 1)

    def vertex(self, r):
        return 0 <= r <= self.m

    def key(self, p, q):
        k = self._keys.get((p, q))
        if k is None:
            sig = tuple(sorted(
                (a - p, b - p, w, label)
                for (a, b), (w, label) in self.edges.items()
                if p <= a and b <= q
            ))
            k = self._keys.setdefault((p, q), self.enc.intern(("H", q - p, sig)))
        return k

    def single(self, p, q):
        e = self.edges.get((p, q))
        if e is None:
            return None
        return e[0], 0 if self.free else 1

    def element(self, p, q):
        return Chunk(self.edges[(p, q)][1], self.role)

    def inner(self, p, q):
        return range(p + 1, q)


# ---------------------------------------------------------------- search


class Encoder:
    """Holds the memo tables for one input string."""

    def __init__(self, elements: Sequence, max_depth: int | None = None):
        self.s = tuple(elements)
        n = len(self.s)
        self.max_depth = max_depth if max_depth is not None else 2 * math.ceil(math.log2(n + 1))
        self._ids: dict = {}
        self._counter = itertools.count()
        self.fmemo: dict = {}
        self.f2memo: dict = {}
        self.cmemo: dict = {}
        # lower bounds for stretches whose exact value was not needed yet
        self.flb: dict = {}
        self.f2lb: dict = {}
        self.level_count: dict = {}
        self.max_level_depth = 0
        self.table = IdentityTable(self.s)
        self.base = BaseLevel(self, self.s, self.table)

    def intern(self, t) -> int:
        k = self._ids.get(t)
        if k is None:
            k = self._ids.setdefault(t, next(self._counter))
        return k

    # -- recurrences -------------------------------------------------

    def lower(self, level: Level, p: int, q: int) -> int:
        """Best known lower bound on the sip of stretch (p, q)."""
        res = level.f_local.get((p, q))
        if res is not None:
            return res[0]
        low = level.f_low.get((p, q))
        if low is not None:
            return low
        key = level.key(p, q)
        res = self.fmemo.get(key)
        if res is not None:
            return res[0]
        low = level.f_low[(p, q)] = max(self.flb.get(key, 0), level.lb(p, q))
        return low

    def F(self, level: Level, p: int, q: int, bound: int = INF):
        """Best ``(sip, terms, choice)`` over all codes of stretch (p, q).

        The result is exact whenever the simplest code costs at most
        ``bound``.  Otherwise ``choice`` is None and the returned sip is only
        known to exceed ``bound``.
        """
        local = level.f_local
        res = local.get((p, q))
        if res is not None:
            return res
        lb = level.f_low.get((p, q), 0)
        if lb > bound:
            return (lb, 0, None)
        key = level.key(p, q)
        res = self.fmemo.get(key)
        if res is not None:
            local[(p, q)] = res
            return res
        lb = max(lb, self.flb.get(key, 0), level.lb(p, q))
        if lb > bound:
            level.f_low[(p, q)] = lb
            return (lb, 0, None)
        e = level.single(p, q)
        lit = e[0] if e is not None else INF
        limit = min(bound, lit)
        best = self.F2(level, p, q, limit)
        # a memoised F2 result may be exact although it exceeds the bound
        if (lit <= bound and best[2] is None) or (best[2] is not None and (lit, 1) <= best[:2]):
            best = (lit, 1, ("lit",))
        if best[2] is None:
            # both the literal and every longer code exceed the bound
            low = max(lb, min(lit, best[0]))
            self.flb[key] = level.f_low[(p, q)] = low
            return (low, 0, None)
        res = local[(p, q)] = self.fmemo.setdefault(key, best)
        return res

    def F2(self, level: Level, p: int, q: int, bound: int = INF):
        """Like :meth:`F` but the code must describe at least two elements."""
        local = level.f2_local
        res = local.get((p, q))
        if res is not None:
            return res
        lb = level.f2_low.get((p, q), 0)
        if lb > bound:
            return (lb, 0, None)
        key = level.key(p, q)
        res = self.f2memo.get(key)
        if res is not None:
            local[(p, q)] = res
            return res
        lb = max(lb, self.f2lb.get(key, 0), level.lb2(p, q))
        if lb > bound:
            level.f2_low[(p, q)] = lb
            return (lb, 0, None)
        fine = level.lb2_fine(p, q)
        if fine > bound:
            self.f2lb[key] = level.f2_low[(p, q)] = fine
            return (fine, 0, None)
        best = (INF, 0, None)
        cur = bound
        known = level.f_local
        F = self.F
        lower = self.lower
        for r in level.inner(p, q):
            a = known.get((p, r))
            if a is None:
                # the second part costs at least its lower bound
                rest = lower(level, r, q)
                if rest >= cur:
                    continue
                a = F(level, p, r, cur - rest)
            if a[2] is None or a[0] >= cur:
                continue
            b = known.get((r, q)) or F(level, r, q, cur - a[0])
            if b[2] is None:
                continue
            cand = (a[0] + b[0], a[1] + b[1])
            if cand[0] <= cur and cand < best[:2]:
                best = (cand[0], cand[1], ("cat", r - p))
                cur = min(cur, cand[0])
        for cost, choice in self.forms(level, p, q, cur):
            if (cost, 1) < best[:2]:
                best = (cost, 1, choice)
        if best[2] is None:
            low = max(lb, bound + 1)
            self.f2lb[key] = level.f2_low[(p, q)] = low
            return (low, 0, None)
        res = local[(p, q)] = self.f2memo.setdefault(key, best)
        return res

    def chunk(self, level: Level, p: int, q: int, bound: int = INF) -> int:
        """sip of a chunk whose content is stretch (p, q) of ``level``.

        Exact when at most ``bound``; otherwise some value above ``bound``.
        """
        res = level.c_local.get((p, q))
        if res is not None:
            return res
        key = level.key(p, q)
        res = self.cmemo.get(key)
        if res is not None:
            level.c_local[(p, q)] = res
            return res
        e = level.single(p, q)
        single = e[0] + e[1] if e is not None and e[0] < INF else INF
        limit = min(bound, single)
        f = self.F(level, p, q, limit - 1)
        if f[2] is not None:
            return self.cmemo.setdefault(key, min(f[0] + 1, single))
        if single <= bound:
            return self.cmemo.setdefault(key, single)
        return max(bound + 1, min(single, f[0] + 1))

    def forms(self, level: Level, p: int, q: int, bound: int = INF, every_kind: bool = False):
        """Best candidate of each form kind covering (p, q), in kind order.

        Only candidates costing at most ``bound`` are reported, with exact
        sip.  Unless ``every_kind`` is set, a later kind is only reported if
        it beats every earlier one, which is all :meth:`F2` needs.
        """
        out = []
        n = q - p

        def found(cost, choice):
            nonlocal bound
            out.append((cost, choice))
            if not every_kind:
                bound = min(bound, cost - 1)

        # I-forms
        best = None
        limit = bound
        is_base = level is self.base
        for d in range(1, n // 2 + 1):
            if n % d or not level.vertex(p + d) or not level.vertex(q - d):
                continue
            # a repeated chunk makes the stretch equal to itself shifted by
            # one chunk; on plain strings that is also sufficient
            if level.key(p, q - d) != level.key(p + d, q):
                continue
            if not is_base:
                if not all(level.vertex(p + k * d) for k in range(2, n // d - 1)):
                    continue
                k0 = level.key(p, p + d)
                if not all(level.key(p + k * d, p + (k + 1) * d) == k0 for k in range(1, n // d)):
                    continue
            cost = self.chunk(level, p, p + d, limit)
            if cost <= limit:
                best = (cost, ("I", d))
                limit = cost - 1
        if best:
            found(*best)
        # S-forms
        if bound >= 1:
            c = p + q
            best = None
            limit = bound
            sl = level.s_level(c)
            for m in sl.reach(p):
                if 2 * m > c:
                    break
                # the argument costs at least 1 sip
                pivot = 0 if 2 * m == c else self.chunk(level, m, c - m, limit - 1)
                if pivot > limit - 1:
                    continue
                arg = self.F(sl, p, m, limit - pivot)
                if arg[2] is None or arg[0] + pivot > limit:
                    continue
                best = (arg[0] + pivot, ("S", m - p))
                limit = best[0] - 1
            if best:
                found(*best)
        # A-forms, repeat on the left then on the right
        for side in ("L", "R"):
            best = None
            limit = bound
            for L in range(1, (n - 2) // 2 + 1):
                if limit < 3:
                    break
                a, b = (p, p + L) if side == "L" else (q - L, q)
                edge = p + L if side == "L" else q - L
                if not level.vertex(edge):
                    continue
                ycost = self.chunk(level, a, b, limit - 1)
                if ycost > limit - 1:
                    continue
                al = level.a_level(side, L, level.key(a, b), ycost)
                if not al.has_inner(p, q):
                    # a longer repeat would extend this one, so it cannot
                    # recur inside the stretch either
                    break
                arg = self.F2(al, p, q, limit - ycost)
                if arg[2] is None or arg[0] + ycost > limit:
                    continue
                best = (ycost + arg[0], ("AL" if side == "L" else "AR", L))
                limit = best[0] - 1
            if best:
                found(*best)
        return out

    # -- reconstruction ----------------------------------------------

    def terms(self, level: Level, p: int, q: int, two: bool = False) -> list:
        f = self.F2(level, p, q) if two else self.F(level, p, q)
        choice = f[2]
        if choice is None:
            raise RuntimeError(f"no code for stretch {p}..{q}")
        if choice[0] == "lit":
            return [Literal(level.element(p, q))]
        if choice[0] == "cat":
            r = p + choice[1]
            return self.terms(level, p, r) + self.terms(level, r, q)
        return [self.form_term(level, p, q, choice)]

    def content(self, level: Level, p: int, q: int, two: bool = False):
        ts = self.terms(level, p, q, two)
        if all(isinstance(t, Literal) for t in ts):
            return tuple(t.element for t in ts)
        return Code(tuple(ts))

    def chunk_obj(self, level: Level, p: int, q: int, role: Role | None) -> Chunk:
        e = level.single(p, q)
        if e is not None and e[0] + e[1] == self.chunk(level, p, q):
            return Chunk((level.element(p, q),), role)
        return Chunk(self.content(level, p, q), role)

    def form_term(self, level: Level, p: int, q: int, choice):
        kind, arg = choice
        if kind == "I":
            return IForm((q - p) // arg, self.chunk_obj(level, p, p + arg, Role.REPEAT))
        if kind == "S":
            c = p + q
            m = p + arg
            argument = self.content(level.s_level(c), p, m)
            pivot = None if 2 * m == c else self.chunk_obj(level, m, c - m, Role.PIVOT)
            return SForm(argument, pivot)
        L = arg
        if kind == "AL":
            al = level.a_level("L", L, level.key(p, p + L), self.chunk(level, p, p + L))
            return AFormLeft(self.chunk_obj(level, p, p + L, Role.REPEAT), self.content(al, p, q, True))
        ar = level.a_level("R", L, level.key(q - L, q), self.chunk(level, q - L, q))
        return AFormRight(self.content(ar, p, q, True), self.chunk_obj(level, q - L, q, Role.REPEAT))

    # -- top level ---------------------------------------------------

    def fill(self, workers: int | None = None):
        """Evaluate every stretch of the input by increasing length."""
        n = len(self.s)
        base = self.base
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for length in range(1, n + 1):
                    list(pool.map(lambda p: self.F(base, p, p + length), range(n - length + 1)))
        else:
            for length in range(1, n + 1):
                for p in range(n - length + 1):
                    self.F(base, p, p + length)

    def best_covering_forms(self, i: int, j: int) -> list:
        """Simplest term of each form kind covering elements i..j-1 (1-based)."""
        p, q = i - 1, j - 1
        out = []
        for cost, choice in self.forms(self.base, p, q, every_kind=True):
            out.append((self.form_term(self.base, p, q, choice), cost))
        return out

    def code_graph(self) -> "CodeGraph":
        """Edges carrying the simplest single term for each stretch that can
        lie on a shortest path."""
        n = len(self.s)
        edges = {}
        for p in range(n):
            for q in range(p + 1, n + 1):
                f = self.F(self.base, p, q)
                if f[2][0] != "cat":
                    edges[(p + 1, q + 1)] = CodeEdge(f[0], f[2][0], (self.base, p, q))
        return CodeGraph(n + 1, edges, self)


@dataclass
class CodeEdge:
    weight: int
    kind: str
    span: tuple

    def term(self, enc: Encoder):
        level, p, q = self.span
        return enc.terms(level, p, q)[0]


@dataclass
class CodeGraph:
    """Vertices 1..N+1; edge (i, j) holds the simplest term for s_i..s_{j-1}."""

    vertex_count: int
    edges: dict
    encoder: Encoder


def select_shortest_path(g: CodeGraph) -> Code:
    """Minimal-sip path from 1 to N+1, ties broken deterministically.

    Among equal sip prefer fewer terms, then smaller form kind at the
    leftmost differing edge, then the earlier edge boundary.
    """
    n1 = g.vertex_count
    out: dict = {}
    for (i, j), e in g.edges.items():
        out.setdefault(i, []).append((j, e))
    best: dict = {n1: (0, 0, (), ())}
    for i in range(n1 - 1, 0, -1):
        cand = None
        for j, e in out.get(i, []):
            rest = best.get(j)
            if rest is None:
                continue
            key = (e.weight + rest[0], 1 + rest[1], (KIND_RANK[e.kind],) + rest[2], (j,) + rest[3])
            if cand is None or key < cand:
                cand = key
        if cand is not None:
            best[i] = cand
    path = best[1]
    terms = []
    i = 1
    for j in path[3]:
        terms.append(g.edges[(i, j)].term(g.encoder))
        i = j
    return Code(tuple(terms))


def _run_with_stack(fn):
    """Run ``fn`` in a thread with a large stack; deep hyperstring nests
    recurse further than the default stack allows."""
    result: dict = {}

    def target():
        try:
            result["value"] = fn()
        except BaseException as exc:  # re-raised in the caller
            result["error"] = exc

    # the memo tables hold millions of small tuples and no cycles; pausing
    # the cycle collector avoids repeated full scans of them
    gc_was_enabled = gc.isenabled()
    gc.disable()
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 200_000))
    old_size = threading.stack_size()
    threading.stack_size(512 * 1024 * 1024)
    try:
        t = threading.Thread(target=target)
        t.start()
        t.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
        if gc_was_enabled:
            gc.enable()
    if "error" in result:
        raise result["error"]
    return result["value"]


def simplest_code(s: Sequence, workers: int | None = None) -> EncodeResult:
    """A simplest code of the element string ``s``.

    ``workers`` > 1 evaluates stretches of equal length concurrently; the
    result is identical to the sequential schedule.
    """
    elements = tuple(s)
    if not elements:
        raise ValueError("cannot encode an empty string")

    def run():
        start = time.perf_counter()
        enc = Encoder(elements)
        enc.fill(workers)
        graph = enc.code_graph()
        code = select_shortest_path(graph)
        sip = enc.F(enc.base, 0, len(elements))[0]
        stats = {
            "length": len(elements),
            "hyperstrings": sum(v for k, v in enc.level_count.items() if k != "B"),
            "s_levels": enc.level_count.get("S", 0),
            "a_levels": enc.level_count.get("AL", 0) + enc.level_count.get("AR", 0),
            "tree_depth": enc.max_level_depth,
            "code_graph_edges": len(graph.edges),
            "memo_entries": len(enc.fmemo),
            "elapsed": time.perf_counter() - start,
        }
        return EncodeResult(code, sip, stats)

    return _run_with_stack(run)


def build_code_graph(s: Sequence, workers: int | None = None) -> CodeGraph:
    """The weighted code graph of ``s`` with every span filled in."""
    enc = Encoder(tuple(s))

    def run():
        enc.fill(workers)
        return enc.code_graph()

    return _run_with_stack(run)


def best_covering_forms(s: Sequence, i: int, j: int, memo: Encoder | None = None) -> list:
    """Simplest I-, S- and A-form terms covering ``s[i..j-1]`` (1-based)."""
    enc = memo if memo is not None else Encoder(s)
    return _run_with_stack(lambda: enc.best_covering_forms(i, j))


@dataclass
class HyperstringCoding:
    """Simplest codes for every stretch of one hyperstring."""

    encoder: Encoder
    level: HyperLevel

    def cost(self, u: int, v: int) -> int:
        """sip of the simplest code over all arguments between vertices u and v."""
        pos = self.level.h.order
        return self.encoder.F(self.level, pos.index(u), pos.index(v))[0]

    def code(self, u: int, v: int) -> Code:
        pos = self.level.h.order
        return Code(tuple(self.encoder.terms(self.level, pos.index(u), pos.index(v))))

    def costs(self) -> dict:
        order = self.level.h.order
        return {
            (u, v): self.cost(u, v)
            for a, u in enumerate(order) for v in order[a + 1:]
        }


def recode_hyperstring(h, weights: dict | None = None, free: bool = False) -> HyperstringCoding:
    """Encode a hyperstring as if it were one string of hyper-symbols.

    ``weights`` maps ``(u, v)`` edges to the sip of their chunk; by default a
    label costs its symbol count plus one for multi-symbol chunks.
    """
    n = len(h.order) - 1
    enc = Encoder((), max_depth=2 * math.ceil(math.log2(n + 1)) + 1)
    level = HyperLevel(enc, h, weights, free)
    return HyperstringCoding(enc, level)
