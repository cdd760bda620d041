"""A-graphs, S-graphs and their decomposition into hyperstrings.

Vertices are numbered from 1 exactly as in the usual presentation: an A-graph
of a string of length N has vertices 1..N+1 (sink N+1); an S-graph has
vertices 1..N//2+2 (sink N//2+2).  Edge labels are chunk contents, i.e.
tuples of elements.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scan import IdentityTable

NORMAL = "normal"
PIVOT = "pivot"
PSEUDO = "pseudo"

# The construction names pseudo edges but gives no general test for them;
# this is the rule used here, reported with every exported A-graph.
PSEUDO_RULE = (
    "inferred rule: an A-graph edge is pseudo when its chunk is no longer than "
    "the repeat, so no A-chunk would follow the repeat"
)


class StructureError(RuntimeError):
    """A graph that should decompose into hyperstrings does not."""


class ExplosionError(RuntimeError):
    """Too many paths to materialise a substring set."""


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: tuple
    kind: str = NORMAL


class EdgeLabeledDag:
    """A simple DAG whose edges always run from lower to higher vertex ids."""

    def __init__(self, vertex_count: int, edges: Iterable[Edge], source: int = 1,
                 sink: int | None = None):
        self.vertex_count = vertex_count
        self.source = source
        self.sink = vertex_count if sink is None else sink
        self.edges: dict[tuple[int, int], Edge] = {}
        for e in edges:
            if not (1 <= e.u < e.v <= vertex_count):
                raise StructureError(f"edge {e.u}->{e.v} is not forward")
            self.edges[(e.u, e.v)] = e
        self._out: dict[int, list[Edge]] = defaultdict(list)
        for key in sorted(self.edges):
            self._out[key[0]].append(self.edges[key])

    def out_edges(self, u: int) -> list[Edge]:
        return self._out.get(u, [])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def connected_vertices(self) -> set[int]:
        return {x for key in self.edges for x in key}


class AGraph(EdgeLabeledDag):
    def __init__(self, string: tuple, repeat_length: int, edges, table: IdentityTable):
        n = len(string)
        super().__init__(n + 1, edges, source=1, sink=n + 1)
        self.string = string
        self.repeat_length = repeat_length
        self.table = table


class SGraph(EdgeLabeledDag):
    def __init__(self, string: tuple, edges, table: IdentityTable):
        n = len(string)
        super().__init__(n // 2 + 2, edges, source=1, sink=n // 2 + 2)
        self.string = string
        self.table = table


def build_a_graph(string: Sequence, repeat_length: int = 1,
                  table: IdentityTable | None = None) -> AGraph:
    """A-graph housing all A-forms that cover suffixes of ``string``.

    With ``repeat_length`` 1 this is the classic construction: for i < j with
    s_i = s_j there are edges (i, j) labelled (s_i..s_{j-1}) and (j, N+1)
    labelled (s_j..s_N).  Longer repeats compare blocks instead of symbols.
    Edges whose chunk is no longer than the repeat (so the A-chunk would be
    empty) are kept but tagged ``pseudo``: they keep the Hamiltonian path
    intact and can never appear in a code.
    """
    s = tuple(string)
    n = len(s)
    table = table or IdentityTable(s)
    L = repeat_length
    groups: dict[int, list[int]] = defaultdict(list)
    for j in range(1, n - L + 2):
        groups[table.block_id(j, L)].append(j)
    edges = []
    for occurrences in groups.values():
        for a, i in enumerate(occurrences):
            for j in occurrences[a + 1:]:
                edges.append(Edge(i, j, s[i - 1:j - 1], NORMAL if j - i > L else PSEUDO))
        for j in occurrences[1:]:
            edges.append(Edge(j, n + 1, s[j - 1:], NORMAL if n + 1 - j > L else PSEUDO))
    return AGraph(s, L, edges, table)


def build_s_graph(string: Sequence, table: IdentityTable | None = None) -> SGraph:
    """S-graph housing all S-forms that cover diafixes of ``string``.

    For i < j < N//2+2 there are edges (i, j) labelled (s_i..s_{j-1}) and a
    pivot edge (j, N//2+2) labelled with the possibly empty middle part
    (s_j..s_{N-j+1}) whenever s_i..s_{j-1} equals s_{N-j+2}..s_{N-i+1}.
    """
    s = tuple(string)
    n = len(s)
    table = table or IdentityTable(s)
    sink = n // 2 + 2
    edges = {}
    for i in range(1, sink):
        for j in range(i + 1, sink):
            if table.eq(i, n - j + 2, j - i):
                edges[(i, j)] = Edge(i, j, s[i - 1:j - 1])
                edges[(j, sink)] = Edge(j, sink, s[j - 1:n - j + 1], PIVOT)
    return SGraph(s, edges.values(), table)


@dataclass
class Hyperstring:
    """An independent subgraph with its Hamiltonian vertex order.

    ``kind`` is ``"A"`` or ``"S"`` for subgraphs of A-/S-graphs, whose
    substring identity is read off the underlying string in O(1), or
    ``"explicit"`` for hand-built graphs.
    """

    graph: EdgeLabeledDag
    order: list[int]
    kind: str = "explicit"
    parent: EdgeLabeledDag | None = None
    _signatures: dict = field(default_factory=dict, repr=False)

    @property
    def source(self) -> int:
        return self.order[0]

    @property
    def sink(self) -> int:
        return self.order[-1]

    @property
    def length(self) -> int:
        """Number of hyper-symbols (Hamiltonian edges)."""
        return len(self.order) - 1

    def index(self, vertex: int) -> int:
        return self.order.index(vertex)

    def hyper_symbols(self) -> list[Edge]:
        return [self.graph.edges[(a, b)] for a, b in zip(self.order, self.order[1:])]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int, object]]) -> "Hyperstring":
        """Build an explicit hyperstring from ``(u, v, label)`` triples."""
        edge_list = []
        for u, v, label in edges:
            if isinstance(label, str):
                label = tuple(label)
            edge_list.append(Edge(u, v, tuple(label)))
        vertices = sorted({x for e in edge_list for x in (e.u, e.v)})
        graph = EdgeLabeledDag(max(vertices), edge_list, source=vertices[0], sink=vertices[-1])
        return cls(graph, vertices)


def _components(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in parent:
        groups[find(v)].append(v)
    return [sorted(g) for _, g in sorted(groups.items())]


def decompose_hyperstrings(g: EdgeLabeledDag) -> list[Hyperstring]:
    """Split an A- or S-graph into its independent hyperstrings.

    A-graph components share only the sink.  For S-graphs the sink and the
    pivot edges are left out.  Raises :class:`StructureError` if a component
    has no Hamiltonian path.
    """
    sink = g.sink
    inner = [k for k, e in g.edges.items() if k[1] != sink and e.kind != PIVOT]
    vertices = {x for k in inner for x in k}
    if isinstance(g, AGraph):
        # vertices joined to others only through the sink still form a component
        vertices |= {k[0] for k in g.edges if k[1] == sink}
    comps = _components(vertices, inner)
    out = []
    for comp in comps:
        if isinstance(g, SGraph):
            order = comp
            keep = [e for k, e in g.edges.items() if k[0] in comp and k[1] in comp and e.kind != PIVOT]
            kind = "S"
        else:
            order = comp + [sink]
            members = set(order)
            keep = [e for k, e in g.edges.items() if k[0] in members and k[1] in members]
            kind = "A" if isinstance(g, AGraph) else "explicit"
        sub = EdgeLabeledDag(g.vertex_count, keep, source=order[0], sink=order[-1])
        for a, b in zip(order, order[1:]):
            if not sub.has_edge(a, b):
                raise StructureError(f"no Hamiltonian edge {a}->{b} in component {order}")
        out.append(Hyperstring(sub, order, kind, g))
    return out


# ------------------------------------------------------------ substring sets


def count_paths(g: EdgeLabeledDag, v1: int, v2: int) -> int:
    counts = defaultdict(int)
    counts[v1] = 1
    for (u, v) in sorted(g.edges):
        if u >= v1 and v <= v2 and counts[u]:
            counts[v] += counts[u]
    return counts[v2] if v1 != v2 else 1


def substring_set(g: EdgeLabeledDag | Hyperstring, v1: int, v2: int,
                  cap: int = 10_000) -> frozenset:
    """All label strings along paths from ``v1`` to ``v2``.

    A label string is a tuple of edge labels.  Raises
    :class:`ExplosionError` when there are more than ``cap`` paths.
    """
    graph = g.graph if isinstance(g, Hyperstring) else g
    if count_paths(graph, v1, v2) > cap:
        raise ExplosionError(f"more than {cap} paths between {v1} and {v2}")
    sets: dict[int, set] = {v1: {()}}
    for (u, v) in sorted(graph.edges):
        if u in sets and u >= v1 and v <= v2:
            label = graph.edges[(u, v)].label
            sets.setdefault(v, set()).update(p + (label,) for p in sets[u])
    return frozenset(sets.get(v2, set()))


def flatten(label_string: tuple) -> tuple:
    """Concatenate the labels of a label string into one element string."""
    return tuple(e for label in label_string for e in label)


# ------------------------------------------------------------ identity


def hyper_identity(h: Hyperstring, i: int, j: int, p: int, q: int) -> bool:
    """Whether the hypersubstrings (i, j) and (p, q) have equal substring sets.

    For A- and S-graph hyperstrings this is an O(1) comparison of the
    underlying substrings (and, for S-graphs, of their mirror images).
    Explicit hyperstrings compare the structure of the two subgraphs.
    """
    if (i, j) == (p, q):
        return True
    if h.kind in ("A", "S"):
        parent = h.parent
        table: IdentityTable = parent.table
        n = len(parent.string)
        if j - i != q - p:
            return False
        if h.kind == "A":
            return table.eq(i, p, j - i)
        # S-graph vertex v stands for position v on the left and its mirror
        return table.eq(i, p, j - i) and table.eq(n - j + 2, n - q + 2, j - i)
    return _signature(h, i, j) == _signature(h, p, q)


def _signature(h: Hyperstring, i: int, j: int):
    key = (i, j)
    if key not in h._signatures:
        a, b = h.index(i), h.index(j)
        inside = h.order[a:b + 1]
        pos = {v: k for k, v in enumerate(inside)}
        sig = tuple(sorted(
            (pos[e.u], pos[e.v], e.label)
            for e in h.graph.edges.values()
            if e.u in pos and e.v in pos
        ))
        h._signatures[key] = sig
    return h._signatures[key]


# ------------------------------------------------------------ verification


@dataclass
class HyperstringReport:
    simple: bool = True
    acyclic: bool = True
    hamiltonian: bool = True
    path_count: int = 0
    substring_sets_checked: bool = False
    identical_or_disjoint: bool = True
    identity_consistent: bool = True
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_hyperstring(h: Hyperstring, exhaustive_limit: int = 10_000) -> HyperstringReport:
    """Check the defining properties of a hyperstring.

    The substring-set condition is checked by materialising every set, which
    is only done when the number of source-to-sink paths is at most
    ``exhaustive_limit``.
    """
    report = HyperstringReport()
    g = h.graph
    seen = set()
    for (u, v), e in g.edges.items():
        if (e.u, e.v) in seen:
            report.simple = False
            report.violations.append(f"parallel edge {u}->{v}")
        seen.add((e.u, e.v))
        if u >= v:
            report.acyclic = False
            report.violations.append(f"backward edge {u}->{v}")
    members = set(h.order)
    stray = {x for k in g.edges for x in k} - members
    if stray:
        report.violations.append(f"edges touch vertices outside the order: {sorted(stray)}")
    if h.order != sorted(h.order):
        report.hamiltonian = False
        report.violations.append("vertex order is not topological")
    for a, b in zip(h.order, h.order[1:]):
        if not g.has_edge(a, b):
            report.hamiltonian = False
            report.violations.append(f"missing Hamiltonian edge {a}->{b}")
    report.path_count = count_paths(g, h.source, h.sink)
    if report.path_count > exhaustive_limit:
        return report
    report.substring_sets_checked = True
    sets = all_substring_sets(g, h.order)
    ids: dict = {}
    set_id = {pair: ids.setdefault(strings, len(ids)) for pair, strings in sets.items()}
    owners: dict = {}
    for pair, strings in sets.items():
        for x in strings:
            other = owners.setdefault(x, pair)
            if set_id[other] != set_id[pair]:
                report.identical_or_disjoint = False
                report.violations.append(
                    f"substring sets {other} and {pair} overlap without being identical"
                )
                break
        if not report.identical_or_disjoint:
            break
    by_length: dict = defaultdict(list)
    for (i, j) in sets:
        by_length[h.index(j) - h.index(i)].append((i, j))
    for pairs in by_length.values():
        for x, (i, j) in enumerate(pairs):
            for (p, q) in pairs[x + 1:]:
                if h.kind in ("A", "S") and j - i != q - p:
                    continue
                same = set_id[(i, j)] == set_id[(p, q)]
                if hyper_identity(h, i, j, p, q) != same:
                    report.identity_consistent = False
                    report.violations.append(f"identity test disagrees on {(i, j)} vs {(p, q)}")
                    return report
    return report


def all_substring_sets(g: EdgeLabeledDag, order: list[int]) -> dict:
    """π(u, v) for every pair of vertices in ``order``, one sweep per source."""
    out = {}
    for a, u in enumerate(order):
        sets: dict[int, set] = {u: {()}}
        for v in order[a:]:
            if v not in sets:
                continue
            current = sets[v]
            if v != u:
                out[(u, v)] = frozenset(current)
            for e in g.out_edges(v):
                sets.setdefault(e.v, set()).update(path + (e.label,) for path in current)
    return out


# ------------------------------------------------------------ export


def _label_text(label: tuple) -> str:
    from .language import format_elements

    return "(" + format_elements(label) + ")"


def to_dot(g: EdgeLabeledDag, hyperstrings: list[Hyperstring] | None = None,
           name: str = "G") -> str:
    """Graphviz text: one cluster per hyperstring, pivots dashed, pseudo edges dotted."""
    if hyperstrings is None:
        hyperstrings = decompose_hyperstrings(g)
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    if isinstance(g, AGraph):
        lines.append(f"  // pseudo edges are dotted; {PSEUDO_RULE}")
    for k, h in enumerate(hyperstrings, 1):
        members = [v for v in h.order if v != g.sink or isinstance(g, SGraph)]
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f'    label="hyperstring {k}";')
        lines.append("    " + " ".join(f"{v};" for v in members))
        lines.append("  }")
    placed = {v for h in hyperstrings for v in h.order}
    for v in range(1, g.vertex_count + 1):
        if v not in placed:
            lines.append(f"  {v};")
    for (u, v) in sorted(g.edges):
        e = g.edges[(u, v)]
        attrs = [f'label="{_label_text(e.label)}"']
        if e.kind == PIVOT:
            attrs.append("style=dashed")
        elif e.kind == PSEUDO:
            attrs.append("style=dotted")
        lines.append(f"  {u} -> {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: EdgeLabeledDag, hyperstrings: list[Hyperstring] | None = None) -> dict:
    from .language import format_elements

    if hyperstrings is None:
        hyperstrings = decompose_hyperstrings(g)
    kind = "a" if isinstance(g, AGraph) else "s" if isinstance(g, SGraph) else "explicit"
    edge_json = lambda e: {
        "from": e.u, "to": e.v, "label": format_elements(e.label), "kind": e.kind,
    }
    out = {
        "kind": kind,
        "string": format_elements(getattr(g, "string", ())),
        "vertices": g.vertex_count,
        "source": g.source,
        "sink": g.sink,
        "edges": [edge_json(g.edges[k]) for k in sorted(g.edges)],
        "hyperstrings": [
            {"order": h.order, "edges": [edge_json(h.graph.edges[k]) for k in sorted(h.graph.edges)]}
            for h in hyperstrings
        ],
    }
    if isinstance(g, AGraph):
        out["repeat_length"] = g.repeat_length
        out["pseudo_edge_rule"] = PSEUDO_RULE
    return out


def dumps_json(g: EdgeLabeledDag, hyperstrings=None) -> str:
    return json.dumps(to_json(g, hyperstrings), indent=2, sort_keys=True)
