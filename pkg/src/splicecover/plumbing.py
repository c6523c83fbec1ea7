"""Plumbing graphs: data model, text format, intersection matrices.

A vertex stores its *displayed* weight, so a vertex drawn as ``-2`` has
``weight == -2``.  All edges are positive.  Arrows are half-edges that
mark a removed solid torus; they are not vertices and never enter the
intersection matrix.

Text format (one record per line, ``#`` starts a comment)::

    vertex <id> weight=<int> [genus=<int>]
    edge <id> <id>
    arrow <id> cut=<int> mult=<int> frac=<p>/<q>

Several graphs in one file are separated by a line ``---``.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
import math
import re

import networkx as nx

from . import linalg
from .arith import seifert_contribution
from .errors import DomainError, ParseError, UsageError


def natural_key(s):
    """Sort key that orders embedded integers numerically (``v2 < v10``)."""
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s))


@dataclass(frozen=True, order=True)
class ArrowMark:
    cut_index: int
    multiplicity: int
    p: int
    q: int

    def __post_init__(self):
        if self.cut_index < 1 or self.multiplicity < 1:
            raise DomainError(f"bad arrow mark {self}")
        if self.p < 1 or not 0 <= self.q < max(self.p, 1) \
                or math.gcd(self.p, self.q) != 1:
            raise DomainError(f"arrow fraction must be reduced with 0 <= q < p: "
                              f"{self.p}/{self.q}")

    @property
    def contribution(self):
        return Fraction(self.q, self.p)

    def __str__(self):
        return f"{self.cut_index},{self.multiplicity},{self.p}/{self.q}"


@dataclass(frozen=True)
class Vertex:
    weight: int
    genus: int = 0


@dataclass(frozen=True)
class Arrow:
    at: str
    mark: ArrowMark


class PlumbingGraph:
    """Decorated multigraph: weighted vertices, edges, marked arrows.

    Instances are treated as immutable; every transformation returns a new
    graph.
    """

    def __init__(self, vertices=None, edges=(), arrows=()):
        self.vertices = dict(vertices or {})
        for vid, vx in self.vertices.items():
            if not isinstance(vx, Vertex):
                self.vertices[vid] = vx = Vertex(*vx)
            if vx.genus < 0:
                raise DomainError(f"vertex {vid} has negative genus")
        norm = []
        for u, v in edges:
            for w in (u, v):
                if w not in self.vertices:
                    raise DomainError(f"edge endpoint {w!r} is not a vertex")
            norm.append(tuple(sorted((u, v), key=natural_key)))
        self.edges = tuple(sorted(norm, key=lambda e: (natural_key(e[0]), natural_key(e[1]))))
        self.arrows = tuple(sorted(arrows, key=lambda a: (natural_key(a.at), a.mark)))
        for a in self.arrows:
            if a.at not in self.vertices:
                raise DomainError(f"arrow at unknown vertex {a.at!r}")
        self._adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            self._adj[u].append(v)
            self._adj[v].append(u)

    def __repr__(self):
        return (f"PlumbingGraph({len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, {len(self.arrows)} arrows)")

    def _key(self):
        return (sorted(self.vertices.items()), self.edges, self.arrows)

    def __eq__(self, other):
        return isinstance(other, PlumbingGraph) and self._key() == other._key()

    def __len__(self):
        return len(self.vertices)

    def ids(self):
        return sorted(self.vertices, key=natural_key)

    def neighbors(self, v):
        """Neighbours of ``v``, repeated according to edge multiplicity."""
        return list(self._adj[v])

    def degree(self, v):
        return len(self._adj[v])

    def arrows_at(self, v):
        return [a for a in self.arrows if a.at == v]

    def weight(self, v):
        return self.vertices[v].weight

    def genus(self, v):
        return self.vertices[v].genus

    def components(self):
        seen, comps = set(), []
        for start in self.ids():
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp, key=natural_key))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    def is_tree(self):
        return self.is_connected() and len(self.edges) == max(len(self.vertices) - 1, 0)

    def subgraph(self, keep):
        keep = set(keep)
        return PlumbingGraph(
            {v: x for v, x in self.vertices.items() if v in keep},
            [e for e in self.edges if e[0] in keep and e[1] in keep],
            [a for a in self.arrows if a.at in keep],
        )

    def relabel(self, mapping):
        """Rename vertices; ``mapping`` may be a dict or a callable."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return PlumbingGraph(
            {f(v): x for v, x in self.vertices.items()},
            [(f(u), f(v)) for u, v in self.edges],
            [Arrow(f(a.at), a.mark) for a in self.arrows],
        )

    def without_arrows(self):
        return PlumbingGraph(self.vertices, self.edges)

    def is_node(self, v):
        return self.degree(v) >= 3 or self.genus(v) > 0 or bool(self.arrows_at(v))


def union(graphs):
    vertices, edges, arrows = {}, [], []
    for g in graphs:
        clash = vertices.keys() & g.vertices.keys()
        if clash:
            raise DomainError(f"vertex ids collide: {sorted(clash)[:3]}")
        vertices.update(g.vertices)
        edges.extend(g.edges)
        arrows.extend(g.arrows)
    return PlumbingGraph(vertices, edges, arrows)


# -- text format -----------------------------------------------------------

_FRAC = re.compile(r"^(\d+)/(\d+)$")


def _fields(tokens, lineno, allowed):
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in allowed:
            raise ParseError(f"unexpected field {tok!r}", lineno)
        if key in out:
            raise ParseError(f"repeated field {key!r}", lineno)
        out[key] = val
    return out


def _int(text, lineno, what):
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", lineno) from None


def _parse_block(lines):
    vertices, edges, arrows = {}, [], []
    pending_edges, pending_arrows = [], []
    for lineno, line in lines:
        tokens = line.split()
        kind, rest = tokens[0], tokens[1:]
        if kind == "vertex":
            if not rest:
                raise ParseError("vertex needs an id", lineno)
            vid = rest[0]
            if vid in vertices:
                raise ParseError(f"duplicate vertex id {vid!r}", lineno)
            f = _fields(rest[1:], lineno, {"weight", "genus"})
            if "weight" not in f:
                raise ParseError(f"vertex {vid!r} has no weight", lineno)
            genus = _int(f.get("genus", "0"), lineno, "genus")
            if genus < 0:
                raise ParseError("genus must be nonnegative", lineno)
            vertices[vid] = Vertex(_int(f["weight"], lineno, "weight"), genus)
        elif kind == "edge":
            if len(rest) != 2:
                raise ParseError("edge needs exactly two ids", lineno)
            pending_edges.append((lineno, rest[0], rest[1]))
        elif kind == "arrow":
            if not rest:
                raise ParseError("arrow needs a vertex id", lineno)
            f = _fields(rest[1:], lineno, {"cut", "mult", "frac"})
            if set(f) != {"cut", "mult", "frac"}:
                raise ParseError("arrow needs cut=, mult= and frac=", lineno)
            m = _FRAC.match(f["frac"])
            if not m:
                raise ParseError(f"malformed fraction {f['frac']!r}", lineno)
            try:
                mark = ArrowMark(_int(f["cut"], lineno, "cut"),
                                 _int(f["mult"], lineno, "mult"),
                                 int(m.group(1)), int(m.group(2)))
            except DomainError as exc:
                raise ParseError(str(exc), lineno) from None
            pending_arrows.append((lineno, rest[0], mark))
        else:
            raise ParseError(f"unknown record {kind!r}", lineno)
    for lineno, u, v in pending_edges:
        for w in (u, v):
            if w not in vertices:
                raise ParseError(f"edge endpoint {w!r} is not a vertex", lineno)
        edges.append((u, v))
    for lineno, at, mark in pending_arrows:
        if at not in vertices:
            raise ParseError(f"arrow at undefined vertex {at!r}", lineno)
        arrows.append(Arrow(at, mark))
    return PlumbingGraph(vertices, edges, arrows)


def split_blocks(text):
    """Split text into ``---``-separated blocks of ``(lineno, line)``."""
    blocks, current = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line == "---":
            blocks.append(current)
            current = []
        elif line:
            current.append((lineno, line))
    blocks.append(current)
    return blocks


def parse_components(text):
    return [_parse_block(b) for b in split_blocks(text)]


def parse(text):
    graphs = parse_components(text)
    if len(graphs) != 1:
        raise ParseError(f"expected one graph, found {len(graphs)} components")
    return graphs[0]


def serialize(graph):
    lines = []
    for v in graph.ids():
        x = graph.vertices[v]
        extra = f" genus={x.genus}" if x.genus else ""
        lines.append(f"vertex {v} weight={x.weight}{extra}")
    for u, v in graph.edges:
        lines.append(f"edge {u} {v}")
    for a in graph.arrows:
        m = a.mark
        lines.append(f"arrow {a.at} cut={m.cut_index} mult={m.multiplicity} frac={m.p}/{m.q}")
    return "\n".join(lines) + "\n"


def serialize_components(graphs):
    return "---\n".join(serialize(g) for g in graphs)


# -- invariants ------------------------------------------------------------

def intersection_matrix(graph):
    """Symmetric intersection matrix, rows in ``graph.ids()`` order."""
    if graph.arrows:
        raise DomainError("intersection matrix is undefined while arrows are present")
    ids = graph.ids()
    index = {v: i for i, v in enumerate(ids)}
    m = [[0] * len(ids) for _ in ids]
    for v in ids:
        m[index[v]][index[v]] = graph.weight(v)
    for u, v in graph.edges:
        i, j = index[u], index[v]
        if i == j:
            m[i][i] += 2
        else:
            m[i][j] += 1
            m[j][i] += 1
    return linalg.as_matrix(m)


def h1_order(graph):
    """|H1| of the boundary 3-manifold, or 0 when H1 is infinite.

    Only meaningful for trees with all genera 0; higher genus or cycles add
    free rank that the intersection matrix does not see.
    """
    return abs(linalg.determinant(intersection_matrix(graph)))


def h1_group(graph):
    """Invariant factors of coker(A), dropping the trivial ones."""
    return [d for d in linalg.smith_invariants(intersection_matrix(graph)) if d != 1]


def chains_from(graph, v, nodes=None):
    """Walk every edge at ``v`` until a node or a dead end.

    Yields ``(weights, end, to_node)`` where ``weights`` are the displayed
    weights of the vertices strictly after ``v`` (including the final
    vertex only when the chain dies at a leaf) and ``end`` is the last
    vertex reached.
    """
    if nodes is None:
        nodes = {u for u in graph.vertices if graph.is_node(u)}
    nodes = set(nodes) | {v}
    for first in graph.neighbors(v):
        prev, cur, chain = v, first, []
        while True:
            if cur in nodes:
                yield tuple(chain), cur, True
                break
            if graph.degree(cur) == 1:
                chain.append(graph.weight(cur))
                yield tuple(chain), cur, False
                break
            if graph.degree(cur) != 2:
                raise DomainError(f"vertex {cur!r} should have been a node")
            chain.append(graph.weight(cur))
            nbrs = graph.neighbors(cur)
            nbrs.remove(prev)
            prev, cur = cur, nbrs[0]


def node_euler_number(graph, v, nodes=None, skip_cut=None):
    """Rational Euler number ``weight(v) + sum of q_e/p_e`` at a node.

    ``nodes`` overrides which vertices count as nodes.  Arrows whose cut
    index equals ``skip_cut`` are left out of the sum (they are the edges
    still to be solved for).
    """
    total = Fraction(graph.weight(v))
    for weights, _, _ in chains_from(graph, v, nodes):
        total += seifert_contribution(tuple(-w for w in weights))
    for a in graph.arrows_at(v):
        if a.mark.cut_index != skip_cut:
            total += a.mark.contribution
    return total


# -- comparison and export -------------------------------------------------

def _label(graph, v):
    x = graph.vertices[v]
    return (x.weight, x.genus, tuple(sorted(a.mark for a in graph.arrows_at(v))))


def _nx(graph):
    g = nx.Graph()
    for v in graph.vertices:
        g.add_node(v, label=_label(graph, v))
    for u, v in graph.edges:
        if g.has_edge(u, v):
            g[u][v]["mult"] += 1
        else:
            g.add_edge(u, v, mult=1)
    return g


def isomorphic(g1, g2):
    """Decorated-graph isomorphism (weights, genera, edge multiplicities, arrows)."""
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return False
    labels1 = Counter(_label(g1, v) for v in g1.vertices)
    if labels1 != Counter(_label(g2, v) for v in g2.vertices):
        return False
    deg1 = Counter((_label(g1, v), g1.degree(v)) for v in g1.vertices)
    if deg1 != Counter((_label(g2, v), g2.degree(v)) for v in g2.vertices):
        return False
    return nx.is_isomorphic(
        _nx(g1), _nx(g2),
        node_match=lambda a, b: a["label"] == b["label"],
        edge_match=lambda a, b: a["mult"] == b["mult"],
    )


def _dot_id(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph, name="plumbing"):
    lines = [f"digraph {name} {{", "  edge [dir=none];"]
    for v in graph.ids():
        x = graph.vertices[v]
        label = str(x.weight) + (f" [{x.genus}]" if x.genus else "")
        lines.append(f'  {_dot_id(v)} [label="{label}"];')
    for u, v in graph.edges:
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    for i, a in enumerate(graph.arrows):
        tip = _dot_id(f"arrow{i}")
        lines.append(f'  {tip} [shape=none, label="", width=0, height=0];')
        lines.append(f'  {_dot_id(a.at)} -> {tip} [dir=forward, label="{a.mark}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def require_qhs_tree(graph):
    """Raise unless ``graph`` is a genus-0 tree with nonsingular matrix."""
    if graph.arrows:
        raise UsageError("input plumbing graph must not carry arrows")
    if not graph.is_tree():
        raise DomainError("plumbing graph is not a tree")
    if any(x.genus for x in graph.vertices.values()):
        raise DomainError("plumbing graph has a vertex of positive genus")
    if h1_order(graph) == 0:
        raise DomainError("intersection matrix is singular (not a rational homology sphere)")
