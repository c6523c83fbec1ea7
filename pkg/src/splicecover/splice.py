"""Splice diagrams and the operations on them used by the cover algorithm.

A splice diagram is a forest whose vertices are nodes (carrying a sign)
or leaves (optionally carrying a cut mark).  Every edge end at a node has
a nonnegative integer weight; leaf ends carry none.  Weights are stored
as ``weights[(v, u)]``: the weight at node ``v`` on the edge towards
``u``.

Text format::

    snode <id> sign=<+|->
    sleaf <id> [cut=<k> gen=<d>]
    sedge <id>:<w> <id>[:<w>]

Components may be separated by ``---`` lines; they are read back into one
forest.
"""
from dataclasses import dataclass
from fractions import Fraction
import math
import re

from . import linalg, plumbing
from .arith import gcd_many
from .errors import DomainError, IdealConditionError, ParseError
from .plumbing import natural_key


@dataclass(frozen=True, order=True)
class CutMark:
    cut_index: int
    ideal_gen: int

    def __post_init__(self):
        if self.cut_index < 1 or self.ideal_gen < 1:
            raise DomainError(f"bad cut mark {self}")

    def __str__(self):
        return f"({self.cut_index},{self.ideal_gen})"


class SpliceDiagram:
    def __init__(self, nodes, leaves, weights, degenerate=False):
        self.nodes = dict(nodes)
        self.leaves = dict(leaves)
        self.weights = dict(weights)
        self.degenerate = degenerate
        if self.nodes.keys() & self.leaves.keys():
            raise DomainError("a vertex cannot be both node and leaf")
        self._adj = {v: set() for v in (*self.nodes, *self.leaves)}
        for (v, u), w in self.weights.items():
            if v not in self.nodes:
                raise DomainError(f"weight recorded at non-node {v!r}")
            if u not in self._adj:
                raise DomainError(f"edge to unknown vertex {u!r}")
            if w < 0:
                raise DomainError(f"negative edge weight {w} at {v!r}")
            self._adj[v].add(u)
            self._adj[u].add(v)
        for u in self.nodes:
            for v in self._adj[u]:
                if v in self.nodes and (v, u) not in self.weights:
                    raise DomainError(f"edge {u}-{v} lacks a weight at {v!r}")
        for leaf in self.leaves:
            if len(self._adj[leaf]) != 1:
                raise DomainError(f"leaf {leaf!r} must have exactly one edge")
        for s in self.nodes.values():
            if s not in (1, -1):
                raise DomainError(f"node sign must be +1 or -1, got {s}")

    def __repr__(self):
        return f"SpliceDiagram({len(self.nodes)} nodes, {len(self.leaves)} leaves)"

    def __eq__(self, other):
        return (isinstance(other, SpliceDiagram) and self.nodes == other.nodes
                and self.leaves == other.leaves and self.weights == other.weights)

    def is_node(self, v):
        return v in self.nodes

    def neighbors(self, v):
        return sorted(self._adj[v], key=natural_key)

    def weight(self, v, u):
        return self.weights[(v, u)]

    def sign(self, v):
        return self.nodes[v]

    def node_neighbors(self, v):
        return [u for u in self.neighbors(v) if u in self.nodes]

    def leaf_neighbors(self, v):
        return [u for u in self.neighbors(v) if u in self.leaves]

    def weights_at(self, v, exclude=()):
        return [self.weights[(v, u)] for u in self.neighbors(v) if u not in exclude]

    def edges(self):
        """Sorted list of edges as ``(a, b)`` pairs with ``a`` a node."""
        out = set()
        for v, u in self.weights:
            if u in self.nodes:
                out.add(tuple(sorted((v, u), key=natural_key)))
            else:
                out.add((v, u))
        return sorted(out, key=lambda e: (natural_key(e[0]), natural_key(e[1])))

    def node_edges(self):
        return [e for e in self.edges() if e[1] in self.nodes]

    def side(self, v, u):
        """Vertices of the component of (diagram minus edge vu) containing u."""
        seen, stack = {u}, [u]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y not in seen and not (x == u and y == v):
                    seen.add(y)
                    stack.append(y)
        return seen

    def path(self, v, w):
        parent, stack = {v: None}, [v]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        if w not in parent:
            raise DomainError(f"{v!r} and {w!r} lie in different components")
        out = [w]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out[::-1]

    def components(self):
        seen, comps = set(), []
        for v in sorted(self._adj, key=natural_key):
            if v not in seen:
                comp = self.side(None, v)
                seen |= comp
                comps.append(comp)
        return comps

    def component_diagrams(self):
        return [self.restrict(c) for c in self.components()]

    def restrict(self, keep):
        keep = set(keep)
        return SpliceDiagram(
            {v: s for v, s in self.nodes.items() if v in keep},
            {v: m for v, m in self.leaves.items() if v in keep},
            {k: w for k, w in self.weights.items() if k[0] in keep},
        )


# -- extraction from plumbing ---------------------------------------------

def extract(graph, nodes=None):
    """Splice diagram of the boundary of a plumbing tree.

    Nodes are the vertices of valence at least 3.  A tree without such a
    vertex gives an empty diagram flagged ``degenerate`` unless ``nodes``
    names the vertices to treat as nodes (e.g. the centre of a two-armed
    star); the result is then flagged ``degenerate`` as well.
    """
    plumbing.require_qhs_tree(graph)
    branch = [v for v in graph.ids() if graph.degree(v) >= 3]
    if nodes is None:
        node_ids = branch
    else:
        node_ids = sorted(nodes, key=natural_key)
        missing = [v for v in node_ids if v not in graph.vertices]
        if missing:
            raise DomainError(f"unknown vertices {missing}")
        if set(branch) - set(node_ids):
            raise DomainError("every vertex of valence >= 3 must be a node")
    if not node_ids:
        return SpliceDiagram({}, {}, {}, degenerate=True)
    ids = graph.ids()
    a = plumbing.intersection_matrix(graph)
    index = {v: i for i, v in enumerate(ids)}
    nodes, leaves, weights = {}, {}, {}
    for v in node_ids:
        inv = linalg.inverse_entry(a, index[v], index[v])
        if inv == 0:
            raise DomainError(f"diagonal inverse entry vanishes at node {v!r}")
        nodes[v] = -1 if inv > 0 else 1
    node_set = set(node_ids)
    for v in node_ids:
        for first in graph.neighbors(v):
            far = _far_component(graph, v, first)
            weight = abs(linalg.determinant(plumbing.intersection_matrix(graph.subgraph(far))))
            end = _chain_end(graph, v, first, node_set)
            if end not in node_set:
                leaves[end] = None
            weights[(v, end)] = weight
    return SpliceDiagram(nodes, leaves, weights, degenerate=not branch)


def _far_component(graph, v, first):
    seen, stack = {first}, [first]
    while stack:
        x = stack.pop()
        for y in graph.neighbors(x):
            if y not in seen and y != v:
                seen.add(y)
                stack.append(y)
    return seen


def _chain_end(graph, v, first, nodes):
    prev, cur = v, first
    while cur not in nodes and graph.degree(cur) == 2:
        nxt = [y for y in graph.neighbors(cur) if y != prev]
        prev, cur = cur, nxt[0]
    return cur


# -- linking numbers and ideal generators ---------------------------------

def linking_prime(diagram, v, w):
    """Product of weights adjacent to but off the v-w path, skipping v and w."""
    path = diagram.path(v, w)
    product = 1
    for i in range(1, len(path) - 1):
        x = path[i]
        for u in diagram.neighbors(x):
            if u not in (path[i - 1], path[i + 1]):
                product *= diagram.weight(x, u)
    return product


def ideal_generator(diagram, v, u):
    """Positive generator of the ideal of l' values over leaves beyond edge vu."""
    beyond = diagram.side(v, u)
    gens = [linking_prime(diagram, v, w) for w in beyond if w in diagram.leaves]
    return gcd_many(gens) if gens else 0


def ideal_condition(diagram):
    """Return ``(ok, violations)``; each violation is ``(v, u, gen, weight)``."""
    violations = []
    for v in sorted(diagram.nodes, key=natural_key):
        for u in diagram.neighbors(v):
            gen = ideal_generator(diagram, v, u)
            w = diagram.weight(v, u)
            if (w % gen if gen else w):
                violations.append((v, u, gen, w))
    return not violations, violations


def edge_determinant(diagram, v, w):
    """d_vw d_wv minus the other weights at both ends, signed by the node signs."""
    if v not in diagram.nodes or w not in diagram.nodes:
        raise DomainError("edge determinant needs a node-node edge")
    return (diagram.weight(v, w) * diagram.weight(w, v)
            - diagram.sign(v) * diagram.sign(w)
            * math.prod(diagram.weights_at(v, exclude=(w,)))
            * math.prod(diagram.weights_at(w, exclude=(v,))))


def euler_over_d(diagram, v, first_neighbor=None):
    """Rational Euler number at node ``v`` divided by |H1|, from weights alone.

    ``first_neighbor`` is the node neighbour given the distinguished role
    in the formula; it defaults to the first node neighbour in id order.
    """
    others = diagram.node_neighbors(v)
    if not others:
        raise DomainError(f"node {v!r} has no node neighbours")
    if first_neighbor is None:
        first_neighbor = others[0]
    if first_neighbor not in others:
        raise DomainError(f"{first_neighbor!r} is not a node neighbour of {v!r}")
    rest = [u for u in others if u != first_neighbor]
    n = math.prod(diagram.weight(v, leaf) for leaf in diagram.leaf_neighbors(v))
    r = {u: diagram.weight(v, u) for u in others}
    if any(r[u] == 0 for u in rest):
        raise DomainError("weights towards non-distinguished neighbours must be nonzero")
    dets = {u: edge_determinant(diagram, v, u) for u in others}
    if n == 0 or any(d == 0 for d in dets.values()):
        raise DomainError(f"Euler formula at {v!r} divides by zero")
    total = Fraction(diagram.sign(v) * diagram.weight(first_neighbor, v),
                     n * dets[first_neighbor] * math.prod(r[u] for u in rest))
    for u in rest:
        m = math.prod(diagram.weights_at(u, exclude=(v,)))
        total += Fraction(diagram.sign(u) * m, r[u] * dets[u])
    return -total


def cut_leaf_id(index, node):
    return f"c{index}.{node}"


def cut_edge(diagram, w1, w2, index):
    """Replace the node-node edge w1-w2 by two marked leaves.

    Weights pointing towards the cut are divided by the ideal generator of
    the cut end on their own side.  Returns ``(new_diagram, (g1, g2))``.
    """
    if w1 not in diagram.nodes or w2 not in diagram.nodes:
        raise DomainError("can only cut an edge between two nodes")
    if w2 not in diagram.neighbors(w1):
        raise DomainError(f"{w1!r} and {w2!r} are not adjacent")
    g1 = ideal_generator(diagram, w1, w2)
    g2 = ideal_generator(diagram, w2, w1)
    weights = dict(diagram.weights)
    for w, other, g in ((w1, w2, g1), (w2, w1, g2)):
        own_side = diagram.side(other, w)
        for v in own_side:
            if v not in diagram.nodes:
                continue
            for u in diagram.neighbors(v):
                if (v, u) == (w, other) or (v != w and w in diagram.side(v, u)):
                    d = weights[(v, u)]
                    if g == 0 or d % g:
                        raise IdealConditionError(
                            f"weight {d} at {v!r} towards {u!r} is not divisible by {g}")
                    weights[(v, u)] = d // g
    leaves = dict(diagram.leaves)
    for w, other, g in ((w1, w2, g1), (w2, w1, g2)):
        leaf = cut_leaf_id(index, w)
        leaves[leaf] = CutMark(index, g)
        weights[(w, leaf)] = weights.pop((w, other))
    return SpliceDiagram(diagram.nodes, leaves, weights), (g1, g2)


# -- canonical form --------------------------------------------------------

def _encode(diagram, x, parent):
    if x in diagram.nodes:
        label = ("n", diagram.sign(x), 0, 0)
    else:
        m = diagram.leaves[x]
        label = ("l", 0, m.cut_index, m.ideal_gen) if m else ("l", 0, 0, 0)
    children = []
    for c in diagram.neighbors(x):
        if c == parent:
            continue
        here = diagram.weight(x, c) if x in diagram.nodes else -1
        there = diagram.weight(c, x) if c in diagram.nodes else -1
        children.append((here, there, _encode(diagram, c, x)))
    return (label, tuple(sorted(children)))


def canonical_form(diagram):
    forms = []
    for comp in diagram.components():
        forms.append(min(_encode(diagram, root, None) for root in comp))
    return tuple(sorted(forms))


def equivalent(d1, d2):
    """Equality of decorated forests up to renaming vertices."""
    return canonical_form(d1) == canonical_form(d2)


# -- text format -----------------------------------------------------------

_END = re.compile(r"^([^\s:]+)(?::(\d+))?$")


def parse(text):
    nodes, leaves, weights, pending = {}, {}, {}, []
    for block in plumbing.split_blocks(text):
        for lineno, line in block:
            tokens = line.split()
            kind, rest = tokens[0], tokens[1:]
            if kind == "snode":
                if len(rest) != 2 or rest[1] not in ("sign=+", "sign=-"):
                    raise ParseError("expected 'snode <id> sign=<+|->'", lineno)
                if rest[0] in nodes or rest[0] in leaves:
                    raise ParseError(f"duplicate id {rest[0]!r}", lineno)
                nodes[rest[0]] = 1 if rest[1].endswith("+") else -1
            elif kind == "sleaf":
                if not rest:
                    raise ParseError("sleaf needs an id", lineno)
                if rest[0] in nodes or rest[0] in leaves:
                    raise ParseError(f"duplicate id {rest[0]!r}", lineno)
                f = plumbing._fields(rest[1:], lineno, {"cut", "gen"})
                if f and set(f) != {"cut", "gen"}:
                    raise ParseError("sleaf needs both cut= and gen=", lineno)
                mark = None
                if f:
                    try:
                        mark = CutMark(plumbing._int(f["cut"], lineno, "cut"),
                                       plumbing._int(f["gen"], lineno, "gen"))
                    except DomainError as exc:
                        raise ParseError(str(exc), lineno) from None
                leaves[rest[0]] = mark
            elif kind == "sedge":
                if len(rest) != 2:
                    raise ParseError("sedge needs two endpoints", lineno)
                ends = []
                for tok in rest:
                    m = _END.match(tok)
                    if not m:
                        raise ParseError(f"malformed edge end {tok!r}", lineno)
                    ends.append((m.group(1), None if m.group(2) is None else int(m.group(2))))
                pending.append((lineno, ends))
            else:
                raise ParseError(f"unknown record {kind!r}", lineno)
    for lineno, ends in pending:
        (a, wa), (b, wb) = ends
        for vid, w in ends:
            if vid not in nodes and vid not in leaves:
                raise ParseError(f"edge endpoint {vid!r} is undefined", lineno)
            if vid in nodes and w is None:
                raise ParseError(f"node end {vid!r} needs a weight", lineno)
            if vid in leaves and w is not None:
                raise ParseError(f"leaf end {vid!r} cannot carry a weight", lineno)
        if a in leaves and b in leaves:
            raise ParseError("an edge between two leaves is not allowed", lineno)
        for (x, wx), (y, _) in ((ends[0], ends[1]), (ends[1], ends[0])):
            if wx is not None:
                if (x, y) in weights:
                    raise ParseError(f"duplicate edge {x}-{y}", lineno)
                weights[(x, y)] = wx
    try:
        return SpliceDiagram(nodes, leaves, weights)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def serialize(diagram):
    blocks = []
    for comp in diagram.components():
        lines = []
        for v in sorted(comp, key=natural_key):
            if v in diagram.nodes:
                lines.append(f"snode {v} sign={'+' if diagram.sign(v) > 0 else '-'}")
        for v in sorted(comp, key=natural_key):
            if v in diagram.leaves:
                m = diagram.leaves[v]
                lines.append(f"sleaf {v}" + (f" cut={m.cut_index} gen={m.ideal_gen}" if m else ""))
        for a, b in diagram.edges():
            if a in comp:
                end_b = f"{b}:{diagram.weight(b, a)}" if b in diagram.nodes else b
                lines.append(f"sedge {a}:{diagram.weight(a, b)} {end_b}")
        blocks.append("\n".join(lines) + "\n")
    return "---\n".join(blocks)
