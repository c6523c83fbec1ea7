"""Universal abelian cover of a graph manifold, built from its splice diagram.

The construction cuts every node-node edge of the splice diagram, replaces
each resulting one-node piece by a Brieskorn star with marked arrows, and
then glues the stars back in reverse cut order.  Each glue takes enough
copies of the two pieces that every copy on one side meets every copy on
the other exactly once, and replaces each matched pair of arrows by a
chain whose continued fraction is forced by the rational Euler number of
the node it leaves.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math

from . import plumbing
from .arith import format_hj, hj_expand, lcm_many
from .brieskorn import building_block
from .errors import (DomainError, IdealConditionError, InternalConsistencyError,
                     MalformedTraceError, MultiplicityMismatchError,
                     UnsupportedCaseError)
from .plumbing import PlumbingGraph, Vertex, natural_key, node_euler_number
from .splice import (cut_edge, euler_over_d, extract, ideal_condition,
                     ideal_generator)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutRecord:
    index: int
    edge: tuple
    generators: tuple


@dataclass
class CutTrace:
    cuts: list
    snapshots: list  # snapshots[c] is the diagram after cuts 1..c


@dataclass(frozen=True)
class Block:
    """A plumbing graph together with which vertices sit over which splice node."""
    name: str
    graph: PlumbingGraph
    origin: dict = field(hash=False)


@dataclass(frozen=True)
class StringSolution:
    vertex: str
    splice_node: str
    lam: int
    e_over_d: Fraction
    e_v: Fraction
    known: Fraction
    d_prime: int
    shift: int
    p: int
    q: int
    string: tuple

    def as_record(self, cut_index, generators=None):
        return {
            "stage": "glue",
            "cut_index": cut_index,
            "generators": list(generators) if generators else None,
            "lambda": self.lam,
            "e_over_d": str(self.e_over_d),
            "e_v": str(self.e_v),
            "d_prime": self.d_prime,
            "shift": self.shift,
            "p": self.p,
            "q": self.q,
            "string": format_hj(self.string),
            "node": self.splice_node,
        }


def cut_all(diagram, order=None):
    """Cut every node-node edge, recording the intermediate diagrams."""
    ok, bad = ideal_condition(diagram)
    if not ok:
        raise IdealConditionError(f"ideal condition fails: {bad}")
    edges = diagram.node_edges()
    if order is None:
        order = edges
    else:
        order = [tuple(sorted(e, key=natural_key)) for e in order]
        if sorted(order) != sorted(edges):
            raise DomainError(f"cut order {order} does not list the node-node edges {edges}")
    cuts, snapshots = [], [diagram]
    current = diagram
    for index, (w1, w2) in enumerate(order, start=1):
        current, gens = cut_edge(current, w1, w2, index)
        cuts.append(CutRecord(index, (w1, w2), gens))
        snapshots.append(current)
    return CutTrace(cuts, snapshots)


def lambda_factor(snapshot, node):
    """prod(m_j) / lcm(m_j / g_j) over the edge ends at ``node``."""
    ms, reduced = [], []
    for u in snapshot.neighbors(node):
        m = snapshot.weight(node, u)
        g = ideal_generator(snapshot, node, u)
        if m == 0 or g == 0:
            raise DomainError(f"zero weight or ideal generator at {node!r}")
        ms.append(m)
        reduced.append(m // g)
    value = Fraction(math.prod(ms), lcm_many(reduced))
    if value.denominator != 1:
        raise InternalConsistencyError(f"lambda at {node!r} is not an integer: {value}")
    return int(value)


def solve_string(graph, v, cut_index, snapshot, splice_node, partner, copies, nodes=None):
    """Solve the Euler-number equation for the chains replacing the arrows.

    The arrows at ``v`` with ``cut_index`` play the role of the yet unknown
    chains.  The target Euler number comes from ``snapshot`` (the diagram
    just before this cut was made), with ``partner`` as the distinguished
    neighbour of ``splice_node``; ``copies`` is how many vertices of the
    finished cover lie over ``splice_node``.  Any integer part of the solved
    ratio goes onto the weight of ``v`` (see ``shift``) so that the chains
    are always in normal form.
    """
    d_prime = sum(1 for a in graph.arrows_at(v) if a.mark.cut_index == cut_index)
    if d_prime == 0:
        raise DomainError(f"vertex {v!r} carries no arrows with cut index {cut_index}")
    lam = lambda_factor(snapshot, splice_node)
    e_over_d = euler_over_d(snapshot, splice_node, partner)
    e_v = Fraction(lam * lam, copies) * e_over_d
    known = node_euler_number(graph, v, nodes, skip_cut=cut_index)
    ratio = (e_v - known) / d_prime
    # Each chain contributes a value in [0, 1); any integer part of the
    # ratio is moved onto the node weight, once per chain.
    whole = math.floor(ratio)
    frac = ratio - whole
    if whole:
        log.info("chain ratio %s at %s: shifting the node weight by %d", ratio, v,
                 d_prime * whole)
    p, q = frac.denominator, frac.numerator
    if q == 0:
        p = 1
    return StringSolution(v, splice_node, lam, e_over_d, e_v, known, d_prime,
                          d_prime * whole, p, q, hj_expand(p, q))


def _cut_arrows(block, cut_index):
    arrows = [a for a in block.graph.arrows if a.mark.cut_index == cut_index]
    marks = {a.mark for a in arrows}
    if len(marks) != 1:
        raise MalformedTraceError(
            f"block {block.name} has differing marks for cut {cut_index}: {sorted(marks)}")
    where = {block.origin.get(a.at) for a in arrows}
    if len(where) != 1 or None in where:
        raise MalformedTraceError(
            f"arrows of cut {cut_index} in {block.name} do not sit over one splice node")
    return arrows, marks.pop(), where.pop()


def _solve_block(block, cut_index, snapshot, splice_node, partner, copies):
    vertices = sorted({a.at for a in block.graph.arrows if a.mark.cut_index == cut_index},
                      key=natural_key)
    # the target is shared among every vertex over the splice node in the cover
    copies *= sum(1 for s in block.origin.values() if s == splice_node)
    sols = [solve_string(block.graph, v, cut_index, snapshot, splice_node, partner,
                         copies, nodes=block.origin) for v in vertices]
    first = sols[0]
    for s in sols[1:]:
        if (s.p, s.q) != (first.p, first.q):
            raise InternalConsistencyError(
                f"copies of {splice_node!r} disagree on the chain for cut {cut_index}")
    return first, {s.vertex: s.shift for s in sols}


def _shifted(block, shifts):
    if not any(shifts.values()):
        return block
    vertices = {v: Vertex(x.weight + shifts.get(v, 0), x.genus)
                for v, x in block.graph.vertices.items()}
    return Block(block.name, PlumbingGraph(vertices, block.graph.edges, block.graph.arrows),
                 block.origin)


def _copy(block, n):
    graphs, origin = [], {}
    for c in range(n):
        def rename(v, c=c):
            return f"{block.name}.{c}.{v}"
        graphs.append(block.graph.relabel(rename))
        origin.update({rename(v): s for v, s in block.origin.items()})
    return graphs, origin


def glue_step(blocks, cut_index, snapshot, records=None):
    """Glue the two blocks carrying arrows of ``cut_index`` into one.

    ``snapshot`` is the splice diagram before cut ``cut_index`` was made.
    Returns the new list of blocks.  If ``records`` is a list, trace records
    are appended to it.
    """
    members = [b for b in blocks if any(a.mark.cut_index == cut_index for a in b.graph.arrows)]
    if len(members) != 2:
        raise MalformedTraceError(
            f"expected two blocks with cut index {cut_index}, found {len(members)}")
    info = [(b, *_cut_arrows(b, cut_index)) for b in members]
    info.sort(key=lambda x: natural_key(x[3]))
    (left, l_arrows, l_mark, l_node), (right, r_arrows, r_mark, r_node) = info
    d_i, d_j = l_mark.multiplicity, r_mark.multiplicity
    a_i, a_j = len(l_arrows), len(r_arrows)
    if a_i != d_j or a_j != d_i:
        raise MultiplicityMismatchError(
            f"cut {cut_index}: {a_i} arrows per copy of {left.name} against {d_j} copies "
            f"of {right.name}, and {a_j} against {d_i}")
    if r_node not in snapshot.node_neighbors(l_node):
        raise MalformedTraceError(f"{l_node!r} and {r_node!r} are not adjacent before cut {cut_index}")

    sol, l_shift = _solve_block(left, cut_index, snapshot, l_node, r_node, d_i)
    far, r_shift = _solve_block(right, cut_index, snapshot, r_node, l_node, d_j)
    left, right = _shifted(left, l_shift), _shifted(right, r_shift)

    l_graphs, l_origin = _copy(left, d_i)
    r_graphs, r_origin = _copy(right, d_j)
    # per copy, the arrows of this cut in a fixed order
    l_ends = [[a.at for a in g.arrows if a.mark.cut_index == cut_index] for g in l_graphs]
    r_ends = [[a.at for a in g.arrows if a.mark.cut_index == cut_index] for g in r_graphs]

    parts = [PlumbingGraph(g.vertices, g.edges,
                           [a for a in g.arrows if a.mark.cut_index != cut_index])
             for g in (*l_graphs, *r_graphs)]
    merged = plumbing.union(parts)
    vertices = dict(merged.vertices)
    edges = list(merged.edges)
    for u in range(d_i):
        for w in range(d_j):
            pair = u * d_j + w
            prev = l_ends[u][w]
            for pos, a in enumerate(sol.string, start=1):
                vid = f"{cut_index}.s{pair}.{pos}"
                vertices[vid] = Vertex(-a)
                edges.append((prev, vid))
                prev = vid
            edges.append((prev, r_ends[w][u]))
    glued = PlumbingGraph(vertices, edges, merged.arrows)
    origin = {**l_origin, **r_origin}

    for s, ends in ((sol, l_ends), (far, r_ends)):
        v = ends[0][0]
        check = node_euler_number(glued, v, origin)
        if check != s.e_v:
            raise InternalConsistencyError(
                f"cut {cut_index}: Euler number at {s.splice_node!r} is {check} after "
                f"gluing, expected {s.e_v}")
    if records is not None:
        records.append(sol.as_record(cut_index, (d_i, d_j)))
        records.append(far.as_record(cut_index, (d_j, d_i)) | {"stage": "glue-check"})

    merged_block = Block(f"g{cut_index}", glued, origin)
    return [b for b in blocks if all(b is not m for m in members)] + [merged_block]


def universal_abelian_cover(diagram, order=None, records=None):
    """Plumbing graph of the universal abelian cover of any manifold with this
    splice diagram."""
    if diagram.degenerate or not diagram.nodes:
        raise UnsupportedCaseError("splice diagram has no node (lens space or S^3)")
    if len(diagram.components()) != 1:
        raise DomainError("splice diagram must be connected")
    if any(w == 0 for w in diagram.weights.values()):
        raise UnsupportedCaseError(
            "splice diagram has a zero edge weight; building blocks with a zero "
            "weight have no plumbing recipe")
    trace = cut_all(diagram, order)
    if records is not None:
        for c in trace.cuts:
            records.append({"stage": "cut", "cut_index": c.index, "edge": list(c.edge),
                            "generators": list(c.generators), "lambda": None,
                            "e_over_d": None, "e_v": None, "d_prime": None,
                            "shift": None, "p": None, "q": None, "string": None})
    blocks = []
    for piece in trace.snapshots[-1].component_diagrams():
        (node,) = piece.nodes
        blocks.append(Block(node, building_block(piece), {node: node}))
    for k in range(len(trace.cuts), 0, -1):
        blocks = glue_step(blocks, k, trace.snapshots[k - 1], records)
    if len(blocks) != 1 or blocks[0].graph.arrows:
        raise InternalConsistencyError("gluing did not produce a single closed graph")
    return blocks[0].graph


def cover_from_plumbing(graph, order=None, records=None):
    diagram = extract(graph)
    return universal_abelian_cover(diagram, order, records)
