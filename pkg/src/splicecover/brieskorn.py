"""Building blocks: plumbing stars for Brieskorn complete intersection links."""
from dataclasses import dataclass
import math

from .arith import hj_expand, lcm_many, solve_neg_congruence
from .errors import DomainError, InternalConsistencyError, UnsupportedCaseError
from .plumbing import Arrow, ArrowMark, PlumbingGraph, Vertex
from .splice import SpliceDiagram


@dataclass(frozen=True)
class StarData:
    alphas: tuple
    b: int
    genus: int
    t: tuple
    p: tuple
    q: tuple
    strings: tuple


def star_data(alphas):
    """Seifert data of the star realising the link of Sigma(alphas).

    For each alpha_i: ``t_i`` parallel arms (or arrows), each encoding
    ``p_i/q_i``; the central vertex has weight ``-b`` and genus ``genus``.
    """
    alphas = tuple(alphas)
    if any(a < 2 for a in alphas):
        raise DomainError(f"every alpha must be at least 2, got {alphas}")
    return _star_data(alphas)


def _star_data(alphas):
    # Building blocks may see a weight 1 after dividing by an ideal
    # generator; the formulas stay valid there (that fibre is regular).
    if len(alphas) < 2:
        raise DomainError("need at least two alpha values")
    if any(a < 1 for a in alphas):
        raise DomainError(f"every alpha must be positive, got {alphas}")
    n = len(alphas)
    prod = math.prod(alphas)
    big = lcm_many(alphas)
    t, p, q = [], [], []
    for i, a in enumerate(alphas):
        rest = alphas[:i] + alphas[i + 1:]
        lcm_rest = lcm_many(rest)
        t.append(math.prod(rest) // lcm_rest)
        p.append(big // lcm_rest)
        q.append(solve_neg_congruence(big // a, p[-1]))
    twice_genus = 2 + (n - 2) * prod // big - sum(t)
    if twice_genus < 0 or twice_genus % 2:
        raise InternalConsistencyError(f"genus formula gave {twice_genus}/2 for {alphas}")
    numer = prod + big * sum(qi * prod // a for qi, a in zip(q, alphas))
    if numer % (big * big):
        raise InternalConsistencyError(f"central weight is not an integer for {alphas}")
    return StarData(alphas, numer // (big * big), twice_genus // 2, tuple(t), tuple(p),
                    tuple(q), tuple(hj_expand(pi, qi) for pi, qi in zip(p, q)))


def building_block(diagram):
    """Plumbing star with arrows for a one-node splice diagram.

    Unmarked leaves become ``t_i`` arms; each marked leaf becomes ``t_i``
    arrows carrying ``(cut, ideal generator, p_i/q_i)``.  The central
    vertex keeps the id of the splice node.
    """
    if len(diagram.nodes) != 1:
        raise DomainError(f"building block needs exactly one node, got {len(diagram.nodes)}")
    (node,) = diagram.nodes
    leaves = diagram.leaf_neighbors(node)
    if len(leaves) != len(diagram.neighbors(node)):
        raise DomainError("a one-node diagram may only have leaves")
    alphas = [diagram.weight(node, leaf) for leaf in leaves]
    if 0 in alphas:
        raise UnsupportedCaseError(
            f"node {node!r} has a zero edge weight; no plumbing recipe exists for "
            "building blocks of this kind")
    data = _star_data(tuple(alphas))
    vertices = {node: Vertex(-data.b, data.genus)}
    edges, arrows = [], []
    for i, leaf in enumerate(leaves):
        mark = diagram.leaves[leaf]
        for j in range(data.t[i]):
            if mark is not None:
                arrows.append(Arrow(node, ArrowMark(mark.cut_index, mark.ideal_gen,
                                                    data.p[i], data.q[i])))
                continue
            prev = node
            for k, a in enumerate(data.strings[i], start=1):
                vid = f"{node}.{leaf}.{j}.{k}"
                vertices[vid] = Vertex(-a)
                edges.append((prev, vid))
                prev = vid
    return PlumbingGraph(vertices, edges, arrows)


def brieskorn_star(alphas, center="c"):
    """Closed star (no arrows) for Sigma(alphas)."""
    leaves = {f"l{i}": None for i in range(len(alphas))}
    weights = {(center, f"l{i}"): a for i, a in enumerate(alphas)}
    return building_block(SpliceDiagram({center: 1}, leaves, weights))

