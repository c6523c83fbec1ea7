"""Exact computations with plumbing graphs and splice diagrams of graph
manifolds, including a plumbing graph for the universal abelian cover."""
from importlib.resources import files

from .arith import (gcd_many, hj_eval, hj_expand, hj_reverse, lcm_many,
                    solve_neg_congruence)
from .brieskorn import StarData, building_block, star_data
from .cover import (CutTrace, cover_from_plumbing, cut_all, glue_step,
                    solve_string, universal_abelian_cover)
from .plumbing import (ArrowMark, PlumbingGraph, h1_order, intersection_matrix,
                       isomorphic, node_euler_number, to_dot)
from .splice import (CutMark, SpliceDiagram, cut_edge, edge_determinant,
                     euler_over_d, extract, ideal_condition, ideal_generator,
                     linking_prime)

__version__ = "0.1.0"


def corpus_path(name):
    """Path to a bundled example file (see the ``corpus`` directory)."""
    return files(__name__) / "corpus" / name
