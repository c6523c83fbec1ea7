from fractions import Fraction
import math

from hypothesis import given, settings, strategies as st
import pytest

from oracles import cf_value, star_euler
from splicecover import plumbing, splice
from splicecover.brieskorn import brieskorn_star, building_block, star_data
from splicecover.errors import DomainError, UnsupportedCaseError
from splicecover.plumbing import ArrowMark
from splicecover.splice import CutMark, SpliceDiagram


def one_node(weights, marks=None):
    marks = marks or {}
    leaves = {f"l{i}": marks.get(i) for i in range(len(weights))}
    return SpliceDiagram({"n": 1}, leaves, {("n", f"l{i}"): w for i, w in enumerate(weights)})


@pytest.mark.parametrize("alphas, b, genus, t, pq", [
    ((3, 18, 23), 2, 0, (1, 1, 3), ((1, 0), (6, 1), (23, 14))),
    ((2, 3, 5), 2, 0, (1, 1, 1), ((2, 1), (3, 2), (5, 4))),
    ((3, 3, 30), 3, 1, (3, 3, 3), ((1, 0), (1, 0), (10, 9))),
    ((5, 5, 9), 4, 0, (1, 1, 5), ((1, 0), (1, 0), (9, 7))),
    ((2, 2, 5, 7), 1, 0, (1, 1, 2, 2), ((1, 0), (1, 0), (5, 1), (7, 2))),
    ((2, 5, 18), 2, 0, (1, 2, 1), ((1, 0), (5, 3), (9, 7))),
])
def test_star_data_examples(alphas, b, genus, t, pq):
    data = star_data(alphas)
    assert (data.b, data.genus, data.t) == (b, genus, t)
    assert tuple(zip(data.p, data.q)) == pq


def test_star_data_strings():
    assert star_data((2, 3, 5)).strings == ((2,), (2, 2), (2, 2, 2, 2))
    assert star_data((3, 18, 23)).strings == ((), (6,), (2, 3, 5))


@pytest.mark.parametrize("alphas", [(1, 2, 3), (0, 2, 3), (5,), ()])
def test_star_data_domain(alphas):
    with pytest.raises(DomainError):
        star_data(alphas)


@settings(deadline=None)
@given(st.lists(st.integers(2, 30), min_size=2, max_size=4))
def test_star_identities(alphas):
    data = star_data(alphas)
    prod, big = math.prod(alphas), math.lcm(*alphas)
    rest = [prod // a for a in alphas]
    assert data.b * big * big - prod - big * sum(q * r for q, r in zip(data.q, rest)) == 0
    assert 2 * data.genus == 2 + (len(alphas) - 2) * prod // big - sum(data.t)
    for p, q, s in zip(data.p, data.q, data.strings):
        assert 0 <= q < p and math.gcd(p, q) == 1
        assert (p == 1 and s == ()) or cf_value(s) == Fraction(p, q)
    g = brieskorn_star(alphas)
    assert plumbing.node_euler_number(g, "c") == star_euler(alphas)


def test_e8_star(e8):
    assert plumbing.isomorphic(brieskorn_star((2, 3, 5)), e8)


def test_building_block_delta1():
    block = building_block(one_node([3, 18, 23], {2: CutMark(1, 1)}))
    assert block.weight("n") == -2 and block.genus("n") == 0
    assert sorted(x.weight for x in block.vertices.values()) == [-6, -2]
    assert [a.mark for a in block.arrows] == [ArrowMark(1, 1, 23, 14)] * 3


def test_building_block_delta2():
    block = building_block(one_node([2, 3, 5], {2: CutMark(1, 3)}))
    assert len(block) == 4
    assert [a.mark for a in block.arrows] == [ArrowMark(1, 3, 5, 4)]


def test_building_block_delta3():
    block = building_block(one_node([2, 5, 18], {2: CutMark(2, 2)}))
    assert block.weight("n") == -2
    arms = [w for v, w in ((v, x.weight) for v, x in block.vertices.items()) if v != "n"]
    assert sorted(arms) == [-3, -3, -2, -2]
    assert [a.mark for a in block.arrows] == [ArrowMark(2, 2, 9, 7)]


def test_building_block_genus():
    block = building_block(one_node([3, 3, 30], {2: CutMark(1, 5)}))
    assert block.genus("n") == 1 and block.weight("n") == -3
    assert len(block.arrows) == 3 and len(block) == 1


def test_building_block_errors(gamma_pair):
    with pytest.raises(UnsupportedCaseError):
        building_block(one_node([0, 2, 3]))
    with pytest.raises(DomainError):
        building_block(gamma_pair)


def test_extract_round_trip():
    d = splice.extract(brieskorn_star((2, 3, 5)))
    assert sorted(d.weights_at("c")) == [2, 3, 5]
    d = splice.extract(brieskorn_star((2, 5, 18)))
    assert sorted(d.weights_at("c")) == [5, 5, 9]
