import pytest

from splicecover import corpus_path, plumbing, splice

PAIR = ["pair_a.plumb", "pair_b.plumb", "pair_c.plumb", "pair_d.plumb"]


def load_plumbing(name):
    return plumbing.parse(corpus_path(name).read_text())


def load_splice(name):
    return splice.parse(corpus_path(name).read_text())


@pytest.fixture(scope="session")
def pair_trees():
    return [load_plumbing(n) for n in PAIR]


@pytest.fixture(scope="session")
def gamma_pair():
    return load_splice("pair_gamma.splice")


@pytest.fixture(scope="session")
def gamma_chain():
    return load_splice("chain3_gamma.splice")


@pytest.fixture(scope="session")
def gamma_genus1():
    return load_splice("genus1_gamma.splice")


@pytest.fixture(scope="session")
def e8():
    return load_plumbing("e8.plumb")
