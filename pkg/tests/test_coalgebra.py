import random

import pytest

from kam import checks
from kam.coalgebra import TensorElement, diagonal, expected_primitives, grouplike, primitives, reduce_legs
from kam.core import HAT_K, HAT_U, K, TILDE_K, TILDE_U, Element, FlavorError
from kam.relations import full_relation


def test_diagonal_examples():
    p = 3
    e = lambda *m: Element.monomial(m, TILDE_U, p)
    assert diagonal(e(2)) == TensorElement.tensor(e(0), e(2)) + TensorElement.tensor(e(2), e(0))
    g = e(0, 0, 0)
    assert diagonal(g) == TensorElement.tensor(g, g)
    h = Element.monomial((2,), HAT_U, p)
    assert len(diagonal(h).terms) == 3


def test_relations_map_to_relations():
    p = 3
    r = full_relation(6, 0, TILDE_U, p).with_flavor(TILDE_K)
    assert reduce_legs(diagonal(r.with_flavor(TILDE_U)).map_legs(lambda y: y.with_flavor(TILDE_K))) == 0


@pytest.mark.parametrize("p", [3, 5])
def test_bialgebra_properties(p):
    rng = random.Random(p)
    assert checks.diagonal_multiplicative(p, rng)[0]
    assert checks.coassociative(p, rng)[0]
    assert checks.diagonal_descends(p)[0]


def test_primitive_examples():
    p = 3
    got = primitives(TILDE_K, 2, 40, p)
    assert [(t, [str(x) for x in b]) for t, b in got] == [(12, ["e0 e2"]), (16, ["e2 e2"])]
    got = primitives(K, 2, 40, p)
    assert [[x.monomials() for x in b] for _, b in got] == [[[(0, 1)]], [[(1, 1)]]]
    got = primitives(HAT_U, 2, 10, p)
    assert sorted(x.monomials()[0] for _, b in got for x in b) == [(0, 1), (1, 0)]
    assert grouplike(K, 2, p) == Element.monomial((0, 0), K, p)


def test_oracle_and_rewrite_agree_on_primitives():
    for flavor in (TILDE_K, K):
        assert primitives(flavor, 3, 60, 3, "oracle") == primitives(flavor, 3, 60, 3, "rewrite")


@pytest.mark.parametrize("p", [3, 5])
def test_primitives_theorem(p):
    ok, detail = checks.primitives_match(p)
    assert ok, detail


def test_expected_lists():
    assert len(expected_primitives(TILDE_K, 2, 3)) == 3
    with pytest.raises(FlavorError):
        expected_primitives(HAT_K, 2, 3)
    with pytest.raises(ValueError):
        primitives(TILDE_K, 0, 10, 3)
