import random

import pytest
from hypothesis import given, strategies as st

from kam import checks
from kam.core import HAT_K, HAT_U, K, TILDE_K, Element, FlavorError
from kam.quotient import (
    admissible_basis,
    check_negative_redundancy,
    is_basis_monomial,
    normalize,
    reduce_oracle,
    relation_space,
)


def test_small_relation_spaces():
    rs = relation_space(TILDE_K, 2, 12, 3)
    assert (rs.dim, rs.rank, rs.complement) == (2, 1, [(0, 2)])
    rs = relation_space(TILDE_K, 2, 20, 3)
    assert (rs.rank, rs.complement) == (2, [])


def test_normal_form_examples():
    p = 3
    x = Element.monomial((6, 0), TILDE_K, p)
    assert normalize(x) == Element.monomial((0, 2), TILDE_K, p)
    assert reduce_oracle(x) == normalize(x)
    assert normalize(Element.monomial((2, 4), TILDE_K, p)) == Element.monomial((2, 4), TILDE_K, p)
    assert normalize(Element.monomial((2, 4), TILDE_K, 5)) == 0
    assert normalize(Element.monomial((1, 3), HAT_K, p)) == 0
    assert normalize(Element.monomial((3,), HAT_K, p)) == Element.monomial((3,), HAT_K, p)
    with pytest.raises(FlavorError):
        normalize(Element.monomial((1, 2), HAT_K, p)) + Element.monomial((2,), TILDE_K, p)


def test_basis_membership():
    assert is_basis_monomial((0, 2, 2), "tilde", 3)
    assert is_basis_monomial((0, 4), "tilde", 5)
    assert not is_basis_monomial((2, 4), "tilde", 5)
    assert not is_basis_monomial((4, 2), "tilde", 3)
    assert is_basis_monomial((0, 3), "plain", 5)
    assert is_basis_monomial((5,), "hat", 3)
    assert not is_basis_monomial((1, 3), "hat", 3)


@pytest.mark.parametrize("p", [3, 5])
def test_basis_theorem(p):
    ok, detail = checks.basis_theorem(p)
    assert ok, detail


@pytest.mark.parametrize("p", [3, 5])
def test_rewriting_matches_oracle(p):
    ok, detail = checks.normal_forms_agree(p)
    assert ok, detail


@pytest.mark.parametrize("p", [3, 5])
def test_trivial_products_and_degeneration(p):
    assert checks.trivial_products(p)[0]
    assert checks.degeneration(p)[0]


@pytest.mark.parametrize("p", [3, 5])
def test_negative_redundancy(p):
    assert check_negative_redundancy(-2, 3, HAT_U, p) if p == 3 else True
    for i in range(-10, 10):
        assert check_negative_redundancy(i, -3, HAT_U, p)
    assert checks.negative_redundancy(p, 40, random.Random(1))[0]


@pytest.mark.parametrize("p", [3, 5])
def test_descent_of_endomorphisms(p):
    assert checks.v_descent(p, 40)[0]
    assert checks.endomorphism_descent(p)[0]


def test_multiplicative():
    assert checks.multiplicative(3, random.Random(2))[0]


mono = st.lists(st.integers(0, 12), min_size=1, max_size=3).map(tuple)


@given(mono, mono, st.integers(1, 2), st.sampled_from([HAT_K, K]))
def test_normalize_linear_and_idempotent(a, b, c, flavor):
    p = 3
    x = Element.monomial(a, flavor, p) + Element.monomial(b, flavor, p).scale(c)
    y = normalize(x)
    assert normalize(y) == y
    assert y == normalize(Element.monomial(a, flavor, p)) + normalize(Element.monomial(b, flavor, p)).scale(c)
    assert y == reduce_oracle(x)


def test_admissible_basis_lists():
    assert admissible_basis(TILDE_K, 2, 16, 3) == [(2, 2)]
    assert admissible_basis(K, 2, 16, 3) == [(1, 1)]
    assert admissible_basis(HAT_K, 1, 10, 3) == [(5,)]
