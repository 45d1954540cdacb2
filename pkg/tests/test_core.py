import itertools
from math import factorial

import pytest
from hypothesis import given, strategies as st

from kam.core import (
    HAT_K,
    HAT_U,
    K,
    TILDE_K,
    TILDE_U,
    U,
    Element,
    Flavor,
    FlavorError,
    apply_endo,
    binom_mod_p,
    check_prime,
    embed,
    enumerate_basis_monomials,
    project,
    render,
    top_degree,
)


def falling_binomial(M, N):
    """Exact generalized binomial M (M-1) ... (M-N+1) / N!."""
    if N < 0:
        return 0
    num = 1
    for k in range(N):
        num *= M - k
    q, r = divmod(num, factorial(N))
    assert r == 0
    return q


@pytest.mark.parametrize("p", [3, 5, 7])
def test_binomial_against_exact_integers(p):
    for M in range(-40, 41):
        for N in range(-3, 30):
            assert binom_mod_p(M, N, p) == falling_binomial(M, N) % p, (M, N)


def test_binomial_examples():
    assert binom_mod_p(5, 2, 3) == 1
    assert binom_mod_p(-2, 1, 3) == 1
    assert binom_mod_p(3, 1, 3) == 0
    assert binom_mod_p(10 ** 9, 10 ** 9, 5) == 1


@given(st.integers(-200, 200), st.integers(0, 200), st.sampled_from([3, 5, 7]))
def test_pascal_rule(M, N, p):
    assert binom_mod_p(M, N, p) == (binom_mod_p(M - 1, N, p) + binom_mod_p(M - 1, N - 1, p)) % p


def test_check_prime():
    assert check_prime(5) == 5
    for bad in (2, 4, 9, 1, 0, -3):
        with pytest.raises(ValueError):
            check_prime(bad)


def test_flavor_names_round_trip():
    for f in (HAT_U, TILDE_U, U, HAT_K, TILDE_K, K):
        assert Flavor.parse(f.name) == f
        assert f.free().quotient() == f.quotient()
    with pytest.raises(FlavorError):
        Flavor.parse("barU")


def test_top_degree():
    assert top_degree((2, 2), 3, TILDE_U) == 16
    assert top_degree((1, 1), 3, U) == 16
    assert top_degree((6, 0), 3) == 12
    assert top_degree((), 3) == 0


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("flavor", [HAT_U, TILDE_U, U])
def test_enumeration_against_brute_force(p, flavor):
    for n in range(0, 4):
        for t in range(0, 2 * p ** 2 + 1):
            got = enumerate_basis_monomials(flavor, n, t, p)
            cap = t // 2 + 1
            brute = sorted(
                m for m in itertools.product(range(cap), repeat=n)
                if all(flavor.legal(i) for i in m) and top_degree(m, p, flavor) == t
            )
            assert got == brute, (n, t)


def test_illegal_subscripts_are_zero():
    assert not Element.monomial((3,), TILDE_U, 3)
    assert not Element.monomial((-1, 2), HAT_U, 3)
    assert Element.monomial((3,), HAT_U, 3)


def test_arithmetic_and_rendering():
    p = 3
    x = Element.monomial((6, 0), HAT_U, p) + Element.monomial((0, 2), HAT_U, p).scale(2)
    assert render(x) == "2 e0 e2 + e6 e0"
    assert x - x == 0
    assert (x * Element.one(HAT_U, p)) == x
    assert Element.monomial((1,), HAT_U, p) * Element.monomial((2,), HAT_U, p) == Element.monomial((1, 2), HAT_U, p)
    assert 3 * x == 0
    with pytest.raises(FlavorError):
        x + Element.monomial((2,), TILDE_U, p)


monos = st.lists(st.integers(0, 8), min_size=0, max_size=3).map(tuple)
elements = st.dictionaries(monos, st.integers(-4, 4), max_size=4).map(lambda d: Element(d, HAT_U, 5))


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert x + y == y + x


@given(st.lists(st.integers(0, 10), max_size=4).map(tuple))
def test_embed_project_round_trip(m):
    for fam, scale in (("tilde", 1), ("plain", 1)):
        x = Element.monomial(m, Flavor(fam), 3)
        assert project(embed(x), fam) == x


def test_endomorphisms():
    p = 3
    x = Element.monomial((4, 2), TILDE_U, p)
    assert apply_endo("alpha-tilde", x) == Element.monomial((2, 0), TILDE_U, p)
    assert apply_endo("alpha-tilde", apply_endo("alpha-tilde", x)) == 0
    assert apply_endo("kappa", x) == Element.monomial((0, 4, 2), TILDE_U, p)
    assert apply_endo("verschiebung", Element.monomial((6, 3, 0), HAT_U, p)) == Element.monomial((2, 1, 0), HAT_U, p)
    assert apply_endo("verschiebung", Element.monomial((6, 2), HAT_U, p)) == 0
    assert apply_endo("alpha", Element.monomial((1, 3), U, p)) == Element.monomial((0, 2), U, p)
    with pytest.raises(FlavorError):
        apply_endo("alpha", x)
