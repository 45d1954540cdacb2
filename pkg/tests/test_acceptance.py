"""
Acceptance criteria, one test each, with exact equality and a wall-clock
bound.  Caches are cleared before each criterion so the timings are cold.
A one-line PASS/FAIL summary per criterion is printed at the end of the
session (and when this file is run as a script).
"""

import random
import time

import pytest

from kam import checks
from kam.core import HAT_U, TILDE_K, TILDE_U, Element
from kam.dual import (
    dickson_c,
    fixed_space,
    generator,
    mui_V,
    omega_map,
    poly_steenrod,
    sigma_map,
    tau_map,
    DualElement,
)
from kam.nishida import _act_monomial, act_d, steenrod_P_dual
from kam.quotient import _nf_cache, _relation_space
from kam.relations import theta, theta_d_terms, theta_terms

RESULTS = {}


def cold():
    for cache in (_relation_space, _act_monomial, fixed_space, theta_terms, theta_d_terms):
        cache.cache_clear()
    _nf_cache.clear()


def record(number, title, checks_, elapsed, limit):
    failed = [name for name, ok in checks_ if not ok]
    ok = not failed and elapsed < limit
    detail = f"{elapsed:.3f}s (limit {limit}s)"
    if failed:
        detail += "; failed: " + ", ".join(failed)
    RESULTS[number] = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    print(RESULTS[number])
    assert not failed, failed
    assert elapsed < limit, f"took {elapsed:.3f}s, limit {limit}s"


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_relation_formula():
    cold()
    got, elapsed = timed(lambda: theta(-2, 3, HAT_U, 3))
    record(1, "relation formula instance", [("theta(-2,3) = e1 e2", got == Element.monomial((1, 2), HAT_U, 3))],
           elapsed, 0.001)


def test_criterion_02_edge_lemma():
    cold()
    res, elapsed = timed(lambda: [(p, checks.edge_lemma(p, 100)) for p in (3, 5, 7)])
    record(2, "edge lemma", [(f"p={p}", r[0]) for p, r in res], elapsed, 1)


def test_criterion_03_power_series():
    cold()

    def run():
        return [
            ("e-series equals May's relations, r+s <= 30", checks.e_series_vs_may(3, 30)[0]),
            ("d-series defects reduce to 0, D = 20", checks.d_series_reduces(3, 20)[0]),
        ]

    res, elapsed = timed(run)
    record(3, "power series", res, elapsed, 60)


def test_criterion_04_basis_theorem():
    cold()

    def run():
        out = []
        for p in (3, 5):
            out.append((f"basis count p={p}", checks.basis_theorem(p, 4, 2 * p ** 3)[0]))
            out.append((f"normalize = oracle p={p}", checks.normal_forms_agree(p, 4, 2 * p ** 3)[0]))
        return out

    res, elapsed = timed(run)
    record(4, "basis theorem", res, elapsed, 600)


def test_criterion_05_triviality():
    cold()
    res, elapsed = timed(lambda: [(f"p={p}", checks.trivial_products(p, 3 * p ** 3)[0]) for p in (3, 5)])
    record(5, "noncongruent and odd products vanish", res, elapsed, 60)


def test_criterion_06_negative_redundancy():
    cold()
    res, elapsed = timed(
        lambda: [(f"p={p}", checks.negative_redundancy(p, 40, random.Random(6))[0]) for p in (3, 5)]
    )
    record(6, "negative relations are redundant", res, elapsed, 60)


def test_criterion_07_bialgebra_and_primitives():
    cold()

    def run():
        out = []
        for p, n_max in ((3, 4), (5, 4)):
            out.append((f"diagonal descends p={p}", checks.diagonal_descends(p, n_max)[0]))
        for p in (3, 5):
            out.append((f"primitive lists p={p}", checks.primitives_match(p, 4)[0]))
        return out

    res, elapsed = timed(run)
    record(7, "bialgebra descent and primitives", res, elapsed, 300)


def test_criterion_08_nishida():
    cold()

    def run():
        rng = random.Random(8)
        return [
            ("d_1 * e_4 = -2 e_2", act_d(1, Element.monomial((4,), TILDE_K, 3)) == Element.monomial((2,), TILDE_K, 3).scale(-2)),
            ("closed-form action values, n <= 3", checks.nishida_closed_values(3, 3)[0]),
            ("relation invariance", checks.relation_invariance(3, 12)[0]),
            ("descent through relation rows", checks.action_descends(3, rng)[0]),
            ("d_0 is V, d_i past kappa", checks.kappa_v_relations(3, 3)[0]),
        ]

    res, elapsed = timed(run)
    record(8, "Nishida action", res, elapsed, 300)


def test_criterion_09_duality():
    cold()

    def run():
        pairs = checks.DUALITY_PAIRS[:2] + checks.DUALITY_PAIRS[3:]
        out = []
        for flavor, kind in pairs:
            out.append((f"{flavor} vs {kind}", checks.dimensions_agree(3, 2, 80, ((flavor, kind),))[0]))
        out.append(("generator degrees", checks.generator_degrees(3, 3)[0]))
        return out

    res, elapsed = timed(run)
    record(9, "graded dimensions of duals and invariants", res, elapsed, 300)


def test_criterion_10_commuting_square():
    cold()

    def run():
        p = 3
        c1, s = generator("c1", 2, p), generator("s", 2, p)
        V1, V2 = mui_V(2, 1, p).pow(2), mui_V(2, 2, p).pow(2)
        sig = sigma_map(c1)
        want_sigma = DualElement.of_monomial((6, 0), TILDE_U, p) + DualElement.of_monomial((0, 2), TILDE_U, p)
        return [
            ("sigma(c21)", sig == want_sigma),
            ("omega(sigma(c21)) = V1^3 + V2", omega_map(sig) == V1.pow(3) + V2),
            ("V1^3 + V2 = Dickson c21", V1.pow(3) + V2 == dickson_c(2, 1, p)),
            ("omega sigma = tau on c21", omega_map(sig) == tau_map("c1", 2, p)),
            ("omega sigma = tau on s", omega_map(sigma_map(s)) == tau_map("s", 2, p)),
        ]

    res, elapsed = timed(run)
    record(10, "commuting square", res, elapsed, 60)


def test_criterion_11_steenrod():
    cold()

    def run():
        p, n = 3, 2
        s = generator("s", n, p)
        c = {a: generator(f"c{a}", n, p) for a in range(n + 1)}
        out = [
            ("P^1 c21 = c20", steenrod_P_dual(1, c[1]) == c[0]),
            ("P^3 c21 = -c21 c21", steenrod_P_dual(3, c[1]) == -(c[1] * c[1])),
            ("P^3 s = 2 s c21", steenrod_P_dual(3, s) == (s * c[1]).scale(2)),
        ]
        for name, g in (("s", s), ("c1", c[1])):
            for j in (1, 3):
                lhs = omega_map(sigma_map(steenrod_P_dual(j, g)))
                out.append((f"P^{j} {name} through omega sigma", lhs == poly_steenrod(j, tau_map(name, n, p))))
        return out

    res, elapsed = timed(run)
    record(11, "Steenrod operations", res, elapsed, 60)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
