"""
The Adem relations and their formal power series encodings.

For integers i, j the right-hand side of the (full) relation on e_i e_j is

    theta(i, j) = sum_k (-1)^((pk - i)/(p - 1)) C(k - j - 1, (pk - i)/(p - 1) - j) e_{i+pj-pk} e_k,

summed over k making the fraction integral.  Monomials with a negative
subscript are zero.  In the plain family, with d_i = e_{i(p-1)},

    theta_d(i, j) = sum_l (-1)^(pl - i) C((p-1)(l-j) - 1, pl - i - (p-1)j) d_{i+pj-pl} d_l.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Tuple

from .core import (
    HAT_U,
    U,
    Element,
    Flavor,
    FlavorError,
    Monomial,
    ResourceLimitError,
    binom_mod_p,
    check_prime,
    project,
)
from .polynomial import PolyFp

MAX_TRUNCATION = 400

SymPoly = PolyFp  # polynomials in two commuting variables (u, v)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@lru_cache(maxsize=None)
def theta_terms(i: int, j: int, p: int) -> Tuple[Tuple[Monomial, int], ...]:
    """Terms ((l, k), coeff) of theta(i, j) in the hat family."""
    out = []
    # pk >= i + (p-1)j (denominator >= 0), pk <= i + pj (l >= 0), k >= 0
    lo = max(0, _ceil_div(i + (p - 1) * j, p))
    hi = (i + p * j) // p
    if hi < lo:
        return ()
    k = lo + (i - lo) % (p - 1)
    while k <= hi:
        e = (p * k - i) // (p - 1)
        c = binom_mod_p(k - j - 1, e - j, p)
        if c:
            if e % 2:
                c = p - c
            out.append(((i + p * j - p * k, k), c))
        k += p - 1
    return tuple(out)


@lru_cache(maxsize=None)
def theta_d_terms(i: int, j: int, p: int) -> Tuple[Tuple[Monomial, int], ...]:
    out = []
    lo = max(0, _ceil_div(i + (p - 1) * j, p))
    hi = (i + p * j) // p
    for l in range(lo, hi + 1):
        c = binom_mod_p((p - 1) * (l - j) - 1, p * l - i - (p - 1) * j, p)
        if c:
            if (p * l - i) % 2:
                c = p - c
            out.append(((i + p * j - p * l, l), c))
    return tuple(out)


def theta(i: int, j: int, flavor: Flavor = HAT_U, p: int = 3) -> Element:
    """Right side of the full relation for e_i e_j (any integers i, j).

    In the tilde family, odd subscripts are dropped.  For the plain family
    use :func:`theta_d`.
    """
    check_prime(p)
    if flavor.family == "plain":
        raise FlavorError("theta is indexed by e-subscripts; use theta_d for the plain family")
    return Element(dict(theta_terms(i, j, p)), flavor, p)


def theta_d(i: int, j: int, p: int = 3, quotiented: bool = False) -> Element:
    check_prime(p)
    return Element(dict(theta_d_terms(i, j, p)), Flavor("plain", quotiented), p)


def adem_rhs(i: int, j: int, flavor: Flavor, p: int) -> Element:
    """theta or theta_d according to the family."""
    if flavor.family == "plain":
        return theta_d(i, j, p, flavor.quotiented)
    return theta(i, j, flavor, p)


def full_relation(i: int, j: int, flavor: Flavor = HAT_U, p: int = 3) -> Element:
    """Theta(i, j) = e_i e_j - theta(i, j), where e_i e_j is zero if illegal."""
    return Element.monomial((i, j), flavor, p) - adem_rhs(i, j, flavor, p)


def theta_linear(x: Element) -> Element:
    """The endomorphism of the length-2 component sending e_i e_j to theta(i, j)."""
    out = Element.zero(x.flavor, x.p)
    for m, c in x.terms.items():
        if len(m) != 2:
            raise ValueError("theta acts on length-2 elements")
        out = out + adem_rhs(m[0], m[1], x.flavor, x.p).scale(c)
    return out


def mays_relation_defect(r: int, s: int, flavor: Flavor = HAT_U, p: int = 3) -> Element:
    """Left side minus right side of May's relation indexed by (r, s)."""
    check_prime(p)
    if r < 0 or s < 0:
        raise ValueError("May's relations are indexed by r, s >= 0")
    acc: Dict[Monomial, int] = {}

    def side(a, b, sign):
        # sum_k (-1)^(k+b) C(b - (p-1)k, k) e_{a+(pk-b)(p-1)} e_{b-k(p-1)}
        for k in range(0, b // (p - 1) + 1):
            first = a + (p * k - b) * (p - 1)
            if first < 0:
                continue
            c = binom_mod_p(b - (p - 1) * k, k, p)
            if c:
                if (k + b) % 2:
                    c = -c
                m = (first, b - k * (p - 1))
                acc[m] = acc.get(m, 0) + sign * c

    side(r, s, 1)
    side(s, r, -1)
    return project(Element(acc, HAT_U, p), flavor.family).with_flavor(flavor)


# ---------------------------------------------------------------------------
# helper polynomials


def phi(a: PolyFp, b: PolyFp) -> PolyFp:
    """a (a^(p-1) - b^(p-1))."""
    p = a.p
    return a.mul(a.pow(p - 1) - b.pow(p - 1))


def psi(a: PolyFp, b: PolyFp) -> PolyFp:
    """a (a - b)^(p-1)."""
    return a.mul((a - b).pow(a.p - 1))


def uv(p: int):
    return PolyFp.var(0, 2, p), PolyFp.var(1, 2, p)


# ---------------------------------------------------------------------------
# truncated bivariate series with length-2 coefficients


class BivarSeries:
    """Coefficients (r, s) -> Element for the monomials u^r v^s, r + s <= D."""

    def __init__(self, D: int, flavor: Flavor, p: int, coeffs=None):
        self.D = D
        self.flavor = flavor
        self.p = p
        self.coeffs: Dict[Tuple[int, int], Element] = {}
        for rs, x in (coeffs or {}).items():
            if sum(rs) <= D and x:
                self.coeffs[rs] = x

    def coefficient(self, r: int, s: int) -> Element:
        if r + s > self.D:
            raise ValueError(f"u^{r} v^{s} lies beyond the truncation {self.D}")
        return self.coeffs.get((r, s), Element.zero(self.flavor, self.p))

    def __sub__(self, other: "BivarSeries") -> "BivarSeries":
        D = min(self.D, other.D)
        keys = set(self.coeffs) | set(other.coeffs)
        return BivarSeries(
            D,
            self.flavor,
            self.p,
            {k: self.coefficient(*k) - other.coefficient(*k) for k in keys if sum(k) <= D},
        )

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))


def _check_truncation(D: int):
    if D < 0:
        raise ValueError("truncation must be nonnegative")
    if D > MAX_TRUNCATION:
        raise ResourceLimitError(f"truncation {D} exceeds the limit {MAX_TRUNCATION}")


def _product_series(first_var: int, inner: PolyFp, flavor: Flavor, D: int) -> BivarSeries:
    """sum_{a,b} g_a g_b X^a inner^b, X = u (first_var 0) or v (first_var 1)."""
    p = inner.p
    low = inner.min_degree()
    acc: Dict[Tuple[int, int], Dict[Monomial, int]] = {}
    power = PolyFp.constant(1, 2, p)
    b = 0
    while b * low <= D:
        for (x, y), c in power.terms.items():
            for a in range(0, D - x - y + 1):
                rs = (x + a, y) if first_var == 0 else (x, y + a)
                slot = acc.setdefault(rs, {})
                slot[(a, b)] = (slot.get((a, b), 0) + c) % p
        b += 1
        power = power.mul(inner, D)
    return BivarSeries(D, flavor, p, {rs: Element(t, flavor, p) for rs, t in acc.items()})


def series_identity_defect(which: str, D: int, p: int = 3, x: Element = None):
    """Coefficient-wise defect of one of the power series identities.

    which = "e-series":       e(u) e(phi(v,u)) - e(v) e(phi(u,v))
            "d-series":       d(u) d(psi(v,u)) - d(v) d(psi(u,v))
            "nishida-series": d(u^(p-1)) * [e(v) x] - e(phi(v,u)) [d(phi(u,v)^(p-1)) * x]

    Returns [((r, s), Element)] for r + s <= D, zero coefficients omitted.
    """
    check_prime(p)
    _check_truncation(D)
    u, v = uv(p)
    if which == "e-series":
        lhs = _product_series(0, phi(v, u), HAT_U, D)
        rhs = _product_series(1, phi(u, v), HAT_U, D)
        return (lhs - rhs).items()
    if which == "d-series":
        lhs = _product_series(0, psi(v, u), U, D)
        rhs = _product_series(1, psi(u, v), U, D)
        return (lhs - rhs).items()
    if which == "nishida-series":
        if x is None:
            raise ValueError("the nishida series needs a test element x")
        return _nishida_series_defect(x, D)
    raise ValueError(f"unknown series {which!r}")


def _nishida_series_defect(x: Element, D: int):
    from .nishida import act_d

    p = x.p
    flavor = x.flavor
    zero = Element.zero(flavor, p)
    lhs: Dict[Tuple[int, int], Element] = {}
    for r in range(0, D + 1, p - 1):
        for s in range(0, D - r + 1):
            if flavor.legal(s):
                y = act_d(r // (p - 1), Element.monomial((s,), flavor, p) * x)
                if y:
                    lhs[(r, s)] = y
    u, v = uv(p)
    outer = phi(v, u)
    inner = phi(u, v).pow(p - 1)
    rhs: Dict[Tuple[int, int], Element] = {}
    pw_b = PolyFp.constant(1, 2, p)
    b = 0
    while b * p <= D:
        gen_b = Element.monomial((b,), flavor, p)
        pw_k = PolyFp.constant(1, 2, p)
        k = 0
        while b * p + k * p * (p - 1) <= D:
            acted = act_d(k, x)
            if gen_b and acted:
                term = gen_b * acted
                for rs, c in pw_b.mul(pw_k, D).terms.items():
                    rhs[rs] = rhs.get(rs, zero) + term.scale(c)
            k += 1
            pw_k = pw_k.mul(inner, D)
        b += 1
        pw_b = pw_b.mul(outer, D)
    keys = sorted(set(lhs) | set(rhs), key=lambda rs: (sum(rs), rs))
    out = []
    for rs in keys:
        d = lhs.get(rs, zero) - rhs.get(rs, zero)
        if d:
            out.append((rs, d))
    return out


# ---------------------------------------------------------------------------
# the shift map used in the redundancy argument for admissible relations


def eta(x: Element) -> Element:
    """Linear map e_i e_j -> e_{i+p-1} e_j + e_{i-(p-1)^2} e_{j+p-1} on length 2."""
    if x.flavor.family == "plain":
        raise FlavorError("eta is defined on the hat and tilde families")
    p = x.p
    acc: Dict[Monomial, int] = {}
    for m, c in x.terms.items():
        if len(m) != 2:
            raise ValueError("eta is defined on length-2 elements only")
        i, j = m
        for img in ((i + p - 1, j), (i - (p - 1) ** 2, j + p - 1)):
            if min(img) >= 0:
                acc[img] = acc.get(img, 0) + c
    return Element(acc, x.flavor, p)


def theta_pairs(i: int, j: int, flavor: Flavor, p: int) -> List[Tuple[Monomial, int]]:
    """Flavor-legal terms of the relation right side, as (pair, coeff)."""
    if flavor.family == "plain":
        return list(theta_d_terms(i, j, p))
    return [(m, c) for m, c in theta_terms(i, j, p) if all(flavor.legal(a) for a in m)]
