"""
The Nishida action of U^op (and K^op) on the free algebras:

    d_i * 1       = 1 if i = 0 else 0
    d_i * e_j e_L = sum_k (-1)^(i-k) C(i + (j-i)/p, i-k) e_{i+(j-i)/p-(p-1)k} (d_k * e_L)

with the whole clause zero unless p divides j - i.  The action is computed
on e-subscripts; tilde and plain elements are embedded in hat and the
result projected back.  For words, the leftmost d acts first.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Tuple

from .core import Element, Flavor, FlavorError, Monomial, binom_mod_p, embed, project
from .quotient import normalize, reduce_oracle


@lru_cache(maxsize=None)
def _act_monomial(i: int, m: Monomial, p: int) -> Tuple[Tuple[Monomial, int], ...]:
    if i < 0:
        return ()
    if not m:
        return (((), 1),) if i == 0 else ()
    j, rest = m[0], m[1:]
    if (j - i) % p:
        return ()
    top = i + (j - i) // p
    acc: Dict[Monomial, int] = {}
    for k in range(0, i + 1):
        b = top - (p - 1) * k
        if b < 0:
            break
        c = binom_mod_p(top, i - k, p)
        if not c:
            continue
        if (i - k) % 2:
            c = p - c
        for tail, c2 in _act_monomial(k, rest, p):
            key = (b,) + tail
            acc[key] = (acc.get(key, 0) + c * c2) % p
    return tuple((mm, c) for mm, c in sorted(acc.items()) if c)


def act_d(i: int, x: Element) -> Element:
    """d_i * x.  On quotient flavors the result is normalized."""
    p = x.p
    if any(a < 0 for m in x.terms for a in m):
        raise FlavorError("the action expects nonnegative subscripts")
    if i < 0:
        return Element.zero(x.flavor, p)
    hat = embed(x) if x.flavor.family != "hat" else x
    acc: Dict[Monomial, int] = {}
    for m, c in hat.terms.items():
        for mm, cc in _act_monomial(i, m, p):
            acc[mm] = acc.get(mm, 0) + c * cc
    out = Element(acc, Flavor("hat", x.flavor.quotiented), p)
    out = project(out, x.flavor.family)
    if x.flavor.quotiented:
        out = normalize(out)
    return out


def act_word(w: Iterable[int], x: Element) -> Element:
    """(d_{i_1} ... d_{i_m}) * x = d_{i_m} * ( ... (d_{i_1} * x))."""
    for i in w:
        x = act_d(i, x)
    return x


def act_element(op: Element, x: Element) -> Element:
    """Linear extension of act_word over an element of U (d-indices)."""
    if op.flavor.family != "plain":
        raise FlavorError("the acting element must be written in the d_i")
    out = Element.zero(x.flavor, x.p)
    for w, c in op.terms.items():
        out = out + act_word(w, x).scale(c)
    return out


def check_descent(x_relation: Element, i: int) -> bool:
    """True iff d_i * x_relation vanishes in the quotient."""
    return not reduce_oracle(act_d(i, x_relation.with_flavor(x_relation.flavor.free())))


def steenrod_P_dual(j: int, f):
    """P^j on a dual element f of degree 2q: (P^j f)(x) = (-1)^(q-j) f(d_{q-j} * x)."""
    from .dual import DualElement, dual_basis

    p = f.p
    if f.t % 2:
        raise ValueError("dual elements live in even degrees")
    q = f.t // 2
    t_out = f.t + 2 * (p - 1) * j
    coeffs = {}
    if 0 <= j <= q:
        sign = -1 if (q - j) % 2 else 1
        for m in dual_basis(f.flavor, f.n, t_out, p):
            y = act_d(q - j, Element._raw({m: 1}, f.flavor.free(), p))
            v = f.evaluate(y) * sign % p
            if v:
                coeffs[m] = v
    return DualElement(f.flavor, f.n, t_out, p, coeffs)
