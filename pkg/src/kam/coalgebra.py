"""
The diagonal Delta(e_i) = sum_a e_a (x) e_{i-a}, extended multiplicatively,
and the primitives of each length component relative to the grouplike
e_0^n.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Dict, List, Tuple

from .core import Element, Flavor, FlavorError, Monomial, check_prime, enumerate_basis_monomials
from .linalg import sparse_kernel
from .quotient import admissible_basis, normalize, reduce_oracle

Pair = Tuple[Monomial, Monomial]


class TensorElement:
    """Finite sum of c * (a (x) b) with a, b monomials of one flavor."""

    __slots__ = ("terms", "flavor", "p")

    def __init__(self, terms: Dict[Pair, int], flavor: Flavor, p: int):
        self.flavor = flavor
        self.p = p
        self.terms = {k: c % p for k, c in terms.items() if c % p}

    @classmethod
    def zero(cls, flavor, p):
        return cls({}, flavor, p)

    @classmethod
    def tensor(cls, x: Element, y: Element) -> "TensorElement":
        x._check(y)
        out: Dict[Pair, int] = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                out[(a, b)] = out.get((a, b), 0) + ca * cb
        return cls(out, x.flavor, x.p)

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return TensorElement(t, self.flavor, self.p)

    def __neg__(self):
        return TensorElement({k: -c for k, c in self.terms.items()}, self.flavor, self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorElement({k: v * c for k, v in self.terms.items()}, self.flavor, self.p)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """(a (x) b)(c (x) d) = ac (x) bd."""
        out: Dict[Pair, int] = {}
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in other.terms.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + c1 * c2
        return TensorElement(out, self.flavor, self.p)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.p == other.p and self.flavor == other.flavor and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def map_legs(self, f, g=None) -> "TensorElement":
        """Apply linear maps Element -> Element to the two legs."""
        g = g or f
        out: Dict[Pair, int] = {}
        cache_f: Dict[Monomial, Element] = {}
        cache_g: Dict[Monomial, Element] = {}
        for (a, b), c in self.terms.items():
            if a not in cache_f:
                cache_f[a] = f(Element._raw({a: 1}, self.flavor, self.p))
            if b not in cache_g:
                cache_g[b] = g(Element._raw({b: 1}, self.flavor, self.p))
            for ma, ca in cache_f[a].terms.items():
                for mb, cb in cache_g[b].terms.items():
                    out[(ma, mb)] = out.get((ma, mb), 0) + c * ca * cb
        flavor = (f(Element.zero(self.flavor, self.p))).flavor
        return TensorElement(out, flavor, self.p)

    def __str__(self):
        if not self.terms:
            return "0"
        L = self.flavor.letter
        word = lambda m: " ".join(f"{L}{i}" for i in m) or "1"
        return " + ".join(
            (f"{c} " if c != 1 else "") + f"{word(a)} (x) {word(b)}"
            for (a, b), c in sorted(self.terms.items())
        )

    __repr__ = __str__


def _split_monomial(m: Monomial, flavor: Flavor):
    step = 2 if flavor.family == "tilde" else 1
    ranges = [range(0, i + 1, step) for i in m]
    for left in cartesian(*ranges):
        yield left, tuple(i - a for i, a in zip(m, left))


def diagonal(x: Element) -> TensorElement:
    """Delta, with flavor-illegal splittings dropped (tilde: both parts even)."""
    out: Dict[Pair, int] = {}
    for m, c in x.terms.items():
        if any(i < 0 for i in m):
            raise FlavorError("diagonal expects nonnegative subscripts")
        for a, b in _split_monomial(m, x.flavor):
            out[(a, b)] = out.get((a, b), 0) + c
    return TensorElement(out, x.flavor, x.p)


def reduce_legs(T: TensorElement, method: str = "rewrite") -> TensorElement:
    """Reduce both tensor legs to quotient normal form."""
    f = normalize if method == "rewrite" else reduce_oracle
    return T.map_legs(f)


def grouplike(flavor: Flavor, n: int, p: int) -> Element:
    return Element.monomial((0,) * n, flavor, p)


def component_basis(flavor: Flavor, n: int, t: int, p: int) -> List[Monomial]:
    if flavor.quotiented:
        return admissible_basis(flavor, n, t, p)
    return enumerate_basis_monomials(flavor, n, t, p)


def primitives_in_degree(flavor: Flavor, n: int, t: int, p: int, method: str = "rewrite") -> List[Element]:
    """Basis of {x : Delta x = x (x) g + g (x) x} in bidegree (n, t), g = e_0^n.

    The basis is in reduced echelon form over the component basis, so each
    vector has leading coefficient 1.
    """
    basis = component_basis(flavor, n, t, p)
    if not basis:
        return []
    g = (0,) * n
    columns = []
    for m in basis:
        x = Element._raw({m: 1}, flavor, p)
        D = diagonal(x.with_flavor(flavor.free()))
        if flavor.quotiented:
            D = reduce_legs(D, method)
        defect = dict(D.terms)
        for key in ((m, g), (g, m)):
            defect[key] = (defect.get(key, 0) - 1) % p
        columns.append({k: c for k, c in defect.items() if c})
    kernel = sparse_kernel(columns, p)
    return [
        Element({basis[c]: int(v) for c, v in enumerate(row) if v}, flavor, p)
        for row in kernel
    ]


def primitives(flavor: Flavor, n: int, t_max: int, p: int, method: str = "rewrite"):
    """[(t, [primitive basis])] for 0 < t <= t_max, only degrees with primitives.

    The grouplike e_0^n (degree 0) is not primitive in odd characteristic and
    is available separately from :func:`grouplike`.
    """
    check_prime(p)
    if n < 1:
        raise ValueError("primitives are computed for length n >= 1")
    step = 2 * flavor.step(p) * (2 if flavor.family == "tilde" else 1)
    out = []
    for t in range(step, t_max + 1, step):
        prims = primitives_in_degree(flavor, n, t, p, method)
        if prims:
            out.append((t, prims))
    return out


def expected_primitives(flavor: Flavor, n: int, p: int) -> List[Element]:
    """The primitive monomials expected in each component, grouplike included."""
    fam = flavor.family
    e0 = lambda a: (0,) * a
    if not flavor.quotiented:
        gen = {"hat": 1, "tilde": 2, "plain": 1}[fam]
        mons = [e0(n)] + [e0(a) + (gen,) + e0(n - a - 1) for a in range(n)]
    elif fam == "tilde":
        mons = [(2,) * n] + [e0(a) + (p - 1,) * (n - a) for a in range(1, n + 1)]
    elif fam == "plain":
        mons = [e0(a) + (1,) * (n - a) for a in range(n + 1)]
    else:
        raise FlavorError("no primitive list is recorded for the hat quotient")
    uniq = sorted(set(mons))
    return [Element.monomial(m, flavor, p) for m in uniq]
