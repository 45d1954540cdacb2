"""
Commutative multivariate polynomials over F_p, stored as
{exponent tuple: coefficient}.  Each variable has topological degree 2.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Dict, Sequence, Tuple

Exps = Tuple[int, ...]


class PolyFp:
    __slots__ = ("terms", "nvars", "p")

    def __init__(self, terms: Dict[Exps, int], nvars: int, p: int):
        self.nvars = nvars
        self.p = p
        self.terms = {}
        for e, c in terms.items():
            c %= p
            if c:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                self.terms[e] = c

    @classmethod
    def _raw(cls, terms, nvars, p):
        f = object.__new__(cls)
        f.terms = terms
        f.nvars = nvars
        f.p = p
        return f

    @classmethod
    def constant(cls, c: int, nvars: int, p: int) -> "PolyFp":
        return cls({(0,) * nvars: c}, nvars, p)

    @classmethod
    def var(cls, k: int, nvars: int, p: int) -> "PolyFp":
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): 1}, nvars, p)

    @classmethod
    def linear(cls, coeffs: Sequence[int], p: int) -> "PolyFp":
        n = len(coeffs)
        terms = {}
        for k, c in enumerate(coeffs):
            e = [0] * n
            e[k] = 1
            terms[tuple(e)] = c
        return cls(terms, n, p)

    def _same(self, other):
        if other.nvars != self.nvars or other.p != self.p:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = PolyFp.constant(other, self.nvars, self.p)
        self._same(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = (t.get(e, 0) + c) % self.p
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return PolyFp._raw(t, self.nvars, self.p)

    __radd__ = __add__

    def __neg__(self):
        return PolyFp._raw({e: self.p - c for e, c in self.terms.items()}, self.nvars, self.p)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def mul(self, other: "PolyFp", max_degree: int = None) -> "PolyFp":
        if isinstance(other, int):
            return PolyFp({e: c * other for e, c in self.terms.items()}, self.nvars, self.p)
        self._same(other)
        p = self.p
        out: Dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if max_degree is not None and d1 + sum(e2) > max_degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        return PolyFp._raw({e: c for e, c in out.items() if c}, self.nvars, p)

    __mul__ = mul

    def __rmul__(self, other):
        return self.mul(other)

    def pow(self, k: int, max_degree: int = None) -> "PolyFp":
        result = PolyFp.constant(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                result = result.mul(base, max_degree)
            k >>= 1
            if k:
                base = base.mul(base, max_degree)
        return result

    def __pow__(self, k: int):
        return self.pow(k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyFp.constant(other, self.nvars, self.p)
        if not isinstance(other, PolyFp):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def top_degree(self) -> int:
        """Topological degree of a homogeneous polynomial (variables in degree 2)."""
        return 2 * self.degree()

    def homogeneous_part(self, d: int) -> "PolyFp":
        return PolyFp._raw({e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars, self.p)

    def coefficient(self, e: Exps) -> int:
        return self.terms.get(tuple(e), 0)

    def substitute(self, images: Sequence["PolyFp"]) -> "PolyFp":
        """Ring map sending variable k to images[k]."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0]
        powers = [{0: PolyFp.constant(1, target.nvars, target.p)} for _ in images]

        def power(k, a):
            cache = powers[k]
            if a not in cache:
                cache[a] = power(k, a - 1).mul(images[k])
            return cache[a]

        out = PolyFp({}, target.nvars, target.p)
        for e, c in self.terms.items():
            term = PolyFp.constant(c, target.nvars, target.p)
            for k, a in enumerate(e):
                if a:
                    term = term.mul(power(k, a))
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"t{k + 1}" for k in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def monomials_of_degree(nvars: int, d: int):
    """Exponent tuples of total degree d, in reverse-lex order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            yield (a,) + rest


def all_vectors(n: int, p: int):
    return cartesian(range(p), repeat=n)
