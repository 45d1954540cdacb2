"""
Quotients by the Adem relations.

Two independent routes to the normal form of an element:

* ``reduce_oracle`` builds, for each bidegree, the span of every embedded
  relation x . Theta(i, j) . y with i, j >= 0, echelonizes it over F_p and
  reduces modulo that span.
* ``normalize`` rewrites: it kills products that vanish in the quotient
  (odd subscripts, adjacent subscripts incongruent mod p - 1) and replaces
  the leftmost inadmissible pair e_i e_j, i > j, by theta(i, j).  Each
  rewrite strictly increases the subscript sequence read right to left, so
  it terminates; a step budget with fallback to the oracle guards anyway.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

from .core import (
    Element,
    Flavor,
    FlavorError,
    Monomial,
    ResourceLimitError,
    check_prime,
    enumerate_basis_monomials,
    top_degree,
)
from .linalg import Echelon
from .relations import full_relation, theta_pairs

log = logging.getLogger(__name__)

MAX_COMPONENT_DIM = 50000
BUDGET_FACTOR = 10


def is_basis_monomial(m: Monomial, family: str, p: int) -> bool:
    """Whether m belongs to the admissible basis of the quotient.

    tilde (and hat in lengths >= 2): even, nondecreasing, consecutive
    subscripts congruent mod p - 1.  plain: nondecreasing.  hat in length
    <= 1: everything.
    """
    if any(a > b for a, b in zip(m, m[1:])):
        return False
    if family == "plain":
        return True
    if family == "hat" and len(m) <= 1:
        return True
    if any(i % 2 for i in m):
        return False
    return all((b - a) % (p - 1) == 0 for a, b in zip(m, m[1:]))


def admissible_basis(flavor: Flavor, n: int, t: int, p: int) -> List[Monomial]:
    """Monomials of the quotient basis in bidegree (n, t), lexicographic order."""
    check_prime(p)
    free = flavor.free()
    return [m for m in enumerate_basis_monomials(free, n, t, p) if is_basis_monomial(m, flavor.family, p)]


def _killed(m: Monomial, family: str, p: int) -> bool:
    if family == "plain" or len(m) < 2:
        return False
    if any(i % 2 for i in m):
        return True
    return any((a - b) % (p - 1) for a, b in zip(m, m[1:]))


class RelationSpace:
    """Echelonized span of the Adem relations in one bidegree."""

    def __init__(self, flavor: Flavor, n: int, t: int, p: int):
        self.flavor = flavor.quotient()
        self.n, self.t, self.p = n, t, p
        free = flavor.free()
        mons = enumerate_basis_monomials(free, n, t, p)
        if len(mons) > MAX_COMPONENT_DIM:
            raise ResourceLimitError(f"component ({n}, {t}) has dimension {len(mons)}")
        fam = flavor.family
        # non-basis monomials first, so pivots land on them whenever the
        # admissibles really form a basis
        mons.sort(key=lambda m: (is_basis_monomial(m, fam, p), m))
        self.monomials: List[Monomial] = mons
        self.index: Dict[Monomial, int] = {m: k for k, m in enumerate(mons)}
        self.echelon = Echelon(p)
        for m in enumerate_basis_monomials(free, n, t, p):
            for pos in range(n - 1):
                row = self._embedded_relation(m, pos)
                if row:
                    self.echelon.add(row)
        pivots = set(self.echelon.rows)
        self.complement: List[Monomial] = sorted(
            m for k, m in enumerate(mons) if k not in pivots
        )

    def _embedded_relation(self, m: Monomial, pos: int) -> Dict[int, int]:
        i, j = m[pos], m[pos + 1]
        pre, post = m[:pos], m[pos + 2:]
        row = {self.index[m]: 1}
        for pair, c in theta_pairs(i, j, self.flavor, self.p):
            k = self.index[pre + pair + post]
            row[k] = (row.get(k, 0) - c) % self.p
        return {k: c for k, c in row.items() if c}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def rows(self) -> List[Element]:
        """The echelon rows as elements of the free algebra."""
        free = self.flavor.free()
        return [
            Element({self.monomials[k]: c for k, c in row.items()}, free, self.p)
            for _, row in sorted(self.echelon.rows.items())
        ]

    def reduce_terms(self, terms: Dict[Monomial, int]) -> Dict[Monomial, int]:
        vec = {self.index[m]: c for m, c in terms.items()}
        return {self.monomials[k]: c for k, c in self.echelon.reduce(vec).items()}


@lru_cache(maxsize=None)
def _relation_space(family: str, n: int, t: int, p: int) -> RelationSpace:
    return RelationSpace(Flavor(family, True), n, t, p)


def relation_space(flavor: Flavor, n: int, t: int, p: int) -> RelationSpace:
    check_prime(p)
    return _relation_space(flavor.family, n, t, p)


def _split(x: Element) -> Dict[Tuple[int, int], Dict[Monomial, int]]:
    out: Dict[Tuple[int, int], Dict[Monomial, int]] = {}
    for m, c in x.terms.items():
        out.setdefault((len(m), top_degree(m, x.p, x.flavor)), {})[m] = c
    return out


def reduce_oracle(x: Element) -> Element:
    """Canonical representative of x in the quotient, by linear algebra."""
    fam, p = x.flavor.family, x.p
    acc: Dict[Monomial, int] = {}
    for (n, t), terms in _split(x).items():
        acc.update(_relation_space(fam, n, t, p).reduce_terms(terms))
    return Element(acc, x.flavor.quotient(), p)


# ---------------------------------------------------------------------------
# rewriting


class _Abort(Exception):
    pass


@lru_cache(maxsize=None)
def _component_dim(family: str, n: int, t: int, p: int) -> int:
    return len(enumerate_basis_monomials(Flavor(family), n, t, p))


_nf_cache: Dict[Tuple[str, int], Dict[Monomial, Dict[Monomial, int]]] = {}


def _expand(m: Monomial, family: str, flavor: Flavor, p: int):
    """None if m is terminal, else the (coeff, monomial) list it rewrites to."""
    for pos in range(len(m) - 1):
        if m[pos] > m[pos + 1]:
            pre, post = m[:pos], m[pos + 2:]
            return [(c, pre + pair + post) for pair, c in theta_pairs(m[pos], m[pos + 1], flavor, p)]
    return None


def _rewrite_monomial(m: Monomial, family: str, p: int) -> Dict[Monomial, int]:
    cache = _nf_cache.setdefault((family, p), {})
    if m in cache:
        return cache[m]
    flavor = Flavor(family, True)
    budget = BUDGET_FACTOR * max(1, _component_dim(family, len(m), top_degree(m, p, flavor), p))
    steps = 0
    stack = [m]
    on_stack = {m}
    expansions: Dict[Monomial, list] = {}
    while stack:
        cur = stack[-1]
        if cur in cache:
            stack.pop()
            on_stack.discard(cur)
            continue
        if _killed(cur, family, p):
            cache[cur] = {}
            continue
        if cur not in expansions:
            exp = _expand(cur, family, flavor, p)
            if exp is None:
                cache[cur] = {cur: 1}
                continue
            steps += 1
            if steps > budget:
                raise _Abort(f"step budget {budget} exceeded")
            expansions[cur] = exp
        exp = expansions[cur]
        missing = [ch for _, ch in exp if ch not in cache]
        if missing:
            for ch in missing:
                if ch in on_stack:
                    raise _Abort(f"rewriting cycle through {ch}")
                stack.append(ch)
                on_stack.add(ch)
            continue
        acc: Dict[Monomial, int] = {}
        for c, ch in exp:
            for mm, cc in cache[ch].items():
                acc[mm] = (acc.get(mm, 0) + c * cc) % p
        cache[cur] = {mm: cc for mm, cc in acc.items() if cc}
    return cache[m]


def normalize(x: Element) -> Element:
    """Normal form of x in the quotient by rewriting (falls back to the oracle)."""
    fam, p = x.flavor.family, x.p
    if any(i < 0 for m in x.terms for i in m):
        raise FlavorError("normalize expects nonnegative subscripts")
    acc: Dict[Monomial, int] = {}
    for m, c in x.terms.items():
        try:
            nf = _rewrite_monomial(m, fam, p)
        except _Abort as exc:
            log.warning("rewriting %s (%s, p=%d) fell back to the oracle: %s", m, fam, p, exc)
            nf = reduce_oracle(Element._raw({m: 1}, x.flavor, p)).terms
            _nf_cache[(fam, p)][m] = dict(nf)
        for mm, cc in nf.items():
            acc[mm] = (acc.get(mm, 0) + c * cc) % p
    return Element(acc, x.flavor.quotient(), p)


def check_negative_redundancy(i: int, j: int, flavor: Flavor, p: int) -> bool:
    """True iff the full relation Theta(i, j) already vanishes in the quotient."""
    return not reduce_oracle(full_relation(i, j, flavor.free(), p))
