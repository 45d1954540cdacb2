"""
Exact arithmetic mod p and the free bigraded algebras of lower-indexed
operations.

Three families of free algebras are modelled:

    hat    generators e_i, i >= 0
    tilde  generators e_i, i even (quotient of hat by the ideal of odd e_i)
    plain  generators d_i = e_{i(p-1)}, stored by their d-index

Each family also has a "quotiented" flavor in which the Adem relations are
imposed (see kam.quotient).  Monomials are plain tuples of subscripts;
an Element is a finite F_p-linear combination of monomials of one flavor.

The topological degree of e_{i_1}...e_{i_n} is 2 * sum_k p^(k-1) i_k,
the skewed rule |xy| = |x| + p|y| iterated.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

Monomial = Tuple[int, ...]

FAMILIES = ("hat", "tilde", "plain")


class FlavorError(ValueError):
    """Operands of incompatible flavors, or an operation illegal for a flavor."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured size budget."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p!r}")
    return p


# ---------------------------------------------------------------------------
# binomial coefficients mod p


def _lucas(m: int, n: int, p: int) -> int:
    out = 1
    while n:
        mi, ni = m % p, n % p
        if ni > mi:
            return 0
        out = out * comb(mi, ni) % p
        m //= p
        n //= p
    return out


def binom_mod_p(M: int, N: int, p: int) -> int:
    """C(M, N) mod p for arbitrary integer M and N.

    C(M, N) = 0 for N < 0.  A negative numerator uses
    C(M, N) = (-1)^N C(N - M - 1, N), so the value is the coefficient of
    x^N in (1 + x)^M for every integer M.  The nonnegative case goes
    through Lucas' theorem.
    """
    if N < 0:
        return 0
    if M < 0:
        v = _lucas(N - M - 1, N, p)
        return (-v) % p if N % 2 else v
    if N > M:
        return 0
    return _lucas(M, N, p)


# ---------------------------------------------------------------------------
# flavors


@dataclass(frozen=True)
class Flavor:
    family: str
    quotiented: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FlavorError(f"unknown family {self.family!r}")

    @property
    def name(self) -> str:
        base = {"hat": "hat", "tilde": "tilde", "plain": ""}[self.family]
        letter = "K" if self.quotiented else "U"
        return base + letter

    @classmethod
    def parse(cls, name: str) -> "Flavor":
        try:
            return _FLAVOR_NAMES[name]
        except KeyError:
            raise FlavorError(
                f"unknown flavor {name!r}; expected one of {sorted(_FLAVOR_NAMES)}"
            ) from None

    def free(self) -> "Flavor":
        return Flavor(self.family, False)

    def quotient(self) -> "Flavor":
        return Flavor(self.family, True)

    @property
    def letter(self) -> str:
        return "d" if self.family == "plain" else "e"

    def legal(self, i: int) -> bool:
        if i < 0:
            return False
        return self.family != "tilde" or i % 2 == 0

    def step(self, p: int) -> int:
        """Multiplier turning a stored subscript into an e-subscript."""
        return p - 1 if self.family == "plain" else 1

    def __str__(self):
        return self.name


HAT_U = Flavor("hat")
TILDE_U = Flavor("tilde")
U = Flavor("plain")
HAT_K = Flavor("hat", True)
TILDE_K = Flavor("tilde", True)
K = Flavor("plain", True)

_FLAVOR_NAMES = {f.name: f for f in (HAT_U, TILDE_U, U, HAT_K, TILDE_K, K)}


# ---------------------------------------------------------------------------
# monomials


def top_degree(m: Monomial, p: int, flavor: Flavor = HAT_U) -> int:
    """Topological degree 2 * sum p^(k-1) i_k (d-indices scaled by p - 1)."""
    s = 0
    for i in reversed(m):
        s = s * p + i
    return 2 * s * flavor.step(p)


def excess_admissible(m: Monomial):
    """Return (admissible, excess); excess is j - i for admissible e_i e_j,
    None otherwise."""
    admissible = all(a <= b for a, b in zip(m, m[1:]))
    excess = m[1] - m[0] if admissible and len(m) == 2 else None
    return admissible, excess


def monomial_key(m: Monomial, p: int, flavor: Flavor = HAT_U):
    """Deterministic order: by length, then topological degree, then lex."""
    return (len(m), top_degree(m, p, flavor), m)


def _weighted_sequences(n: int, s: int, p: int, ok) -> Iterator[Monomial]:
    # sequences of length n with sum_k p^(k-1) i_k == s, lexicographic order
    if n == 0:
        if s == 0:
            yield ()
        return
    if n == 1:
        if ok(s):
            yield (s,)
        return
    for i in range(s % p, s + 1, p):
        if not ok(i):
            continue
        for rest in _weighted_sequences(n - 1, (s - i) // p, p, ok):
            yield (i,) + rest


def enumerate_basis_monomials(flavor: Flavor, n: int, t: int, p: int) -> List[Monomial]:
    """All flavor-legal monomials of length n and topological degree t,
    in lexicographic order of their subscript sequences."""
    if n < 0 or t < 0 or t % 2:
        return []
    s = t // 2
    if flavor.family == "plain":
        if s % (p - 1):
            return []
        s //= p - 1
    return list(_weighted_sequences(n, s, p, flavor.legal))


# ---------------------------------------------------------------------------
# elements


class Element:
    """A finite F_p-linear combination of monomials of one flavor.

    ``terms`` maps subscript tuples to residues in 1..p-1.  Elements are
    treated as immutable.
    """

    __slots__ = ("terms", "flavor", "p")

    def __init__(self, terms: Mapping[Monomial, int], flavor: Flavor, p: int):
        check_prime(p)
        clean: Dict[Monomial, int] = {}
        for m, c in terms.items():
            m = tuple(m)
            if not all(flavor.legal(i) for i in m):
                continue
            c %= p
            if c:
                clean[m] = (clean.get(m, 0) + c) % p
                if not clean[m]:
                    del clean[m]
        self.terms = clean
        self.flavor = flavor
        self.p = p

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int], flavor: Flavor, p: int) -> "Element":
        # trusted constructor: terms already legal, reduced and nonzero
        x = object.__new__(cls)
        x.terms = terms
        x.flavor = flavor
        x.p = p
        return x

    @classmethod
    def zero(cls, flavor: Flavor, p: int) -> "Element":
        return cls._raw({}, flavor, check_prime(p))

    @classmethod
    def one(cls, flavor: Flavor, p: int) -> "Element":
        return cls._raw({(): 1}, flavor, check_prime(p))

    @classmethod
    def monomial(cls, subscripts: Iterable[int], flavor: Flavor, p: int, coeff: int = 1) -> "Element":
        """The monomial with the given subscripts; zero if any is illegal."""
        return cls({tuple(subscripts): coeff}, flavor, p)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Monomial, int]], flavor: Flavor, p: int) -> "Element":
        acc: Dict[Monomial, int] = {}
        for m, c in pairs:
            acc[m] = acc.get(m, 0) + c
        return cls(acc, flavor, p)

    # -- inspection --

    def __iter__(self):
        """(monomial, coefficient) pairs in the deterministic order."""
        keyed = sorted(self.terms, key=lambda m: monomial_key(m, self.p, self.flavor))
        return ((m, self.terms[m]) for m in keyed)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, m):
        return self.terms.get(tuple(m), 0)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self]

    def bidegrees(self):
        return sorted({(len(m), top_degree(m, self.p, self.flavor)) for m in self.terms})

    def homogeneous_components(self) -> Dict[Tuple[int, int], "Element"]:
        out: Dict[Tuple[int, int], Dict[Monomial, int]] = {}
        for m, c in self.terms.items():
            out.setdefault((len(m), top_degree(m, self.p, self.flavor)), {})[m] = c
        return {bd: Element._raw(t, self.flavor, self.p) for bd, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    # -- arithmetic --

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.flavor != self.flavor or other.p != self.p:
            raise FlavorError(
                f"flavor mismatch: {self.flavor}/p={self.p} vs {other.flavor}/p={other.p}"
            )

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        p = self.p
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Element._raw(t, self.flavor, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Element._raw({m: p - c for m, c in self.terms.items()}, self.flavor, p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "Element":
        c %= self.p
        if not c:
            return Element.zero(self.flavor, self.p)
        return Element._raw({m: v * c % self.p for m, v in self.terms.items()}, self.flavor, self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.p == other.p and self.flavor == other.flavor and self.terms == other.terms

    __hash__ = None

    def with_flavor(self, flavor: Flavor) -> "Element":
        """Reinterpret the same terms in another flavor of the same family."""
        if flavor.family != self.flavor.family:
            raise FlavorError(f"cannot relabel {self.flavor} as {flavor}")
        return Element._raw(dict(self.terms), flavor, self.p)

    # -- printing --

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Element({render(self)!r}, {self.flavor.name}, p={self.p})"


def render(x: Element) -> str:
    """Text form parseable by kam.cli.parse_expression."""
    if not x.terms:
        return "0"
    parts = []
    letter = x.flavor.letter
    for m, c in x:
        word = " ".join(f"{letter}{i}" for i in m)
        if not m:
            parts.append(str(c))
        elif c == 1:
            parts.append(word)
        else:
            parts.append(f"{c} {word}")
    return " + ".join(parts)


def multiply(x: Element, y: Element) -> Element:
    """Free (concatenation) product; no relations are applied."""
    x._check(y)
    p = x.p
    out: Dict[Monomial, int] = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            m = a + b
            out[m] = (out.get(m, 0) + ca * cb) % p
    return Element._raw({m: c for m, c in out.items() if c}, x.flavor, p)


# ---------------------------------------------------------------------------
# changes of family


def project(x: Element, family: str) -> Element:
    """Image of a hat element in the tilde or plain quotient (or identity).

    Monomials containing a generator outside the target family go to zero;
    plain subscripts are converted to d-indices.
    """
    if x.flavor.family != "hat":
        if x.flavor.family == family:
            return x
        raise FlavorError(f"can only project from hat, not {x.flavor}")
    flavor = Flavor(family, x.flavor.quotiented)
    p = x.p
    if family == "hat":
        return x
    out = {}
    for m, c in x.terms.items():
        if family == "tilde":
            if all(i % 2 == 0 for i in m):
                out[m] = c
        elif all(i % (p - 1) == 0 for i in m):
            out[tuple(i // (p - 1) for i in m)] = c
    return Element._raw(out, flavor, p)


def embed(x: Element) -> Element:
    """Write a tilde or plain element with hat subscripts (e_i, any i)."""
    f = x.flavor
    s = f.step(x.p)
    terms = {tuple(i * s for i in m): c for m, c in x.terms.items()}
    return Element._raw(terms, Flavor("hat", f.quotiented), x.p)


# ---------------------------------------------------------------------------
# endomorphisms

ENDOMORPHISMS = ("alpha-hat", "alpha-tilde", "alpha", "kappa", "verschiebung")

_ALPHA_FAMILY = {"alpha-hat": "hat", "alpha-tilde": "tilde", "alpha": "plain"}


def _map_monomials(x: Element, f) -> Element:
    p = x.p
    out: Dict[Monomial, int] = {}
    for m, c in x.terms.items():
        img = f(m)
        if img is None or not all(x.flavor.legal(i) for i in img):
            continue
        out[img] = (out.get(img, 0) + c) % p
    return Element._raw({m: c for m, c in out.items() if c}, x.flavor, p)


def apply_endo(kind: str, x: Element) -> Element:
    """Apply one of the algebra endomorphisms (or left multiplication by e_0).

    alpha-hat:    e_i -> e_{i-1}        (hat)
    alpha-tilde:  e_i -> e_{i-2}        (tilde)
    alpha:        d_i -> d_{i-1}        (plain)
    kappa:        x -> e_0 x            (any)
    verschiebung: e_i -> e_{i/p}, zero unless p | i (any)
    """
    if kind in _ALPHA_FAMILY:
        if x.flavor.family != _ALPHA_FAMILY[kind]:
            raise FlavorError(f"{kind} is not defined on {x.flavor}")
        shift = 2 if kind == "alpha-tilde" else 1
        return _map_monomials(x, lambda m: tuple(i - shift for i in m))
    if kind == "kappa":
        return _map_monomials(x, lambda m: (0,) + m)
    if kind == "verschiebung":
        p = x.p

        def v(m):
            if any(i % p for i in m):
                return None
            return tuple(i // p for i in m)

        return _map_monomials(x, v)
    raise ValueError(f"unknown endomorphism {kind!r}; expected one of {ENDOMORPHISMS}")
