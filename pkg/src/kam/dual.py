"""
Duals of the length-n components and the polynomial invariants they are
compared with.

A DualElement is a linear functional on one bidegree (n, t), stored by its
values on the monomial basis (free flavors) or on the admissible basis
(quotient flavors).  The product is the convolution dual to Delta.

On the invariant side, S = F_p[t_1, ..., t_n] with every t_i in degree 2
and matrices acting by t_j -> sum_i g_ij t_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np

from .coalgebra import diagonal, reduce_legs
from .core import (
    TILDE_K,
    TILDE_U,
    Element,
    Flavor,
    FlavorError,
    Monomial,
    ResourceLimitError,
    binom_mod_p,
    check_prime,
    enumerate_basis_monomials,
    top_degree,
)
from .linalg import nullspace_mod_p
from .polynomial import PolyFp, all_vectors, monomials_of_degree
from .quotient import admissible_basis, normalize, relation_space

MAX_FIXED_SPACE_MONOMIALS = 20000


def dual_basis(flavor: Flavor, n: int, t: int, p: int) -> List[Monomial]:
    if flavor.quotiented:
        return admissible_basis(flavor, n, t, p)
    return enumerate_basis_monomials(flavor, n, t, p)


class DualElement:
    __slots__ = ("flavor", "n", "t", "p", "coeffs")

    def __init__(self, flavor: Flavor, n: int, t: int, p: int, coeffs: Dict[Monomial, int] = None):
        self.flavor, self.n, self.t, self.p = flavor, n, t, p
        allowed = set(dual_basis(flavor, n, t, p))
        self.coeffs = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if m not in allowed:
                raise ValueError(f"{m} is not a basis monomial of {flavor} in bidegree ({n}, {t})")
            if c % p:
                self.coeffs[m] = c % p

    @classmethod
    def of_monomial(cls, m: Monomial, flavor: Flavor, p: int) -> "DualElement":
        """The dual basis vector m^*."""
        return cls(flavor, len(m), top_degree(m, p, flavor), p, {m: 1})

    @classmethod
    def unit(cls, flavor: Flavor, n: int, p: int) -> "DualElement":
        return cls.of_monomial((0,) * n, flavor, p)

    def evaluate(self, x: Element) -> int:
        """Pair with an element (normalized first on quotient flavors)."""
        if x.flavor.family != self.flavor.family:
            raise FlavorError("pairing across families")
        if self.flavor.quotiented:
            x = normalize(x.with_flavor(x.flavor.free()))
        return sum(self.coeffs.get(m, 0) * c for m, c in x.terms.items()) % self.p

    def _same(self, other):
        if (self.flavor, self.n, self.p) != (other.flavor, other.n, other.p):
            raise FlavorError("dual elements from different components")

    def __add__(self, other):
        self._same(other)
        if self.t != other.t:
            raise ValueError("adding dual elements of different degrees")
        c = dict(self.coeffs)
        for m, v in other.coeffs.items():
            c[m] = c.get(m, 0) + v
        return DualElement(self.flavor, self.n, self.t, self.p, c)

    def scale(self, c: int) -> "DualElement":
        return DualElement(self.flavor, self.n, self.t, self.p, {m: v * c for m, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return dual_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = DualElement.unit(self.flavor, self.n, self.p)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        return (self.flavor, self.n, self.t, self.p, self.coeffs) == (
            other.flavor, other.n, other.t, other.p, other.coeffs,
        )

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        L = self.flavor.letter
        parts = []
        for m in sorted(self.coeffs):
            w = "(" + " ".join(f"{L}{i}" for i in m) + ")*"
            c = self.coeffs[m]
            parts.append(w if c == 1 else f"{c} {w}")
        return " + ".join(parts)

    __repr__ = __str__


def dual_multiply(f: DualElement, g: DualElement) -> DualElement:
    """(fg)(x) = sum f(x') g(x'') over Delta x = sum x' (x) x''."""
    f._same(g)
    p, flavor, n = f.p, f.flavor, f.n
    t = f.t + g.t
    coeffs = {}
    for m in dual_basis(flavor, n, t, p):
        D = diagonal(Element._raw({m: 1}, flavor.free(), p))
        if flavor.quotiented:
            D = reduce_legs(D)
        v = 0
        for (a, b), c in D.terms.items():
            fa = f.coeffs.get(a)
            if fa:
                gb = g.coeffs.get(b)
                if gb:
                    v += c * fa * gb
        if v % p:
            coeffs[m] = v % p
    return DualElement(flavor, n, t, p, coeffs)


# ---------------------------------------------------------------------------
# named generators


def mui_dual(n: int, a: int, p: int) -> DualElement:
    """v~_{n,a} = (e_0^a e_2 e_0^(n-a-1))^* in the dual of the free tilde algebra."""
    if not 0 <= a < n:
        raise ValueError("need 0 <= a < n")
    return DualElement.of_monomial((0,) * a + (2,) + (0,) * (n - a - 1), TILDE_U, p)


def generator(name: str, n: int, p: int, flavor: Flavor = TILDE_K) -> DualElement:
    """Named generators of the quotient duals.

    tilde quotient: "s" = (e_2^n)^*, "c<a>" = (e_0^a e_{p-1}^(n-a))^*, 0 <= a <= n.
    plain quotient: "c<a>" = (d_0^a d_1^(n-a))^*.
    """
    check_prime(p)
    if name == "s":
        if flavor.family != "tilde":
            raise FlavorError("s is a generator of the tilde quotient dual")
        return DualElement.of_monomial((2,) * n, flavor, p)
    if name.startswith("c") and name[1:].isdigit():
        a = int(name[1:])
        if not 0 <= a <= n:
            raise ValueError(f"c{a} needs 0 <= a <= n")
        top = {"tilde": p - 1, "plain": 1}.get(flavor.family)
        if top is None:
            raise FlavorError(f"no generator {name} for {flavor}")
        return DualElement.of_monomial((0,) * a + (top,) * (n - a), flavor, p)
    raise ValueError(f"unknown generator {name!r}")


def generator_names(n: int, flavor: Flavor = TILDE_K) -> List[str]:
    names = ["s"] if flavor.family == "tilde" else []
    start = 1 if flavor.family == "tilde" else 0
    return names + [f"c{a}" for a in range(start, n)]


# ---------------------------------------------------------------------------
# polynomial invariants


def mui_V(n: int, i: int, p: int) -> PolyFp:
    """V_i = prod over lambda in F_p^(i-1) of (lambda . t + t_i), in n variables."""
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    out = PolyFp.constant(1, n, p)
    for lam in all_vectors(i - 1, p):
        coeffs = list(lam) + [1] + [0] * (n - i)
        out = out * PolyFp.linear(coeffs, p)
    return out


@lru_cache(maxsize=None)
def _dickson_all(n: int, p: int) -> Tuple[PolyFp, ...]:
    # prod_{v in F_p^n} (X - v.t) = sum_i (-1)^(n-i) c_{n,i} X^(p^i)
    out = PolyFp.constant(1, n + 1, p)
    for vec in all_vectors(n, p):
        out = out * PolyFp.linear([-a for a in vec] + [1], p)
    cs = []
    for i in range(n + 1):
        part = {e[:n]: c for e, c in out.terms.items() if e[n] == p ** i}
        c = PolyFp(part, n, p)
        cs.append(-c if (n - i) % 2 else c)
    return tuple(cs)


def dickson_c(n: int, i: int, p: int) -> PolyFp:
    if not 0 <= i <= n:
        raise ValueError("need 0 <= i <= n")
    return _dickson_all(n, p)[i]


def classical_invariants(which: str, n: int, i: int, p: int) -> PolyFp:
    """mui-V: V_i; mui-V-tilde: V_i^2; dickson-c: c_{n,i}; s-tilde: prod_k V_k^2 (i ignored)."""
    check_prime(p)
    if which == "mui-V":
        return mui_V(n, i, p)
    if which == "mui-V-tilde":
        return mui_V(n, i, p).pow(2)
    if which == "dickson-c":
        return dickson_c(n, i, p)
    if which == "s-tilde":
        out = PolyFp.constant(1, n, p)
        for k in range(1, n + 1):
            out = out * mui_V(n, k, p).pow(2)
        return out
    raise ValueError(f"unknown invariant family {which!r}")


GROUP_KINDS = ("unipotent", "upper-pm1", "upper", "sl-pm", "gl")


def primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))):
            return g
    return 1  # p = 2 is never used


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    n: int
    p: int

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise ValueError(f"unknown group {self.kind!r}; expected one of {GROUP_KINDS}")
        check_prime(self.p)

    def generators(self) -> List[Tuple[Tuple[int, ...], ...]]:
        n, p = self.n, self.p

        def eye():
            return [[int(r == c) for c in range(n)] for r in range(n)]

        def freeze(M):
            return tuple(tuple(row) for row in M)

        def transvection(r, c):
            M = eye()
            M[r][c] = 1
            return freeze(M)

        def diag(k, a):
            M = eye()
            M[k][k] = a % p
            return freeze(M)

        if self.kind in ("unipotent", "upper-pm1", "upper"):
            gens = [transvection(r, c) for r in range(n) for c in range(r + 1, n)]
            if self.kind == "upper-pm1":
                gens += [diag(k, -1) for k in range(n)]
            elif self.kind == "upper":
                gens += [diag(k, primitive_root(p)) for k in range(n)]
        else:
            gens = [transvection(r, c) for r in range(n) for c in range(n) if r != c]
            gens.append(diag(0, -1 if self.kind == "sl-pm" else primitive_root(p)))
        return gens


def act_matrix(g, f: PolyFp) -> PolyFp:
    """t_j -> sum_i g_ij t_i."""
    n, p = f.nvars, f.p
    images = [PolyFp.linear([g[i][j] for i in range(n)], p) for j in range(n)]
    return f.substitute(images)


def is_invariant(f: PolyFp, group: GroupSpec) -> bool:
    return all(act_matrix(g, f) == f for g in group.generators())


@lru_cache(maxsize=None)
def fixed_space(group: GroupSpec, d: int) -> Tuple[PolyFp, ...]:
    """A basis of the invariant polynomials of degree d (in the t's)."""
    n, p = group.n, group.p
    mons = list(monomials_of_degree(n, d))
    if len(mons) > MAX_FIXED_SPACE_MONOMIALS:
        raise ResourceLimitError(f"{len(mons)} monomials in degree {d}")
    index = {m: k for k, m in enumerate(mons)}
    B = np.eye(len(mons), dtype=np.int64)  # columns span the current fixed space
    for g in group.generators():
        if B.shape[1] == 0:
            break
        images = [PolyFp.linear([g[i][j] for i in range(n)], p) for j in range(n)]
        M = np.zeros((len(mons), len(mons)), dtype=np.int64)
        for k, m in enumerate(mons):
            img = PolyFp({m: 1}, n, p).substitute(images)
            for e, c in img.terms.items():
                M[index[e], k] = c
            M[k, k] -= 1
        A = (M @ B) % p
        N = nullspace_mod_p(A, p, ncols=B.shape[1])
        B = (B @ N.T) % p
    return tuple(
        PolyFp({mons[r]: int(B[r, c]) for r in range(len(mons)) if B[r, c]}, n, p)
        for c in range(B.shape[1])
    )


def invariant_dimensions(group: GroupSpec, d_max: int) -> List[Tuple[int, int]]:
    """[(topological degree 2d, dim of invariants of t-degree d)] for 2d <= d_max."""
    return [(2 * d, len(fixed_space(group, d))) for d in range(0, d_max // 2 + 1)]


def dual_dimensions(flavor: Flavor, n: int, t_max: int, p: int, method: str = "oracle") -> List[Tuple[int, int]]:
    """Graded dimensions of the length-n component, every even t <= t_max.

    Quotient dimensions come from the relation-space rank (``oracle``) or
    from counting the admissible basis (``basis``).
    """
    out = []
    for t in range(0, t_max + 1, 2):
        if flavor.quotiented and method == "oracle":
            rs = relation_space(flavor, n, t, p)
            out.append((t, rs.dim - rs.rank))
        else:
            out.append((t, len(dual_basis(flavor, n, t, p))))
    return out


# ---------------------------------------------------------------------------
# the Steenrod action on polynomials


def poly_steenrod(k: int, f: PolyFp) -> PolyFp:
    """P^k with P^0 t = t, P^1 t = t^p, extended by the Cartan formula."""
    if k < 0:
        return PolyFp({}, f.nvars, f.p)
    n, p = f.nvars, f.p
    out: Dict[Tuple[int, ...], int] = {}

    def spread(e, left, pos, acc_exp, acc_c):
        if pos == n:
            if left == 0:
                out[acc_exp] = (out.get(acc_exp, 0) + acc_c) % p
            return
        a = e[pos]
        for kk in range(0, min(a, left) + 1):
            c = binom_mod_p(a, kk, p)
            if c:
                spread(e, left - kk, pos + 1, acc_exp + (a + (p - 1) * kk,), acc_c * c)

    for e, c in f.terms.items():
        spread(e, k, 0, (), c)
    return PolyFp(out, n, p)


# ---------------------------------------------------------------------------
# the maps sigma, omega, tau


def sigma_map(f: DualElement) -> DualElement:
    """Dual of the quotient map: (sigma f)(x) = f(normal form of x)."""
    if not f.flavor.quotiented:
        raise FlavorError("sigma starts from a quotient dual")
    free = f.flavor.free()
    coeffs = {}
    for m in enumerate_basis_monomials(free, f.n, f.t, f.p):
        v = f.evaluate(Element._raw({m: 1}, free, f.p))
        if v:
            coeffs[m] = v
    return DualElement(free, f.n, f.t, f.p, coeffs)


def omega_map(f: DualElement) -> PolyFp:
    """(e_{2i_1} ... e_{2i_n})^* -> V~_1^{i_1} ... V~_n^{i_n}."""
    if f.flavor != TILDE_U:
        raise FlavorError("omega is defined on the dual of the free tilde algebra")
    n, p = f.n, f.p
    Vt = [mui_V(n, k, p).pow(2) for k in range(1, n + 1)]
    out = PolyFp({}, n, p)
    for m, c in f.coeffs.items():
        term = PolyFp.constant(c, n, p)
        for k, i in enumerate(m):
            if i:
                term = term * Vt[k].pow(i // 2)
        out = out + term
    return out


def tau_map(name: str, n: int, p: int) -> PolyFp:
    """The classical polynomial of a named generator, viewed in the T~-invariants."""
    if name == "s":
        return classical_invariants("s-tilde", n, 0, p)
    if name.startswith("c"):
        return dickson_c(n, int(name[1:]), p)
    raise ValueError(f"unknown generator {name!r}")


def sigma_closed_form(n: int, i: int, p: int) -> DualElement:
    """sum over 1 <= j_1 < ... < j_{n-i} <= n of the dual monomials
    (prod_s e_0^{j_s - j_{s-1} - 1} e_{(p-1) p^{i+s-j_s}}) e_0^{n - j_{n-i}}."""
    coeffs: Dict[Monomial, int] = {}
    for js in combinations(range(1, n + 1), n - i):
        m = []
        prev = 0
        for s, j in enumerate(js, start=1):
            m += [0] * (j - prev - 1) + [(p - 1) * p ** (i + s - j)]
            prev = j
        m += [0] * (n - prev)
        coeffs[tuple(m)] = coeffs.get(tuple(m), 0) + 1
    t = 2 * (p ** n - p ** i)
    return DualElement(TILDE_U, n, t, p, coeffs)


def commuting_square_report(n: int, p: int, t_max: int = None) -> dict:
    """omega(sigma(g)) versus tau(g) on the generators of the tilde quotient
    dual, plus graded dimensions of the four corners."""
    check_prime(p)
    if t_max is None:
        t_max = 2 * p ** 3
    gens = {}
    for name in generator_names(n):
        g = generator(name, n, p)
        lhs = omega_map(sigma_map(g))
        rhs = tau_map(name, n, p)
        gens[name] = {
            "sigma": str(sigma_map(g)),
            "omega_sigma": str(lhs),
            "tau": str(rhs),
            "tau_invariant_upper_pm1": is_invariant(rhs, GroupSpec("upper-pm1", n, p)),
            "tau_invariant_sl_pm": is_invariant(rhs, GroupSpec("sl-pm", n, p)),
            "equal": lhs == rhs,
        }
    corners = {
        "tildeU*": dual_dimensions(TILDE_U, n, t_max, p),
        "upper-pm1": invariant_dimensions(GroupSpec("upper-pm1", n, p), t_max),
        "tildeK*": dual_dimensions(TILDE_K, n, t_max, p),
        "sl-pm": invariant_dimensions(GroupSpec("sl-pm", n, p), t_max),
    }
    dims_ok = (
        corners["tildeU*"] == corners["upper-pm1"] and corners["tildeK*"] == corners["sl-pm"]
    )
    # whether omega also intertwines the two Steenrod actions on the free
    # dual is not asserted anywhere; the comparison is reported as data
    from .nishida import steenrod_P_dual

    free_steenrod = []
    for a in range(n):
        v = mui_dual(n, a, p)
        for j in range(0, 2 * p ** a + 1):
            lhs = omega_map(steenrod_P_dual(j, v))
            rhs = poly_steenrod(j, omega_map(v))
            free_steenrod.append({"generator": f"v{a}", "j": j, "agree": lhs == rhs})
    return {
        "n": n,
        "prime": p,
        "generators": gens,
        "free_dual_steenrod": free_steenrod,
        "dimensions": corners,
        "dimensions_agree": dims_ok,
        "commutes": all(v["equal"] for v in gens.values()),
    }
