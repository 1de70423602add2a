"""Gamma-rings in the sense of Barnes: carriers, triple products, ideals, unities.

A ``GammaRing`` pairs two finite abelian groups ``carrier`` (R) and ``gamma``
with a rule ``(x, a, y) -> x a y``.  The rule is always evaluated lazily; the
dense index table is materialized only on demand for vectorized scans.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, NamedTuple

import numpy as np

from .abelian import (
    AbelianGroup,
    FiniteAbelianGroup,
    FiniteSemigroup,
    ProductGroup,
    QuotientGroup,
    Subgroup,
    cyclic_decomposition,
    segment_monoid,
    subgroup_verdict,
)
from .errors import (
    BudgetError,
    ClosureError,
    IdealError,
    IncompatibleError,
    InternalConsistencyError,
    InvalidAutomorphismError,
    NotCommutativeError,
)
from .verdict import Verdict, require_budget

DENSE_TABLE_LIMIT = 10**6


class GammaRing:
    """A finite Gamma-ring ``(carrier, gamma, rule)``.

    ``kind`` records how the ring was built (``table``, ``matrix``,
    ``semigroup_ring``, ...).  ``canonical_grading`` is an optional pair
    ``(G, {label: Subgroup})`` attached by constructions that come with a
    natural grading.
    """

    def __init__(self, carrier: AbelianGroup, gamma: AbelianGroup, rule: Callable, *, kind: str = "table", name: str | None = None):
        self.carrier = carrier
        self.gamma = gamma
        self.rule = rule
        self.kind = kind
        self.name = name
        self.canonical_grading = None

    def __repr__(self):
        return f"GammaRing({self.name or self.kind}, |R|={len(self.carrier)}, |Gamma|={len(self.gamma)})"

    def mul(self, x, a, y) -> tuple:
        return self.rule(x, a, y)

    @property
    def zero(self):
        return self.carrier.zero

    @cached_property
    def table(self) -> np.ndarray:
        """Index table ``T[i, a, j] = index(x_i a x_j)``; raises ClosureError on escape."""
        R, G = self.carrier, self.gamma
        n, g = len(R), len(G)
        if n * n * g > DENSE_TABLE_LIMIT:
            raise BudgetError(f"dense table of {n * n * g} entries exceeds {DENSE_TABLE_LIMIT}")
        out = np.empty((n, g, n), dtype=np.int64)
        pos = R._positions
        for i, x in enumerate(R.elements):
            for a_i, a in enumerate(G.elements):
                for j, y in enumerate(R.elements):
                    v = self.rule(x, a, y)
                    try:
                        out[i, a_i, j] = pos[v]
                    except (KeyError, TypeError):
                        raise ClosureError(f"product {x}{a}{y} = {v!r} lies outside the carrier", (x, a, y, v)) from None
        out.setflags(write=False)
        return out

    def product_dict(self) -> dict:
        """Nonzero products as ``{(x, a, y): value}``."""
        R, G = self.carrier, self.gamma
        T = self.table
        out = {}
        for i, j, k in zip(*np.nonzero(T != R.zero_index)):
            out[(R.elements[i], G.elements[j], R.elements[k])] = R.elements[T[i, j, k]]
        return out


def table_ring(carrier: AbelianGroup, gamma: AbelianGroup, products: Mapping, *, name=None) -> GammaRing:
    """Ring from an explicit product table; omitted entries are zero."""
    table = {}
    for (x, a, y), v in products.items():
        table[(carrier.check(x), gamma.check(a), carrier.check(y))] = tuple(int(t) for t in v)
    zero = carrier.zero

    def rule(x, a, y):
        return table.get((x, a, y), zero)

    ring = GammaRing(carrier, gamma, rule, kind="table", name=name)
    ring.products = table
    return ring


def ring_from_index_table(carrier: AbelianGroup, gamma: AbelianGroup, T: np.ndarray, *, name=None) -> GammaRing:
    R, G = carrier, gamma
    products = {}
    for i, x in enumerate(R.elements):
        for a_i, a in enumerate(G.elements):
            for j, y in enumerate(R.elements):
                products[(x, a, y)] = R.elements[int(T[i, a_i, j])]
    ring = GammaRing(carrier, gamma, lambda x, a, y: products[(x, a, y)], kind="table", name=name)
    ring.products = {k: v for k, v in products.items() if v != R.zero}
    return ring


def integer_gamma_ring(k: int, *, name=None) -> GammaRing:
    """Z_k as a Z_k-ring: ``x a y = x*a*y mod k``."""
    Zk = FiniteAbelianGroup([k])
    return GammaRing(Zk, Zk, lambda x, a, y: ((x[0] * a[0] * y[0]) % k,), kind="integer", name=name or f"Z{k}G")


def zero_gamma_ring(carrier: AbelianGroup, gamma: AbelianGroup, *, name=None) -> GammaRing:
    zero = carrier.zero
    return GammaRing(carrier, gamma, lambda x, a, y: zero, kind="zero", name=name)


# --- axioms -----------------------------------------------------------------

LAWS = ("left-distributivity", "gamma-distributivity", "right-distributivity", "associativity")


def check_axioms(ring: GammaRing) -> Verdict:
    """Exhaustive scan of tri-additivity and ``(x a y) b z = x a (y b z)``.

    Witness shapes: left ``(x, y, a, z)``, gamma ``(x, a, b, z)``,
    right ``(x, a, y, z)``, associativity ``(x, a, y, b, z)``.
    """
    R, G = ring.carrier, ring.gamma
    n, g = len(R), len(G)
    require_budget(n**3 * g**2 + n**2 * g * (n + g), "check_axioms")
    T = ring.table
    addR, addG = R.add_table, G.add_table
    gi = np.arange(g)
    ri = np.arange(n)

    lhs = T[addR[:, :, None, None], gi[None, None, :, None], ri[None, None, None, :]]
    rhs = addR[T[:, None, :, :], T[None, :, :, :]]
    bad = lhs != rhs
    if bad.any():
        x, y, a, z = np.argwhere(bad)[0]
        return Verdict.failed(LAWS[0], (R.elements[x], R.elements[y], G.elements[a], R.elements[z]))

    lhs = T[ri[:, None, None, None], addG[None, :, :, None], ri[None, None, None, :]]
    rhs = addR[T[:, :, None, :], T[:, None, :, :]]
    bad = lhs != rhs
    if bad.any():
        x, a, b, z = np.argwhere(bad)[0]
        return Verdict.failed(LAWS[1], (R.elements[x], G.elements[a], G.elements[b], R.elements[z]))

    lhs = T[ri[:, None, None, None], gi[None, :, None, None], addR[None, None, :, :]]
    rhs = addR[T[:, :, :, None], T[:, :, None, :]]
    bad = lhs != rhs
    if bad.any():
        x, a, y, z = np.argwhere(bad)[0]
        return Verdict.failed(LAWS[2], (R.elements[x], G.elements[a], R.elements[y], R.elements[z]))

    lhs = T[T[:, :, :, None, None], gi[None, None, None, :, None], ri[None, None, None, None, :]]
    rhs = T[ri[:, None, None, None, None], gi[None, :, None, None, None], T[None, None, :, :, :]]
    bad = lhs != rhs
    if bad.any():
        x, a, y, b, z = np.argwhere(bad)[0]
        return Verdict.failed(
            LAWS[3], (R.elements[x], G.elements[a], R.elements[y], G.elements[b], R.elements[z])
        )
    return Verdict.passed()


# --- constructions ----------------------------------------------------------


def matrix_gamma_ring(base, m: int, n: int, *, name=None) -> GammaRing:
    """m x n matrices over ``base`` as a ring over n x m matrices over its gamma.

    ``base`` may be an int k, meaning Z_k.  Entries are row-major.
    ``(x a y)_{ij} = sum_{k,l} x_{ik} a_{kl} y_{lj}``.
    """
    if isinstance(base, int):
        base = integer_gamma_ring(base)
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be >= 1")
    size = len(base.carrier) ** (m * n)
    require_budget(size, "matrix_gamma_ring carrier")
    carrier = ProductGroup([base.carrier] * (m * n))
    gamma = ProductGroup([base.gamma] * (n * m))
    add = base.carrier.add
    bmul = base.mul

    def rule(x, a, y):
        X, A, Y = carrier.split(x), gamma.split(a), carrier.split(y)
        out = []
        for i in range(m):
            for j in range(n):
                acc = base.carrier.zero
                for k in range(n):
                    for l in range(m):
                        acc = add(acc, bmul(X[i * n + k], A[k * m + l], Y[l * n + j]))
                out.append(acc)
        return ProductGroup.join(out)

    ring = GammaRing(carrier, gamma, rule, kind="matrix", name=name)
    ring.base, ring.shape = base, (m, n)
    return ring


def direct_product(rings, *, name=None) -> GammaRing:
    """Componentwise product ``(r_i) a (s_i) = (r_i a s_i)``."""
    rings = list(rings)
    if not rings:
        raise ValueError("direct_product needs at least one factor")
    gamma = rings[0].gamma
    for r in rings[1:]:
        if r.gamma != gamma:
            raise IncompatibleError("factors must share the same gamma group", (repr(gamma), repr(r.gamma)))
    carrier = ProductGroup([r.carrier for r in rings])

    def rule(x, a, y):
        return ProductGroup.join(r.mul(p, a, q) for r, p, q in zip(rings, carrier.split(x), carrier.split(y)))

    ring = GammaRing(carrier, gamma, rule, kind="product", name=name)
    ring.factors = tuple(rings)
    return ring


def opposite(ring: GammaRing, *, name=None) -> GammaRing:
    """Same groups, product ``x o a o y = y a x``."""
    out = GammaRing(ring.carrier, ring.gamma, lambda x, a, y: ring.mul(y, a, x), kind="opposite", name=name)
    out.source = ring
    return out


def sub_gamma_ring_verdict(ring: GammaRing, elements) -> Verdict:
    """Nonempty, closed under subtraction and under every product."""
    members = set(elements)
    if not members:
        return Verdict.failed("nonempty", ())
    v = subgroup_verdict(ring.carrier, members)
    if not v:
        return Verdict.failed("subtraction", v.witness)
    ordered = sorted(members)
    for x in ordered:
        for a in ring.gamma.elements:
            for y in ordered:
                if ring.mul(x, a, y) not in members:
                    return Verdict.failed("product", (x, a, y))
    return Verdict.passed()


def sub_gamma_ring(ring: GammaRing, elements, *, name=None) -> GammaRing:
    members = elements.elements if isinstance(elements, AbelianGroup) else list(elements)
    v = sub_gamma_ring_verdict(ring, members)
    if not v:
        raise ClosureError(f"not a sub-Gamma-ring: {v}", v.witness)
    carrier = Subgroup(ring.carrier, members, verify=False)
    out = GammaRing(carrier, ring.gamma, ring.rule, kind="subring", name=name)
    out.parent = ring
    return out


@dataclass(frozen=True)
class Ideal:
    ring: GammaRing
    subgroup: Subgroup
    side: str = "two-sided"

    @property
    def elements(self):
        return self.subgroup.elements


SIDES = ("left", "right", "two-sided")


def is_ideal(ring: GammaRing, subgroup, side: str = "two-sided") -> Verdict:
    """Checks R Gamma I <= I (left) and/or I Gamma R <= I (right); witness ``(r, a, i)`` or ``(i, a, r)``."""
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}")
    members = subgroup.members if isinstance(subgroup, Subgroup) else frozenset(subgroup)
    ordered = sorted(members)
    if side in ("left", "two-sided"):
        for r in ring.carrier.elements:
            for a in ring.gamma.elements:
                for i in ordered:
                    if ring.mul(r, a, i) not in members:
                        return Verdict.failed("left", (r, a, i))
    if side in ("right", "two-sided"):
        for i in ordered:
            for a in ring.gamma.elements:
                for r in ring.carrier.elements:
                    if ring.mul(i, a, r) not in members:
                        return Verdict.failed("right", (i, a, r))
    return Verdict.passed()


def make_ideal(ring: GammaRing, elements, side: str = "two-sided") -> Ideal:
    sub = elements if isinstance(elements, Subgroup) and elements.parent == ring.carrier else Subgroup(ring.carrier, elements.elements if isinstance(elements, AbelianGroup) else elements)
    v = is_ideal(ring, sub, side)
    if not v:
        raise IdealError(f"not a {side} ideal: {v}", v.witness)
    return Ideal(ring, sub, side)


def quotient_by_ideal(ring: GammaRing, ideal, *, name=None) -> GammaRing:
    """R/I on lexicographically least coset representatives."""
    if not isinstance(ideal, Ideal):
        ideal = make_ideal(ring, ideal, "two-sided")
    elif ideal.side != "two-sided":
        v = is_ideal(ring, ideal.subgroup, "two-sided")
        if not v:
            raise IdealError(f"quotient needs a two-sided ideal: {v}", v.witness)
    Q = QuotientGroup(ring.carrier, ideal.subgroup)
    require_budget(len(ring.carrier) ** 2 * len(ring.gamma), "quotient well-definedness")
    for x in ring.carrier.elements:
        for a in ring.gamma.elements:
            for y in ring.carrier.elements:
                got = Q.reduce(ring.mul(x, a, y))
                want = Q.reduce(ring.mul(Q.reduce(x), a, Q.reduce(y)))
                if got != want:
                    raise InternalConsistencyError("coset product depends on representatives", (x, a, y))

    def rule(x, a, y):
        return Q.reduce(ring.mul(x, a, y))

    out = GammaRing(Q, ring.gamma, rule, kind="quotient", name=name)
    out.source, out.ideal = ring, ideal
    return out


def semigroup_gamma_ring(base: GammaRing, G: FiniteSemigroup, *, name=None) -> GammaRing:
    """The semigroup Gamma-ring ``base[G]`` with its canonical G-grading.

    Elements are coefficient tuples in ``G.labels`` order; the product is
    ``(sum a_g g) c (sum b_h h) = sum (a_g c b_h) gh``.
    """
    if not G.is_commutative:
        raise NotCommutativeError(f"grading semigroup must be abelian: {G.noncommuting_pair}", G.noncommuting_pair)
    require_budget(len(base.carrier) ** len(G), "semigroup_gamma_ring carrier")
    carrier = ProductGroup([base.carrier] * len(G))
    k = len(G)
    prod_index = [[G.table[i][j] for j in range(k)] for i in range(k)]
    badd, bmul, bzero = base.carrier.add, base.mul, base.carrier.zero

    def rule(x, c, y):
        X, Y = carrier.split(x), carrier.split(y)
        out = [bzero] * k
        for i in range(k):
            if X[i] == bzero:
                continue
            for j in range(k):
                if Y[j] == bzero:
                    continue
                t = prod_index[i][j]
                out[t] = badd(out[t], bmul(X[i], c, Y[j]))
        return ProductGroup.join(out)

    ring = GammaRing(carrier, base.gamma, rule, kind="semigroup_ring", name=name)
    ring.base, ring.G = base, G
    ring.canonical_grading = (
        G,
        {g: Subgroup(carrier, [carrier.embed(i, b) for b in base.carrier.elements], verify=False) for i, g in enumerate(G.labels)},
    )
    return ring


def monomial(ring: GammaRing, label, coefficient) -> tuple:
    """``coefficient * label`` in a semigroup ring."""
    return ring.carrier.embed(ring.G.index(label), coefficient)


class PolynomialGammaRing(GammaRing):
    """Polynomials of degree <= D over ``base``; products above degree D are discarded."""

    def __init__(self, base: GammaRing, D: int, *, name=None):
        if D < 0:
            raise ValueError("truncation degree must be >= 0")
        carrier = ProductGroup([base.carrier] * (D + 1))
        badd, bmul, bzero = base.carrier.add, base.mul, base.carrier.zero

        def rule(p, c, q):
            P, Q = carrier.split(p), carrier.split(q)
            out = [bzero] * (D + 1)
            for i in range(D + 1):
                if P[i] == bzero:
                    continue
                for j in range(D + 1 - i):
                    out[i + j] = badd(out[i + j], bmul(P[i], c, Q[j]))
            return ProductGroup.join(out)

        super().__init__(carrier, base.gamma, rule, kind="polynomial", name=name)
        self.base, self.D = base, D
        self.canonical_grading = (
            segment_monoid(D),
            {str(i): Subgroup(carrier, [carrier.embed(i, b) for b in base.carrier.elements], verify=False) for i in range(D + 1)},
        )

    def coefficients(self, p) -> tuple:
        return self.carrier.split(p)

    def from_coefficients(self, coeffs) -> tuple:
        coeffs = list(coeffs) + [self.base.carrier.zero] * (self.D + 1 - len(coeffs))
        return ProductGroup.join(coeffs)


def polynomial_ring(base: GammaRing, D: int, *, name=None) -> PolynomialGammaRing:
    require_budget(len(base.carrier) ** (D + 1), "polynomial_ring carrier")
    return PolynomialGammaRing(base, D, name=name)


# --- unities and units ------------------------------------------------------


class Unity(NamedTuple):
    one: tuple
    gamma0: tuple


def find_unities(ring: GammaRing) -> list:
    """All pairs ``(1, g0)`` with ``a g0 1 = 1 g0 a = a`` for every a."""
    R, G = ring.carrier, ring.gamma
    T = ring.table
    ident = np.arange(len(R))
    found = []
    for a_i, g0 in enumerate(G.elements):
        ones = [R.elements[o] for o in range(len(R)) if (T[:, a_i, o] == ident).all() and (T[o, a_i, :] == ident).all()]
        if len(ones) > 1:
            raise InternalConsistencyError(f"two unities for gamma0={g0}", tuple(ones))
        found.extend(Unity(o, g0) for o in ones)
    return found


def is_unity(ring: GammaRing, unity: Unity) -> bool:
    one, g0 = unity
    return all(ring.mul(a, g0, one) == a and ring.mul(one, g0, a) == a for a in ring.carrier.elements)


@dataclass(frozen=True)
class UnitGroup:
    ring: GammaRing
    unity: Unity
    inverses: dict = field(default_factory=dict)

    @property
    def units(self) -> tuple:
        return tuple(self.inverses)

    def inverse(self, r):
        return self.inverses[r]

    def __contains__(self, r):
        return r in self.inverses


def unit_group(ring: GammaRing, unity: Unity) -> UnitGroup:
    """Invertible elements w.r.t. ``(1, g0)`` with their inverses; group laws verified."""
    if not is_unity(ring, unity):
        raise IdealError("not a unity", tuple(unity))
    R = ring.carrier
    one, g0 = unity
    T = ring.table
    gi = ring.gamma.index(g0)
    oi = R.index(one)
    inverses = {}
    for i, r in enumerate(R.elements):
        cands = [j for j in range(len(R)) if T[j, gi, i] == oi and T[i, gi, j] == oi]
        if len(cands) > 1:
            raise InternalConsistencyError(f"{r} has several inverses", tuple(R.elements[j] for j in cands))
        if cands:
            inverses[r] = R.elements[cands[0]]
    units = set(inverses)
    for m in units:
        for n in units:
            if ring.mul(m, g0, n) not in units:
                raise InternalConsistencyError("units not closed under m g0 n", (m, n))
    return UnitGroup(ring, unity, inverses)


# --- homomorphisms ----------------------------------------------------------


def _as_map(f, domain) -> dict:
    if callable(f) and not isinstance(f, Mapping):
        return {x: tuple(f(x)) for x in domain.elements}
    return {tuple(k): tuple(v) for k, v in f.items()}


def check_automorphism(gamma: AbelianGroup, phi) -> dict:
    phi = _as_map(phi, gamma)
    if set(phi) != set(gamma.elements) or set(phi.values()) != set(gamma.elements):
        raise InvalidAutomorphismError("phi is not a bijection of Gamma", None)
    for a in gamma.elements:
        for b in gamma.elements:
            if phi[gamma.add(a, b)] != gamma.add(phi[a], phi[b]):
                raise InvalidAutomorphismError(f"phi not additive at ({a}, {b})", (a, b))
    return phi


def check_phi_homomorphism(f, source: GammaRing, target: GammaRing, phi=None) -> Verdict:
    """Additivity ``(x, y)`` then ``f(x a y) = f(x) phi(a) f(y)`` with witness ``(x, a, y)``."""
    if source.gamma != target.gamma:
        raise IncompatibleError("rings must share the gamma group", None)
    fm = _as_map(f, source.carrier)
    ph = check_automorphism(source.gamma, phi) if phi is not None else {a: a for a in source.gamma.elements}
    R, S = source.carrier, target.carrier
    for x in R.elements:
        if x not in fm or fm[x] not in S:
            return Verdict.failed("closure", (x,))
    for x in R.elements:
        for y in R.elements:
            if fm[R.add(x, y)] != S.add(fm[x], fm[y]):
                return Verdict.failed("additivity", (x, y))
    for x in R.elements:
        for a in source.gamma.elements:
            for y in R.elements:
                if fm[source.mul(x, a, y)] != target.mul(fm[x], ph[a], fm[y]):
                    return Verdict.failed("multiplicativity", (x, a, y))
    return Verdict.passed()


def additive_maps(source: AbelianGroup, target: AbelianGroup):
    """Yield every group homomorphism ``source -> target`` as a dict.

    Images of an independent generating set are chosen subject to
    ``order(image) | order(generator)``.
    """
    basis = cyclic_decomposition(source)
    choices = [[t for t in target.elements if target.scale(n, t) == target.zero] for _, n in basis]
    count = 1
    for c in choices:
        count *= len(c)
    require_budget(count * len(source), "additive map enumeration")
    coords = {}
    for coeffs in itertools.product(*(range(n) for _, n in basis)):
        x = source.total(source.scale(c, b) for c, (b, _) in zip(coeffs, basis))
        coords[x] = coeffs
    for images in itertools.product(*choices):
        yield {x: target.total(target.scale(c, t) for c, t in zip(cs, images)) for x, cs in coords.items()}


def find_isomorphism(r1: GammaRing, r2: GammaRing):
    """A Gamma-ring isomorphism ``r1 -> r2`` (identity on Gamma) or None."""
    if r1.gamma != r2.gamma or len(r1.carrier) != len(r2.carrier):
        return None
    T1, T2 = r1.table, r2.table
    pos2 = r2.carrier._positions
    for f in additive_maps(r1.carrier, r2.carrier):
        if len(set(f.values())) != len(r2.carrier):
            continue
        perm = np.array([pos2[f[x]] for x in r1.carrier.elements])
        # f(T1[i,a,j]) == T2[f(i), a, f(j)]
        if np.array_equal(perm[T1], T2[perm[:, None, None], np.arange(len(r1.gamma))[None, :, None], perm[None, None, :]]):
            return f
    return None
