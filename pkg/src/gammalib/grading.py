"""Semigroup-graded Gamma-rings.

A ``GradedGammaRing`` is a flat ``GammaRing`` plus one subgroup of the
carrier per degree of a finite abelian semigroup ``G``.  Rings assembled from
typed components (``graded_from_components``) satisfy the degree containment
by construction; user-supplied assignments go through
``check_internal_grading``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .abelian import (
    AbelianGroup,
    FiniteSemigroup,
    ProductGroup,
    SemigroupMap,
    Subgroup,
    quotient_semigroup,
    subgroup_generated,
    subgroup_sum,
    zero_subgroup,
)
from .errors import (
    ClosureError,
    GradingError,
    IncompatibleError,
    InternalConsistencyError,
    NotCommutativeError,
    PreconditionError,
    UnsupportedStructureError,
)
from .ring import (
    GammaRing,
    Ideal,
    Unity,
    check_phi_homomorphism,
    direct_product,
    find_unities,
    is_ideal,
    is_unity,
    opposite,
    quotient_by_ideal,
    sub_gamma_ring,
    sub_gamma_ring_verdict,
    unit_group,
)
from .verdict import Verdict, require_budget


def _as_subgroup(group: AbelianGroup, comp) -> Subgroup:
    if isinstance(comp, Subgroup) and comp.parent == group:
        return comp
    elements = comp.elements if isinstance(comp, AbelianGroup) else comp
    return Subgroup(group, elements)


class GradedCarrier:
    """A family of subgroups of ``self.carrier`` indexed by ``self.G``.

    Shared by graded rings and graded modules.  The decomposition table is
    built lazily; ``decompose`` raises GradingError if the components do not
    form a direct sum.
    """

    carrier: AbelianGroup
    G: FiniteSemigroup
    components: dict

    def component(self, g) -> Subgroup:
        return self.components[str(g)]

    @property
    def support(self) -> tuple:
        return tuple(g for g, c in self.components.items() if not c.is_trivial())

    def direct_sum_verdict(self) -> Verdict:
        labels = self.G.labels
        for i, g in enumerate(labels):
            for h in labels[i + 1:]:
                common = (self.components[g].members & self.components[h].members) - {self.carrier.zero}
                if common:
                    return Verdict.failed("direct-sum", (g, h, min(common)))
        total = 1
        for c in self.components.values():
            total *= len(c)
        if total != len(self.carrier):
            return Verdict.failed("direct-sum", ("order", len(self.carrier), total))
        try:
            self._coords
        except GradingError as exc:
            return Verdict.failed("direct-sum", exc.witness)
        return Verdict.passed()

    @cached_property
    def _coords(self) -> dict:
        R = self.carrier
        labels = self.G.labels
        require_budget(len(R), "decomposition table")
        coords = {}
        for parts in itertools.product(*(self.components[g].elements for g in labels)):
            x = R.total(parts)
            if x in coords:
                raise GradingError("component sum is not direct", (coords[x], parts))
            coords[x] = parts
        if len(coords) != len(R):
            missing = next(x for x in R.elements if x not in coords)
            raise GradingError("components do not span the carrier", (missing,))
        return coords

    def decompose(self, x) -> dict:
        """Nonzero homogeneous components of ``x`` keyed by degree."""
        zero = self.carrier.zero
        parts = self._coords[tuple(x)]
        return {g: p for g, p in zip(self.G.labels, parts) if p != zero}

    def project(self, x, g):
        return self._coords[tuple(x)][self.G.index(g)]

    def flatten(self, parts: Mapping):
        for g, p in parts.items():
            if p not in self.components[str(g)].members:
                raise GradingError(f"{p} is not in degree {g}", (g, p))
        return self.carrier.total(parts.values())

    def degree(self, x):
        """Degree of a homogeneous nonzero element, else None."""
        d = self.decompose(x)
        return next(iter(d)) if len(d) == 1 else None

    def homogeneous(self, g) -> tuple:
        zero = self.carrier.zero
        return tuple(x for x in self.components[str(g)].elements if x != zero)


def _components_over(carrier, G: FiniteSemigroup, components: Mapping) -> dict:
    if not G.is_commutative:
        raise NotCommutativeError(f"grading semigroup must be abelian: {G.noncommuting_pair}", G.noncommuting_pair)
    unknown = set(map(str, components)) - set(G.labels)
    if unknown:
        raise GradingError(f"components for unknown degrees {sorted(unknown)}", tuple(sorted(unknown)))
    comps = {str(k): v for k, v in components.items()}
    return {g: _as_subgroup(carrier, comps[g]) if g in comps else zero_subgroup(carrier) for g in G.labels}


class GradedGammaRing(GradedCarrier):
    """A Gamma-ring with a family of component subgroups indexed by ``G``.

    Degrees missing from ``components`` get the zero subgroup.
    """

    def __init__(self, ring: GammaRing, G: FiniteSemigroup, components: Mapping, *, name=None):
        self.ring = ring
        self.G = G
        self.components = _components_over(ring.carrier, G, components)
        self.name = name

    def __repr__(self):
        sizes = {g: len(c) for g, c in self.components.items()}
        return f"GradedGammaRing({self.ring!r}, G={list(self.G.labels)}, sizes={sizes})"

    @property
    def carrier(self):
        return self.ring.carrier

    @property
    def gamma(self):
        return self.ring.gamma


def check_internal_grading(graded: GradedGammaRing) -> Verdict:
    """Direct sum, then ``R_g Gamma R_h <= R_gh`` with witness ``(g, h, x, a, y)``."""
    v = graded.direct_sum_verdict()
    if not v:
        return v
    ring, G = graded.ring, graded.G
    require_budget(len(ring.carrier) ** 2 * len(ring.gamma), "grading containment")
    for g in G.labels:
        for h in G.labels:
            target = graded.components[G.mul(g, h)].members
            for x in graded.components[g].elements:
                for a in ring.gamma.elements:
                    for y in graded.components[h].elements:
                        if ring.mul(x, a, y) not in target:
                            return Verdict.failed("containment", (g, h, x, a, y))
    return Verdict.passed()


def verified(graded: GradedGammaRing) -> GradedGammaRing:
    v = check_internal_grading(graded)
    if not v:
        raise GradingError(f"not a grading: {v}", v.witness)
    return graded


def canonical_grading(ring: GammaRing) -> GradedGammaRing:
    """The grading a construction attached to ``ring`` (semigroup or polynomial ring)."""
    if ring.canonical_grading is None:
        raise PreconditionError(f"{ring!r} carries no canonical grading", None)
    G, comps = ring.canonical_grading
    return GradedGammaRing(ring, G, comps, name=ring.name)


def trivial_grading(ring: GammaRing, G: FiniteSemigroup) -> GradedGammaRing:
    """``R_e = R`` and every other component zero."""
    if G.identity is None:
        raise PreconditionError("trivial grading needs a monoid", None)
    return GradedGammaRing(ring, G, {G.identity: Subgroup(ring.carrier, ring.carrier.elements, verify=False)})


def graded_from_components(G: FiniteSemigroup, components: Mapping, gamma: AbelianGroup, products: Mapping, *, name=None) -> GradedGammaRing:
    """Assemble ``R = sum_g R_g`` from typed pieces.

    ``products[(g, h)]`` maps ``(x in R_g, a, y in R_h)`` into ``R_gh``;
    absent pairs multiply to zero.
    """
    labels = G.labels
    groups = [components[g] for g in labels]
    carrier = ProductGroup(groups)
    slot = {g: i for i, g in enumerate(labels)}
    rules = {(str(g), str(h)): f for (g, h), f in products.items()}
    target_slot = {(g, h): slot[G.mul(g, h)] for g in labels for h in labels}

    def rule(x, a, y):
        X, Y = carrier.split(x), carrier.split(y)
        out = [grp.zero for grp in groups]
        for (g, h), f in rules.items():
            xg, yh = X[slot[g]], Y[slot[h]]
            if xg == groups[slot[g]].zero or yh == groups[slot[h]].zero:
                continue
            t = target_slot[(g, h)]
            v = f(xg, a, yh)
            if v not in groups[t]:
                raise ClosureError(f"product of degrees ({g}, {h}) left R_{labels[t]}", (g, h, xg, a, yh, v))
            out[t] = groups[t].add(out[t], v)
        return ProductGroup.join(out)

    ring = GammaRing(carrier, gamma, rule, kind="graded", name=name)
    comps = {g: Subgroup(carrier, [carrier.embed(i, v) for v in groups[i].elements], verify=False) for i, g in enumerate(labels)}
    graded = GradedGammaRing(ring, G, comps, name=name)
    graded.external = dict(zip(labels, groups))
    return graded


# --- derived gradings ---------------------------------------------------------


def regrade_epimorphism(graded: GradedGammaRing, phi: SemigroupMap) -> GradedGammaRing:
    """``S_h = sum of R_g over the fiber of h``; the result is re-verified."""
    if phi.domain != graded.G:
        raise IncompatibleError("phi must start at the grading semigroup", None)
    if not phi.is_onto:
        raise PreconditionError("phi is not onto", tuple(h for h in phi.codomain.labels if not phi.fiber(h)))
    comps = {h: subgroup_sum(graded.carrier, [graded.components[g] for g in phi.fiber(h)]) for h in phi.codomain.labels}
    out = GradedGammaRing(graded.ring, phi.codomain, comps)
    v = check_internal_grading(out)
    if not v:
        raise InternalConsistencyError(f"regraded ring fails the grading check: {v}", v.witness)
    return out


def restrict_subsemigroup(graded: GradedGammaRing, H) -> GradedGammaRing:
    """``R^(H) = sum_{h in H} R_h`` as a ring graded by the subsemigroup H."""
    sub = graded.G.subsemigroup(H)
    elements = subgroup_sum(graded.carrier, [graded.components[h] for h in sub.labels]).elements
    ring = sub_gamma_ring(graded.ring, elements)
    comps = {h: Subgroup(ring.carrier, graded.components[h].elements, verify=False) for h in sub.labels}
    out = GradedGammaRing(ring, sub, comps)
    v = check_internal_grading(out)
    if not v:
        raise InternalConsistencyError(f"restriction fails the grading check: {v}", v.witness)
    return out


def coarsen_by_quotient(graded: GradedGammaRing, N) -> GradedGammaRing:
    """Grading by G/N with ``R_gN = sum_{n in N} R_gn``; G must be a group."""
    if not graded.G.is_group:
        raise UnsupportedStructureError("coarsening is defined here only for group gradings", graded.G.labels)
    _, proj = quotient_semigroup(graded.G, N)
    return regrade_epimorphism(graded, proj)


def identity_component_facts(graded: GradedGammaRing) -> dict:
    """``R_e`` is a sub-Gamma-ring, and each unity is concentrated in degree e."""
    e = graded.G.identity
    if e is None:
        raise PreconditionError("grading semigroup has no identity", None)
    report = {"subring": sub_gamma_ring_verdict(graded.ring, graded.components[e].elements), "unity_in_Re": None}
    unities = find_unities(graded.ring)
    if unities:
        report["unity_in_Re"] = Verdict.passed()
        for u in unities:
            support = set(graded.decompose(u.one))
            if not support <= {e}:
                report["unity_in_Re"] = Verdict.failed("unity-degree", (u.one, u.gamma0, tuple(sorted(support))))
                break
    report["unities"] = unities
    return report


def homogeneous_inverse_check(graded: GradedGammaRing, unity: Unity, r) -> str:
    """Degree of ``r^-1`` for a homogeneous unit r; asserted equal to ``deg(r)^-1``."""
    if not graded.G.is_group:
        raise UnsupportedStructureError("inverse degrees need a group grading", graded.G.labels)
    g = graded.degree(r)
    if g is None:
        raise PreconditionError(f"{r} is not homogeneous", (r,))
    units = unit_group(graded.ring, unity)
    if r not in units:
        raise PreconditionError(f"{r} is not invertible", (r,))
    inv = units.inverse(r)
    d = graded.degree(inv)
    if d is None or d != graded.G.inverse(g):
        raise InternalConsistencyError(f"inverse of degree-{g} unit has degree {d}", (r, inv, d))
    return d


@dataclass
class GradedIdealResult:
    verdict: Verdict
    pieces: dict = field(default_factory=dict)
    quotient: GradedGammaRing | None = None

    def __bool__(self):
        return bool(self.verdict)


def graded_ideal_check(graded: GradedGammaRing, ideal) -> GradedIdealResult:
    """Every member's homogeneous components lie in I; on pass, R/I with ``(R_g + I)/I``."""
    if isinstance(ideal, Ideal):
        members = ideal.subgroup.members
    else:
        members = frozenset(ideal)
    v = is_ideal(graded.ring, members, "two-sided")
    if not v:
        raise PreconditionError(f"not a two-sided ideal: {v}", v.witness)
    for x in sorted(members):
        for g, xg in graded.decompose(x).items():
            if xg not in members:
                return GradedIdealResult(Verdict.failed("homogeneous-component", (x, g, xg)))
    pieces = {g: Subgroup(graded.carrier, members & c.members, verify=False) for g, c in graded.components.items()}
    Q = quotient_by_ideal(graded.ring, members)
    qc = {g: Subgroup(Q.carrier, {Q.carrier.reduce(x) for x in c.elements}, verify=False) for g, c in graded.components.items()}
    quotient = GradedGammaRing(Q, graded.G, qc)
    qv = check_internal_grading(quotient)
    if not qv:
        raise InternalConsistencyError(f"quotient by a graded ideal is not graded: {qv}", qv.witness)
    return GradedIdealResult(Verdict.passed(), pieces, quotient)


def opposite_grading(graded: GradedGammaRing) -> GradedGammaRing:
    """``(R^o)_g = R_{g^-1}`` on the opposite ring."""
    G = graded.G
    if not G.is_group:
        raise UnsupportedStructureError("the opposite grading needs a group", G.labels)
    ring = opposite(graded.ring)
    return verified(GradedGammaRing(ring, G, {g: graded.components[G.inverse(g)] for g in G.labels}))


def product_grading(gradeds) -> GradedGammaRing:
    """``(prod R_i)_g = prod (R_i)_g``."""
    gradeds = list(gradeds)
    G = gradeds[0].G
    for gr in gradeds[1:]:
        if gr.G != G:
            raise IncompatibleError("factors must be graded by the same semigroup", None)
    ring = direct_product([gr.ring for gr in gradeds])
    comps = {
        g: Subgroup(
            ring.carrier,
            [ProductGroup.join(p) for p in itertools.product(*(gr.components[g].elements for gr in gradeds))],
            verify=False,
        )
        for g in G.labels
    }
    return verified(GradedGammaRing(ring, G, comps))


# --- strongly graded rings and crossed products -----------------------------


def product_span(graded: GradedGammaRing, g, h) -> Subgroup:
    """Subgroup generated by ``{x a y : x in R_g, a in Gamma, y in R_h}``."""
    ring = graded.ring
    values = {
        ring.mul(x, a, y)
        for x in graded.components[str(g)].elements
        for a in ring.gamma.elements
        for y in graded.components[str(h)].elements
    }
    return subgroup_generated(graded.carrier, values)


def strongly_graded_check(graded: GradedGammaRing) -> Verdict:
    """``R_g Gamma R_h = R_gh`` (generated subgroups) for all pairs; witness ``(g, h)``."""
    require_budget(len(graded.carrier) ** 2 * len(graded.gamma), "strong grading scan")
    G = graded.G
    for g in G.labels:
        for h in G.labels:
            if product_span(graded, g, h).members != graded.components[G.mul(g, h)].members:
                return Verdict.failed("strong", (g, h))
    return Verdict.passed()


def strong_criterion_unit(graded: GradedGammaRing, unity: Unity) -> tuple:
    """``(criterion, strong)``: 1 in R_g Gamma R_{g^-1} for every g, and the direct check."""
    G = graded.G
    if not G.is_group:
        raise UnsupportedStructureError("the unit criterion needs a group grading", G.labels)
    if unity is None or not is_unity(graded.ring, unity):
        raise PreconditionError("a verified unity is required", None)
    criterion = Verdict.passed()
    for g in G.labels:
        if unity.one not in product_span(graded, g, G.inverse(g)).members:
            criterion = Verdict.failed("unit-criterion", (g,))
            break
    return criterion, strongly_graded_check(graded)


@dataclass
class CrossedProductReport:
    unit_components: dict
    support: tuple
    unit_support: tuple
    unit_support_is_subgroup: bool
    crossed: bool
    strong: Verdict

    @property
    def verdict(self) -> Verdict:
        if self.crossed:
            return Verdict.passed()
        missing = next(g for g in self.unit_components if not self.unit_components[g])
        return Verdict.failed("crossed-product", (missing,))


def crossed_product_check(graded: GradedGammaRing, unity: Unity) -> CrossedProductReport:
    """Homogeneous units per degree, both supports, and the crossed-product verdict.

    Also asserts that the unit support is a subgroup, that crossed products
    are strongly graded, and that strongly graded rings have full support.
    """
    G = graded.G
    if not G.is_group:
        raise UnsupportedStructureError("crossed products need a group grading", G.labels)
    units = unit_group(graded.ring, unity)
    unit_components = {g: tuple(x for x in graded.homogeneous(g) if x in units) for g in G.labels}
    unit_support = tuple(g for g in G.labels if unit_components[g])
    support = graded.support
    is_sub = G.is_subgroup(unit_support)
    crossed = set(unit_support) == set(G.labels)
    strong = strongly_graded_check(graded)
    if not is_sub:
        raise InternalConsistencyError("support of homogeneous units is not a subgroup", unit_support)
    if not set(unit_support) <= set(support):
        raise InternalConsistencyError("unit support exceeds support", unit_support)
    if crossed and not strong:
        raise InternalConsistencyError("crossed product that is not strongly graded", strong.witness)
    if strong and set(support) != set(G.labels):
        raise InternalConsistencyError("strongly graded ring without full support", support)
    return CrossedProductReport(unit_components, support, unit_support, is_sub, crossed, strong)


def strong_pushforward_check(f, source: GradedGammaRing, target: GradedGammaRing) -> Verdict:
    """Verify f is an onto degree-preserving homomorphism from a strongly graded ring, then check the image."""
    if source.G != target.G:
        raise IncompatibleError("source and target must share the grading semigroup", None)
    fm = {tuple(k): tuple(v) for k, v in (f.items() if isinstance(f, Mapping) else ((x, f(x)) for x in source.carrier.elements))}
    hv = check_phi_homomorphism(fm, source.ring, target.ring)
    if not hv:
        raise PreconditionError(f"f is not a homomorphism: {hv}", hv.witness)
    for g in source.G.labels:
        for x in source.components[g].elements:
            if fm[x] not in target.components[g].members:
                raise PreconditionError(f"f is not degree preserving at {x}", (g, x))
    if set(fm.values()) != set(target.carrier.elements):
        raise PreconditionError("f is not onto", next(y for y in target.carrier.elements if y not in set(fm.values())))
    sv = strongly_graded_check(source)
    if not sv:
        raise PreconditionError(f"source is not strongly graded: {sv}", sv.witness)
    for u in find_unities(source.ring):
        if not is_unity(target.ring, Unity(fm[u.one], u.gamma0)):
            raise PreconditionError("f does not carry the unity to a unity", (u.one, fm[u.one]))
    return strongly_graded_check(target)


def graded_quotient_map(result: GradedIdealResult) -> dict:
    Q = result.quotient.carrier
    return {x: Q.reduce(x) for x in Q.parent.elements}
