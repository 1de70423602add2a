"""Ascending filtrations, the associated graded ring, and I-adic chains.

A finite filtration ``R^0 <= ... <= R^N`` stands for the infinite chain with
``R^k = R^N`` for ``k >= N`` and ``R^-1 = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    QuotientGroup,
    Subgroup,
    segment_degree,
    segment_monoid,
    subgroup_generated,
    subgroup_sum,
    whole_subgroup,
    zero_subgroup,
)
from .errors import InternalConsistencyError, UnsupportedStructureError
from .grading import GradedGammaRing, check_internal_grading, graded_from_components
from .ring import GammaRing, Ideal, check_axioms, make_ideal
from .verdict import Verdict, require_budget


def _chain_subgroups(group, chain) -> list:
    out = []
    for level in chain:
        if isinstance(level, Subgroup) and level.parent == group:
            out.append(level)
        else:
            out.append(Subgroup(group, level.elements if isinstance(level, Subgroup) else level))
    return out


class Filtration:
    """``R^0 <= R^1 <= ... <= R^N`` on a Gamma-ring, clamped above N."""

    def __init__(self, ring: GammaRing, chain):
        if not chain:
            raise ValueError("a filtration needs at least one level")
        self.ring = ring
        self.chain = _chain_subgroups(ring.carrier, chain)

    @property
    def N(self) -> int:
        return len(self.chain) - 1

    def level(self, k: int) -> Subgroup:
        if k < 0:
            return zero_subgroup(self.ring.carrier)
        return self.chain[min(k, self.N)]

    def padded(self, N: int) -> Filtration:
        return Filtration(self.ring, [self.level(k) for k in range(max(N, self.N) + 1)])

    def __repr__(self):
        return f"Filtration({self.ring!r}, sizes={[len(c) for c in self.chain]})"


def check_chain(group, chain, top) -> Verdict:
    """Monotone, and ending in ``top``; witness ``(k, x)`` for a non-containment."""
    for k in range(1, len(chain)):
        missing = chain[k - 1].members - chain[k].members
        if missing:
            return Verdict.failed("monotone", (k - 1, min(missing)))
    if chain[-1].members != frozenset(top.elements):
        return Verdict.failed("exhaustive", (len(chain) - 1, min(set(top.elements) - chain[-1].members)))
    return Verdict.passed()


def check_filtration(f: Filtration) -> Verdict:
    """Monotone, exhaustive, and ``R^i Gamma R^j <= R^(i+j)``; witness ``(i, j, x, a, y)``."""
    v = check_chain(f.ring.carrier, f.chain, f.ring.carrier)
    if not v:
        return v
    ring = f.ring
    N = f.N
    require_budget((N + 1) ** 2 * len(ring.carrier) ** 2 * len(ring.gamma), "filtration containment")
    for i in range(N + 1):
        for j in range(N + 1):
            target = f.level(i + j).members
            for x in f.level(i).elements:
                for a in ring.gamma.elements:
                    for y in f.level(j).elements:
                        if ring.mul(x, a, y) not in target:
                            return Verdict.failed("containment", (i, j, x, a, y))
    return Verdict.passed()


def trivial_filtration(ring: GammaRing, length: int = 1) -> Filtration:
    return Filtration(ring, [whole_subgroup(ring.carrier)] * length)


def segment_grading_degree(graded: GradedGammaRing) -> int:
    D = segment_degree(graded.G)
    if D is None:
        raise UnsupportedStructureError("expected a grading by the segment 0..D", graded.G.labels)
    return D


def check_no_overflow(graded: GradedGammaRing) -> Verdict:
    """Products whose degrees sum past D must vanish; witness ``(i, j, x, a, y)``."""
    D = segment_grading_degree(graded)
    ring = graded.ring
    for i in range(D + 1):
        for j in range(D + 1 - i, D + 1):
            for x in graded.components[str(i)].elements:
                for a in ring.gamma.elements:
                    for y in graded.components[str(j)].elements:
                        if ring.mul(x, a, y) != ring.zero:
                            return Verdict.failed("overflow", (i, j, x, a, y))
    return Verdict.passed()


def filtration_from_grading(graded: GradedGammaRing) -> Filtration:
    """``R^k = R_0 + ... + R_k`` for a grading by 0..D."""
    D = segment_grading_degree(graded)
    v = check_no_overflow(graded)
    if not v:
        raise UnsupportedStructureError(f"grading is not a truncated N-grading: {v}", v.witness)
    chain = [subgroup_sum(graded.carrier, [graded.components[str(j)] for j in range(k + 1)]) for k in range(D + 1)]
    f = Filtration(graded.ring, chain)
    fv = check_filtration(f)
    if not fv:
        raise InternalConsistencyError(f"induced chain is not a filtration: {fv}", fv.witness)
    return f


class AssociatedGraded:
    """``gr R = sum_k R^k / R^(k-1)`` with the induced coset product.

    ``graded`` is the flattened ring graded by ``segment_monoid(N)``;
    ``quotients[k]`` is ``R^k / R^(k-1)`` on canonical representatives.
    """

    def __init__(self, f: Filtration):
        self.filtration = f
        ring = f.ring
        N = f.N
        self.N = N
        quotients = []
        for k in range(N + 1):
            level = f.level(k)
            quotients.append(QuotientGroup(level, Subgroup(level, f.level(k - 1).elements, verify=False)))
        self.quotients = quotients

        # degrees past N are absent, so those products vanish
        def make_rule(m, n):
            target = quotients[m + n]
            return lambda x, a, y: target.reduce(ring.mul(x, a, y))

        G = segment_monoid(N)
        products = {(str(m), str(n)): make_rule(m, n) for m in range(N + 1) for n in range(N + 1 - m)}
        self.graded = graded_from_components(G, {str(k): quotients[k] for k in range(N + 1)}, ring.gamma, products)

    @property
    def ring(self) -> GammaRing:
        return self.graded.ring

    def class_of(self, k: int, r) -> tuple:
        """The element ``r + R^(k-1)`` placed in degree k of the flat ring."""
        return self.graded.carrier.embed(k, self.quotients[k].reduce(r))

    def well_defined(self) -> Verdict:
        """Recompute every product under every representative pair.

        Witness ``(m, n, x, x', a, y, y')``.
        """
        f, ring = self.filtration, self.filtration.ring
        N = self.N
        require_budget(sum(len(f.level(m)) * len(f.level(n)) for m in range(N + 1) for n in range(N + 1)) * len(ring.gamma), "gr well-definedness")
        for m in range(N + 1):
            for n in range(N + 1):
                target = f.level(m + n - 1).members
                top = f.level(m + n).members
                Qm, Qn = self.quotients[m], self.quotients[n]
                for x in f.level(m).elements:
                    rx = Qm.reduce(x)
                    for y in f.level(n).elements:
                        ry = Qn.reduce(y)
                        for a in ring.gamma.elements:
                            p = ring.mul(x, a, y)
                            q = ring.mul(rx, a, ry)
                            if p not in top or ring.carrier.sub(p, q) not in target:
                                return Verdict.failed("well-defined", (m, n, rx, x, a, ry, y))
        return Verdict.passed()


def associated_graded(f: Filtration, *, length: int | None = None) -> AssociatedGraded:
    """Build gr R; ``length`` pads the chain (by stabilization) to that top index."""
    if length is not None:
        f = f.padded(length)
    gr = AssociatedGraded(f)
    v = gr.well_defined()
    if not v:
        raise InternalConsistencyError(f"gr product depends on representatives: {v}", v.witness)
    return gr


@dataclass
class RoundTrip:
    iso: dict
    gr: AssociatedGraded
    verdict: Verdict

    def __bool__(self):
        return bool(self.verdict)


def grading_roundtrip_iso(graded: GradedGammaRing) -> RoundTrip:
    """Map ``r = sum r_k`` to ``sum (r_k + R^(k-1))`` and verify it is a degree-preserving isomorphism."""
    f = filtration_from_grading(graded)
    gr = associated_graded(f)
    ring, target = graded.ring, gr.ring
    iso = {}
    for x in ring.carrier.elements:
        parts = graded.decompose(x)
        iso[x] = target.carrier.total(gr.class_of(int(k), xk) for k, xk in parts.items())
    verdict = Verdict.passed()
    if len(set(iso.values())) != len(target.carrier):
        verdict = Verdict.failed("bijective", None)
    if verdict:
        for x in ring.carrier.elements:
            for y in ring.carrier.elements:
                if iso[ring.carrier.add(x, y)] != target.carrier.add(iso[x], iso[y]):
                    verdict = Verdict.failed("additive", (x, y))
                    break
            if not verdict:
                break
    if verdict:
        T1, T2 = ring.table, target.table
        perm = [target.carrier.index(iso[x]) for x in ring.carrier.elements]
        done = False
        for i, x in enumerate(ring.carrier.elements):
            for ai, a in enumerate(ring.gamma.elements):
                for j, y in enumerate(ring.carrier.elements):
                    if perm[T1[i, ai, j]] != T2[perm[i], ai, perm[j]]:
                        verdict = Verdict.failed("multiplicative", (x, a, y))
                        done = True
                        break
                if done:
                    break
            if done:
                break
    if verdict:
        for k in graded.G.labels:
            for x in graded.components[k].elements:
                if iso[x] not in gr.graded.components[k].members:
                    verdict = Verdict.failed("degree", (k, x))
                    break
    if not verdict:
        raise InternalConsistencyError(f"gr R is not isomorphic to R: {verdict}", verdict.witness)
    return RoundTrip(iso, gr, verdict)


@dataclass
class DescendingChain:
    ring: GammaRing
    ideal: Ideal
    chain: list
    stabilization: int

    def level(self, k: int) -> Subgroup:
        return self.chain[min(k, len(self.chain) - 1)]

    def sizes(self) -> list:
        return [len(c) for c in self.chain]


def adic_chain(ring: GammaRing, ideal) -> DescendingChain:
    """``R^0 = R, R^1 = I, R^k = <R^(k-1) Gamma I>`` until it stabilizes."""
    if not isinstance(ideal, Ideal):
        ideal = make_ideal(ring, ideal, "two-sided")
    chain = [whole_subgroup(ring.carrier), Subgroup(ring.carrier, ideal.elements, verify=False)]
    while True:
        prev = chain[-1]
        nxt = subgroup_generated(
            ring.carrier, {ring.mul(x, a, i) for x in prev.elements for a in ring.gamma.elements for i in ideal.elements}
        )
        if nxt.members == prev.members:
            break
        chain.append(nxt)
    out = DescendingChain(ring, ideal, chain, len(chain) - 1)
    v = check_descending(out)
    if not v:
        raise InternalConsistencyError(f"I-adic chain fails its laws: {v}", v.witness)
    return out


def check_descending(dc: DescendingChain) -> Verdict:
    """Each term contains the next and ``R^i Gamma R^j <= R^(i+j)``."""
    for k in range(1, len(dc.chain)):
        extra = dc.chain[k].members - dc.chain[k - 1].members
        if extra:
            return Verdict.failed("descending", (k, min(extra)))
    ring = dc.ring
    s = dc.stabilization
    for i in range(s + 1):
        for j in range(s + 1):
            target = dc.level(i + j).members
            for x in dc.level(i).elements:
                for a in ring.gamma.elements:
                    for y in dc.level(j).elements:
                        if ring.mul(x, a, y) not in target:
                            return Verdict.failed("containment", (i, j, x, a, y))
    return Verdict.passed()


def verify_associated_graded(gr: AssociatedGraded) -> Verdict:
    """gr R passes the Gamma-ring axioms and its own grading check."""
    v = check_axioms(gr.ring)
    if not v:
        return v
    return check_internal_grading(gr.graded)


__all__ = [
    "AssociatedGraded",
    "DescendingChain",
    "Filtration",
    "RoundTrip",
    "adic_chain",
    "associated_graded",
    "check_descending",
    "check_filtration",
    "filtration_from_grading",
    "grading_roundtrip_iso",
    "trivial_filtration",
    "verify_associated_graded",
]
