"""Gamma-modules: axioms, gradings, submodules, quotients, filtrations, bimodules.

Modules are left modules.  A right module over R is stored as a left module
over ``opposite(R)`` whose action swaps its outer arguments, so every check
runs through one code path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping

import numpy as np

from .abelian import (
    AbelianGroup,
    FiniteSemigroup,
    ProductGroup,
    QuotientGroup,
    Subgroup,
    subgroup_generated,
    subgroup_intersection,
    subgroup_sum,
    subgroup_verdict,
    subgroups_between,
    whole_subgroup,
    zero_subgroup,
)
from .errors import ClosureError, IncompatibleError, InternalConsistencyError, ModuleError
from .filtration import (
    AssociatedGraded,
    DescendingChain,
    Filtration,
    adic_chain,
    associated_graded,
    check_chain,
)
from .grading import GradedCarrier, GradedGammaRing, _components_over, check_internal_grading
from .ring import DENSE_TABLE_LIMIT, GammaRing, find_unities, opposite, sub_gamma_ring
from .verdict import Verdict, require_budget

MODULE_LAWS = ("i", "ii", "iii", "iv")


class GammaModule:
    """An abelian group ``carrier`` with an action ``(r, a, m) -> r a m``."""

    def __init__(self, ring: GammaRing, carrier: AbelianGroup, action: Callable, *, side: str = "left", name=None):
        if side not in ("left", "right"):
            raise ValueError(f"side must be left or right, not {side!r}")
        self.ring = ring
        self.carrier = carrier
        self.action = action
        self.side = side
        self.name = name

    def __repr__(self):
        return f"GammaModule({self.name or self.side}, |M|={len(self.carrier)}, over {self.ring!r})"

    def act(self, r, a, m) -> tuple:
        return self.action(r, a, m)

    @property
    def gamma(self):
        return self.ring.gamma

    @cached_property
    def table(self) -> np.ndarray:
        """Index table ``A[r, a, m] = index(r a m)``."""
        R, G, M = self.ring.carrier, self.ring.gamma, self.carrier
        size = len(R) * len(G) * len(M)
        if size > DENSE_TABLE_LIMIT:
            raise ModuleError(f"dense action table of {size} entries is too large", None)
        out = np.empty((len(R), len(G), len(M)), dtype=np.int64)
        pos = M._positions
        for i, r in enumerate(R.elements):
            for a_i, a in enumerate(G.elements):
                for j, m in enumerate(M.elements):
                    v = self.action(r, a, m)
                    try:
                        out[i, a_i, j] = pos[v]
                    except (KeyError, TypeError):
                        raise ClosureError(f"action {r}{a}{m} = {v!r} lies outside the module", (r, a, m, v)) from None
        out.setflags(write=False)
        return out

    def action_dict(self) -> dict:
        """Nonzero action values as ``{(r, a, m): value}``."""
        R, G, M = self.ring.carrier, self.ring.gamma, self.carrier
        A = self.table
        return {
            (R.elements[i], G.elements[j], M.elements[k]): M.elements[A[i, j, k]]
            for i, j, k in zip(*np.nonzero(A != M.zero_index))
        }


def table_module(ring: GammaRing, carrier: AbelianGroup, values: Mapping, *, name=None) -> GammaModule:
    """Module from an explicit action table; omitted entries act as zero."""
    table = {}
    for (r, a, m), v in values.items():
        table[(ring.carrier.check(r), ring.gamma.check(a), carrier.check(m))] = tuple(int(t) for t in v)
    zero = carrier.zero
    module = GammaModule(ring, carrier, lambda r, a, m: table.get((r, a, m), zero), name=name)
    module.values = table
    return module


def regular_module(ring: GammaRing, *, name=None) -> GammaModule:
    """R acting on itself by its own product."""
    return GammaModule(ring, ring.carrier, ring.mul, name=name)


def zero_action_module(ring: GammaRing, carrier: AbelianGroup, *, name=None) -> GammaModule:
    zero = carrier.zero
    return GammaModule(ring, carrier, lambda r, a, m: zero, name=name)


def right_module(ring: GammaRing, carrier: AbelianGroup, action: Callable, *, name=None) -> GammaModule:
    """Right module ``(m, a, r) -> m a r`` as a left module over the opposite ring."""
    module = GammaModule(opposite(ring), carrier, lambda r, a, m: action(m, a, r), side="right", name=name)
    module.base_ring = ring
    module.right_action = action
    return module


def check_module_axioms(module: GammaModule) -> Verdict:
    """Exhaustive scan of the four module laws.

    Witness shapes: i ``(r, a, m1, m2)``, ii ``(r1, r2, a, m)``,
    iii ``(r, a, b, m)``, iv ``(r1, a1, r2, a2, m)``.  For right modules
    the ring arguments refer to the opposite ring.
    """
    R, G, M = module.ring.carrier, module.ring.gamma, module.carrier
    nr, ng, nm = len(R), len(G), len(M)
    require_budget(nr * ng * nm * (nm + nr + ng) + nr * nr * ng * ng * nm, "module axioms")
    A = module.table
    T = module.ring.table
    addM, addR, addG = M.add_table, R.add_table, G.add_table
    ri, gi, mi = np.arange(nr), np.arange(ng), np.arange(nm)

    lhs = A[ri[:, None, None, None], gi[None, :, None, None], addM[None, None, :, :]]
    rhs = addM[A[:, :, :, None], A[:, :, None, :]]
    bad = lhs != rhs
    if bad.any():
        r, a, m1, m2 = np.argwhere(bad)[0]
        return Verdict.failed("i", (R.elements[r], G.elements[a], M.elements[m1], M.elements[m2]))

    lhs = A[addR[:, :, None, None], gi[None, None, :, None], mi[None, None, None, :]]
    rhs = addM[A[:, None, :, :], A[None, :, :, :]]
    bad = lhs != rhs
    if bad.any():
        r1, r2, a, m = np.argwhere(bad)[0]
        return Verdict.failed("ii", (R.elements[r1], R.elements[r2], G.elements[a], M.elements[m]))

    lhs = A[ri[:, None, None, None], addG[None, :, :, None], mi[None, None, None, :]]
    rhs = addM[A[:, :, None, :], A[:, None, :, :]]
    bad = lhs != rhs
    if bad.any():
        r, a, b, m = np.argwhere(bad)[0]
        return Verdict.failed("iii", (R.elements[r], G.elements[a], G.elements[b], M.elements[m]))

    # (r1 a1)(r2 a2 m) = (r1 a1 r2) a2 m
    lhs = A[ri[:, None, None, None, None], gi[None, :, None, None, None], A[None, None, :, :, :]]
    rhs = A[T[:, :, :, None, None], gi[None, None, None, :, None], mi[None, None, None, None, :]]
    bad = lhs != rhs
    if bad.any():
        r1, a1, r2, a2, m = np.argwhere(bad)[0]
        return Verdict.failed(
            "iv", (R.elements[r1], G.elements[a1], R.elements[r2], G.elements[a2], M.elements[m])
        )
    return Verdict.passed()


def check_zero_laws(module: GammaModule) -> Verdict:
    """``0 a m = r 0 m = r a 0 = 0``; witness ``(r, a, m)``."""
    R, G, M = module.ring.carrier, module.ring.gamma, module.carrier
    for r in R.elements:
        for a in G.elements:
            for m in M.elements:
                if (r == R.zero or a == G.zero or m == M.zero) and module.act(r, a, m) != M.zero:
                    return Verdict.failed("zero", (r, a, m))
    return Verdict.passed()


def unitary_unities(module: GammaModule) -> list:
    """Ring unities ``(1, g0)`` with ``1 g0 m = m`` for every m."""
    out = []
    for u in find_unities(module.ring):
        if all(module.act(u.one, u.gamma0, m) == m for m in module.carrier.elements):
            out.append(u)
    return out


def is_unitary(module: GammaModule) -> bool:
    return bool(unitary_unities(module))


# --- submodules and quotients -------------------------------------------------


def check_submodule(module: GammaModule, subgroup) -> Verdict:
    """Additive closure, then ``R Gamma M1 <= M1`` with witness ``(r, a, m)``."""
    elements = subgroup.elements if isinstance(subgroup, AbelianGroup) else subgroup
    v = subgroup_verdict(module.carrier, elements)
    if not v:
        return v
    members = frozenset(module.carrier.check(m) for m in elements)
    ring = module.ring
    for r in ring.carrier.elements:
        for a in ring.gamma.elements:
            for m in sorted(members):
                if module.act(r, a, m) not in members:
                    return Verdict.failed("submodule", (r, a, m))
    return Verdict.passed()


def submodule_generated(module: GammaModule, generators) -> Subgroup:
    """Smallest submodule containing ``generators``."""
    current = subgroup_generated(module.carrier, generators)
    ring = module.ring
    while True:
        values = {module.act(r, a, m) for r in ring.carrier.elements for a in ring.gamma.elements for m in current.elements}
        nxt = subgroup_generated(module.carrier, set(current.elements) | values)
        if nxt.members == current.members:
            return current
        current = nxt


def quotient_action_module(module: GammaModule, K) -> GammaModule:
    """M/K on canonical representatives with ``(r, a, m + K) -> r a m + K``."""
    kernel = K if isinstance(K, Subgroup) and K.parent == module.carrier else Subgroup(module.carrier, K.elements if isinstance(K, AbelianGroup) else K)
    Q = QuotientGroup(module.carrier, kernel)
    out = GammaModule(module.ring, Q, lambda r, a, m: Q.reduce(module.act(r, a, m)), side=module.side)
    out.source = module
    return out


def quotient_well_defined(module: GammaModule, Q: QuotientGroup) -> Verdict:
    """Every representative of every coset gives the same class; witness ``(r, a, m)``."""
    ring = module.ring
    for m in module.carrier.elements:
        rep = Q.reduce(m)
        for r in ring.carrier.elements:
            for a in ring.gamma.elements:
                if Q.reduce(module.act(r, a, m)) != Q.reduce(module.act(r, a, rep)):
                    return Verdict.failed("well-defined", (r, a, m))
    return Verdict.passed()


# --- graded modules -------------------------------------------------------------


class GradedGammaModule(GradedCarrier):
    """A module over a graded ring with one component subgroup per degree."""

    def __init__(self, graded_ring: GradedGammaRing, module: GammaModule, components: Mapping, *, name=None):
        if module.ring is not graded_ring.ring and module.ring.carrier != graded_ring.ring.carrier:
            raise IncompatibleError("module and grading use different rings", None)
        self.graded_ring = graded_ring
        self.module = module
        self.G = graded_ring.G
        self.components = _components_over(module.carrier, self.G, components)
        self.name = name

    def __repr__(self):
        sizes = {g: len(c) for g, c in self.components.items()}
        return f"GradedGammaModule(G={list(self.G.labels)}, sizes={sizes})"

    @property
    def carrier(self):
        return self.module.carrier

    @property
    def ring(self):
        return self.module.ring

    def act(self, r, a, m):
        return self.module.act(r, a, m)


def regular_graded_module(graded: GradedGammaRing) -> GradedGammaModule:
    return GradedGammaModule(graded, regular_module(graded.ring), graded.components)


def trivial_module_grading(graded: GradedGammaRing, module: GammaModule) -> GradedGammaModule:
    """``M_e = M`` over a monoid grading."""
    e = graded.G.identity
    if e is None:
        raise ModuleError("trivial module grading needs a monoid", None)
    return GradedGammaModule(graded, module, {e: whole_subgroup(module.carrier)})


def module_containment(gm: GradedGammaModule) -> Verdict:
    """``R_g Gamma M_h <= M_gh``; witness ``(g, h, r, a, m)``."""
    G, ring = gm.G, gm.graded_ring
    for g in G.labels:
        for h in G.labels:
            target = gm.components[G.mul(g, h)].members
            for r in ring.components[g].elements:
                for a in ring.gamma.elements:
                    for m in gm.components[h].elements:
                        if gm.act(r, a, m) not in target:
                            return Verdict.failed("containment", (g, h, r, a, m))
    return Verdict.passed()


def check_graded_module(gm: GradedGammaModule) -> Verdict:
    """Direct sum, degree containments, then the flat module axioms."""
    v = gm.direct_sum_verdict()
    if not v:
        return v
    v = module_containment(gm)
    if not v:
        return v
    return check_module_axioms(gm.module)


def is_graded_submodule(gm: GradedGammaModule, subgroup) -> Verdict:
    """A submodule whose members keep all their homogeneous components; witness ``(x, g, x_g)``."""
    v = check_submodule(gm.module, subgroup)
    if not v:
        return v
    members = subgroup.members if isinstance(subgroup, Subgroup) else frozenset(subgroup)
    for x in sorted(members):
        for g, xg in gm.decompose(x).items():
            if xg not in members:
                return Verdict.failed("graded", (x, g, xg))
    return Verdict.passed()


@dataclass
class QuotientModuleResult:
    """``M/K`` with components ``(M_g + K)/K``.

    ``direct`` reports whether those components form a direct sum; when it
    fails, ``graded`` carries the same failure.  ``component_orders`` maps
    each degree to ``(|(M_g+K)/K|, |M_g/(K cap M_g)|)``.
    """

    graded: GradedGammaModule
    well_defined: Verdict
    direct: Verdict
    verdict: Verdict
    component_orders: dict

    @property
    def module(self) -> GammaModule:
        return self.graded.module


def quotient_module(gm: GradedGammaModule, K) -> QuotientModuleResult:
    v = check_submodule(gm.module, K)
    if not v:
        raise ModuleError(f"K is not a submodule: {v}", v.witness)
    qm = quotient_action_module(gm.module, K)
    Q = qm.carrier
    wd = quotient_well_defined(gm.module, Q)
    if not wd:
        raise InternalConsistencyError(f"quotient action depends on representatives: {wd}", wd.witness)
    comps = {g: Subgroup(Q, {Q.reduce(m) for m in c.elements}, verify=False) for g, c in gm.components.items()}
    out = GradedGammaModule(gm.graded_ring, qm, comps)
    kernel = Q.kernel
    orders = {}
    for g, c in gm.components.items():
        inter = c.members & kernel.members
        orders[g] = (len(comps[g]), len(c) // len(inter))
    direct = out.direct_sum_verdict()
    verdict = check_graded_module(out) if direct else direct
    return QuotientModuleResult(out, wd, direct, verdict, orders)


@dataclass
class MaximalGradedResult:
    submodule: Subgroup
    components: dict
    verdict: Verdict

    def __bool__(self):
        return bool(self.verdict)


def maximal_graded_submodule(gm: GradedGammaModule, K) -> MaximalGradedResult:
    """``K' = sum_g <K cap M_g>`` with containment, gradedness and maximality checked.

    Maximality scans every subgroup strictly between K' and K for a graded
    submodule; the witness is the first one found.
    """
    M = gm.carrier
    Ksub = K if isinstance(K, Subgroup) and K.parent == M else Subgroup(M, K.elements if isinstance(K, AbelianGroup) else K)
    v = check_submodule(gm.module, Ksub)
    if not v:
        raise ModuleError(f"K is not a submodule: {v}", v.witness)
    parts = {g: subgroup_generated(M, Ksub.members & c.members) for g, c in gm.components.items()}
    Kp = subgroup_sum(M, parts.values())
    verdict = Verdict.passed()
    if not Kp.issubset(Ksub):
        verdict = Verdict.failed("contained", (min(Kp.members - Ksub.members),))
    if verdict:
        verdict = is_graded_submodule(gm, Kp)
    if verdict:
        for cand in subgroups_between(Kp, Ksub):
            if cand.members == Kp.members:
                continue
            if is_graded_submodule(gm, cand):
                verdict = Verdict.failed("maximal", tuple(cand.elements))
                break
    return MaximalGradedResult(Kp, parts, verdict)


def strongly_graded_module_check(gm: GradedGammaModule) -> Verdict:
    """``R_g Gamma M_h = M_gh`` as generated subgroups; witness ``(g, h)``."""
    G, ring = gm.G, gm.graded_ring
    require_budget(len(ring.carrier) * len(ring.gamma) * len(gm.carrier) * len(G), "strong module scan")
    for g in G.labels:
        for h in G.labels:
            values = {
                gm.act(r, a, m)
                for r in ring.components[g].elements
                for a in ring.gamma.elements
                for m in gm.components[h].elements
            }
            if subgroup_generated(gm.carrier, values).members != gm.components[G.mul(g, h)].members:
                return Verdict.failed("strong", (g, h))
    return Verdict.passed()


# --- finite generation -----------------------------------------------------------


@dataclass
class GenerationResult:
    """``reached`` is the additive closure of all ``r a m_i``.

    ``single_sums`` holds the sums with exactly one term per generator.
    """

    verdict: Verdict
    reached: Subgroup
    single_sums: frozenset


def check_finitely_generated(module: GammaModule, generators) -> GenerationResult:
    """Bare generators are not added to the reachable set."""
    M, ring = module.carrier, module.ring
    gens = [M.check(m) for m in generators]
    terms = [{module.act(r, a, m) for r in ring.carrier.elements for a in ring.gamma.elements} for m in gens]
    reached = subgroup_generated(M, set().union(*terms) if terms else set())
    sums = {M.zero}
    for t in terms:
        sums = {M.add(s, x) for s in sums for x in t}
    if reached.members == frozenset(M.elements):
        verdict = Verdict.passed()
    else:
        verdict = Verdict.failed("generation", (min(set(M.elements) - reached.members),))
    return GenerationResult(verdict, reached, frozenset(sums))


# --- filtered modules ------------------------------------------------------------


class FilteredModule:
    """``M^0 <= ... <= M^N`` over a filtered ring, clamped above N."""

    def __init__(self, filtration: Filtration, module: GammaModule, chain):
        if module.ring is not filtration.ring and module.ring.carrier != filtration.ring.carrier:
            raise IncompatibleError("module and filtration use different rings", None)
        if not chain:
            raise ValueError("a module filtration needs at least one level")
        self.filtration = filtration
        self.module = module
        self.chain = [c if isinstance(c, Subgroup) and c.parent == module.carrier else Subgroup(module.carrier, c.elements if isinstance(c, AbelianGroup) else c) for c in chain]

    @property
    def N(self) -> int:
        return len(self.chain) - 1

    def level(self, k: int) -> Subgroup:
        if k < 0:
            return zero_subgroup(self.module.carrier)
        return self.chain[min(k, self.N)]

    def __repr__(self):
        return f"FilteredModule(sizes={[len(c) for c in self.chain]})"


def check_filtered_module(fm: FilteredModule) -> Verdict:
    """Monotone, exhaustive, and ``R^i Gamma M^j <= M^(i+j)``; witness ``(i, j, r, a, m)``."""
    v = check_chain(fm.module.carrier, fm.chain, fm.module.carrier)
    if not v:
        return v
    f, module = fm.filtration, fm.module
    top = max(f.N, fm.N)
    require_budget((top + 1) ** 2 * len(module.ring.carrier) * len(module.gamma) * len(module.carrier), "filtered module containment")
    for i in range(f.N + 1):
        for j in range(top + 1):
            target = fm.level(i + j).members
            for r in f.level(i).elements:
                for a in module.gamma.elements:
                    for m in fm.level(j).elements:
                        if module.act(r, a, m) not in target:
                            return Verdict.failed("containment", (i, j, r, a, m))
    return Verdict.passed()


def filtered_module_from_grading(gm: GradedGammaModule, filtration: Filtration) -> FilteredModule:
    """``M^k = M_0 + ... + M_k`` for a module graded by 0..D."""
    D = len(gm.G) - 1
    chain = [subgroup_sum(gm.carrier, [gm.components[str(j)] for j in range(k + 1)]) for k in range(D + 1)]
    return FilteredModule(filtration, gm.module, chain)


@dataclass
class GrModule:
    gr_ring: AssociatedGraded
    graded: GradedGammaModule
    quotients: list
    well_defined: Verdict

    def class_of(self, k: int, m) -> tuple:
        return self.graded.carrier.embed(k, self.quotients[k].reduce(m))


def gr_module(fm: FilteredModule) -> GrModule:
    """``gr M = sum_k M^k / M^(k-1)`` over gr R, both padded to a common top index."""
    N = max(fm.filtration.N, fm.N)
    gr = associated_graded(fm.filtration, length=N)
    module = fm.module
    quotients = []
    for k in range(N + 1):
        level = fm.level(k)
        quotients.append(QuotientGroup(level, Subgroup(level, fm.level(k - 1).elements, verify=False)))
    ring_carrier = gr.graded.carrier
    carrier = ProductGroup(quotients)
    zeros = [q.zero for q in quotients]

    def action(x, a, y):
        X, Y = ring_carrier.split(x), carrier.split(y)
        out = list(zeros)
        for m in range(N + 1):
            if X[m] == gr.quotients[m].zero:
                continue
            for n in range(N + 1 - m):
                if Y[n] == zeros[n]:
                    continue
                v = quotients[m + n].reduce(module.act(X[m], a, Y[n]))
                out[m + n] = quotients[m + n].add(out[m + n], v)
        return ProductGroup.join(out)

    flat = GammaModule(gr.ring, carrier, action)
    comps = {str(k): Subgroup(carrier, [carrier.embed(k, v) for v in quotients[k].elements], verify=False) for k in range(N + 1)}
    graded = GradedGammaModule(gr.graded, flat, comps)
    wd = _gr_module_well_defined(fm, gr, quotients, N)
    if not wd:
        raise InternalConsistencyError(f"gr M action depends on representatives: {wd}", wd.witness)
    return GrModule(gr, graded, quotients, wd)


def _gr_module_well_defined(fm: FilteredModule, gr: AssociatedGraded, quotients: list, N: int) -> Verdict:
    """Witness ``(m, n, r, a, x)`` where r, x are arbitrary representatives."""
    f, module = gr.filtration, fm.module
    M = module.carrier
    for m in range(N + 1):
        for n in range(N + 1):
            lower = fm.level(m + n - 1).members
            top = fm.level(m + n).members
            for r in f.level(m).elements:
                rr = gr.quotients[m].reduce(r)
                for x in fm.level(n).elements:
                    rx = quotients[n].reduce(x)
                    for a in module.gamma.elements:
                        p = module.act(r, a, x)
                        if p not in top or M.sub(p, module.act(rr, a, rx)) not in lower:
                            return Verdict.failed("well-defined", (m, n, r, a, x))
    return Verdict.passed()


@dataclass
class DescendingModuleChain:
    """``M >= R^1 Gamma M >= R^2 Gamma M >= ...`` for an I-adic ring chain."""

    module: GammaModule
    ring_chain: DescendingChain
    chain: list

    def level(self, k: int) -> Subgroup:
        return self.chain[min(k, len(self.chain) - 1)]


def adic_module_chain(module: GammaModule, ideal) -> DescendingModuleChain:
    dc = adic_chain(module.ring, ideal)
    M, gamma = module.carrier, module.gamma
    chain = [whole_subgroup(M)]
    for k in range(1, dc.stabilization + 1):
        chain.append(subgroup_generated(M, {module.act(r, a, m) for r in dc.level(k).elements for a in gamma.elements for m in M.elements}))
    while len(chain) > 1 and chain[-1].members == chain[-2].members:
        chain.pop()
    out = DescendingModuleChain(module, dc, chain)
    v = check_descending_module(out)
    if not v:
        raise InternalConsistencyError(f"I-adic module chain fails its laws: {v}", v.witness)
    return out


def check_descending_module(dm: DescendingModuleChain) -> Verdict:
    """Each term contains the next and ``R^i Gamma M^j <= M^(i+j)``."""
    for k in range(1, len(dm.chain)):
        extra = dm.chain[k].members - dm.chain[k - 1].members
        if extra:
            return Verdict.failed("descending", (k, min(extra)))
    top = max(len(dm.chain), dm.ring_chain.stabilization + 1)
    module = dm.module
    for i in range(top):
        for j in range(top):
            target = dm.level(i + j).members
            for r in dm.ring_chain.level(i).elements:
                for a in module.gamma.elements:
                    for m in dm.level(j).elements:
                        if module.act(r, a, m) not in target:
                            return Verdict.failed("containment", (i, j, r, a, m))
    return Verdict.passed()


@dataclass
class ChainIntersection:
    subgroup: Subgroup
    verdict: Verdict

    def __bool__(self):
        return bool(self.verdict)


def intersect_chain(fm) -> ChainIntersection:
    """``cap_k M^k`` and whether it is a submodule.

    Accepts ascending (FilteredModule) and descending chains alike.
    """
    inter = subgroup_intersection(fm.module.carrier, fm.chain)
    return ChainIntersection(inter, check_submodule(fm.module, inter))


# --- bimodules -------------------------------------------------------------------


@dataclass
class Bimodule:
    """``M`` as a left module over ``left_ring`` and a right module over ``right_ring``.

    ``left_action(r, a, m)`` and ``right_action(m, a, s)``.
    """

    left_ring: GammaRing
    right_ring: GammaRing
    carrier: AbelianGroup
    left_action: Callable
    right_action: Callable

    @property
    def left(self) -> GammaModule:
        return GammaModule(self.left_ring, self.carrier, self.left_action)

    @property
    def right(self) -> GammaModule:
        return right_module(self.right_ring, self.carrier, self.right_action)


def regular_bimodule(ring: GammaRing, left: GammaRing | None = None, right: GammaRing | None = None) -> Bimodule:
    """A ring as a bimodule over sub-rings of itself (default: itself on both sides)."""
    return Bimodule(left or ring, right or ring, ring.carrier, ring.mul, ring.mul)


def check_bimodule(bm: Bimodule, gradings=None) -> Verdict:
    """Left laws, right laws, ``(r a m) b s = r a (m b s)``, then the graded triple law.

    ``gradings`` is ``(left_graded, module_components, right_graded)`` over
    one semigroup; the triple law has witness ``(g, h, k, r, a, m, b, s)``.
    """
    if bm.left_ring.gamma != bm.right_ring.gamma:
        raise IncompatibleError("both rings must share the gamma group", None)
    v = check_module_axioms(bm.left)
    if not v:
        return Verdict.failed(f"left-{v.law}", v.witness)
    v = check_module_axioms(bm.right)
    if not v:
        return Verdict.failed(f"right-{v.law}", v.witness)
    gamma = bm.left_ring.gamma
    L, Ra, M = bm.left_ring.carrier, bm.right_ring.carrier, bm.carrier
    require_budget(len(L) * len(M) * len(Ra) * len(gamma) ** 2, "bimodule compatibility")
    for r in L.elements:
        for a in gamma.elements:
            for m in M.elements:
                left = bm.left_action(r, a, m)
                for b in gamma.elements:
                    for s in Ra.elements:
                        if bm.right_action(left, b, s) != bm.left_action(r, a, bm.right_action(m, b, s)):
                            return Verdict.failed("compatibility", (r, a, m, b, s))
    if gradings is None:
        return Verdict.passed()
    lg, comps, rg = gradings
    G: FiniteSemigroup = lg.G
    if rg.G != G:
        raise IncompatibleError("left and right gradings use different semigroups", None)
    comps = _components_over(M, G, comps)
    for g, h, k in itertools.product(G.labels, repeat=3):
        target = comps[G.mul(G.mul(g, h), k)].members
        for r in lg.components[g].elements:
            for a in gamma.elements:
                for m in comps[h].elements:
                    left = bm.left_action(r, a, m)
                    for b in gamma.elements:
                        for s in rg.components[k].elements:
                            if bm.right_action(left, b, s) not in target:
                                return Verdict.failed("graded-triple", (g, h, k, r, a, m, b, s))
    return Verdict.passed()


def identity_bimodule_grading(graded: GradedGammaRing):
    """``(R_e, R_e)`` gradings for R over itself: ``R_e`` sits in degree e on both sides."""
    e = graded.G.identity
    Re = sub_gamma_ring(graded.ring, graded.components[e].elements)
    Re_graded = GradedGammaRing(Re, graded.G, {e: Subgroup(Re.carrier, Re.carrier.elements, verify=False)})
    bm = regular_bimodule(graded.ring, Re, Re)
    return bm, (Re_graded, graded.components, Re_graded)


def check_graded_ring_module(graded: GradedGammaRing) -> Verdict:
    """The ring over itself as a graded module."""
    v = check_internal_grading(graded)
    if not v:
        return v
    return check_graded_module(regular_graded_module(graded))


__all__ = [
    "Bimodule",
    "ChainIntersection",
    "DescendingModuleChain",
    "FilteredModule",
    "GammaModule",
    "GenerationResult",
    "GrModule",
    "GradedGammaModule",
    "MaximalGradedResult",
    "QuotientModuleResult",
    "adic_module_chain",
    "check_bimodule",
    "check_filtered_module",
    "check_finitely_generated",
    "check_graded_module",
    "check_module_axioms",
    "check_submodule",
    "check_zero_laws",
    "filtered_module_from_grading",
    "gr_module",
    "identity_bimodule_grading",
    "intersect_chain",
    "is_graded_submodule",
    "is_unitary",
    "maximal_graded_submodule",
    "quotient_module",
    "regular_bimodule",
    "regular_graded_module",
    "regular_module",
    "right_module",
    "strongly_graded_module_check",
    "submodule_generated",
    "table_module",
    "trivial_module_grading",
    "unitary_unities",
    "zero_action_module",
]
