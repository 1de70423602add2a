"""Homomorphisms of Gamma-modules, their degree components, and graded End rings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import IncompatibleError, InternalConsistencyError, PreconditionError, UnsupportedStructureError
from .module import GammaModule, GradedGammaModule, check_finitely_generated
from .ring import _as_map, additive_maps, check_automorphism
from .verdict import Verdict, require_budget


def _flat(m) -> GammaModule:
    return m.module if isinstance(m, GradedGammaModule) else m


@dataclass(frozen=True)
class ModuleHom:
    """A map between module carriers stored as an explicit value table."""

    source: object
    target: object
    values: Mapping = field(hash=False)

    def __call__(self, x):
        return self.values[tuple(x)]

    @property
    def key(self) -> tuple:
        """Values in source enumeration order; used for sorting and equality."""
        return tuple(self.values[x] for x in _flat(self.source).carrier.elements)

    def __eq__(self, other):
        return isinstance(other, ModuleHom) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_zero(self) -> bool:
        zero = _flat(self.target).carrier.zero
        return all(v == zero for v in self.values.values())

    def __add__(self, other: ModuleHom) -> ModuleHom:
        K = _flat(self.target).carrier
        return ModuleHom(self.source, self.target, {x: K.add(v, other.values[x]) for x, v in self.values.items()})

    def __neg__(self) -> ModuleHom:
        K = _flat(self.target).carrier
        return ModuleHom(self.source, self.target, {x: K.neg(v) for x, v in self.values.items()})

    def compose(self, inner: ModuleHom) -> ModuleHom:
        """``self o inner``."""
        return ModuleHom(inner.source, self.target, {x: self.values[v] for x, v in inner.values.items()})


def make_hom(source, target, f) -> ModuleHom:
    return ModuleHom(source, target, _as_map(f, _flat(source).carrier))


def identity_hom(M) -> ModuleHom:
    return ModuleHom(M, M, {x: x for x in _flat(M).carrier.elements})


def zero_hom(M, K) -> ModuleHom:
    zero = _flat(K).carrier.zero
    return ModuleHom(M, K, {x: zero for x in _flat(M).carrier.elements})


def check_hom(f: ModuleHom, phi=None) -> Verdict:
    """Closure ``(x,)``, additivity ``(x, y)``, then ``f(r a x) = r phi(a) f(x)`` with witness ``(r, a, x)``."""
    M, K = _flat(f.source), _flat(f.target)
    if M.ring.carrier != K.ring.carrier or M.gamma != K.gamma:
        raise IncompatibleError("homs need modules over one ring", None)
    ph = check_automorphism(M.gamma, phi) if phi is not None else None
    for x in M.carrier.elements:
        if x not in f.values or f.values[x] not in K.carrier:
            return Verdict.failed("closure", (x,))
    for x in M.carrier.elements:
        for y in M.carrier.elements:
            if f.values[M.carrier.add(x, y)] != K.carrier.add(f.values[x], f.values[y]):
                return Verdict.failed("additivity", (x, y))
    for r in M.ring.carrier.elements:
        for a in M.gamma.elements:
            b = ph[a] if ph else a
            for x in M.carrier.elements:
                if f.values[M.act(r, a, x)] != K.act(r, b, f.values[x]):
                    return Verdict.failed("equivariance", (r, a, x))
    return Verdict.passed()


def degree_of_hom(f: ModuleHom, h) -> Verdict:
    """``f(M_g) <= K_hg`` for every g; witness ``(g, m)``."""
    M, K = f.source, f.target
    if not isinstance(M, GradedGammaModule) or not isinstance(K, GradedGammaModule):
        raise PreconditionError("degrees need graded source and target", None)
    if M.G != K.G:
        raise IncompatibleError("source and target are graded by different semigroups", None)
    G = M.G
    h = str(h)
    for g in G.labels:
        target = K.components[G.mul(h, g)].members
        for m in M.components[g].elements:
            if f.values[m] not in target:
                return Verdict.failed("degree", (g, m))
    return Verdict.passed()


def hom_degrees(f: ModuleHom) -> tuple:
    """Every h for which f is homogeneous of degree h."""
    return tuple(h for h in f.source.G.labels if degree_of_hom(f, h))


def _require_group(M) -> None:
    if not isinstance(M, GradedGammaModule):
        raise PreconditionError("components need a graded source", None)
    if not M.G.is_group:
        raise UnsupportedStructureError("hom components need a group grading (g^-1 is used)", M.G.labels)


def component(f: ModuleHom, g) -> ModuleHom:
    """``f_g(m) = sum_h (f(m_(h g^-1)))_h``, verified as a hom of degree g."""
    M, K = f.source, f.target
    _require_group(M)
    G = M.G
    g = str(g)
    ginv = G.inverse(g)
    Kc = _flat(K).carrier
    values = {}
    for m in M.carrier.elements:
        total = Kc.zero
        for h in G.labels:
            piece = M.project(m, G.mul(h, ginv))
            total = Kc.add(total, K.project(f.values[piece], h))
        values[m] = total
    fg = ModuleHom(M, K, values)
    v = check_hom(fg)
    if not v:
        raise InternalConsistencyError(f"component {g} is not a hom: {v}", v.witness)
    v = degree_of_hom(fg, g)
    if not v:
        raise InternalConsistencyError(f"component {g} is not of degree {g}: {v}", v.witness)
    return fg


@dataclass
class HomDecomposition:
    hom: ModuleHom
    parts: dict
    verdict: Verdict

    @property
    def support(self) -> tuple:
        return tuple(g for g, p in self.parts.items() if not p.is_zero())


def decompose_hom(f: ModuleHom) -> HomDecomposition:
    """All components, with sum, degree, and directness checks.

    The source must be finitely generated with itself as candidate
    generating set; homs twisted by a Gamma automorphism are not accepted.
    """
    M = f.source
    _require_group(M)
    gen = check_finitely_generated(M.module, M.carrier.elements)
    if not gen.verdict:
        raise PreconditionError(f"source is not finitely generated: {gen.verdict}", gen.verdict.witness)
    v = check_hom(f)
    if not v:
        raise PreconditionError(f"not a module hom: {v}", v.witness)
    parts = {g: component(f, g) for g in M.G.labels}
    verdict = Verdict.passed()
    total = zero_hom(M, f.target)
    for p in parts.values():
        total = total + p
    if total != f:
        x = next(x for x in M.carrier.elements if total.values[x] != f.values[x])
        verdict = Verdict.failed("sum", (x,))
    if verdict:
        for g, p in parts.items():
            if p.is_zero():
                continue
            others = [h for h in hom_degrees(p) if h != g]
            if others:
                verdict = Verdict.failed("direct", (g, others[0]))
                break
    return HomDecomposition(f, parts, verdict)


def enumerate_homs(M, K) -> list:
    """Every additive equivariant map ``M -> K``, sorted by value table.

    The result is checked to be closed under addition and negation.
    """
    Mf, Kf = _flat(M), _flat(K)
    if Mf.ring.carrier != Kf.ring.carrier or Mf.gamma != Kf.gamma:
        raise IncompatibleError("homs need modules over one ring", None)
    A, B = Mf.table, Kf.table
    posK = Kf.carrier._positions
    gi = np.arange(len(Mf.gamma))
    ri = np.arange(len(Mf.ring.carrier))
    found = []
    for values in additive_maps(Mf.carrier, Kf.carrier):
        f = np.array([posK[values[x]] for x in Mf.carrier.elements])
        require_budget(A.size, "equivariance scan")
        # f(r a x) == r a f(x)
        if np.array_equal(f[A], B[ri[:, None, None], gi[None, :, None], f[None, None, :]]):
            found.append(ModuleHom(M, K, values))
    found.sort(key=lambda h: h.key)
    keys = {h.key for h in found}
    for f in found:
        if (-f).key not in keys:
            raise InternalConsistencyError("Hom is not closed under negation", f.key)
        for g in found:
            if (f + g).key not in keys:
                raise InternalConsistencyError("Hom is not closed under addition", (f.key, g.key))
    return found


@dataclass
class EndRing:
    """``End(M)`` under pointwise addition and composition, graded by degree."""

    module: GradedGammaModule
    elements: list
    components: dict
    verdict: Verdict

    def index(self, f: ModuleHom) -> int:
        return self.elements.index(f)

    def compose_table(self) -> list:
        return [[self.index(f.compose(g)) for g in self.elements] for f in self.elements]

    def degree_table(self) -> dict:
        """Degree of ``f o g`` for nonzero homogeneous f, g, keyed by their degrees."""
        out = {}
        for h1, fs in self.components.items():
            for h2, gs in self.components.items():
                degs = set()
                for f in fs:
                    for g in gs:
                        fg = f.compose(g)
                        if not fg.is_zero():
                            degs.update(hom_degrees(fg))
                out[(h1, h2)] = tuple(sorted(degs))
        return out


def endomorphism_graded_ring(M: GradedGammaModule) -> EndRing:
    """Ring laws, the degree decomposition, and ``deg(f o g) = deg f * deg g``.

    Witnesses: ``closure (i, j)``, ``associativity (i, j, k)``,
    ``distributivity (i, j, k)``, ``decomposition (i,)``, ``degree (h1, h2, i, j)``.
    """
    _require_group(M)
    homs = enumerate_homs(M, M)
    require_budget(len(homs) ** 3, "End ring laws")
    keys = {f.key: i for i, f in enumerate(homs)}
    G = M.G
    components = {h: [f for f in homs if degree_of_hom(f, h)] for h in G.labels}
    verdict = Verdict.passed()

    comp = {}
    for i, f in enumerate(homs):
        for j, g in enumerate(homs):
            k = keys.get(f.compose(g).key)
            if k is None:
                verdict = Verdict.failed("closure", (i, j))
                break
            comp[(i, j)] = k
        if not verdict:
            break
    if verdict:
        add = {(i, j): keys[(f + g).key] for i, f in enumerate(homs) for j, g in enumerate(homs)}
        n = len(homs)
        for i, j, k in itertools.product(range(n), repeat=3):
            if comp[(comp[(i, j)], k)] != comp[(i, comp[(j, k)])]:
                verdict = Verdict.failed("associativity", (i, j, k))
                break
            if comp[(i, add[(j, k)])] != add[(comp[(i, j)], comp[(i, k)])] or comp[(add[(i, j)], k)] != add[(comp[(i, k)], comp[(j, k)])]:
                verdict = Verdict.failed("distributivity", (i, j, k))
                break
    if verdict:
        product = 1
        for fs in components.values():
            product *= len(fs)
        if product != len(homs):
            verdict = Verdict.failed("decomposition", ("order", len(homs), product))
        else:
            for i, f in enumerate(homs):
                if not decompose_hom(f).verdict:
                    verdict = Verdict.failed("decomposition", (i,))
                    break
    if verdict:
        for h1, h2 in itertools.product(G.labels, repeat=2):
            target = G.mul(h1, h2)
            for f in components[h1]:
                for g in components[h2]:
                    if not degree_of_hom(f.compose(g), target):
                        verdict = Verdict.failed("degree", (h1, h2, keys[f.key], keys[g.key]))
                        break
                if not verdict:
                    break
            if not verdict:
                break
    return EndRing(M, homs, components, verdict)


__all__ = [
    "EndRing",
    "HomDecomposition",
    "ModuleHom",
    "check_hom",
    "component",
    "decompose_hom",
    "degree_of_hom",
    "endomorphism_graded_ring",
    "enumerate_homs",
    "hom_degrees",
    "identity_hom",
    "make_hom",
    "zero_hom",
]
