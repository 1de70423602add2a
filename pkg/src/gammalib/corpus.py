"""Small named structures used by tests, the acceptance suite, and examples."""

from __future__ import annotations

from functools import lru_cache

from .abelian import FiniteAbelianGroup, SemigroupMap, cyclic_group, trivial_group
from .filtration import Filtration, adic_chain, filtration_from_grading, trivial_filtration
from .grading import canonical_grading, opposite_grading, product_grading, trivial_grading
from .module import (
    FilteredModule,
    GradedGammaModule,
    adic_module_chain,
    filtered_module_from_grading,
    regular_graded_module,
    regular_module,
    zero_action_module,
)
from .ring import (
    direct_product,
    find_unities,
    integer_gamma_ring,
    matrix_gamma_ring,
    opposite,
    polynomial_ring,
    semigroup_gamma_ring,
    zero_gamma_ring,
)

C2 = cyclic_group(2)
C4 = cyclic_group(4)
ONE = trivial_group()


@lru_cache(maxsize=None)
def rings() -> dict:
    Z2 = integer_gamma_ring(2, name="Z2G")
    Z4 = integer_gamma_ring(4, name="Z4G")
    RC2 = semigroup_gamma_ring(Z2, C2, name="RC2")
    out = {
        "Z2G": Z2,
        "Z4G": Z4,
        "M12": matrix_gamma_ring(2, 1, 2, name="M12"),
        "RC2": RC2,
        "Z2GC4": semigroup_gamma_ring(Z2, C4, name="Z2GC4"),
        "Z2GxZ2G": direct_product([Z2, Z2], name="Z2GxZ2G"),
        "RC2xRC2": direct_product([RC2, RC2], name="RC2xRC2"),
        "opM12": None,
        "opRC2": None,
        "zero": zero_gamma_ring(FiniteAbelianGroup([2]), FiniteAbelianGroup([2]), name="zero"),
    }
    out["opM12"] = opposite(out["M12"], name="opM12")
    out["opRC2"] = opposite(RC2, name="opRC2")
    for D in range(4):
        out[f"P{D}"] = polynomial_ring(Z2, D, name=f"P{D}")
    return out


@lru_cache(maxsize=None)
def gradings() -> dict:
    R = rings()
    RC2 = canonical_grading(R["RC2"])
    out = {
        "RC2": RC2,
        "Z2GC4": canonical_grading(R["Z2GC4"]),
        "T": trivial_grading(R["RC2"], C2),
        "Z2G/1": trivial_grading(R["Z2G"], ONE),
        "Z2G/C2": trivial_grading(R["Z2G"], C2),
        "opRC2": opposite_grading(RC2),
        "RC2xRC2": product_grading([RC2, RC2]),
    }
    for D in range(4):
        out[f"P{D}"] = canonical_grading(R[f"P{D}"])
    return out


def segment_gradings() -> dict:
    """The gradings indexed by 0..D."""
    return {k: v for k, v in gradings().items() if k.startswith("P")}


@lru_cache(maxsize=None)
def epimorphisms() -> dict:
    """Onto maps C4 -> C2, C2 -> 1, and identities, keyed by name."""
    return {
        "C4->C2": SemigroupMap(C4, C2, {"e": "e", "g": "g", "g^2": "e", "g^3": "g"}),
        "C2->1": SemigroupMap(C2, ONE, {"e": "e", "g": "e"}),
        "id_C2": SemigroupMap(C2, C2, {"e": "e", "g": "g"}),
        "id_C4": SemigroupMap(C4, C4, {x: x for x in C4.labels}),
    }


def regrade_pairs() -> list:
    """Every (grading name, map name) with matching source semigroup."""
    out = []
    for gname, gr in gradings().items():
        for mname, phi in epimorphisms().items():
            if phi.domain == gr.G:
                out.append((gname, mname))
    return out


@lru_cache(maxsize=None)
def filtrations() -> dict:
    R = rings()
    Z4 = R["Z4G"]
    out = {
        "Z4F": Filtration(Z4, [[(0,), (2,)], Z4.carrier.elements]),
        "RC2-trivial": trivial_filtration(R["RC2"], 2),
        "Z2G-trivial": trivial_filtration(R["Z2G"]),
    }
    for D in range(4):
        out[f"P{D}"] = filtration_from_grading(gradings()[f"P{D}"])
    return out


@lru_cache(maxsize=None)
def modules() -> dict:
    R = rings()
    return {
        "Z2G": regular_module(R["Z2G"], name="Z2G"),
        "Z4G": regular_module(R["Z4G"], name="Z4G"),
        "RC2": regular_module(R["RC2"], name="RC2"),
        "M12": regular_module(R["M12"], name="M12"),
        "zero-Z3": zero_action_module(R["Z2G"], FiniteAbelianGroup([3]), name="zero-Z3"),
        "zero-0": zero_action_module(R["RC2"], FiniteAbelianGroup([1]), name="zero-0"),
    }


@lru_cache(maxsize=None)
def graded_modules() -> dict:
    G = gradings()
    RC2 = G["RC2"]
    m = modules()["RC2"]
    return {
        "RC2": regular_graded_module(RC2),
        "RC2-swapped": GradedGammaModule(RC2, m, {"e": [(0, 0), (0, 1)], "g": [(0, 0), (1, 0)]}),
        "T": GradedGammaModule(G["T"], m, {"e": m.carrier.elements}),
        "Z2GC4": regular_graded_module(G["Z2GC4"]),
        "P2": regular_graded_module(G["P2"]),
        "zero-0": GradedGammaModule(RC2, modules()["zero-0"], {}),
    }


@lru_cache(maxsize=None)
def filtered_modules() -> dict:
    F = filtrations()
    M = modules()
    P2 = graded_modules()["P2"]
    RC2 = M["RC2"]
    return {
        "Z4F": FilteredModule(F["Z4F"], M["Z4G"], F["Z4F"].chain),
        "RC2-submodules": FilteredModule(F["RC2-trivial"], RC2, [[(0, 0), (1, 1)], RC2.carrier.elements]),
        "RC2-trivial": FilteredModule(F["RC2-trivial"], RC2, [RC2.carrier.elements]),
        "P2": filtered_module_from_grading(P2, F["P2"]),
    }


@lru_cache(maxsize=None)
def descending_chains() -> dict:
    R = rings()
    return {
        "Z4G/2": adic_chain(R["Z4G"], [(0,), (2,)]),
        "Z4G/0": adic_chain(R["Z4G"], [(0,)]),
        "Z2G/R": adic_chain(R["Z2G"], R["Z2G"].carrier.elements),
    }


@lru_cache(maxsize=None)
def descending_module_chains() -> dict:
    M = modules()
    return {
        "Z4G/2": adic_module_chain(M["Z4G"], [(0,), (2,)]),
        "Z2G/R": adic_module_chain(M["Z2G"], M["Z2G"].carrier.elements),
    }


def group_graded_with_unity() -> dict:
    """Group-graded corpus rings that have a unity."""
    return {k: g for k, g in gradings().items() if g.G.is_group and find_unities(g.ring)}
