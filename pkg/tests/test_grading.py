import pytest

from gammalib import corpus
from gammalib.abelian import cyclic_group, trivial_group
from gammalib.errors import UnsupportedStructureError
from gammalib.grading import (
    GradedGammaRing,
    check_internal_grading,
    coarsen_by_quotient,
    crossed_product_check,
    graded_ideal_check,
    homogeneous_inverse_check,
    identity_component_facts,
    opposite_grading,
    product_grading,
    regrade_epimorphism,
    restrict_subsemigroup,
    strong_criterion_unit,
    strong_pushforward_check,
    strongly_graded_check,
    trivial_grading,
)
from gammalib.ring import Unity, check_axioms, find_isomorphism, integer_gamma_ring

import oracles

O, E1, G1, EG = (0, 0), (1, 0), (0, 1), (1, 1)
ONE = Unity(E1, (1,))


def rc2():
    return corpus.gradings()["RC2"]


def z2c4():
    return corpus.gradings()["Z2GC4"]


def z2_over_c2():
    return trivial_grading(integer_gamma_ring(2), cyclic_group(2))


def test_canonical_rc2_grading():
    g = rc2()
    assert set(g.components["e"].elements) == {O, E1}
    assert set(g.components["g"].elements) == {O, G1}
    assert check_internal_grading(g)


def test_trivial_grading_passes():
    assert check_internal_grading(z2_over_c2())


def test_bad_components_fail_containment():
    ring = corpus.rings()["RC2"]
    bad = GradedGammaRing(ring, cyclic_group(2), {"e": [O, EG], "g": [O, G1]})
    v = check_internal_grading(bad)
    assert not v and v.law == "containment"
    comps = {"e": {O, EG}, "g": {O, G1}}
    assert oracles.grading_law(ring, cyclic_group(2), comps) == "containment"


def test_decompose():
    assert rc2().decompose(EG) == {"e": E1, "g": G1}
    assert rc2().decompose(O) == {}
    pg = corpus.gradings()["RC2xRC2"]
    assert pg.decompose((1, 0, 0, 1)) == {"e": (1, 0, 0, 0), "g": (0, 0, 0, 1)}


def test_regrade_c4_to_c2():
    out = regrade_epimorphism(z2c4(), corpus.epimorphisms()["C4->C2"])
    assert len(out.components["e"]) == 4 and len(out.components["g"]) == 4
    src = z2c4()
    assert out.components["e"].members == frozenset(
        {src.carrier.add(x, y) for x in src.components["e"].elements for y in src.components["g^2"].elements}
    )


def test_regrade_identity_and_collapse():
    same = regrade_epimorphism(rc2(), corpus.epimorphisms()["id_C2"])
    assert {g: c.members for g, c in same.components.items()} == {g: c.members for g, c in rc2().components.items()}
    collapsed = regrade_epimorphism(rc2(), corpus.epimorphisms()["C2->1"])
    assert len(collapsed.components["e"]) == 4


def test_restrict():
    Re = restrict_subsemigroup(rc2(), ["e"])
    assert len(Re.carrier) == 2 and find_isomorphism(Re.ring, integer_gamma_ring(2)) is not None
    half = restrict_subsemigroup(z2c4(), ["e", "g^2"])
    assert len(half.carrier) == 4 and half.G == cyclic_group(4).subsemigroup(["e", "g^2"])
    assert check_internal_grading(half)
    whole = restrict_subsemigroup(rc2(), ["e", "g"])
    assert len(whole.carrier) == 4


def test_coarsen():
    out = coarsen_by_quotient(z2c4(), ["e", "g^2"])
    assert [len(out.components[g]) for g in out.G.labels] == [4, 4]
    same = coarsen_by_quotient(z2c4(), ["e"])
    assert len(same.G) == 4
    flat = coarsen_by_quotient(z2c4(), list(cyclic_group(4).labels))
    assert len(flat.G) == 1 and len(flat.components["e"]) == 16


def test_coarsen_needs_group():
    with pytest.raises(UnsupportedStructureError):
        coarsen_by_quotient(corpus.gradings()["P2"], ["0"])


@pytest.mark.parametrize("name", ["RC2", "Z2G/C2", "Z2GC4"])
def test_identity_component(name):
    facts = identity_component_facts(corpus.gradings()[name])
    assert facts["subring"] and facts["unity_in_Re"]


def test_homogeneous_inverses():
    assert homogeneous_inverse_check(rc2(), ONE, G1) == "g"
    assert homogeneous_inverse_check(rc2(), ONE, E1) == "e"
    g = z2c4()
    x = g.homogeneous("g")[0]
    assert homogeneous_inverse_check(g, Unity(g.homogeneous("e")[0], (1,)), x) == "g^3"


def test_graded_ideals():
    assert not graded_ideal_check(rc2(), [O, EG])
    res = graded_ideal_check(rc2(), [O])
    assert res and find_isomorphism(res.quotient.ring, rc2().ring) is not None
    pg = corpus.gradings()["RC2xRC2"]
    first = [(a, b, 0, 0) for a in (0, 1) for b in (0, 1)]
    res = graded_ideal_check(pg, first)
    assert res and len(res.quotient.carrier) == 4 and check_internal_grading(res.quotient)


def test_opposite_and_product_gradings():
    assert check_internal_grading(opposite_grading(rc2()))
    op = opposite_grading(z2c4())
    assert op.components["g"].members == z2c4().components["g^3"].members
    assert check_internal_grading(product_grading([rc2(), rc2()]))


def test_strongly_graded():
    assert strongly_graded_check(rc2())
    assert strongly_graded_check(z2c4())
    v = strongly_graded_check(z2_over_c2())
    assert not v and v.witness == ("g", "g")


def test_unit_criterion():
    crit, strong = strong_criterion_unit(rc2(), ONE)
    assert crit and strong
    crit, strong = strong_criterion_unit(z2_over_c2(), Unity((1,), (1,)))
    assert not crit and not strong


def test_crossed_products():
    rep = crossed_product_check(rc2(), ONE)
    assert rep.crossed and set(rep.unit_support) == {"e", "g"} and rep.strong
    rep = crossed_product_check(z2_over_c2(), Unity((1,), (1,)))
    assert not rep.crossed and rep.unit_support == ("e",)
    assert not rep.verdict and rep.verdict.witness == ("g",)
    g = z2c4()
    assert crossed_product_check(g, Unity(g.homogeneous("e")[0], (1,))).crossed


def test_strong_pushforward():
    ident = {x: x for x in rc2().carrier.elements}
    assert strong_pushforward_check(ident, rc2(), rc2())
    pg = corpus.gradings()["RC2xRC2"]
    proj = {x: x[2:] for x in pg.carrier.elements}
    assert strong_pushforward_check(proj, pg, rc2())


def test_trivial_group_grading_is_whole_ring():
    g = trivial_grading(corpus.rings()["M12"], trivial_group())
    assert check_internal_grading(g) and check_axioms(g.ring)
