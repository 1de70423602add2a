import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalib import corpus
from gammalib.abelian import FiniteAbelianGroup, Subgroup, subgroups_between, zero_subgroup
from gammalib.module import (
    FilteredModule,
    GammaModule,
    GradedGammaModule,
    check_bimodule,
    check_filtered_module,
    check_finitely_generated,
    check_graded_module,
    check_module_axioms,
    check_submodule,
    check_zero_laws,
    gr_module,
    identity_bimodule_grading,
    intersect_chain,
    is_unitary,
    maximal_graded_submodule,
    quotient_module,
    regular_bimodule,
    regular_module,
    right_module,
    submodule_generated,
    table_module,
    trivial_module_grading,
    zero_action_module,
)
from gammalib.ring import integer_gamma_ring, opposite

import oracles

O, E1, G1, EG = (0, 0), (1, 0), (0, 1), (1, 1)
Z2G = integer_gamma_ring(2)


def rc2_graded():
    return corpus.graded_modules()["RC2"]


def test_zero_action_passes():
    assert check_module_axioms(zero_action_module(Z2G, FiniteAbelianGroup([3, 2])))


def test_regular_module_passes():
    M = regular_module(Z2G)
    assert check_module_axioms(M) and oracles.module_law(M) is None


def test_doubling_action_on_z4_fails_law_iv():
    M = GammaModule(Z2G, FiniteAbelianGroup([4]), lambda r, a, m: ((2 * r[0] * a[0] * m[0]) % 4,))
    v = check_module_axioms(M)
    assert not v and v.law == "iv"
    assert oracles.module_law(M) == "iv"
    assert v.witness == ((1,), (1,), (1,), (1,), (1,))


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 3)), st.integers(0, 3), max_size=5))
def test_module_check_agrees_with_oracle(entries):
    values = {((r,), (a,), (m,)): (v,) for (r, a, m), v in entries.items()}
    M = table_module(Z2G, FiniteAbelianGroup([4]), values)
    v = check_module_axioms(M)
    assert bool(v) == (oracles.module_law(M) is None)
    if not v:
        assert v.law == oracles.module_law(M)


@pytest.mark.parametrize("name", sorted(corpus.modules()))
def test_corpus_modules(name):
    M = corpus.modules()[name]
    assert check_module_axioms(M) and check_zero_laws(M)
    assert oracles.module_law(M) is None


def test_graded_modules():
    assert check_graded_module(rc2_graded())
    assert check_graded_module(corpus.graded_modules()["RC2-swapped"])
    t = corpus.gradings()["T"]
    assert check_graded_module(trivial_module_grading(t, regular_module(t.ring)))


def test_everything_in_degree_e_needs_a_trivially_acting_ring():
    g = corpus.gradings()["RC2"]
    v = check_graded_module(trivial_module_grading(g, regular_module(g.ring)))
    assert not v and v.witness == ("g", "e", G1, (1,), G1)


def test_bad_module_grading_fails():
    g = corpus.gradings()["RC2"]
    gm = GradedGammaModule(g, regular_module(g.ring), {"e": [O, EG], "g": [O, G1]})
    v = check_graded_module(gm)
    assert not v and v.law == "containment"


def test_submodules():
    M = corpus.modules()["RC2"]
    assert check_submodule(M, [O, EG])
    v = check_submodule(M, [O, G1])
    assert not v and v.witness == (G1, (1,), G1)
    assert check_submodule(M, [O])
    assert submodule_generated(M, [G1]).members == frozenset(M.carrier.elements)


def test_quotient_module_sum_not_direct():
    res = quotient_module(rc2_graded(), [O, EG])
    assert len(res.graded.carrier) == 2
    assert res.component_orders == {"e": (2, 2), "g": (2, 2)}
    assert not res.direct and res.direct.law == "direct-sum"


def test_quotient_module_trivial_cases():
    gm = rc2_graded()
    res = quotient_module(gm, [O])
    assert res.verdict and len(res.graded.carrier) == 4
    res = quotient_module(gm, gm.carrier.elements)
    assert res.verdict and len(res.graded.carrier) == 1


def test_maximal_graded_submodule():
    gm = rc2_graded()
    assert maximal_graded_submodule(gm, [O, EG]).submodule.members == frozenset({O})
    whole = maximal_graded_submodule(gm, gm.carrier.elements)
    assert len(whole.submodule) == 4


def test_finite_generation():
    M = corpus.modules()["RC2"]
    assert check_finitely_generated(M, [E1]).verdict
    Z = zero_action_module(Z2G, FiniteAbelianGroup([3]))
    res = check_finitely_generated(Z, [(1,)])
    assert not res.verdict and res.reached.members == frozenset({(0,)})
    assert check_finitely_generated(regular_module(Z2G), [(1,)]).verdict


def test_unitary():
    assert is_unitary(corpus.modules()["RC2"])
    assert not is_unitary(zero_action_module(Z2G, FiniteAbelianGroup([2])))


def test_filtered_modules():
    fm = corpus.filtered_modules()["Z4F"]
    assert check_filtered_module(fm)
    assert check_filtered_module(corpus.filtered_modules()["RC2-submodules"])
    short = FilteredModule(fm.filtration, fm.module, [[(0,), (2,)]])
    v = check_filtered_module(short)
    assert not v and v.law == "exhaustive"


def test_gr_module_of_z4():
    gm = gr_module(corpus.filtered_modules()["Z4F"])
    assert [len(q) for q in gm.quotients] == [2, 2]
    assert check_graded_module(gm.graded)
    two = gm.gr_ring.class_of(0, (2,))
    one = gm.class_of(1, (1,))
    assert gm.graded.act(two, (1,), one) == gm.graded.carrier.zero


def test_gr_module_of_trivial_filtration():
    gm = gr_module(corpus.filtered_modules()["RC2-trivial"])
    assert [len(q) for q in gm.quotients] == [4, 1]


def test_gr_module_matches_grading_sizes():
    gm = gr_module(corpus.filtered_modules()["P2"])
    assert [len(q) for q in gm.quotients] == [2, 2, 2]


def test_intersections():
    assert intersect_chain(corpus.filtered_modules()["Z4F"]).subgroup.members == frozenset({(0,), (2,)})
    assert intersect_chain(corpus.filtered_modules()["RC2-trivial"])
    dm = corpus.descending_module_chains()["Z4G/2"]
    inter = intersect_chain(dm)
    assert inter and inter.subgroup.members == frozenset({(0,)})


def test_ascending_intersection_can_fail_to_be_submodule():
    # the chain's lowest level is the intersection; for P2 it is the constants
    inter = intersect_chain(corpus.filtered_modules()["P2"])
    assert inter.subgroup.members == frozenset({(0, 0, 0), (1, 0, 0)})
    assert not inter.verdict and inter.verdict.witness == ((0, 0, 1), (1,), (1, 0, 0))
    assert not oracles.submodule_closed(corpus.modules()["RC2"], [O, G1])


def test_bimodules():
    assert check_bimodule(regular_bimodule(corpus.rings()["RC2"]))
    bm, gradings = identity_bimodule_grading(corpus.gradings()["RC2"])
    assert check_bimodule(bm, gradings)
    R = corpus.rings()["M12"]
    assert check_bimodule(regular_bimodule(R))


def test_right_module_via_opposite():
    R = corpus.rings()["M12"]
    M = right_module(R, R.carrier, R.mul)
    assert check_module_axioms(M)
    assert M.ring.mul((1, 0), (0, 1), (0, 1)) == opposite(R).mul((1, 0), (0, 1), (0, 1))


def test_graded_part_is_an_interior_operator():
    gm = corpus.graded_modules()["Z2GC4"]
    M = gm.carrier
    subs = [s for s in subgroups_between(zero_subgroup(M), Subgroup(M, M.elements)) if check_submodule(gm.module, s)]
    inner = {s.members: maximal_graded_submodule(gm, s).submodule.members for s in subs}
    for s in subs:
        k = inner[s.members]
        assert k <= s.members
        assert maximal_graded_submodule(gm, list(k)).submodule.members == k
        for t in subs:
            if s.members <= t.members:
                assert k <= inner[t.members]
