import pytest

from gammalib import corpus
from gammalib.errors import PreconditionError, UnsupportedStructureError
from gammalib.hom import (
    check_hom,
    component,
    decompose_hom,
    degree_of_hom,
    endomorphism_graded_ring,
    enumerate_homs,
    hom_degrees,
    identity_hom,
    make_hom,
    zero_hom,
)
from gammalib.module import GradedGammaModule

import oracles

O, E1, G1, EG = (0, 0), (1, 0), (0, 1), (1, 1)


def M():
    return corpus.graded_modules()["RC2"]


def right_mult():
    ring = M().ring
    return make_hom(M(), M(), lambda m: ring.mul(m, (1,), G1))


def test_identity_is_hom():
    assert check_hom(identity_hom(M()))


def test_right_multiplication_is_swap():
    f = right_mult()
    assert check_hom(f)
    assert f(E1) == G1 and f(G1) == E1 and f(EG) == EG


def test_translation_fails_additivity():
    f = make_hom(M(), M(), lambda m: M().carrier.add(m, E1))
    v = check_hom(f)
    assert not v and v.law == "additivity" and v.witness == (O, O)


def test_degrees():
    assert degree_of_hom(identity_hom(M()), "e")
    assert degree_of_hom(right_mult(), "g")
    assert not degree_of_hom(identity_hom(M()), "g")
    assert hom_degrees(right_mult()) == ("g",)


def test_components():
    ident = identity_hom(M())
    assert component(ident, "e") == ident
    assert component(ident, "g").is_zero()
    f = right_mult()
    assert component(f, "g") == f and component(f, "e").is_zero()
    s = ident + f
    assert component(s, "e") == ident and component(s, "g") == f


def test_decompositions():
    assert set(decompose_hom(identity_hom(M())).support) == {"e"}
    assert set(decompose_hom(right_mult()).support) == {"g"}
    s = identity_hom(M()) + right_mult()
    d = decompose_hom(s)
    assert d.verdict and set(d.support) == {"e", "g"}
    total = d.parts["e"] + d.parts["g"]
    assert all(total(x) == s(x) for x in M().carrier.elements)


def test_components_need_group_grading():
    P2 = corpus.graded_modules()["P2"]
    with pytest.raises(UnsupportedStructureError):
        component(identity_hom(P2), "0")


def test_decompose_rejects_non_hom():
    f = make_hom(M(), M(), lambda m: E1 if m == G1 else O)
    with pytest.raises(PreconditionError):
        decompose_hom(f)


def test_enumerate_rc2_matches_brute_force():
    homs = enumerate_homs(M(), M())
    brute = oracles.all_homs(M().module, M().module)
    assert len(homs) == len(brute) == 4
    assert [h.key for h in homs] == sorted(tuple(f[x] for x in M().carrier.elements) for f in brute)
    by_degree = {h: sum(1 for f in homs if degree_of_hom(f, h)) for h in ("e", "g")}
    assert by_degree == {"e": 2, "g": 2}


@pytest.mark.parametrize("src,dst", [("Z2G", "Z2G"), ("Z4G", "Z4G"), ("M12", "M12"), ("Z2G", "zero-Z3")])
def test_enumerate_matches_brute_force(src, dst):
    A, B = corpus.modules()[src], corpus.modules()[dst]
    assert len(enumerate_homs(A, B)) == len(oracles.all_homs(A, B))


def test_homs_from_zero_module():
    Z = corpus.modules()["zero-0"]
    homs = enumerate_homs(Z, corpus.modules()["RC2"])
    assert len(homs) == 1 and homs[0].is_zero()


def test_end_ring():
    E = endomorphism_graded_ring(M())
    assert E.verdict and len(E.elements) == 4
    assert {h: len(fs) for h, fs in E.components.items()} == {"e": 2, "g": 2}
    assert E.degree_table() == {("e", "e"): ("e",), ("e", "g"): ("g",), ("g", "e"): ("g",), ("g", "g"): ("e",)}
    f = right_mult()
    assert f.compose(f) == identity_hom(M())


def test_end_of_zero_module_is_trivial():
    Z = corpus.graded_modules()["zero-0"]
    E = endomorphism_graded_ring(Z)
    assert E.verdict and len(E.elements) == 1


def test_zero_hom_and_negation():
    z = zero_hom(M(), M())
    assert z.is_zero() and -right_mult() == right_mult()
    assert isinstance(M(), GradedGammaModule)
