import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalib.abelian import (
    FiniteAbelianGroup,
    FiniteSemigroup,
    ProductGroup,
    QuotientGroup,
    SemigroupMap,
    Subgroup,
    cyclic_decomposition,
    cyclic_group,
    quotient_semigroup,
    segment_monoid,
    subgroup_generated,
    subgroups_between,
    to_cyclic,
    zero_subgroup,
)
from gammalib.errors import InvalidSubgroupError, NonAssociativeError, NotCommutativeError, NotHomomorphismError

import oracles

moduli = st.lists(st.integers(1, 4), min_size=0, max_size=3)


def test_z4_arithmetic():
    Z4 = FiniteAbelianGroup([4])
    assert Z4.elements == ((0,), (1,), (2,), (3,))
    assert Z4.add((3,), (2,)) == (1,)
    assert Z4.neg((1,)) == (3,)
    assert Z4.element_order((2,)) == 2


def test_empty_moduli_is_trivial():
    T = FiniteAbelianGroup([])
    assert len(T) == 1 and T.zero == ()


@given(moduli)
def test_group_laws(ms):
    A = FiniteAbelianGroup(ms)
    xs = A.elements
    assert len(xs) == A.order
    for x in xs:
        assert A.add(x, A.neg(x)) == A.zero
        for y in xs:
            assert A.add(x, y) == A.add(y, x)


def test_subgroup_must_be_closed():
    Z4 = FiniteAbelianGroup([4])
    with pytest.raises(InvalidSubgroupError):
        Subgroup(Z4, [(0,), (1,)])
    assert len(Subgroup(Z4, [(0,), (2,)])) == 2


def test_quotient_uses_least_representatives():
    Z4 = FiniteAbelianGroup([4])
    Q = QuotientGroup(Z4, Subgroup(Z4, [(0,), (2,)]))
    assert Q.elements == ((0,), (1,))
    assert Q.reduce((3,)) == (1,)
    assert Q.add((1,), (1,)) == (0,)


def test_subgroups_of_klein_four():
    V = FiniteAbelianGroup([2, 2])
    subs = subgroups_between(zero_subgroup(V), Subgroup(V, V.elements))
    assert [len(s) for s in subs] == [1, 2, 2, 2, 4]


@settings(max_examples=30)
@given(moduli)
def test_to_cyclic_is_an_isomorphism(ms):
    A = FiniteAbelianGroup(ms)
    sub = subgroup_generated(A, A.elements[-1:]) if A.elements else zero_subgroup(A)
    for G in (A, ProductGroup([A, A]) if len(A) <= 4 else A, QuotientGroup(A, sub)):
        C, fwd, back = to_cyclic(G)
        assert len(C) == len(G)
        assert set(fwd.values()) == set(C.elements)
        for x, y in itertools.product(G.elements, repeat=2):
            assert fwd[G.add(x, y)] == C.add(fwd[x], fwd[y])
            assert back[fwd[x]] == x


def test_cyclic_decomposition_of_z2_z4():
    G = QuotientGroup(FiniteAbelianGroup([4, 4]), Subgroup(FiniteAbelianGroup([4, 4]), [(0, 0), (2, 2)]))
    orders = sorted(n for _, n in cyclic_decomposition(G))
    assert orders == [2, 4]


def _magmas(n):
    for flat in itertools.product(range(n), repeat=n * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(n)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_semigroup_check_matches_brute_force(n):
    labels = [str(i) for i in range(n)]
    seen = 0
    for table in _magmas(n):
        expected = oracles.is_associative(table)
        try:
            FiniteSemigroup(labels, table)
            got = True
        except NonAssociativeError:
            got = False
        assert got == expected, table
        seen += expected
    assert seen == {1: 1, 2: 8, 3: 113}[n]


def test_noncommutative_semigroup_rejected_when_required():
    # left-zero band
    table = [[0, 0], [1, 1]]
    assert not FiniteSemigroup(["a", "b"], table).is_commutative
    with pytest.raises(NotCommutativeError):
        FiniteSemigroup(["a", "b"], table, require_abelian=True)


def test_cyclic_and_segment():
    C4 = cyclic_group(4)
    assert C4.labels == ("e", "g", "g^2", "g^3")
    assert C4.is_group and C4.inverse("g") == "g^3"
    S = segment_monoid(2)
    assert S.mul("1", "2") == "2" and S.identity == "0" and not S.is_group


def test_semigroup_map_checks_multiplicativity():
    C2, C4 = cyclic_group(2), cyclic_group(4)
    with pytest.raises(NotHomomorphismError):
        SemigroupMap(C4, C2, {"e": "e", "g": "g", "g^2": "g", "g^3": "g"})
    phi = SemigroupMap(C4, C2, {"e": "e", "g": "g", "g^2": "e", "g^3": "g"})
    assert phi.is_onto and phi.fiber("e") == ("e", "g^2")


def test_quotient_semigroup():
    Q, pi = quotient_semigroup(cyclic_group(4), ["e", "g^2"])
    assert Q.labels == ("e", "g") and pi("g^3") == "g"
