import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammalib import corpus
from gammalib.abelian import FiniteAbelianGroup
from gammalib.errors import ClosureError, IdealError, IncompatibleError
from gammalib.ring import (
    GammaRing,
    Unity,
    check_axioms,
    check_phi_homomorphism,
    direct_product,
    find_isomorphism,
    find_unities,
    integer_gamma_ring,
    is_ideal,
    make_ideal,
    matrix_gamma_ring,
    opposite,
    polynomial_ring,
    quotient_by_ideal,
    semigroup_gamma_ring,
    table_ring,
    unit_group,
    zero_gamma_ring,
)
from gammalib.errors import BudgetError
from gammalib.verdict import enumeration_budget

import oracles

Z2 = FiniteAbelianGroup([2])
E1, G1, EG = (1, 0), (0, 1), (1, 1)


def rc2():
    return corpus.rings()["RC2"]


def test_z2_gamma_ring_passes():
    assert check_axioms(integer_gamma_ring(2))


def test_broken_zero_row_fails_left_distributivity():
    table = oracles.product_dict(integer_gamma_ring(2))
    table[((0,), (1,), (1,))] = (1,)
    v = check_axioms(table_ring(Z2, Z2, table))
    assert not v
    assert v.law == "left-distributivity"
    assert v.witness == ((0,), (0,), (1,), (1,))


def test_zero_product_passes():
    assert check_axioms(zero_gamma_ring(FiniteAbelianGroup([2, 3]), FiniteAbelianGroup([4])))


def test_escaping_product_raises_closure():
    ring = GammaRing(Z2, Z2, lambda x, a, y: (7,))
    with pytest.raises(ClosureError):
        check_axioms(ring)


def test_matrix_ring_counts_and_product():
    M = matrix_gamma_ring(2, 1, 2)
    assert len(M.carrier) == 4 and len(M.gamma) == 4
    assert M.mul((1, 0), (1, 1), (1, 1)) == (1, 1)
    assert check_axioms(M)


@pytest.mark.parametrize("k,m,n", [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2)])
def test_matrix_rings_pass(k, m, n):
    assert check_axioms(matrix_gamma_ring(k, m, n))


def test_direct_product_componentwise():
    Z2G = integer_gamma_ring(2)
    P = direct_product([Z2G, Z2G])
    assert P.mul((1, 0), (1,), (1, 1)) == (1, 0)
    assert check_axioms(P)
    single = direct_product([Z2G])
    assert find_isomorphism(single, Z2G) is not None


def test_direct_product_needs_shared_gamma():
    with pytest.raises(IncompatibleError):
        direct_product([integer_gamma_ring(2), integer_gamma_ring(4)])


def test_opposite():
    assert opposite(integer_gamma_ring(2)).mul((1,), (1,), (1,)) == (1,)
    M = matrix_gamma_ring(2, 1, 2)
    op = opposite(M)
    x, a, y = (1, 0), (0, 1), (0, 1)
    assert op.mul(x, a, y) == M.mul(y, a, x) != M.mul(x, a, y)
    assert oracles.product_dict(opposite(op)) == oracles.product_dict(M)


def test_rc2_products():
    R = rc2()
    assert len(R.carrier) == 4
    assert R.mul(E1, (1,), G1) == G1
    assert R.mul(EG, (1,), EG) == (0, 0)
    assert check_axioms(R)


def test_truncated_polynomial_product():
    P = polynomial_ring(integer_gamma_ring(2), 2)
    assert P.mul((1, 1, 0), (1,), (1, 1, 0)) == (1, 0, 1)
    for p in P.carrier.elements:
        for a in P.gamma.elements:
            assert P.mul(p, a, (0, 0, 0)) == (0, 0, 0)
    assert check_axioms(P)


def test_ideals_of_rc2():
    R = rc2()
    assert is_ideal(R, [(0, 0), EG], "two-sided")
    v = is_ideal(R, [(0, 0), G1], "left")
    assert not v and v.witness == (G1, (1,), G1)
    assert is_ideal(R, [(0, 0)], "two-sided")


def test_quotients():
    R = rc2()
    Q = quotient_by_ideal(R, make_ideal(R, [(0, 0), EG]))
    assert len(Q.carrier) == 2
    assert find_isomorphism(Q, integer_gamma_ring(2)) is not None
    assert find_isomorphism(quotient_by_ideal(R, [(0, 0)]), R) is not None
    assert len(quotient_by_ideal(R, R.carrier.elements).carrier) == 1


def test_make_ideal_rejects_non_ideal():
    with pytest.raises(IdealError):
        make_ideal(rc2(), [(0, 0), G1])


def test_unities():
    assert find_unities(integer_gamma_ring(2)) == [Unity((1,), (1,))]
    assert find_unities(zero_gamma_ring(Z2, Z2)) == []
    assert find_unities(rc2()) == [Unity(E1, (1,))]


def test_units():
    U = unit_group(integer_gamma_ring(4), Unity((1,), (1,)))
    assert set(U.units) == {(1,), (3,)} and U.inverse((3,)) == (3,)
    assert set(unit_group(integer_gamma_ring(2), Unity((1,), (1,))).units) == {(1,)}
    U = unit_group(rc2(), Unity(E1, (1,)))
    assert set(U.units) == {E1, G1} and U.inverse(G1) == G1


def test_phi_homomorphisms_on_z4():
    Z4 = integer_gamma_ring(4)
    ident = {x: x for x in Z4.carrier.elements}
    triple = {x: ((3 * x[0]) % 4,) for x in Z4.carrier.elements}
    assert check_phi_homomorphism(ident, Z4, Z4)
    assert check_phi_homomorphism(triple, Z4, Z4, triple)
    v = check_phi_homomorphism(triple, Z4, Z4)
    assert not v and v.witness == ((1,), (1,), (1,))


def test_budget_exceeded_raises():
    with enumeration_budget(10):
        with pytest.raises(BudgetError):
            check_axioms(rc2())


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 1), st.integers(0, 3)), st.integers(0, 3), max_size=6))
def test_check_axioms_agrees_with_oracle_on_random_tables(entries):
    R, G = FiniteAbelianGroup([4]), FiniteAbelianGroup([2])
    products = {((x,), (a,), (y,)): (v,) for (x, a, y), v in entries.items()}
    ring = table_ring(R, G, products)
    v = check_axioms(ring)
    law = oracles.gamma_ring_law(ring)
    assert bool(v) == (law is None)
    if not v:
        assert v.law.startswith(law)


@pytest.mark.parametrize("name", sorted(corpus.rings()))
def test_corpus_rings_pass(name):
    assert check_axioms(corpus.rings()[name])


def test_semigroup_ring_over_z4_with_c2():
    R = semigroup_gamma_ring(integer_gamma_ring(4), corpus.C2)
    assert len(R.carrier) == 16 and check_axioms(R)
