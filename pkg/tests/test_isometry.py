"""Isometry groups, isometry testing, invariant/coinvariant splitting."""

import pytest

from klat.isometry import (Isometry, IsometryError, are_isometric,
                           invariant_coinvariant, orthogonal_group,
                           restricted_group, short_vectors)
from klat.lattices import make_lattice, rescale
from klat import kummer


def test_short_vectors_a2():
    a2 = make_lattice("A2")
    roots = [v for v, n in short_vectors(a2, 2) if n == 2]
    # one representative per +- pair: A2 has 6 roots
    assert len(roots) == 3


def test_orthogonal_group_orders():
    # O(A2) is the dihedral group of order 12, O(A1) = {+-1}
    assert orthogonal_group(make_lattice("A1")).order == 2
    assert orthogonal_group(make_lattice("A2")).order == 12
    assert orthogonal_group(make_lattice("A1+A1")).order == 8


def test_restricted_group_orders():
    # determinant one and trivial discriminant action
    assert restricted_group(make_lattice("A2")).order == 3
    assert restricted_group(make_lattice("A1+A1")).order == 2
    assert restricted_group(make_lattice("D4")).order == 96


def test_are_isometric():
    a = make_lattice("A1+A1")
    b = make_lattice(((2, 0), (0, 2)))
    w = are_isometric(a, b)
    assert w is not None
    assert are_isometric(make_lattice("A2"), b) is None
    # the witness really transforms one Gram into the other
    from klat import intlinalg as la
    m = [list(r) for r in w]
    lhs = la.mat_mul(la.mat_mul(la.transpose(m), a.gram_rows()), m)
    assert la.mat_eq(lhs, b.gram_rows())


def test_invariant_coinvariant_involution():
    g = kummer.involution_from_recipe(("id", "id", "neg", "neg"))
    t_sub, s_sub, a, m = invariant_coinvariant(g)
    assert t_sub.rank == 4 and s_sub.rank == 4
    assert a == 0 and m == 4
    amb = g.lattice
    for t in t_sub.basis:
        for s in s_sub.basis:
            assert amb.inner(t, s) == 0


def test_invariant_coinvariant_glued_involution():
    g = kummer.involution_from_recipe(("sw", "sw", "neg", "neg"))
    t_sub, s_sub, a, m = invariant_coinvariant(g)
    assert (t_sub.rank, s_sub.rank) == (2, 6)
    assert a == 2 and m == 6


def test_invariant_coinvariant_rejects_identity():
    amb = make_lattice("U")
    ident = Isometry(amb, ((1, 0), (0, 1)))
    with pytest.raises(IsometryError):
        invariant_coinvariant(ident)


def test_non_isometry_matrix_rejected():
    with pytest.raises(IsometryError):
        Isometry(make_lattice("U"), ((1, 1), (0, 1)))


def test_shipped_odd_order_isometries_load():
    shipped = kummer.shipped_isometries()
    orders = {name: g.order() for name, g in shipped.items()}
    assert sum(1 for o in orders.values() if o == 2) == 12
    assert {o for n, o in orders.items() if "order3" in n} == {3}
    assert {o for n, o in orders.items() if "order5" in n} == {5}
    assert {o for n, o in orders.items() if "order7" in n} == {7}
