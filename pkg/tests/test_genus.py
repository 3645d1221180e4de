"""Genus invariants: p-elementary data, existence clauses, uniqueness."""

import pytest

from klat.genus import (NotPElementaryError, bcms_square_condition,
                        exists_2elementary_hyperbolic,
                        exists_pelementary_hyperbolic,
                        p_elementary_invariants, splits_off_U,
                        unique_in_genus)
from klat.discform import genus_equal
from klat.lattices import make_lattice


def test_two_elementary_invariants():
    inv = p_elementary_invariants(make_lattice("U(2)+U(2)"), 2)
    assert (inv.r, inv.a, inv.delta) == (4, 4, 0)
    inv = p_elementary_invariants(make_lattice("U+<2>+<-2>"), 2)
    assert (inv.r, inv.a, inv.delta) == (4, 2, 1)
    inv = p_elementary_invariants(make_lattice("U+U"), 2)
    assert (inv.r, inv.a) == (4, 0)


def test_odd_elementary_invariants():
    inv = p_elementary_invariants(make_lattice("A2"), 3)
    assert (inv.r, inv.a) == (2, 1)
    with pytest.raises(NotPElementaryError):
        p_elementary_invariants(make_lattice("U+U+U+<-6>"), 2)


def test_existence_clauses():
    # U and U(2) themselves are hyperbolic 2-elementary witnesses
    assert exists_2elementary_hyperbolic(2, 0, 0) == (True, None)
    assert exists_2elementary_hyperbolic(2, 2, 0) == (True, None)
    ok, reason = exists_2elementary_hyperbolic(2, 1, 0)
    assert not ok and reason
    assert exists_pelementary_hyperbolic(2, 2, 3) == (True, None)
    ok, reason = exists_pelementary_hyperbolic(2, 1, 3)
    assert not ok and reason


def test_splits_off_U():
    assert splits_off_U(make_lattice("U+U+<-2>+<-2>")) == "yes"
    assert splits_off_U(make_lattice("<2>+<2>")) != "yes"


def test_unique_in_genus():
    # indefinite with small discriminant length: unique
    assert unique_in_genus(make_lattice("U+U+<-6>")) == "yes"
    # definite lattices are out of scope for the uniqueness criterion
    assert unique_in_genus(make_lattice("<2>+<2>")) == "inconclusive"


def test_bcms_square_condition():
    # |det|/p^(p-2) must be a perfect square for a rank p-1 coinvariant
    assert bcms_square_condition(3, 2, 3)
    assert not bcms_square_condition(3, 2, 6)


def test_genus_equal_basics():
    assert genus_equal(make_lattice("U+U"), make_lattice("U+U"))
    assert not genus_equal(make_lattice("U+U"), make_lattice("U+U(2)"))
    # same signature and determinant but different discriminant forms
    assert not genus_equal(make_lattice("<2>+<6>"),
                           make_lattice("A2(2)"))
