"""Core lattice construction and sublattice machinery."""

import pytest

from klat.lattices import (Lattice, LatticeError, Sublattice, direct_sum,
                           discriminant_group, divisibility, make_lattice,
                           orthogonal_complement, rescale, saturate,
                           signature, span, is_primitive)


def test_make_lattice_tokens():
    u = make_lattice("U")
    assert u.gram == ((0, 1), (1, 0))
    assert make_lattice("U(2)").gram == ((0, 2), (2, 0))
    assert make_lattice("<-6>").gram == ((-6,),)
    assert make_lattice("A1").gram == ((2,),)
    assert make_lattice("A2").gram == ((2, -1), (-1, 2))
    assert make_lattice("E8").rank == 8
    assert abs(make_lattice("E8").det()) == 1


def test_make_lattice_sums_and_scaling():
    l = make_lattice("U+U(2)+<-6>")
    assert l.rank == 5
    assert signature(l) == (2, 3)
    assert make_lattice("A2(-1)").gram == ((-2, 1), (1, -2))
    assert rescale(make_lattice("U"), 3).gram == ((0, 3), (3, 0))


def test_odd_gram_rejected():
    with pytest.raises(LatticeError):
        Lattice(((1, 0), (0, 2)))
    with pytest.raises(LatticeError):
        Lattice(((2, 1), (0, 2)))  # not symmetric


def test_determinants():
    assert make_lattice("U").det() == -1
    assert make_lattice("A2").det() == 3
    assert make_lattice("D4").det() == 4
    assert make_lattice("A4").det() == 5
    assert make_lattice("U+U+U+<-6>").det() == 6


def test_discriminant_group_orders():
    disc = discriminant_group(make_lattice("U+U+U+<-6>"))
    assert disc.cyclic_orders == (6,)
    disc = discriminant_group(make_lattice("U(2)+U(2)"))
    assert disc.cyclic_orders == (2, 2, 2, 2)
    assert discriminant_group(make_lattice("E8")).cyclic_orders == ()


def test_divisibility():
    l = make_lattice("U+U+U+<-6>")
    assert divisibility(l, (1, 0, 0, 0, 0, 0, 0)) == 1
    # the <-6> generator pairs only in multiples of 6
    assert divisibility(l, (0, 0, 0, 0, 0, 0, 1)) == 6
    assert divisibility(l, (0, 0, 0, 0, 0, 2, -1)) == 2
    assert divisibility(l, (0, 0, 0, 0, 0, 3, -1)) == 3


def test_saturation_and_primitivity():
    l = make_lattice("U+U")
    sub = span(l, [(2, 0, 0, 0)])
    assert not is_primitive(sub)
    sat = saturate(sub)
    assert sat.basis == ((1, 0, 0, 0),)
    assert is_primitive(sat)


def test_orthogonal_complement():
    l = make_lattice("U+U")
    sub = span(l, [(1, 1, 0, 0)])  # square 2
    comp = orthogonal_complement(sub)
    assert comp.rank == 3
    for c in comp.basis:
        assert l.inner((1, 1, 0, 0), c) == 0
    assert comp.as_lattice().det() != 0


def test_sublattice_membership():
    l = make_lattice("U+U")
    sub = span(l, [(1, 1, 0, 0), (0, 0, 1, 1)])
    assert sub.contains((1, 1, 1, 1))
    assert not sub.contains((1, 0, 0, 0))


def test_direct_sum():
    s = direct_sum(make_lattice("A1"), make_lattice("A2"))
    assert s.rank == 3
    assert s.det() == 6
