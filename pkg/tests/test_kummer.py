"""Kummer-fourfold setting: context, walls, monodromy, verifiers."""

import pytest

from klat import kummer
from klat.lattices import (LatticeError, divisibility, make_lattice,
                           rescale, signature)


def test_make_context():
    ctx = kummer.make_context(2)
    assert ctx.lattice.rank == 7
    assert signature(ctx.lattice) == (3, 4)
    assert ctx.lattice.det() == 6
    assert ctx.ambient.norm(ctx.mukai_vector) == 6
    assert ctx.ambient.inner(ctx.mukai_vector, ctx.delta_image) == 0


def test_wall_divisor_predicate():
    ctx = kummer.make_context(2)
    # the <-6> generator itself: square -6, divisibility 6
    is_wall, kind = kummer.is_wall_divisor(ctx, (0, 0, 0, 0, 0, 0, 1))
    assert is_wall
    # divisibility 1 classes of square -6 are not walls
    v = (0, 0, 0, 0, 0, 1, -1)
    assert ctx.lattice.norm(v) == -6 and divisibility(ctx.lattice, v) == 1
    assert not kummer.is_wall_divisor(ctx, v)[0]
    # wrong square
    assert not kummer.is_wall_divisor(ctx, (1, 0, 0, 0, 0, 0, 0))[0]


def test_family_dimension():
    # order-2 actions: rank(S)-2; odd p: rank(S)/(p-1)-1
    assert kummer.family_dimension(2, make_lattice("U+U")) == 2
    assert kummer.family_dimension(3, make_lattice("A2")) == 0
    assert kummer.family_dimension(
        5, make_lattice("A1+A1+A1+A1")) == 0
    assert kummer.family_dimension(
        7, make_lattice("U+U+<2>+<2>")) == 0


def test_has_trivial_divisibility():
    from klat.lattices import span
    l = make_lattice("U+U+U+<-6>")
    good = span(l, [(1, -1, 0, 0, 0, 0, 0)])
    assert kummer.has_trivial_divisibility(good)
    bad = span(l, [(0, 0, 0, 0, 0, 0, 1)])
    assert not kummer.has_trivial_divisibility(bad)


def test_monodromy_predicate():
    ctx = kummer.make_context(2)
    import klat.intlinalg as la
    ident = tuple(tuple(r) for r in la.identity(7))
    from klat.isometry import Isometry
    assert kummer.is_monodromy(Isometry(ctx.lattice, ident))
    assert not kummer.is_monodromy(
        Isometry(ctx.lattice, tuple(tuple(-x for x in r) for r in ident)))


def test_pinned_expectations_load():
    pinned = kummer.load_pinned_expectations()
    assert pinned[("3.3", "1", "d")] == "analytically-impossible"
    assert pinned[("3.1", "7.1", "a")] == "mismatch"
    assert pinned[("5-embed", "A4b", "T")] == "analytically-impossible"


def test_verify_small_table():
    rows = kummer.verify_tables("2.3")
    assert len(rows) == 4
    assert all(r.status == "verified" for r in rows)


def test_unknown_table_rejected():
    with pytest.raises(LatticeError):
        kummer.verify_tables("9.9")


def test_prime_glue_feasibility():
    ambient = kummer._kummer_fourfold_lattice()
    a4n = rescale(make_lattice("A4"), -1)
    ok = kummer._make_printed(((2, 0, 0), (0, 2, -1), (0, -1, 8)))
    bad = kummer._make_printed(((2, -1, 0), (-1, 2, 0), (0, 0, 10)))
    assert kummer._prime_glue_feasible(ok, a4n, ambient) is True
    assert kummer._prime_glue_feasible(bad, a4n, ambient) is False


def test_row_status_logic():
    row = kummer.ClassificationRow("t", "r", {"x": 1, "y": 2})
    row.recomputed["x"] = 1
    row.recomputed["y"] = 3
    row.finish()
    assert row.cell_status == {"x": "verified", "y": "mismatch"}
    assert row.status == "mismatch"
