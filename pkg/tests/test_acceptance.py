"""Acceptance gate: the eight headline criteria, each with its runtime
budget.  Every criterion exercises the public API end to end; deviations
from the printed tables must match the shipped pinned-expectations list."""

import json
import random
import time
from fractions import Fraction
from itertools import product

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

import klat.intlinalg as la
from klat import kummer
from klat.cli import main
from klat.isometry import invariant_coinvariant, restricted_group, \
    short_vectors
from klat.lattices import (Lattice, Sublattice, discriminant_group,
                           divisibility, make_lattice, signature)


def _statuses_ok(rows):
    pinned = kummer.load_pinned_expectations()
    return kummer.unexplained_cells(rows, pinned) == []


def test_criterion_1_lambda_tables():
    """Tables of order-2 and odd prime actions on U^4: 7+5+4+1+1 rows,
    all verified, in under 10 seconds."""
    t0 = time.monotonic()
    rows = kummer.verify_lambda_tables("all")
    elapsed = time.monotonic() - t0
    assert elapsed < 10, elapsed
    assert len(rows) == 18
    assert all(r.status == "verified" for r in rows)


def test_criterion_2_fourfold_tables():
    """Fourfold tables at coordinate bound 6 in under 60 seconds; all
    cells verified except the pinned analytically-impossible and mismatch
    cells, which must carry the 3-torsion explanation."""
    t0 = time.monotonic()
    rows = kummer.verify_fourfold_tables("all", coord_bound=6)
    elapsed = time.monotonic() - t0
    assert elapsed < 60, elapsed
    # 7 + 7 + 1 rows for the non-symplectic fourfold tables with
    # trivial or minus-identity invariant action, 6 rows for the order-3
    # table with its two pinned d-cells
    by_table = {}
    for r in rows:
        by_table.setdefault(r.table_id, []).append(r)
    assert len(by_table["3.1"]) == 7
    assert len(by_table["3.2"]) == 7
    assert len(by_table["3.3"]) == 6
    assert len(by_table["3.4"]) == 1
    assert _statuses_ok(rows)
    impossible = [(r.table_id, r.row_label) for r in rows
                  if "analytically-impossible" in r.cell_status.values()]
    assert ("3.3", "1") in impossible and ("3.3", "4.2") in impossible
    for r in rows:
        if r.table_id == "3.3" and r.row_label in ("1", "4.2"):
            assert "torsion" in r.detail or "3" in r.detail


def test_criterion_3_symplectic_groups():
    """The 11 restricted isometry groups of the Dynkin lattices, by
    exhaustive backtracking, in under 120 seconds."""
    want = {"A1^2": 2, "A2": 3, "A1^3": 4, "A1+A2": 6, "A3": 12,
            "A1^4": 8, "A1^2+A2": 12, "A1+A3": 24, "A2^2": 18,
            "A4": 60, "D4": 96}
    t0 = time.monotonic()
    got = {}
    for label, spec, _, _ in kummer.TABLE_5_GROUPS:
        got[label] = restricted_group(make_lattice(spec)).order
    elapsed = time.monotonic() - t0
    assert elapsed < 120, elapsed
    assert got == want


def test_criterion_4_symplectic_embeddings():
    """Wall-free primitive embeddings for the symplectic table within
    coordinate bound <= 6 in under 300 seconds.  Nine of the ten rows
    match the printed complement (exact witness when definite, genus
    otherwise); the tenth (the second A4 row) is analytically impossible
    as printed and is pinned.  The D4 row matrix has determinant 24."""
    assert la.det([[4, -2, 6], [-2, 4, 0], [6, 0, 14]]) == 24
    t0 = time.monotonic()
    rows = [r for r in kummer.verify_symplectic(coord_bound=6)
            if r.table_id == "5-embed"]
    elapsed = time.monotonic() - t0
    assert elapsed < 300, elapsed
    by_label = {r.row_label: r for r in rows}
    for label in ("A1^2", "A2", "A1^3", "A1+A2", "A3", "A1^2+A2",
                  "A1+A3", "A4a", "D4"):
        assert by_label[label].status == "verified", label
        assert "wall-free primitive embedding found" in by_label[label].detail
    assert by_label["A4b"].cell_status["T"] == "analytically-impossible"
    assert _statuses_ok(rows)


def test_criterion_5_higher_dimensions():
    """Minimal dimensions 8, 6, 6; the order-2 exclusion of A1^4 for
    n in 2..5; the order-3 A2^2 construction at n=3 and its failure when
    3 divides n+1; the closing rank+length<8 dichotomy.  Under 120 s."""
    t0 = time.monotonic()
    rows = kummer.verify_higher_dim()
    elapsed = time.monotonic() - t0
    assert elapsed < 120, elapsed
    by_key = {(r.table_id, r.row_label): r for r in rows}
    assert by_key[("6", "1.1")].recomputed["min_dim"] == 8
    assert by_key[("6", "1.5")].recomputed["min_dim"] == 6
    assert by_key[("6", "5.1")].recomputed["min_dim"] == 6
    for n in (2, 3, 4, 5):
        assert by_key[("6-A1^4", f"n={n}")].status == "verified"
    assert by_key[("6-A2^2", "n=3")].recomputed["outcome"] == "realizable"
    for n in (2, 5):
        assert by_key[("6-A2^2", f"n={n}")].recomputed["outcome"] == \
            "excluded"
    dich = [r for r in rows if r.table_id == "6-dichotomy"]
    assert len(dich) == 11
    assert all(r.status == "verified" for r in dich)


# --------------------------------------------------------------------------
# criterion 6: oracle equivalence


def _random_definite_gram(rng, rank):
    while True:
        b = [[rng.randint(-2, 2) for _ in range(rank)] for _ in range(rank)]
        if la.det([row[:] for row in b]) == 0:
            continue
        bt = la.transpose([row[:] for row in b])
        g = la.mat_mul(bt, [row[:] for row in b])
        return tuple(tuple(2 * x for x in row) for row in g)


def _random_even_gram(rng, rank):
    while True:
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2 * rng.randint(-4, 4)
            for j in range(i + 1, rank):
                g[i][j] = g[j][i] = rng.randint(-3, 3)
        if la.det([row[:] for row in g]) != 0:
            return tuple(tuple(row) for row in g)


def _naive_short_vectors(lattice, bound):
    inv = la.rational_inverse(lattice.gram_rows())
    out = []
    radii = [int(Fraction(bound) * inv[i][i]) + 1
             for i in range(lattice.rank)]
    for v in product(*[range(-r, r + 1) for r in radii]):
        if not any(v):
            continue
        first = next(x for x in v if x)
        if first < 0:
            continue
        n = lattice.norm(v)
        if 0 < n <= bound:
            out.append((v, n))
    return sorted(out)


def _descartes_signature(gram):
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.Matrix(gram).charpoly(x), x)
    coeffs = [c for c in poly.all_coeffs() if c != 0]
    pos = sum(1 for a, b in zip(coeffs, coeffs[1:]) if (a > 0) != (b > 0))
    neg_poly = [c * (-1) ** i for i, c in enumerate(poly.all_coeffs())]
    ncoeffs = [c for c in neg_poly if c != 0]
    neg = sum(1 for a, b in zip(ncoeffs, ncoeffs[1:]) if (a > 0) != (b > 0))
    return pos, neg


def test_criterion_6_oracle_equivalence():
    rng = random.Random(20260826)
    # short vectors vs naive box enumeration: 50 definite lattices
    for _ in range(50):
        rank = rng.randint(1, 4)
        bound = rng.randint(2, 12)
        lattice = Lattice(_random_definite_gram(rng, rank))
        got = sorted(short_vectors(lattice, bound))
        assert got == _naive_short_vectors(lattice, bound)
    # divisibility, smith normal form, signature: 100 random even lattices
    for _ in range(100):
        rank = rng.randint(1, 6)
        gram = _random_even_gram(rng, rank)
        lattice = Lattice(gram)
        # divisibility == gcd of the pairing row, computed directly
        v = tuple(rng.randint(-4, 4) for _ in range(rank))
        if any(v):
            g = tuple(v[j] // _gcd_all(v) for j in range(rank))
            pairings = la.mat_vec([list(r) for r in gram], list(g))
            want = _gcd_all(pairings)
            assert divisibility(lattice, g) == want
        # elementary divisors against sympy's smith normal form
        m = [[rng.randint(-5, 5) for _ in range(rank)] for _ in range(3)]
        ours = [abs(d) for d in la.elementary_divisors(
            [row[:] for row in m]) if d != 0]
        smith = smith_normal_form(sympy.Matrix(m))
        theirs = [abs(smith[i, i]) for i in range(min(smith.shape))
                  if smith[i, i] != 0]
        assert ours == theirs
        # exact signature against Descartes' rule on the charpoly
        assert signature(lattice) == _descartes_signature(gram)


def _gcd_all(xs):
    from math import gcd
    g = 0
    for x in xs:
        g = gcd(g, abs(x))
    return g or 1


# --------------------------------------------------------------------------
# criterion 7: lemma suite over every shipped isometry


def test_criterion_7_lemma_suite():
    shipped = kummer.shipped_isometries()
    assert len(shipped) >= 12 + 5
    rng = random.Random(7)
    for name, g in shipped.items():
        p = g.order()
        t_sub, s_sub, a, m = invariant_coinvariant(g)
        ambient = g.lattice
        # orthogonality and glue bounds
        for t in t_sub.basis:
            for s in s_sub.basis:
                assert ambient.inner(t, s) == 0, name
        assert 0 <= a <= m, name
        both = Sublattice(ambient, t_sub.basis + s_sub.basis)
        for _ in range(100):
            x = [rng.randint(-6, 6) for _ in range(ambient.rank)]
            # trace lands in the invariant part
            trace = [0] * ambient.rank
            y = list(x)
            for _ in range(p):
                trace = [u + w for u, w in zip(trace, y)]
                y = g.apply(y)
            assert t_sub.contains(trace), name
            # (1 - g)x lands in the coinvariant part
            gx = g.apply(x)
            diff = [u - w for u, w in zip(x, gx)]
            assert s_sub.contains(diff), name
            # p * x decomposes over T + S
            assert both.contains([p * u for u in x]), name


# --------------------------------------------------------------------------
# criterion 8: determinism across worker counts


def test_criterion_8_determinism(tmp_path):
    out1 = tmp_path / "jobs1.json"
    out8 = tmp_path / "jobs8.json"
    assert main(["verify", "--table", "all", "--json", "--jobs", "1",
                 "--out", str(out1)]) == 0
    assert main(["verify", "--table", "all", "--json", "--jobs", "8",
                 "--out", str(out8)]) == 0
    b1 = out1.read_bytes()
    assert b1 == out8.read_bytes()
    report = json.loads(b1)
    assert report["summary"]["verified"] > 0
    assert report["unexplained"] == []
