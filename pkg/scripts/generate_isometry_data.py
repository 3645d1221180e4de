#!/usr/bin/env python3
"""Regenerate the odd-order isometry data files in src/klat/data/.

The order-p entries come from trace forms on Z[z], z a primitive p-th root
of unity: the Z-lattice Z[z] with form (x, y) -> Tr(a x conj(y)) carries the
obvious fixed-point-free order-p isometry "multiply by z".  The scaling
a is chosen (by a small exact search over the totally real subfield) so the
form is even, has the required signature and the required determinant; the
resulting genus is matched against the named lattice by the library itself.
"""

import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from klat import discform, intlinalg, lattices
from klat.isometry import Isometry

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "klat", "data")


def cyclotomic_mul(p, u, v):
    """Product of two elements of Q(z_p) on the power basis 1..z^(p-2)."""
    n = p - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                prod[i + j] += a * b
    # reduce by z^p = 1 first, then z^(p-1) = -(1 + z + ... + z^(p-2))
    out = [Fraction(0)] * p
    for k, c in enumerate(prod):
        out[k % p] += c
    top = out[p - 1]
    return [out[i] - top for i in range(n)]


def conj(p, u):
    """Complex conjugation z -> z^(p-1) on the power basis."""
    n = p - 1
    out = [Fraction(0)] * n
    out[0] = u[0]
    for i in range(1, n):
        # z^(-i) = z^(p-i); p-i ranges over p-1..1
        e = (p - i) % p
        if e == p - 1:
            for j in range(n):
                out[j] -= u[i]
        else:
            out[e] += u[i]
    return out


def trace(p, u):
    """Tr_{Q(z)/Q}: Tr(1) = p-1, Tr(z^i) = -1 for 0 < i < p."""
    return (p - 1) * u[0] - sum(u[1:])


def power_basis(p):
    n = p - 1
    basis = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        basis.append(e)
    return basis


def trace_gram(p, alpha):
    basis = power_basis(p)
    n = p - 1
    g = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            val = trace(p, cyclotomic_mul(
                p, alpha, cyclotomic_mul(p, basis[i], conj(p, basis[j]))))
            if val.denominator != 1:
                return None
            g[i][j] = int(val)
    return g


def mult_by_zeta_matrix(p):
    """Multiplication by z on the power basis, as a column-action matrix.

    z * z^i = z^(i+1) for i < p-2 and z * z^(p-2) = -(1 + z + ... + z^(p-2)).
    """
    n = p - 1
    m = intlinalg.zeros(n, n)
    for i in range(n - 1):
        m[i + 1][i] = 1
    for i in range(n):
        m[i][n - 1] = -1
    return m


def find_trace_lattice(p, target_sig, target_det_abs):
    """Search small alpha in the real subfield making the right genus."""
    n = p - 1
    lam = [Fraction(0)] * n
    lam[0] = Fraction(1)
    lam[1] = Fraction(-1)          # 1 - z
    norm_lam = cyclotomic_mul(p, lam, conj(p, lam))
    half = (p - 1) // 2
    from itertools import product
    for coeffs in product(range(-2, 3), repeat=half):
        if all(c == 0 for c in coeffs):
            continue
        beta = [Fraction(0)] * n
        beta[0] = Fraction(coeffs[0])
        for k in range(1, half):
            # z^k + z^(-k), totally real
            beta[k] += coeffs[k]
            e = (p - k) % p
            if e == p - 1:
                for j in range(n):
                    beta[j] -= coeffs[k]
            else:
                beta[e] += coeffs[k]
        # alpha = beta / (lam * conj(lam))^k keeps mult-by-z isometric and
        # shrinks the determinant towards the single ramified prime
        alpha = beta
        for _ in range(2):
            alpha = divide(p, alpha, norm_lam)
            g = trace_gram(p, alpha)
            if g is None:
                continue
            if any(g[i][i] % 2 for i in range(n)):
                continue
            d = intlinalg.det(g)
            if abs(d) != target_det_abs:
                continue
            if intlinalg.signature_of_gram(g) != target_sig:
                continue
            return g
    raise RuntimeError(f"no suitable trace form found for p={p}")


def divide(p, u, v):
    """u / v in Q(z_p), via linear solve against multiplication by v."""
    n = p - 1
    basis = power_basis(p)
    cols = [cyclotomic_mul(p, v, b) for b in basis]
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    inv = intlinalg.rational_inverse(mat)
    return [sum(inv[i][j] * u[j] for j in range(n)) for i in range(n)]


def validate(name, gram, mat, p):
    lat = lattices.Lattice(tuple(tuple(r) for r in gram), name=name)
    iso = Isometry(lat, tuple(tuple(r) for r in mat))
    assert iso.order() == p, (name, iso.order())
    return lat, iso


def write_entry(fname, lat, iso):
    payload = {
        "lattice": {"gram": [[str(x) for x in row] for row in lat.gram],
                    "name": lat.name},
        "matrix": [[str(x) for x in row] for row in iso.matrix],
    }
    path = os.path.join(OUT, fname)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote", path)


def main():
    os.makedirs(OUT, exist_ok=True)
    rot = [[0, -1], [1, -1]]

    a2 = lattices.make_lattice("A2")
    write_entry("a2_order3.json", *validate("A2", [list(r) for r in a2.gram], rot, 3))
    a2n = lattices.make_lattice("A2(-1)")
    write_entry("a2_neg_order3.json",
                *validate("A2(-1)", [list(r) for r in a2n.gram], rot, 3))

    # U+U(3) is the hyperbolic plane over Z[z_3]: two isotropic lines paired
    # by the A2 form, with multiplication by z acting diagonally.
    m = [[2, -1], [-1, 2]]
    gram = [[0, 0, m[0][0], m[0][1]],
            [0, 0, m[1][0], m[1][1]],
            [m[0][0], m[1][0], 0, 0],
            [m[0][1], m[1][1], 0, 0]]
    zmat = [[rot[0][0], rot[0][1], 0, 0],
            [rot[1][0], rot[1][1], 0, 0],
            [0, 0, rot[0][0], rot[0][1]],
            [0, 0, rot[1][0], rot[1][1]]]
    lat, iso = validate("U+U(3)", gram, zmat, 3)
    ref = lattices.make_lattice("U+U(3)")
    assert discform.genus_equal(lat, ref), "U+U(3) genus mismatch"
    write_entry("u_u3_order3.json", lat, iso)

    g5 = find_trace_lattice(5, (2, 2), 5)
    lat, iso = validate("U+H5", g5, mult_by_zeta_matrix(5), 5)
    ref = lattices.make_lattice("U+H5")
    assert discform.genus_equal(lat, ref), "U+H5 genus mismatch"
    write_entry("u_h5_order5.json", lat, iso)

    g7 = find_trace_lattice(7, (2, 4), 7)
    lat, iso = validate("U+U+K7(-1)", g7, mult_by_zeta_matrix(7), 7)
    ref = lattices.make_lattice("U+U+K7(-1)")
    assert discform.genus_equal(lat, ref), "U+U+K7(-1) genus mismatch"
    write_entry("u2_k7_order7.json", lat, iso)


if __name__ == "__main__":
    main()
