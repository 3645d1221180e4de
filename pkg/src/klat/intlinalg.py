"""Exact integer and rational linear algebra.

Everything here works on plain Python ints and fractions.Fraction; matrices
are lists of row lists.  No floating point anywhere: signatures, Smith forms
and discriminant data must be bit-exact.
"""

import math
from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def copy_matrix(m):
    return [row[:] for row in m]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    bt = transpose(b)
    return [[sum(a[i][t] * bt[j][t] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(row[i] * v[i] for i in range(len(v))) for row in a]


def vec_dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_symmetric(m):
    n = len(m)
    return all(len(row) == n for row in m) and \
        all(m[i][j] == m[j][i] for i in range(n) for j in range(n))


def det(m):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m):
    """Rank over the rationals by Gaussian elimination."""
    if not m:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def rational_inverse(m):
    """Inverse as a Fraction matrix; raises ValueError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def smith_normal_form(m):
    """Smith normal form with transforms.

    Returns (d, u, v) with u * m * v = d, u and v unimodular, and the
    nonzero diagonal entries of d positive with d[i] | d[i+1].
    """
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # move a pivot of minimal absolute value to (t, t)
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (piv is None or
                                     abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        if a[t][t] < 0:
            negate_row(t)
        # enforce divisibility d[t] | a[i][j] for the trailing block
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    return a, u, v


def elementary_divisors(m):
    """Nonzero diagonal entries of the Smith form."""
    d, _, _ = smith_normal_form(m)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i] != 0:
            out.append(d[i][i])
    return out


def kernel_basis(m):
    """Saturated integer basis of ker(m), as a list of column vectors."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    d, _, v = smith_normal_form(m)
    r = len(elementary_divisors(m))
    # columns of v past the rank span the kernel and are part of a
    # unimodular basis, hence saturated
    return [[v[i][j] for i in range(cols)] for j in range(r, cols)]


def signature_of_gram(gram):
    """Exact inertia (n_plus, n_minus) of a nondegenerate symmetric matrix.

    Symmetric Gaussian elimination with rational pivots; a zero diagonal is
    repaired with the symmetric row/column operation e_i += e_j, which on an
    even lattice turns the 2x2 hyperbolic-like block into a usable pivot.
    Raises ValueError naming a kernel vector if the form is degenerate.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    plus = minus = 0
    live = list(range(n))
    while live:
        i = next((k for k in live if a[k][k] != 0), None)
        if i is None:
            pair = next(((k, l) for k in live for l in live
                         if k != l and a[k][l] != 0), None)
            if pair is None:
                ker = kernel_basis(gram)
                raise ValueError(
                    f"degenerate gram matrix; kernel vector {ker[0]}")
            k, l = pair
            for j in range(n):
                a[k][j] += a[l][j]
            for j in range(n):
                a[j][k] += a[j][l]
            i = k
        p = a[i][i]
        if p > 0:
            plus += 1
        else:
            minus += 1
        live.remove(i)
        for k in live:
            if a[k][i] != 0:
                f = a[k][i] / p
                for j in range(n):
                    a[k][j] -= f * a[i][j]
                for j in range(n):
                    a[j][k] -= f * a[j][i]
    return plus, minus


def rank_mod_p(m, p):
    """Rank of an integer matrix over the field Z/p (p prime)."""
    if not m or not m[0]:
        return 0
    a = [[x % p for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def congruent_diagonal(gram):
    """Rational basis diagonalizing a nondegenerate symmetric matrix.

    Returns (basis, values) with basis a list of rational column vectors
    b_i such that b_i^T gram b_j = 0 for i != j and = values[i] for i = j.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    basis = [[Fraction(1) if i == j else Fraction(0) for i in range(n)]
             for j in range(n)]
    done = []
    live = list(range(n))
    while live:
        i = next((k for k in live if a[k][k] != 0), None)
        if i is None:
            pair = next(((k, l) for k in live for l in live
                         if k != l and a[k][l] != 0), None)
            if pair is None:
                raise ValueError("degenerate gram matrix")
            k, l = pair
            for j in range(n):
                a[k][j] += a[l][j]
            for j in range(n):
                a[j][k] += a[j][l]
            basis[k] = [x + y for x, y in zip(basis[k], basis[l])]
            i = k
        p = a[i][i]
        live.remove(i)
        done.append(i)
        for k in live:
            if a[k][i] != 0:
                f = a[k][i] / p
                for j in range(n):
                    a[k][j] -= f * a[i][j]
                for j in range(n):
                    a[j][k] -= f * a[j][i]
                basis[k] = [x - f * y for x, y in zip(basis[k], basis[i])]
    return [basis[i] for i in done], [a[i][i] for i in done]


def is_perfect_square_rational(x):
    """True iff the Fraction (or int) x is the square of a rational."""
    x = Fraction(x)
    if x < 0:
        return False
    num, den = x.numerator, x.denominator
    return _is_square_int(num) and _is_square_int(den)


def _is_square_int(n):
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n
