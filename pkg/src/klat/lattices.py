"""Even integral lattices, sublattices and discriminant groups.

A lattice is stored by its Gram matrix over arbitrary-precision integers.
Named constructors cover the standard lattices used throughout the
classification work: U, U(n), <k>, A_n, D4, E8, H5 = [[2,1],[1,-2]] and
K7 = [[2,1],[1,4]], together with direct sums and rescalings L(n).
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg as la


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Even integral lattice given by a symmetric Gram matrix.

    ``structure`` keeps the direct-sum decomposition tokens when the lattice
    was built from named pieces (e.g. ("U", "U(2)", "<-6>")); it is used for
    syntactic detection of U summands and for pretty printing only.
    """
    gram: tuple
    name: str = ""
    structure: tuple = ()

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        for row in g:
            if len(row) != n:
                raise LatticeError("gram matrix is not square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise LatticeError(
                        f"gram matrix not symmetric at ({i},{j})")
        for i in range(n):
            if g[i][i] % 2 != 0:
                raise LatticeError(
                    f"lattice not even: diagonal entry gram[{i}][{i}] = "
                    f"{g[i][i]} is odd")

    @property
    def rank(self):
        return len(self.gram)

    def gram_rows(self):
        return [list(row) for row in self.gram]

    def det(self):
        return la.det(self.gram_rows())

    def is_nondegenerate(self):
        return self.det() != 0

    def is_definite(self):
        p, m = signature(self)
        return p == 0 or m == 0

    def inner(self, u, v):
        return sum(self.gram[i][j] * u[i] * v[j]
                   for i in range(self.rank) for j in range(self.rank))

    def norm(self, v):
        return self.inner(v, v)

    def label(self):
        return self.name or "+".join(self.structure) or f"rank{self.rank}"

    def to_json(self):
        return {"name": self.label(),
                "gram": [[str(x) for x in row] for row in self.gram]}


def signature(lattice):
    """Exact inertia (r_plus, r_minus); errors on degenerate input."""
    return la.signature_of_gram(lattice.gram_rows())


# ---------------------------------------------------------------------------
# named constructors

def _gram_U(n=1):
    return [[0, n], [n, 0]]


def _gram_A(n):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


_GRAM_D4 = [[2, 0, -1, 0],
            [0, 2, -1, 0],
            [-1, -1, 2, -1],
            [0, 0, -1, 2]]

_GRAM_E8 = [[2, -1, 0, 0, 0, 0, 0, 0],
            [-1, 2, -1, 0, 0, 0, 0, 0],
            [0, -1, 2, -1, 0, 0, 0, -1],
            [0, 0, -1, 2, -1, 0, 0, 0],
            [0, 0, 0, -1, 2, -1, 0, 0],
            [0, 0, 0, 0, -1, 2, -1, 0],
            [0, 0, 0, 0, 0, -1, 2, 0],
            [0, 0, -1, 0, 0, 0, 0, 2]]

_GRAM_H5 = [[2, 1], [1, -2]]
_GRAM_K7 = [[2, 1], [1, 4]]

_TOKEN_RE = re.compile(
    r"^(?:(?P<base>U|A(?P<an>\d+)|D4|E8|H5|K7|<(?P<k>-?\d+)>)"
    r"(?:\((?P<scale>-?\d+)\))?)$")


def _token_gram(token):
    m = _TOKEN_RE.match(token.strip())
    if not m:
        raise LatticeError(f"unknown lattice token {token!r}")
    if m.group("k") is not None:
        k = int(m.group("k"))
        g = [[k]]
    elif m.group("an") is not None:
        g = _gram_A(int(m.group("an")))
    elif m.group("base") == "U":
        g = _gram_U()
    elif m.group("base") == "D4":
        g = [row[:] for row in _GRAM_D4]
    elif m.group("base") == "E8":
        g = [row[:] for row in _GRAM_E8]
    elif m.group("base") == "H5":
        g = [row[:] for row in _GRAM_H5]
    elif m.group("base") == "K7":
        g = [row[:] for row in _GRAM_K7]
    else:
        raise LatticeError(f"unknown lattice token {token!r}")
    scale = m.group("scale")
    if scale is not None:
        s = int(scale)
        g = [[s * x for x in row] for row in g]
    return g


def _direct_sum_grams(grams):
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    ofs = 0
    for g in grams:
        k = len(g)
        for i in range(k):
            for j in range(k):
                out[ofs + i][ofs + j] = g[i][j]
        ofs += k
    return out


def make_lattice(spec, name=""):
    """Build a lattice from a spec string or a raw Gram matrix.

    Spec strings are '+'-separated tokens: "U", "U(2)", "<-6>", "A2(-1)",
    "D4", "E8(-1)", "H5", "K7".  Raw input must be a symmetric even integer
    matrix.
    """
    if isinstance(spec, str):
        tokens = tuple(t.strip() for t in spec.split("+") if t.strip())
        gram = _direct_sum_grams([_token_gram(t) for t in tokens])
        return Lattice(tuple(tuple(r) for r in gram), name=name,
                       structure=tokens)
    return Lattice(tuple(tuple(r) for r in spec), name=name)


def direct_sum(*lattices, name=""):
    gram = _direct_sum_grams([l.gram_rows() for l in lattices])
    structure = tuple(t for l in lattices
                      for t in (l.structure or (l.label(),)))
    return Lattice(tuple(tuple(r) for r in gram), name=name,
                   structure=structure)


def rescale(lattice, n, name=""):
    gram = [[n * x for x in row] for row in lattice.gram]
    return Lattice(tuple(tuple(r) for r in gram), name=name)


# ---------------------------------------------------------------------------
# discriminant group

@dataclass(frozen=True)
class DiscriminantGroup:
    """L*/L with its Q/2Z quadratic form.

    ``generators[i]`` is a rational vector in L* (coordinates in the basis
    of L) of order ``cyclic_orders[i]``; orders satisfy d1 | d2 | ... and
    are all > 1.  q-values are reduced mod 2, the pairing mod 1.
    """
    cyclic_orders: tuple
    generators: tuple
    q_values: tuple
    bilinear_table: tuple

    @property
    def order(self):
        out = 1
        for d in self.cyclic_orders:
            out *= d
        return out

    @property
    def length(self):
        return len(self.cyclic_orders)

    def is_trivial(self):
        return not self.cyclic_orders


def _mod2(x):
    x = Fraction(x)
    num = x.numerator % (2 * x.denominator)
    return Fraction(num, x.denominator)


def _mod1(x):
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


def discriminant_group(lattice):
    """Invariant factors, generators and discriminant form of L*/L."""
    if not lattice.is_nondegenerate():
        raise LatticeError("degenerate lattice has no discriminant group")
    n = lattice.rank
    d, _, v = la.smith_normal_form(lattice.gram_rows())
    orders = []
    gens = []
    for i in range(n):
        di = d[i][i]
        if di in (1, -1):
            continue
        di = abs(di)
        gen = tuple(Fraction(v[j][i], di) for j in range(n))
        orders.append(di)
        gens.append(gen)
    qs = []
    for g in gens:
        q = sum(Fraction(lattice.gram[i][j]) * g[i] * g[j]
                for i in range(n) for j in range(n))
        qs.append(_mod2(q))
    table = []
    for gi in gens:
        row = []
        for gj in gens:
            b = sum(Fraction(lattice.gram[i][j]) * gi[i] * gj[j]
                    for i in range(n) for j in range(n))
            row.append(_mod1(b))
        table.append(tuple(row))
    return DiscriminantGroup(tuple(orders), tuple(gens), tuple(qs),
                             tuple(table))


def dual_class_coords(lattice, disc, w):
    """Coordinates of the class of w in L* w.r.t. the disc generators.

    w is a rational coordinate vector in the basis of L with integral
    pairings against L.  Returns a tuple c with [w] = sum c_i * gen_i,
    each c_i reduced mod the generator order.
    """
    n = lattice.rank
    gw = [sum(Fraction(lattice.gram[i][j]) * Fraction(w[j])
              for j in range(n)) for i in range(n)]
    for x in gw:
        if x.denominator != 1:
            raise LatticeError("vector is not in the dual lattice")
    d, u, _ = la.smith_normal_form(lattice.gram_rows())
    c_full = la.mat_vec(u, [int(x) for x in gw])
    out = []
    k = 0
    for i in range(n):
        di = abs(d[i][i])
        if di == 1:
            continue
        out.append(c_full[i] % di)
        k += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# vectors and sublattices

def divisibility(lattice, v):
    """Positive generator of the pairing ideal (v, L)."""
    if all(x == 0 for x in v):
        raise LatticeError("divisibility of the zero vector is undefined")
    pairings = la.mat_vec(lattice.gram_rows(), list(v))
    g = 0
    for x in pairings:
        g = _gcd(g, abs(x))
    return g


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class Sublattice:
    """Sublattice given by independent basis columns in the ambient basis."""
    ambient: Lattice
    basis: tuple  # tuple of column vectors (each a tuple of ints)

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.basis)
        object.__setattr__(self, "basis", cols)
        if cols:
            mat = [list(c) for c in zip(*cols)]  # ambient-dim x k
            if la.rank(mat) != len(cols):
                raise LatticeError("sublattice basis is not independent")

    @property
    def rank(self):
        return len(self.basis)

    def basis_matrix(self):
        """Ambient-dim x rank matrix with basis vectors as columns."""
        n = self.ambient.rank
        return [[self.basis[j][i] for j in range(len(self.basis))]
                for i in range(n)]

    def gram(self):
        b = self.basis_matrix()
        g = self.ambient.gram_rows()
        return la.mat_mul(la.mat_mul(la.transpose(b), g), b)

    def as_lattice(self, name=""):
        return Lattice(tuple(tuple(r) for r in self.gram()), name=name)

    def contains(self, v):
        """Integer membership of an ambient vector in the sublattice span."""
        return _solve_integer(self.basis_matrix(), list(v)) is not None


def _solve_integer(mat, target):
    """Solve mat * x = target over the integers, or return None."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    a = [[Fraction(mat[i][j]) for j in range(cols)] + [Fraction(target[i])]
         for i in range(rows)]
    piv_cols = []
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
        piv_cols.append(c)
        r += 1
    for i in range(r, rows):
        if a[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        x[c] = a[i][cols]
    if any(xi.denominator != 1 for xi in x):
        return None
    return [int(xi) for xi in x]


def span(ambient, vectors):
    return Sublattice(ambient, tuple(tuple(v) for v in vectors))


def saturate(sub):
    """Smallest primitive sublattice with the same rational span."""
    b = sub.basis_matrix()
    k = sub.rank
    _, u, _ = la.smith_normal_form(b)
    uinv = la.rational_inverse(u)
    cols = []
    for j in range(k):
        col = [uinv[i][j] for i in range(len(uinv))]
        if any(x.denominator != 1 for x in col):
            raise LatticeError("internal: transform not unimodular")
        cols.append(tuple(int(x) for x in col))
    return Sublattice(sub.ambient, tuple(cols))


def is_primitive(sub):
    divs = la.elementary_divisors(sub.basis_matrix())
    return all(abs(d) == 1 for d in divs)


def orthogonal_complement(sub):
    """Saturated sublattice {x : (x,s)=0 for all s in S}."""
    n = sub.ambient.rank
    if sub.rank == 0:
        cols = tuple(tuple(1 if i == j else 0 for i in range(n))
                     for j in range(n))
        return Sublattice(sub.ambient, cols)
    b = sub.basis_matrix()
    g = sub.ambient.gram_rows()
    m = la.mat_mul(la.transpose(b), g)  # k x n
    ker = la.kernel_basis(m)
    return Sublattice(sub.ambient, tuple(tuple(c) for c in ker))


def glue_index_squared(sub, comp):
    """det(S) * det(S_perp) / det(ambient); always a perfect square."""
    ds = la.det(sub.gram())
    dc = la.det(comp.gram())
    da = sub.ambient.det()
    val = Fraction(ds * dc, da)
    assert val.denominator == 1
    return abs(int(val))


# ---------------------------------------------------------------------------
# JSON file formats

def lattice_to_file(lattice, path):
    with open(path, "w") as fh:
        json.dump(lattice.to_json(), fh, indent=1)
        fh.write("\n")


def lattice_from_json(obj):
    if "gram" not in obj:
        raise LatticeError("lattice file needs a 'gram' field")
    gram = [[int(x) for x in row] for row in obj["gram"]]
    return make_lattice(gram, name=obj.get("name", ""))


def lattice_from_file(path):
    with open(path) as fh:
        return lattice_from_json(json.load(fh))


def vector_from_file(path):
    with open(path) as fh:
        obj = json.load(fh)
    if "coords" not in obj:
        raise LatticeError("vector file needs a 'coords' field")
    return [int(x) for x in obj["coords"]]
