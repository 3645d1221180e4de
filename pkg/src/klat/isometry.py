"""Finite-order isometries, invariant/coinvariant splittings and the
enumeration machinery for definite lattices: short vectors, orthogonal
groups via backtracking on basis images, isometry testing.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg as la
from . import lattices as lat

ORDER_CAP = 120
RANK_CAP = 8


class IsometryError(ValueError):
    pass


@dataclass(frozen=True)
class Isometry:
    lattice: lat.Lattice
    matrix: tuple  # tuple of rows

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        g = self.lattice.gram_rows()
        mm = [list(r) for r in m]
        if not la.mat_eq(la.mat_mul(la.mat_mul(la.transpose(mm), g), mm), g):
            raise IsometryError("matrix does not preserve the gram matrix")

    def det(self):
        return la.det([list(r) for r in self.matrix])

    def order(self, cap=ORDER_CAP):
        n = self.lattice.rank
        ident = la.identity(n)
        power = [list(r) for r in self.matrix]
        for k in range(1, cap + 1):
            if la.mat_eq(power, ident):
                return k
            power = la.mat_mul(power, [list(r) for r in self.matrix])
        raise IsometryError(f"order exceeds cap {cap}")

    def apply(self, v):
        return la.mat_vec([list(r) for r in self.matrix], list(v))

    def apply_rational(self, v):
        return [sum(Fraction(self.matrix[i][j]) * Fraction(v[j])
                    for j in range(self.lattice.rank))
                for i in range(self.lattice.rank)]

    def compose(self, other):
        return Isometry(self.lattice, tuple(
            tuple(r) for r in la.mat_mul([list(x) for x in self.matrix],
                                         [list(x) for x in other.matrix])))

    def to_json(self):
        return {"lattice": self.lattice.to_json(),
                "matrix": [[str(x) for x in row] for row in self.matrix]}


def isometry_from_json(obj):
    lattice = lat.lattice_from_json(obj["lattice"])
    matrix = tuple(tuple(int(x) for x in row) for row in obj["matrix"])
    return Isometry(lattice, matrix)


def identity_isometry(lattice):
    return Isometry(lattice, tuple(tuple(r) for r in
                                   la.identity(lattice.rank)))


# ---------------------------------------------------------------------------
# discriminant action

def disc_action(g):
    """Images of the discriminant generators as class coordinate tuples."""
    disc = lat.discriminant_group(g.lattice)
    out = []
    for gen in disc.generators:
        img = g.apply_rational(gen)
        out.append(lat.dual_class_coords(g.lattice, disc, img))
    return disc, out


def acts_trivially_on_disc(g):
    disc, images = disc_action(g)
    k = disc.length
    ident = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    return list(images) == ident


def chi_on_cyclic_disc(g):
    """+1/-1 character on a cyclic discriminant group."""
    disc, images = disc_action(g)
    if disc.is_trivial():
        return 1
    if disc.length != 1:
        raise IsometryError("discriminant group is not cyclic")
    d = disc.cyclic_orders[0]
    k = images[0][0]
    if k == 1 % d:
        return 1
    if k == (d - 1) % d:
        return -1
    raise IsometryError(f"disc action by {k} mod {d} is not +-1")


def isometry_invariants(g, cap=ORDER_CAP):
    """order, determinant, and the induced action on the discriminant."""
    disc, images = disc_action(g)
    if disc.length <= 1:
        chi = chi_on_cyclic_disc(g)
    else:
        chi = tuple(images)
    return {"order": g.order(cap), "det": g.det(), "chi": chi}


# ---------------------------------------------------------------------------
# invariant / coinvariant decomposition

def invariant_sublattice(g):
    """Saturated kernel of (g - id)."""
    n = g.lattice.rank
    m = [[g.matrix[i][j] - (1 if i == j else 0) for j in range(n)]
         for i in range(n)]
    ker = la.kernel_basis(m)
    return lat.Sublattice(g.lattice, tuple(tuple(c) for c in ker))


def invariant_coinvariant(g):
    """(T, S, a, m) for an isometry of prime order p.

    T is the saturated fixed sublattice, S its orthogonal complement; the
    glue group L/(T+S) must be elementary p-abelian of order p^a, and
    m = rank(S)/(p-1) with a <= m.
    """
    p = g.order()
    if p == 1:
        raise IsometryError("identity has no coinvariant decomposition")
    if not _is_prime(p):
        raise IsometryError(f"order {p} is not prime")
    t_sub = invariant_sublattice(g)
    s_sub = lat.orthogonal_complement(t_sub)
    n = g.lattice.rank
    combined = [[0] * n for _ in range(n)]
    for j, c in enumerate(t_sub.basis + s_sub.basis):
        for i in range(n):
            combined[i][j] = c[i]
    divs = la.elementary_divisors(combined)
    a = 0
    for d in divs:
        d = abs(d)
        if d == 1:
            continue
        if d != p:
            raise IsometryError(
                f"glue group has invariant factor {d}, not pure {p}-torsion")
        a += 1
    rk_s = s_sub.rank
    if rk_s % (p - 1) != 0:
        raise IsometryError(f"rank(S)={rk_s} not divisible by p-1={p - 1}")
    m = rk_s // (p - 1)
    if a > m:
        raise IsometryError(f"glue length a={a} exceeds m={m}")
    # determinant bookkeeping: |L/(T+S)|^2 = det(T) det(S) / det(L)
    idx2 = lat.glue_index_squared(t_sub, s_sub)
    assert idx2 == p ** (2 * a), (idx2, p, a)
    return t_sub, s_sub, a, m


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# short vectors (exact Fincke-Pohst)

def short_vectors(lattice, bound):
    """All vectors with |v^2| <= bound in a definite lattice.

    One representative per +-pair (first nonzero coordinate positive),
    sorted lexicographically; entries are (coords, norm) with the norm in
    the lattice's own sign convention.
    """
    plus, minus = lat.signature(lattice)
    if plus and minus:
        raise IsometryError("short vector enumeration needs a definite "
                            "lattice")
    sign = 1 if minus == 0 else -1
    n = lattice.rank
    q = [[Fraction(sign * lattice.gram[i][j]) for j in range(n)]
         for i in range(n)]
    # quadratic completion: Q(x) = sum_i c_i (x_i + sum_{j>i} u_ij x_j)^2
    # with c_i = q[i][i] and u_ij = q[i][j] after the loop (Fincke-Pohst
    # preprocessing, exact over Fractions)
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    results = []
    coords = [0] * n

    def descend(i, remaining):
        # remaining = bound minus the completed squares of levels > i
        center = -sum(q[i][j] * coords[j] for j in range(i + 1, n))
        ci = q[i][i]
        lo, hi = _integer_range(center, remaining / ci)
        for xi in range(lo, hi + 1):
            coords[i] = xi
            used = ci * (xi - center) ** 2
            if used > remaining:
                continue
            if i == 0:
                v = tuple(coords)
                if any(v):
                    results.append(v)
            else:
                descend(i - 1, remaining - used)
        coords[i] = 0

    descend(n - 1, Fraction(bound))
    out = []
    seen = set()
    for v in results:
        first = next(x for x in v if x)
        canon = v if first > 0 else tuple(-x for x in v)
        if canon in seen:
            continue
        seen.add(canon)
        out.append((canon, lattice.norm(canon)))
    out.sort(key=lambda t: t[0])
    return out


def _integer_range(center, radius2):
    """Integers x with (x - center)^2 <= radius2, exact."""
    if radius2 < 0:
        return 0, -1
    # isqrt on scaled integers
    num = radius2.numerator
    den = radius2.denominator
    import math
    r_floor_num = math.isqrt(num * den)  # floor(sqrt(radius2) * den)
    lo = _ceil_frac(center - Fraction(r_floor_num + 1, den))
    hi = _floor_frac(center + Fraction(r_floor_num + 1, den))
    # tighten exactly
    while (Fraction(lo) - center) ** 2 > radius2:
        lo += 1
        if lo > hi:
            return 0, -1
    while (Fraction(hi) - center) ** 2 > radius2:
        hi -= 1
        if hi < lo:
            return 0, -1
    return lo, hi


def _ceil_frac(x):
    return -((-x.numerator) // x.denominator)


def _floor_frac(x):
    return x.numerator // x.denominator


# ---------------------------------------------------------------------------
# orthogonal groups of definite lattices

@dataclass(frozen=True)
class FiniteMatrixGroup:
    lattice: lat.Lattice
    generators: tuple
    order: int
    elements: tuple = ()

    def is_closed(self):
        mats = {g.matrix for g in self.elements}
        for a in self.elements:
            for b in self.generators:
                if a.compose(b).matrix not in mats:
                    return False
        return True


def _signed_vectors_by_norm(lattice, norms):
    """All lattice vectors (both signs) for each needed norm value."""
    bound = max(abs(t) for t in norms)
    table = {t: [] for t in norms}
    for v, norm in short_vectors(lattice, bound):
        if norm in table:
            table[norm].append(v)
            table[norm].append(tuple(-x for x in v))
    return table


def automorphism_elements(lattice):
    """Exhaustive list of isometry matrices of a definite lattice."""
    n = lattice.rank
    if n > RANK_CAP:
        raise IsometryError(
            f"rank {n} exceeds cap {RANK_CAP}; decompose the lattice first")
    g = lattice.gram
    table = _signed_vectors_by_norm(lattice, {g[i][i] for i in range(n)})
    gram_rows = lattice.gram_rows()
    pair_cache = {}

    def pairing(u, v):
        key = (u, v)
        if key not in pair_cache:
            pair_cache[key] = sum(gram_rows[i][j] * u[i] * v[j]
                                  for i in range(n) for j in range(n))
        return pair_cache[key]

    images = [None] * n
    out = []

    def extend(i):
        if i == n:
            mat = tuple(tuple(images[j][k] for j in range(n))
                        for k in range(n))  # columns are images
            out.append(mat)
            return
        for cand in table[g[i][i]]:
            ok = True
            for j in range(i):
                if pairing(images[j], cand) != g[j][i]:
                    ok = False
                    break
            if ok:
                images[i] = cand
                extend(i + 1)
        images[i] = None

    extend(0)
    # only unimodular image matrices define isometries of the full lattice
    return [m for m in out if abs(la.det([list(r) for r in m])) == 1]


def _small_generating_set(lattice, matrices):
    mats = set(matrices)
    n = lattice.rank
    gens = []
    closure = {tuple(tuple(r) for r in la.identity(n))}
    for m in sorted(mats):
        if m in closure:
            continue
        gens.append(m)
        frontier = list(closure)
        while frontier:
            cur = frontier.pop()
            for g in gens:
                prod = tuple(tuple(r) for r in la.mat_mul(
                    [list(x) for x in cur], [list(x) for x in g]))
                if prod not in closure:
                    closure.add(prod)
                    frontier.append(prod)
        if len(closure) == len(mats):
            break
    return gens


def orthogonal_group(lattice):
    """Full O(L) of a definite lattice of rank <= 8, exhaustively."""
    matrices = automorphism_elements(lattice)
    gens = _small_generating_set(lattice, matrices)
    return FiniteMatrixGroup(
        lattice,
        tuple(Isometry(lattice, m) for m in gens),
        len(matrices),
        tuple(Isometry(lattice, m) for m in sorted(matrices)))


def restricted_group(lattice):
    """Subgroup of O(L) with determinant +1 and trivial discriminant
    action."""
    matrices = automorphism_elements(lattice)
    kept = []
    for m in matrices:
        iso = Isometry(lattice, m)
        if iso.det() != 1:
            continue
        if not acts_trivially_on_disc(iso):
            continue
        kept.append(m)
    gens = _small_generating_set(lattice, kept)
    return FiniteMatrixGroup(
        lattice,
        tuple(Isometry(lattice, m) for m in gens),
        len(kept),
        tuple(Isometry(lattice, m) for m in sorted(kept)))


def are_isometric(l1, l2):
    """Witness isometry between definite lattices, or None.

    The witness W satisfies W^T G2 W = G1, columns expressing the images of
    l1's basis in l2's basis.
    """
    s1, s2 = lat.signature(l1), lat.signature(l2)
    if (s1[0] and s1[1]) or (s2[0] and s2[1]):
        raise IsometryError("isometry testing implemented for definite "
                            "lattices only")
    if s1 != s2:
        raise IsometryError("mixed signatures")
    if l1.rank != l2.rank or l1.det() != l2.det():
        return None
    n = l1.rank
    g1 = l1.gram
    table = _signed_vectors_by_norm(l2, {g1[i][i] for i in range(n)})
    g2_rows = l2.gram_rows()

    def pairing(u, v):
        return sum(g2_rows[i][j] * u[i] * v[j]
                   for i in range(n) for j in range(n))

    images = [None] * n

    def extend(i):
        if i == n:
            return True
        for cand in table.get(g1[i][i], ()):
            if all(pairing(images[j], cand) == g1[j][i] for j in range(i)):
                images[i] = cand
                if extend(i + 1):
                    return True
        images[i] = None
        return False

    if not extend(0):
        return None
    w = [[images[j][i] for j in range(n)] for i in range(n)]
    if abs(la.det(w)) != 1:
        # basis images must span the whole target lattice; retry demanding it
        return _are_isometric_unimodular(l1, l2, table, pairing)
    return w


def _are_isometric_unimodular(l1, l2, table, pairing):
    n = l1.rank
    g1 = l1.gram
    images = [None] * n
    found = []

    def extend(i):
        if found:
            return
        if i == n:
            w = [[images[j][k] for j in range(n)] for k in range(n)]
            if abs(la.det(w)) == 1:
                found.append(w)
            return
        for cand in table.get(g1[i][i], ()):
            if all(pairing(images[j], cand) == g1[j][i] for j in range(i)):
                images[i] = cand
                extend(i + 1)
                if found:
                    return
        images[i] = None

    extend(0)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# involution gluing

def realize_involution(ambient, t_sub, s_sub):
    """Isometry acting +1 on T and -1 on S of an overlattice of T + S.

    Errors if the glue is not 2-torsion (the resulting matrix would not be
    integral).
    """
    n = ambient.rank
    if t_sub.rank + s_sub.rank != n:
        raise IsometryError("T and S must span the ambient rationally")
    p = [[0] * n for _ in range(n)]
    for j, c in enumerate(t_sub.basis + s_sub.basis):
        for i in range(n):
            p[i][j] = c[i]
    d = [[(1 if i == j else 0) * (1 if j < t_sub.rank else -1)
          for j in range(n)] for i in range(n)]
    pinv = la.rational_inverse(p)
    m = la.mat_mul(la.mat_mul(p, d), pinv)
    for row in m:
        for x in row:
            if Fraction(x).denominator != 1:
                raise IsometryError(
                    "glue between T and S is not 2-torsion; the +1/-1 "
                    "extension is not integral")
    return Isometry(ambient, tuple(tuple(int(x) for x in row) for row in m))
