"""Finite quadratic forms (discriminant forms) and their isomorphism test.

Used to compare a computed orthogonal complement against a named lattice at
the genus level: equal signatures plus isomorphic discriminant forms.  The
groups appearing here are tiny (order <= a few hundred), so the isomorphism
test materializes all elements and backtracks over generator images.
"""

from fractions import Fraction
from itertools import product

from . import lattices as lat

_ELEMENT_CAP = 20000


class DiscriminantFormTooLarge(ValueError):
    pass


def _mod2(x):
    x = Fraction(x)
    return Fraction(x.numerator % (2 * x.denominator), x.denominator)


def _mod1(x):
    x = Fraction(x)
    return Fraction(x.numerator % x.denominator, x.denominator)


class FiniteQuadraticForm:
    """Finite abelian group with a Q/2Z quadratic form and Q/Z pairing."""

    def __init__(self, orders, q_gens, b_table):
        self.orders = tuple(orders)
        self.q_gens = tuple(q_gens)
        self.b_table = tuple(tuple(row) for row in b_table)
        size = 1
        for d in self.orders:
            size *= d
        if size > _ELEMENT_CAP:
            raise DiscriminantFormTooLarge(f"group order {size}")
        self.size = size
        self.elements = list(product(*[range(d) for d in self.orders]))
        self._q = {e: self.q_of(e) for e in self.elements}

    @classmethod
    def of_lattice(cls, lattice):
        disc = lat.discriminant_group(lattice)
        return cls(disc.cyclic_orders, disc.q_values, disc.bilinear_table)

    def q_of(self, coords):
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            total += coords[i] * coords[i] * self.q_gens[i]
            for j in range(i + 1, k):
                total += 2 * coords[i] * coords[j] * self.b_table[i][j]
        return _mod2(total)

    def b_of(self, x, y):
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            for j in range(k):
                total += x[i] * y[j] * self.b_table[i][j]
        return _mod1(total)

    def element_order(self, coords):
        out = 1
        for c, d in zip(coords, self.orders):
            if c:
                g = _gcd(c, d)
                out = _lcm(out, d // g)
        return out

    def q_value_multiset(self):
        return sorted((self.element_order(e), self._q[e])
                      for e in self.elements)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


def isomorphic(f1, f2):
    """Isometry test between two finite quadratic forms.

    Backtracks over images of f1's generators among elements of f2 with
    matching order and q-value, checking pairings and finally that the
    images generate all of f2.
    """
    if f1.size != f2.size:
        return False
    if f1.q_value_multiset() != f2.q_value_multiset():
        return False
    gens1 = [tuple(1 if i == j else 0 for i in range(len(f1.orders)))
             for j in range(len(f1.orders))]

    def generated_size(images):
        seen = set()
        frontier = [tuple([0] * len(f2.orders))]
        seen.add(frontier[0])
        while frontier:
            cur = frontier.pop()
            for img in images:
                nxt = tuple((c + i) % d
                            for c, i, d in zip(cur, img, f2.orders))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen)

    def extend(idx, images):
        if idx == len(gens1):
            return generated_size(images) == f2.size
        g = gens1[idx]
        want_order = f1.orders[idx]
        want_q = f1._q[g]
        for cand in f2.elements:
            if f2.element_order(cand) != want_order:
                continue
            if f2._q[cand] != want_q:
                continue
            ok = True
            for j in range(idx):
                if f2.b_of(cand, images[j]) != f1.b_of(g, gens1[j]):
                    ok = False
                    break
            if ok and extend(idx + 1, images + [cand]):
                return True
        return False

    return extend(0, [])


def genus_equal(l1, l2):
    """Same signature and isomorphic discriminant forms."""
    if lat.signature(l1) != lat.signature(l2):
        return False
    return isomorphic(FiniteQuadraticForm.of_lattice(l1),
                      FiniteQuadraticForm.of_lattice(l2))
