"""Existence, splitting and uniqueness criteria for even lattices.

The p-elementary existence criteria apply to hyperbolic lattices only; the
clause evaluators take abstract invariants (r, a, delta) so the caller is
responsible for the signature hypothesis (split off U first for signature
(2,*) lattices).
"""

from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg as la
from . import lattices as lat


class NotPElementaryError(ValueError):
    pass


@dataclass(frozen=True)
class PElementaryInvariants:
    p: int
    r: int
    a: int
    delta: int | None = None  # only for p = 2

    def __post_init__(self):
        assert 0 <= self.a <= self.r
        assert (self.delta is not None) == (self.p == 2)


def p_elementary_invariants(lattice, p):
    """(r, a[, delta]) of a p-elementary lattice; errors otherwise."""
    disc = lat.discriminant_group(lattice)
    for d in disc.cyclic_orders:
        if d != p:
            raise NotPElementaryError(
                f"not {p}-elementary: invariant factor {d}")
    delta = None
    if p == 2:
        delta = 0 if all(q.denominator == 1 for q in disc.q_values) else 1
    return PElementaryInvariants(p, lattice.rank, disc.length, delta)


def exists_2elementary_hyperbolic(r, a, delta):
    """Existence of an even hyperbolic 2-elementary lattice with (r,a,delta).

    Returns (True, None) or (False, failing_clause).
    """
    if not (a <= r):
        return False, "a <= r"
    if (r - a) % 2 != 0:
        return False, "r = a mod 2"
    if delta == 0 and r % 4 != 2:
        return False, "if delta=0, then r = 2 mod 4"
    if a == 0 and delta != 0:
        return False, "if a=0, then delta=0"
    if a <= 1 and (r - (2 + a)) % 8 != 0 and (r - (2 - a)) % 8 != 0:
        return False, "if a<=1, then r = 2 +- a mod 8"
    if a == 2 and r % 8 == 6 and delta != 0:
        return False, "if a=2 and r = 6 mod 8, then delta=0"
    if delta == 0 and a == r and r % 8 != 2:
        return False, "if delta=0 and a=r, then r = 2 mod 8"
    return True, None


def exists_pelementary_hyperbolic(r, a, p):
    """Existence of an even hyperbolic p-elementary lattice, p odd.

    Returns (True, None) or (False, failing_clause).  Uniqueness holds for
    r >= 3.
    """
    assert p % 2 == 1 and p > 2
    if not (a <= r):
        return False, "a <= r"
    if r % 2 != 0:
        return False, "r = 0 mod 2"
    if a % 2 == 0 and r % 4 != 2:
        return False, "if a = 0 mod 2, then r = 2 mod 4"
    if a % 2 == 1 and (p - (-1) ** (r // 2 - 1)) % 4 != 0:
        return False, "if a = 1 mod 2, then p = (-1)^(r/2-1) mod 4"
    if r % 8 != 2 and not (r > a > 0):
        return False, "if r != 2 mod 8, then r > a > 0"
    return True, None


def splits_off_U(lattice):
    """Sufficient criterion for L = U + L0: even, indefinite, r >= 3 + l(A).

    Returns "yes" or "inconclusive" (never a definitive no).
    """
    plus, minus = lat.signature(lattice)
    if plus == 0 or minus == 0:
        return "inconclusive"
    disc = lat.discriminant_group(lattice)
    if lattice.rank >= 3 + disc.length:
        return "yes"
    return "inconclusive"


def unique_in_genus(lattice):
    """Uniqueness in the genus: indefinite and l(A) <= rank - 2."""
    plus, minus = lat.signature(lattice)
    if plus == 0 or minus == 0:
        return "inconclusive"
    disc = lat.discriminant_group(lattice)
    if disc.length <= lattice.rank - 2:
        return "yes"
    return "inconclusive"


def bcms_square_condition(p, rank, det):
    """For a lattice of rank p-1 with an order-p action: |det|/p^(p-2) must
    be the square of a rational."""
    if rank != p - 1:
        raise ValueError(f"criterion needs rank = p-1, got rank {rank}")
    return la.is_perfect_square_rational(Fraction(abs(det), p ** (p - 2)))
