"""The two-parameter family M(S1, S2; l, k) of Einstein orbifolds.

``M(S1, S2; l, k)`` is the quotient of ``S1 x S2`` by the circle acting with
weights ``(l, k)``.  The points with ``l, k >= 1`` form a lattice under
divisibility (meet = componentwise gcd, join = componentwise lcm) and all
share the rational cohomology of ``S1 * S2``.  The points on the ray
``m * (l1, l2)`` through the relative indices are Sasakian-Einstein.

Smoothness is three-valued.  ``gcd(m1*k, m2*l) = 1`` is sufficient.  It is
also necessary at ``(l1, l2)`` itself, and nothing in the lattice is smooth
once ``gcd(m1, m2) > 1``.  Everywhere else a failed test leaves the answer
unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd, lcm

from .algebra import BettiVector, kunneth_betti, leaf_space_betti
from .errors import BothZero, IndeterminateOrder, MismatchedFactors
from .join import join, relative_indices
from .space import SeSpace


@dataclass(frozen=True)
class ProductDescriptor:
    """A boundary point: the product of one space with the other's leaf space."""

    space: str
    leaf_space_of: str
    betti: BettiVector

    def __str__(self):
        return f"{self.space} x Z({self.leaf_space_of})"


@dataclass(frozen=True)
class LatticePoint:
    s1: SeSpace
    s2: SeSpace
    l: int
    k: int
    orb_simply_connected: bool
    smooth: bool | None
    sasakian_einstein: bool
    rational_cohomology: BettiVector | ProductDescriptor
    compact_orbifold: bool = True
    einstein_metric_exists: bool = True
    note: str = ""

    @property
    def coords(self) -> tuple[int, int]:
        return self.l, self.k

    @property
    def interior(self) -> bool:
        return self.l > 0 and self.k > 0


def _and3(a: bool | None, b: bool | None) -> bool | None:
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _se_multiple(l: int, k: int, l1: int, l2: int) -> bool:
    """True when (l, k) = m (l1, l2) for a positive integer m."""
    if l == 0 or k == 0:
        return False
    return l * l2 == k * l1 and l % l1 == 0


def _interior_smooth(s1: SeSpace, s2: SeSpace, l: int, k: int) -> bool | None:
    if s1.smooth is False or s2.smooth is False:
        return False
    m1, m2 = s1.order_support, s2.order_support
    if m1 is not None and m2 is not None:
        if gcd(m1, m2) > 1:
            return False
        if gcd(m1 * k, m2 * l) == 1:
            return _and3(s1.smooth, s2.smooth)
        if (l, k) == relative_indices(s1, s2):
            return False
        return None
    # One order unknown: the test still passes when the known term is 1.
    if (m1 is not None and m1 * k == 1) or (m2 is not None and m2 * l == 1):
        return _and3(s1.smooth, s2.smooth)
    return None


def _boundary_smooth(space: SeSpace, other: SeSpace) -> bool | None:
    """``space x Z(other)`` is a manifold iff ``space`` is and ``Z(other)`` is.

    The leaf space of ``other`` is a manifold exactly when its order is 1.
    """
    m = other.order
    if m is None:
        lo = other.order_support
        leaf_ok = False if lo is not None and lo > 1 else None
    else:
        leaf_ok = m == 1
    return _and3(space.smooth, leaf_ok)


@lru_cache(maxsize=4096)
def lattice_point(s1: SeSpace, s2: SeSpace, l: int, k: int) -> LatticePoint:
    if l < 0 or k < 0:
        raise ValueError("l and k must be nonnegative")
    if l == 0 and k == 0:
        raise BothZero("l and k cannot both be zero")
    l1, l2 = relative_indices(s1, s2)
    if k == 0 or l == 0:
        space, other = (s1, s2) if k == 0 else (s2, s1)
        leaf = leaf_space_betti(other.betti, max(other.index, 1)).betti
        descriptor = ProductDescriptor(space.name, other.name, kunneth_betti(space.betti, leaf))
        return LatticePoint(
            s1, s2, l, k,
            orb_simply_connected=gcd(l, k) == 1,
            smooth=_boundary_smooth(space, other),
            sasakian_einstein=False,
            rational_cohomology=descriptor,
            note="boundary point; its rational cohomology need not match the interior",
        )
    return LatticePoint(
        s1, s2, l, k,
        orb_simply_connected=gcd(l, k) == 1,
        smooth=_interior_smooth(s1, s2, l, k),
        sasakian_einstein=_se_multiple(l, k, l1, l2),
        rational_cohomology=join(s1, s2).betti,
    )


def _same_pair(p: LatticePoint, q: LatticePoint) -> None:
    if p.s1 is q.s1 and p.s2 is q.s2:
        return
    if p.s1 != q.s1 or p.s2 != q.s2:
        raise MismatchedFactors(f"points over ({p.s1.name}, {p.s2.name}) and ({q.s1.name}, {q.s2.name})")


def lattice_leq(p: LatticePoint, q: LatticePoint) -> bool:
    """The order induced by meet: p <= q iff p.l | q.l and p.k | q.k."""
    _same_pair(p, q)
    return q.l % p.l == 0 and q.k % p.k == 0


def lattice_meet(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    _same_pair(p, q)
    return lattice_point(p.s1, p.s2, gcd(p.l, q.l), gcd(p.k, q.k))


def lattice_join(p: LatticePoint, q: LatticePoint) -> LatticePoint:
    _same_pair(p, q)
    return lattice_point(p.s1, p.s2, lcm(p.l, q.l), lcm(p.k, q.k))


def enumerate_smooth(s1: SeSpace, s2: SeSpace, lmax: int, kmax: int) -> list[LatticePoint]:
    """Interior points of the box [1, lmax] x [1, kmax] passing gcd(m1 k, m2 l) = 1."""
    m1, m2 = s1.order, s2.order
    if m1 is None or m2 is None:
        missing = s1.name if m1 is None else s2.name
        raise IndeterminateOrder(f"order of {missing} is unknown")
    return [
        lattice_point(s1, s2, l, k)
        for l in range(1, lmax + 1)
        for k in range(1, kmax + 1)
        if gcd(m1 * k, m2 * l) == 1
    ]


def cheeger_limit(s1: SeSpace, s2: SeSpace, l: int, k: int, a: int, b: int) -> tuple[LatticePoint, str]:
    """The limit of M(S1, S2; l t + a, k t + b) as t grows: the point (l, k)."""
    point = lattice_point(s1, s2, l, k)
    sequence = f"M({s1.name}, {s2.name}; {l}t+{a}, {k}t+{b}), t -> infinity"
    return point, sequence


@dataclass(frozen=True)
class ScalingSolution:
    """Rescaling ``c_i h_i`` of two Einstein factors making the product Einstein."""

    n1: int
    n2: int
    c1: Fraction
    c2: Fraction
    scalar_curvature: Fraction
    einstein_constant: Fraction


def _se_scalar(n: int) -> int:
    # A Kähler-Einstein leaf space of complex dim n under an SE structure has
    # Ricci = 2(n+1) g, hence scalar curvature 4n(n+1).
    return 4 * n * (n + 1)


def scaling_solution(n1: int, n2: int) -> ScalingSolution:
    """Solve c_i = (n_i + 1)/(N + 1) exactly and check the resulting curvature.

    Scaling a metric by ``c`` divides its Ricci eigenvalue and scalar curvature
    by ``c``; both factors must land on the Einstein constant ``2(N+1)``.
    """
    if n1 < 0 or n2 < 0:
        raise ValueError("n1 and n2 must be nonnegative")
    big = n1 + n2
    c1 = Fraction(n1 + 1, big + 1)
    c2 = Fraction(n2 + 1, big + 1)
    lam1 = Fraction(2 * (n1 + 1)) / c1
    lam2 = Fraction(2 * (n2 + 1)) / c2
    scal = Fraction(_se_scalar(n1)) / c1 + Fraction(_se_scalar(n2)) / c2
    if lam1 != lam2 or lam1 != 2 * (big + 1) or scal != _se_scalar(big):
        raise ArithmeticError(f"scaling check failed for ({n1}, {n2})")
    return ScalingSolution(n1, n2, c1, c2, scal, lam1)
