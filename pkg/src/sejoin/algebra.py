"""Exact graded-cohomology kernel.

Betti vectors, finitely generated graded abelian groups with cyclic torsion,
Künneth products and the circle-bundle (Gysin) computation used for every
join.

The Gysin engine never stores an Euler class.  For a circle V-bundle
``S -> Z`` over a compact Kähler orbifold whose Euler class is a Kähler
class, the sequence

    ... -> H^{q-2}(Z) --(∪e)--> H^q(Z) -> H^q(S) -> H^{q-1}(Z) --(∪e)--> H^{q+1}(Z) -> ...

gives ``b_q(S) = coker(∪e: H^{q-2} -> H^q) + ker(∪e: H^{q-1} -> H^{q+1})``.
Hard Lefschetz makes ``∪e`` injective below the middle degree and
surjective above it, so its rank is ``min(b_p, b_{p+2})``.  Over Q the
orbifold and ordinary cohomology of the leaf space agree, which is why plain
Betti numbers are enough here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import factorint

from .errors import BothFactorsHaveTorsion, Inconsistent, LefschetzViolated


def gcd_all(xs: Iterable[int]) -> int:
    """gcd of a nonempty sequence, with gcd(0, m) = m."""
    xs = list(xs)
    if not xs:
        raise ValueError("gcd_all needs at least one element")
    if any(x < 0 for x in xs):
        raise ValueError("gcd_all takes nonnegative integers")
    return reduce(gcd, xs)


def lcm_all(xs: Iterable[int]) -> int:
    xs = list(xs)
    if not xs:
        raise ValueError("lcm_all needs at least one element")
    if any(x < 1 for x in xs):
        raise ValueError("lcm_all takes positive integers")
    return reduce(lcm, xs)


# ---------------------------------------------------------------------------
# Betti vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BettiVector:
    """Rational Betti numbers ``b_0 .. b_dim`` of a connected space."""

    dim: int
    ranks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if len(self.ranks) != self.dim + 1:
            raise ValueError(
                f"Betti vector of dim {self.dim} needs {self.dim + 1} ranks, got {len(self.ranks)}"
            )
        if any(r < 0 for r in self.ranks):
            raise Inconsistent(f"negative Betti number in {self.ranks}")
        if self.ranks[0] != 1:
            raise ValueError("b_0 must be 1 (connected spaces only)")

    @classmethod
    def of(cls, *ranks: int) -> "BettiVector":
        return cls(len(ranks) - 1, tuple(ranks))

    def __getitem__(self, q: int) -> int:
        """b_q, read as 0 outside ``0..dim``."""
        if 0 <= q <= self.dim:
            return self.ranks[q]
        return 0

    def __iter__(self):
        return iter(self.ranks)

    def __str__(self):
        return "(" + ",".join(map(str, self.ranks)) + ")"

    def poincare_symmetric(self) -> bool:
        return self.ranks == self.ranks[::-1]


POINT = BettiVector(0, (1,))


def sphere_betti(dim: int) -> BettiVector:
    ranks = [0] * (dim + 1)
    ranks[0] = 1
    ranks[dim] += 1
    return BettiVector(dim, tuple(ranks))


def projective_betti(n: int) -> BettiVector:
    """CP^n."""
    return BettiVector(2 * n, tuple(1 if q % 2 == 0 else 0 for q in range(2 * n + 1)))


def euler_characteristic(b: BettiVector) -> int:
    return sum((-1) ** q * r for q, r in enumerate(b.ranks))


def kunneth_betti(a: BettiVector, b: BettiVector) -> BettiVector:
    """Betti numbers of a product over Q (degree-wise convolution)."""
    dim = a.dim + b.dim
    ranks = [0] * (dim + 1)
    for i, x in enumerate(a.ranks):
        if x:
            for j, y in enumerate(b.ranks):
                ranks[i + j] += x * y
    return BettiVector(dim, tuple(ranks))


# ---------------------------------------------------------------------------
# Graded abelian groups
# ---------------------------------------------------------------------------


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of a direct sum of cyclic groups."""
    powers: dict[int, list[int]] = {}
    for m in orders:
        for p, e in factorint(m).items():
            powers.setdefault(p, []).append(p**e)
    if not powers:
        return ()
    width = max(len(v) for v in powers.values())
    factors = [1] * width
    for v in powers.values():
        for i, pe in enumerate(sorted(v, reverse=True)):
            factors[i] *= pe
    return tuple(sorted(factors))


class AbelianGroup:
    """Z^free ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_r}.

    Torsion is kept as given (an unordered multiset of cyclic orders);
    equality and hashing go through the invariant-factor form.
    """

    __slots__ = ("free", "torsion")

    def __init__(self, free: int = 0, torsion: Iterable[int] = ()):
        torsion = tuple(sorted(int(t) for t in torsion))
        if free < 0:
            raise ValueError("free rank must be nonnegative")
        if any(t < 2 for t in torsion):
            raise ValueError(f"cyclic torsion orders must be >= 2, got {torsion}")
        object.__setattr__(self, "free", int(free))
        object.__setattr__(self, "torsion", torsion)

    def __setattr__(self, key, value):
        raise AttributeError("AbelianGroup is immutable")

    def canonical(self) -> tuple[int, tuple[int, ...]]:
        return self.free, invariant_factors(self.torsion)

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"AbelianGroup({self.free}, {self.torsion})"

    def __str__(self):
        free, tors = self.canonical()
        parts = []
        if free:
            parts.append("Z" if free == 1 else f"Z^{free}")
        counts: dict[int, int] = {}
        for t in tors:
            counts[t] = counts.get(t, 0) + 1
        for t, c in counts.items():
            parts.append(f"Z_{t}" if c == 1 else f"Z_{t}^{c}")
        return "+".join(parts) if parts else "0"

    @property
    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion


ZERO = AbelianGroup()


class GradedGroup:
    """Integral cohomology ``H^0 .. H^dim`` of a connected space.

    ``groups`` may stop short of ``dim``; the group is then known only
    through degree ``len(groups) - 1`` (``complete`` is False).
    """

    __slots__ = ("dim", "groups", "_canonical")

    def __init__(self, dim: int, groups: Sequence[AbelianGroup]):
        groups = tuple(groups)
        if not 1 <= len(groups) <= dim + 1:
            raise ValueError(f"need 1..{dim + 1} degrees for dim {dim}, got {len(groups)}")
        if groups[0] != AbelianGroup(1):
            raise ValueError("H^0 must be Z (connected spaces only)")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "_canonical", (dim, tuple(g.canonical() for g in groups)))

    def __setattr__(self, key, value):
        raise AttributeError("GradedGroup is immutable")

    @classmethod
    def free(cls, betti: BettiVector) -> "GradedGroup":
        return cls(betti.dim, [AbelianGroup(r) for r in betti.ranks])

    @classmethod
    def from_data(
        cls, dim: int, free_ranks: Sequence[int], torsion: dict[int, Sequence[int]] | None = None
    ) -> "GradedGroup":
        torsion = torsion or {}
        return cls(dim, [AbelianGroup(f, torsion.get(q, ())) for q, f in enumerate(free_ranks)])

    @property
    def top_known(self) -> int:
        return len(self.groups) - 1

    @property
    def complete(self) -> bool:
        return self.top_known == self.dim

    def __getitem__(self, q: int) -> AbelianGroup:
        if q < 0 or q > self.dim:
            return ZERO
        if q > self.top_known:
            raise KeyError(f"H^{q} not known (known through degree {self.top_known})")
        return self.groups[q]

    def free_ranks(self) -> tuple[int, ...]:
        return tuple(g.free for g in self.groups)

    def free_part(self) -> BettiVector:
        if not self.complete:
            raise ValueError("free-rank projection of a truncated group is not a Betti vector")
        return BettiVector(self.dim, self.free_ranks())

    def torsion_free(self) -> bool:
        return all(g.is_free for g in self.groups)

    def truncate(self, top: int) -> "GradedGroup":
        return GradedGroup(self.dim, self.groups[: top + 1])

    def torsion_pairing_ok(self) -> bool:
        """Torsion in degree q matches degree dim+1-q (closed oriented, any dim)."""
        if not self.complete:
            return True
        for q in range(self.dim + 1):
            p = self.dim + 1 - q
            mine = invariant_factors(self.groups[q].torsion)
            other = invariant_factors(self.groups[p].torsion) if 0 <= p <= self.dim else ()
            if mine != other:
                return False
        return True

    def canonical(self):
        return self._canonical

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"GradedGroup({self.dim}, {list(self.groups)!r})"

    def __str__(self):
        body = ", ".join(str(g) for g in self.groups)
        tail = "" if self.complete else ", ..."
        return f"({body}{tail})"


def sphere_group(dim: int) -> GradedGroup:
    return GradedGroup.free(sphere_betti(dim))


def kunneth_integral_with_free(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    """Integral cohomology of a product when one factor is torsion-free.

    With a free factor every Tor term vanishes, so degree q is the direct
    sum of H^i(a) ⊗ H^{q-i}(b).  A truncated input truncates the result to
    the lowest degree known on both sides.
    """
    if not a.torsion_free() and not b.torsion_free():
        raise BothFactorsHaveTorsion("integral Künneth without Tor needs one torsion-free factor")
    dim = a.dim + b.dim
    top = dim
    if not a.complete or not b.complete:
        top = min(a.top_known if not a.complete else dim, b.top_known if not b.complete else dim)
    out = []
    for q in range(top + 1):
        free = 0
        torsion: list[int] = []
        for i in range(max(0, q - b.dim), min(q, a.dim) + 1):
            x, y = a[i], b[q - i]
            free += x.free * y.free
            torsion.extend(list(y.torsion) * x.free)
            torsion.extend(list(x.torsion) * y.free)
        out.append(AbelianGroup(free, torsion))
    return GradedGroup(dim, out)


# ---------------------------------------------------------------------------
# Leaf-space profiles and the circle-bundle engine
# ---------------------------------------------------------------------------


def _unimodal_symmetric(seq: Sequence[int]) -> bool:
    if list(seq) != list(seq)[::-1]:
        return False
    half = seq[: (len(seq) + 1) // 2]
    return all(x <= y for x, y in zip(half, half[1:]))


def lefschetz_admissible(betti: BettiVector) -> bool:
    """Necessary conditions for hard Lefschetz on an even-dimensional base."""
    if betti.dim % 2:
        return False
    if betti.dim == 0:
        return True
    if betti[1] != 0:
        return False
    return _unimodal_symmetric(betti.ranks[0::2]) and _unimodal_symmetric(betti.ranks[1::2])


@dataclass(frozen=True)
class BaseProfile:
    """Rational profile of a Fano leaf space of complex dimension ``n``."""

    n: int
    betti: BettiVector
    fano_index: int
    lefschetz_ok: bool

    def __post_init__(self):
        if self.betti.dim != 2 * self.n:
            raise ValueError(f"base of complex dim {self.n} needs a Betti vector of dim {2 * self.n}")
        if self.n >= 1 and self.fano_index < 1:
            raise ValueError("Fano index must be positive")

    @classmethod
    def from_betti(cls, betti: BettiVector, fano_index: int = 1) -> "BaseProfile":
        if betti.dim % 2:
            raise ValueError("leaf spaces have even real dimension")
        return cls(betti.dim // 2, betti, fano_index, lefschetz_admissible(betti))


POINT_PROFILE = BaseProfile(0, POINT, 0, True)


def gysin_circle_betti(base: BaseProfile) -> BettiVector:
    """Betti numbers of the circle bundle over ``base`` whose Euler class is Kähler."""
    if not (base.lefschetz_ok and lefschetz_admissible(base.betti)):
        raise LefschetzViolated(f"base Betti vector {base.betti} fails the hard Lefschetz checks")
    z = base.betti
    ranks = []
    for q in range(2 * base.n + 2):
        coker = z[q] - min(z[q - 2], z[q])
        ker = z[q - 1] - min(z[q - 1], z[q + 1])
        ranks.append(coker + ker)
    return BettiVector(2 * base.n + 1, tuple(ranks))


def leaf_space_betti(s: BettiVector, fano_index: int = 1) -> BaseProfile:
    """Invert the low-degree relation b_r(S) = b_r(Z) - b_{r-2}(Z).

    The lower half of the base comes from the recursion, the upper half
    from Poincaré duality; the result must round-trip through the engine.
    """
    if s.dim % 2 == 0:
        raise ValueError("total spaces of circle bundles here are odd-dimensional")
    n = s.dim // 2
    if n == 0:
        return POINT_PROFILE
    if s[1] != 0:
        raise Inconsistent("leaf-space recovery needs b_1 = 0")
    if not s.poincare_symmetric():
        raise Inconsistent(f"Betti vector {s} breaks Poincaré duality")
    z = [0] * (2 * n + 1)
    for r in range(n + 1):
        z[r] = s[r] + (z[r - 2] if r >= 2 else 0)
    for r in range(n + 1, 2 * n + 1):
        z[r] = z[2 * n - r]
    profile = BaseProfile.from_betti(BettiVector(2 * n, tuple(z)), fano_index)
    if not profile.lefschetz_ok:
        raise Inconsistent(f"recovered base {profile.betti} is not Lefschetz-admissible")
    if gysin_circle_betti(profile) != s:
        raise Inconsistent(f"{s} does not round-trip through base {profile.betti}")
    return profile


def kunneth_profiles(a: BaseProfile, b: BaseProfile) -> BaseProfile:
    """Product leaf space with the gcd index (the index of Z_1 x Z_2)."""
    return BaseProfile.from_betti(kunneth_betti(a.betti, b.betti), gcd(a.fano_index, b.fano_index))
