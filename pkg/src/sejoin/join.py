"""The join of Sasakian-Einstein spaces and its invariants.

``join(S1, S2)`` is the circle quotient of ``S1 x S2`` determined by the
relative indices.  Its leaf space is the product of the leaf spaces, so the
rational cohomology comes from the Gysin engine over the Künneth product;
integral cohomology is only emitted for the shapes matched by
``integral_model`` (rules R1 to R8).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .algebra import (
    AbelianGroup,
    BettiVector,
    GradedGroup,
    gysin_circle_betti,
    kunneth_integral_with_free,
    kunneth_profiles,
    leaf_space_betti,
    sphere_group,
)
from .errors import ModelRationalMismatch, NotSimplyConnected
from .space import SeSpace


class Verdict(str, enum.Enum):
    SMOOTH = "smooth"
    ORBIFOLD = "orbifold"
    INDETERMINATE = "indeterminate"

    def as_bool(self) -> bool | None:
        return {Verdict.SMOOTH: True, Verdict.ORBIFOLD: False}.get(self)


@dataclass(frozen=True)
class JoinCertificate:
    l1: int
    l2: int
    m1: int | None
    m2: int | None
    g: int | None
    verdict: Verdict


def relative_indices(s1: SeSpace, s2: SeSpace) -> tuple[int, int]:
    d = gcd(s1.index, s2.index)
    return s1.index // d, s2.index // d


def smoothness_certificate(s1, s2) -> JoinCertificate:
    """Smooth iff gcd(m1*l2, m2*l1) = 1 for smooth factors.

    An unknown order leaves the verdict open unless known divisors of the
    orders already give a common prime (orbifold) or the known side of the
    gcd is 1 (smooth).  Orders known only up to bounds are used through the
    lower bound, which has the same prime divisors.
    """
    l1, l2 = relative_indices(s1, s2)
    m1, m2 = s1.order_support, s2.order_support
    if m1 is not None and m2 is not None:
        g = gcd(m1 * l2, m2 * l1)
        verdict = Verdict.SMOOTH if g == 1 else Verdict.ORBIFOLD
    elif gcd(s1.order_divisor * l2, s2.order_divisor * l1) > 1 or _self_join_irregular(s1, s2):
        g, verdict = None, Verdict.ORBIFOLD
    else:
        known = m1 * l2 if m1 is not None else m2 * l1 if m2 is not None else None
        # gcd(1, x) = 1 whatever x is
        g = 1 if known == 1 else None
        verdict = Verdict.SMOOTH if known == 1 else Verdict.INDETERMINATE
    if verdict is Verdict.SMOOTH and not (s1.smooth and s2.smooth):
        verdict = Verdict.ORBIFOLD if False in (s1.smooth, s2.smooth) else Verdict.INDETERMINATE
    return JoinCertificate(l1, l2, m1, m2, g, verdict)


def _self_join_irregular(s1, s2) -> bool:
    # l1 = l2 = 1 and m1 = m2 = Ord > 1, so g = Ord even when Ord is unknown
    return isinstance(s1, SeSpace) and s1 == s2 and not s1.regular


def _and3(a: bool | None, b: bool | None) -> bool | None:
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _join_order(s1, s2):
    """Exact order from local orders when both are known, else bounds.

    The local groups of a product are products of local groups, so the
    order of the join is a multiple of lcm(m1, m2) and divides m1 * m2.
    """
    if s1.local_orders is not None and s2.local_orders is not None:
        local = tuple(sorted({x * y for x in s1.local_orders for y in s2.local_orders}))
        order = reduce(lcm, local)
        return order, (order, order), local
    lo = lcm(s1.order_divisor, s2.order_divisor)
    b1, b2 = s1.order_bounds, s2.order_bounds
    hi = b1[1] * b2[1] if b1 and b2 and b1[1] is not None and b2[1] is not None else None
    if hi is None and lo == 1:
        return None, None, None
    return (lo if lo == hi else None), (lo, hi), None


@dataclass(frozen=True)
class _Partial:
    """The data of a partial join that the smoothness fold needs."""

    index: int
    order_support: int | None
    order_divisor: int
    order_bounds: tuple | None
    local_orders: tuple | None
    smooth: bool | None

    @classmethod
    def of(cls, s) -> "_Partial":
        return cls(s.index, s.order_support, s.order_divisor, s.order_bounds, s.local_orders, s.smooth)


def _fold_smooth(atoms: Sequence[SeSpace]) -> bool | None:
    """Smoothness of the join of ``atoms``, folded in their canonical order.

    The join does not depend on bracketing, but a three-valued verdict
    computed step by step can; fixing the order makes it a function of the
    multiset of atoms.
    """
    if any(not a.regular and atoms.count(a) > 1 for a in atoms):
        return False
    acc = _Partial.of(atoms[0])
    for a in atoms[1:]:
        cert = smoothness_certificate(acc, a)
        order, bounds, local = _join_order(acc, a)
        support = order if order is not None else (bounds[0] if bounds and bounds[1] is not None else None)
        divisor = order if order is not None else (bounds[0] if bounds else 1)
        acc = _Partial(
            gcd(acc.index, a.index), support, divisor, bounds, local,
            _and3(_and3(acc.smooth, a.smooth), cert.verdict.as_bool()),
        )
    return acc.smooth


def join(s1: SeSpace, s2: SeSpace) -> SeSpace:
    if s1.is_identity:
        return s2
    if s2.is_identity:
        return s1
    for s in (s1, s2):
        if not s.simply_connected:
            raise NotSimplyConnected(f"{s.name} is not simply connected; joins need pi_1^orb = 0")

    atoms = tuple(sorted(s1.atoms + s2.atoms, key=SeSpace.sort_key))
    base = kunneth_profiles(leaf_space_betti(s1.betti, s1.index), leaf_space_betti(s2.betti, s2.index))
    betti = gysin_circle_betti(base)
    model = integral_model(atoms, betti)
    order, bounds, local = _join_order(s1, s2)
    return SeSpace(
        name=" * ".join(a.name for a in atoms),
        n=s1.n + s2.n,
        index=gcd(s1.index, s2.index),
        order=order,
        regular=s1.regular and s2.regular,
        smooth=_fold_smooth(atoms),
        simply_connected=True,
        betti=betti,
        integral=model.groups if model else None,
        family="join",
        params=(),
        local_orders=local,
        order_bounds=bounds,
        three_sasakian=False,
        homogeneous=s1.homogeneous and s2.homogeneous,
        se_irreducible=False,
        ke_certified=s1.ke_certified and s2.ke_certified,
        moduli_dim_lower=max(s1.moduli_dim_lower, s2.moduli_dim_lower),
        provenance="join",
        factors=atoms,
    )


def n_fold_join(spaces: Sequence[SeSpace]) -> SeSpace:
    if not spaces:
        raise ValueError("n_fold_join needs at least one space")
    return reduce(join, spaces)


def fold_certificates(spaces: Sequence[SeSpace]) -> list[JoinCertificate]:
    """Certificates of each step of the left fold, identity steps skipped."""
    certs = []
    acc = spaces[0]
    for s in spaces[1:]:
        if not acc.is_identity and not s.is_identity:
            certs.append(smoothness_certificate(acc, s))
        acc = join(acc, s)
    return certs


# ---------------------------------------------------------------------------
# Join expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    space: SeSpace


@dataclass(frozen=True)
class Join:
    left: "JoinExpr"
    right: "JoinExpr"


JoinExpr = Union[Leaf, Join]


def flatten(expr: JoinExpr) -> list[SeSpace]:
    if isinstance(expr, Leaf):
        return [expr.space]
    return flatten(expr.left) + flatten(expr.right)


def evaluate(expr: JoinExpr) -> SeSpace:
    if isinstance(expr, Leaf):
        return expr.space
    return join(evaluate(expr.left), evaluate(expr.right))


def expr_from_list(spaces: Sequence[SeSpace]) -> JoinExpr:
    return reduce(Join, (Leaf(s) for s in spaces[1:]), Leaf(spaces[0]))


# ---------------------------------------------------------------------------
# Lemma-style low Betti numbers
# ---------------------------------------------------------------------------


def low_betti_lemma52(s1: SeSpace, s2: SeSpace) -> dict[str, int]:
    """b_2, b_3, b_4 of a join from the factors' Betti numbers.

    Each value is emitted only inside its range of validity
    (b_2: n_i >= 1, b_3: n_i >= 3, b_4: n_i >= 4).
    """
    lo = min(s1.n, s2.n)
    a, b = s1.betti, s2.betti
    out = {}
    if lo >= 1:
        out["b2"] = a[2] + b[2] + 1
    if lo >= 3:
        out["b3"] = a[3] + b[3]
    if lo >= 4:
        out["b4"] = a[4] + b[4] + a[2] * b[2] + a[2] + b[2] + 1
    return out


# ---------------------------------------------------------------------------
# Integral models
# ---------------------------------------------------------------------------


class Scope(str, enum.Enum):
    FULL = "full_groups"
    LOW = "low_degrees_only"
    RING = "ring_iso"


@dataclass(frozen=True)
class IntegralModel:
    rule_id: str
    match_description: str
    groups: GradedGroup
    ring_relations: tuple[str, ...]
    scope: Scope


def _is_s3(s: SeSpace) -> bool:
    return s.family == "sphere" and s.n == 1


def _is_fermat(s: SeSpace, d: int, n: int) -> bool:
    return s.family == "fermat" and s.params == (d, n)


def _is_index2_h3zero(s: SeSpace) -> bool:
    """A 7-dimensional index-2 space with H^3(S, Z) known to vanish."""
    return (
        s.n == 3
        and s.index == 2
        and s.integral is not None
        and s.integral.top_known >= 3
        and s.integral[3].is_zero
    )


_S2 = sphere_group(2)


def _power_s2(r: int, g: GradedGroup) -> GradedGroup:
    for _ in range(r):
        g = kunneth_integral_with_free(_S2, g)
    return g


def _from_free(dim: int, free: Sequence[int], torsion: dict[int, list[int]] | None = None) -> GradedGroup:
    return GradedGroup.from_data(dim, free, torsion)


def _s3_join_s34() -> GradedGroup:
    return _from_free(9, [1, 0, 1, 10, 0, 0, 10, 1, 0, 1])


def _s34_join_low(x: SeSpace) -> GradedGroup:
    k = x.betti[2]
    return GradedGroup(13, [AbelianGroup(1), AbelianGroup(0), AbelianGroup(k + 1), AbelianGroup(10)])


def _match(atoms: Sequence[SeSpace]) -> IntegralModel | None:
    r = sum(1 for a in atoms if _is_s3(a))
    rest = [a for a in atoms if not _is_s3(a)]
    dp = [a for a in rest if a.family == "del_pezzo"]

    # R2: S^3 * S(p1,p2,p3), integrally S^2 x S(p)
    if r == 1 and len(rest) == 1 and rest[0].family == "three_sasakian" and rest[0].integral is not None:
        x = rest[0]
        return IntegralModel(
            "R2", f"S3 * {x.name}", _power_s2(1, x.integral),
            ("H^*(S^3 * S(p)) = H^*(S^2 x S(p)) as rings", "H^4 torsion Z_sigma2, sigma2 = p1p2+p1p3+p2p3"),
            Scope.RING,
        )
    # R3: iterated S^3-joins with an index-2, H^3 = 0 factor.  Only H^2 is
    # emitted: beyond it the product S^2 x ... x S^2 x S has different
    # Betti numbers from the circle bundle (b_5 already differs for r = 2).
    if r >= 2 and len(rest) == 1 and _is_index2_h3zero(rest[0]):
        x = rest[0]
        return IntegralModel(
            "R3", f"{r} x S3 * {x.name}", _power_s2(r, x.integral.truncate(2)),
            (f"H^2 = H^2((S^2)^{r} x S)", "H^3 vanishes rationally"), Scope.LOW,
        )
    # R4: S^3 * S_k
    if r == 1 and len(rest) == 1 and dp:
        k = dp[0].params[0]
        return IntegralModel(
            "R4", f"S3 * {dp[0].name}",
            _from_free(7, [1, 0, k + 1, 0, 0, k + 1, 0, 1], {4: [2] * k}),
            ("alpha_i alpha_j = 0", "s^2 = 0", "2 alpha_i s = 0"), Scope.RING,
        )
    # R5: S^3 * S_{3,4} in full, S_{3,4} * S in low degrees
    if r == 1 and len(rest) == 1 and _is_fermat(rest[0], 3, 3):
        return IntegralModel("R5", f"S3 * {rest[0].name}", _s3_join_s34(), (), Scope.FULL)
    if r == 0 and len(rest) == 2:
        f34 = [a for a in rest if _is_fermat(a, 3, 3)]
        others = [a for a in rest if not _is_fermat(a, 3, 3)]
        if len(f34) == 1 and len(others) == 1 and _is_index2_h3zero(others[0]):
            return IntegralModel(
                "R5", f"{f34[0].name} * {others[0].name}", _s34_join_low(others[0]),
                ("H^2 = Z^{k+1}", "H^3 = Z^10"), Scope.LOW,
            )
    # R6: S_k * S_{4,4}
    if r == 0 and len(rest) == 2 and len(dp) == 1 and any(_is_fermat(a, 4, 3) for a in rest):
        k = dp[0].params[0]
        return IntegralModel(
            "R6", f"{dp[0].name} * F(4,3)",
            _from_free(11, [1, 0, k + 1, 60, 1, 60 * k, 60 * k, 1, 60, k + 1, 0, 1]),
            ("alpha_i alpha_j = 0", "s^3 = 0", "alpha_i s = 0", "u_a u_b = 0", "s u_a = 0"), Scope.RING,
        )
    # R7: S_k * S_k'
    if r == 0 and len(rest) == 2 and len(dp) == 2:
        k, kk = dp[0].params[0], dp[1].params[0]
        return IntegralModel(
            "R7", f"{dp[0].name} * {dp[1].name}",
            _from_free(9, [1, 0, k + kk + 1, 0, k * kk + 1, k * kk + 1, 0, k + kk + 1, 0, 1]),
            ("alpha_i alpha_j = 0", "s^3 = 0", "alpha_i s = 0", "alpha'_i s = 0", "alpha'_i alpha'_j = 0"),
            Scope.RING,
        )
    # R8: iterated S^3-joins with S_{3,4}, optionally with an index-2 factor
    # The product model agrees with the circle bundle for r = 2 only; for
    # r >= 3 it breaks in the middle degrees, so just H^0..H^3 are kept.
    if r >= 2 and len(rest) == 1 and _is_fermat(rest[0], 3, 3):
        groups = _power_s2(r - 1, _s3_join_s34())
        if r == 2:
            return IntegralModel(
                "R8", f"2 x S3 * {rest[0].name}", groups,
                ("H^* = H^*(S^2 x (S^3 * S_{3,4})) as rings",), Scope.RING,
            )
        return IntegralModel(
            "R8", f"{r} x S3 * {rest[0].name}", groups.truncate(3),
            (f"H^q = H^q((S^2)^{r - 1} x (S^3 * S_{{3,4}})) for q <= 3",), Scope.LOW,
        )
    if r >= 1 and len(rest) == 2:
        f34 = [a for a in rest if _is_fermat(a, 3, 3)]
        others = [a for a in rest if not _is_fermat(a, 3, 3)]
        if len(f34) == 1 and len(others) == 1 and _is_index2_h3zero(others[0]):
            return IntegralModel(
                "R8", f"{r} x S3 * {f34[0].name} * {others[0].name}",
                _power_s2(r, _s34_join_low(others[0])).truncate(3),
                ("H^q for q <= 3 only",), Scope.LOW,
            )
    # R1: S^3 * S with S of dim 7, index 2, H^3 = 0
    if r == 1 and len(rest) == 1 and _is_index2_h3zero(rest[0]):
        x = rest[0]
        return IntegralModel(
            "R1", f"S3 * {x.name}", _power_s2(1, x.integral.truncate(3)),
            ("H^2 = Z^{k+1}", "H^3 = 0"), Scope.LOW,
        )
    return None


def integral_model(expr: JoinExpr | Iterable[SeSpace], betti: BettiVector | None = None) -> IntegralModel | None:
    """First matching table rule for the normalized expression, or None.

    The model's free ranks must equal the rational engine's Betti numbers.
    """
    if isinstance(expr, (Leaf, Join)):
        spaces = flatten(expr)
    else:
        spaces = list(expr)
    atoms = [a for s in spaces for a in s.atoms if not a.is_identity]
    if len(atoms) < 2:
        return None
    model = _match(sorted(atoms, key=SeSpace.sort_key))
    if model is None:
        return None
    if betti is None:
        betti = n_fold_join(atoms).betti
    known = model.groups.free_ranks()
    if model.groups.dim != betti.dim or known != betti.ranks[: len(known)]:
        raise ModelRationalMismatch(
            f"rule {model.rule_id} gives free ranks {known}, rational engine gives {betti.ranks}"
        )
    return model


# ---------------------------------------------------------------------------
# Notes attached to reports
# ---------------------------------------------------------------------------


def ambiguity_notes(space: SeSpace) -> list[str]:
    """Shapes whose rational cohomology admits a second possibility."""
    atoms = [a for a in space.atoms if not a.is_identity]
    notes = []
    if len(atoms) == 2:
        s5 = [a for a in atoms if a.family == "sphere" and a.n == 2]
        ts = [a for a in atoms if a.three_sasakian and a.n == 3 and a.family != "sphere"]
        if len(s5) == 1 and len(ts) == 1 and ts[0].betti[2] == 1:
            notes.append(
                "S5 * S with S 3-Sasakian of b_2 = 1: H^5 = H^6 = 0 is reported; "
                "H^5 = H^6 = Q (cohomology of CP^2 x S) is not excluded"
            )
    return notes
