"""Enumerations over families of joins, plus the classification validators."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import gcd
from typing import Any

from .catalog import make_del_pezzo_bundle, make_sphere, make_three_sasakian, order_spq
from .errors import WrongShape
from .join import JoinCertificate, Verdict, smoothness_certificate
from .space import SeSpace
from .validators import RULES, Violation, validate_space

__all__ = [
    "RULES",
    "Regular5",
    "SearchResult",
    "Violation",
    "cor418_triples",
    "odd_order_triples",
    "regular5_status",
    "smooth_sphere_join_predicate",
    "validate_space",
]


@dataclass(frozen=True)
class Hit:
    params: tuple[int, ...]
    space: Any
    certificates: tuple[JoinCertificate, ...] = ()
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SearchResult:
    query: str
    hits: tuple[Hit, ...]
    bound: str


def _pairwise_coprime(ps) -> bool:
    return all(gcd(a, b) == 1 for a, b in combinations(ps, 2))


def cor418_triples(rmax: int, ls=range(3, 9)) -> SearchResult:
    """Ordered triples (4r1+1, 4r2+1, 4r3+1), 0 <= r_i <= rmax, pairwise coprime.

    Each hit carries the order of S(p1, p2, p3), which must be odd, and the
    certificates of ``Sk(l) * S(p)`` for every ``l`` in ``ls``; all of them
    must be smooth.
    """
    if rmax < 1:
        raise ValueError("rmax must be at least 1")
    hits = []
    bundles = [make_del_pezzo_bundle(l) for l in ls]
    for rs in product(range(rmax + 1), repeat=3):
        ps = tuple(4 * r + 1 for r in rs)
        if not _pairwise_coprime(ps):
            continue
        s = make_three_sasakian(*ps)
        if s.order % 2 == 0:
            raise AssertionError(f"S{ps} has even order {s.order}")
        certs = tuple(smoothness_certificate(b, s) for b in bundles)
        if any(c.verdict is not Verdict.SMOOTH for c in certs):
            raise AssertionError(f"a del Pezzo join with S{ps} is not smooth")
        hits.append(Hit(ps, s, certs, {"r": rs, "order": s.order}))
    return SearchResult(f"cor418 rmax={rmax}", tuple(hits), f"0 <= r_i <= {rmax}")


def odd_order_triples(pmax: int) -> SearchResult:
    """All pairwise coprime p1 <= p2 <= p3 <= pmax whose 3-Sasakian space has odd order.

    Triples outside the ``4r + 1`` form show up here too, for example
    (3, 7, 11) of order 315.
    """
    hits = []
    for ps in combinations_with_replacement(range(1, pmax + 1), 3):
        if not _pairwise_coprime(ps):
            continue
        m = order_spq(*ps)
        if m % 2:
            hits.append(Hit(ps, None, (), {"order": m, "all_1_mod_4": all(p % 4 == 1 for p in ps)}))
    return SearchResult(f"odd-order pmax={pmax}", tuple(hits), f"1 <= p1 <= p2 <= p3 <= {pmax}")


class Regular5(str, enum.Enum):
    EMPTY = "empty"
    POINT = "point"
    FAMILY = "family"


@dataclass(frozen=True)
class Regular5Status:
    k: int
    status: Regular5
    dim_lower: int = 0
    example: str | None = None


def regular5_status(k: int) -> Regular5Status:
    """Moduli of regular SE structures on simply connected 5-manifolds with b_2 = k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 2 or k >= 9:
        return Regular5Status(k, Regular5.EMPTY)
    example = {0: "S5", 1: "S3 * S3"}.get(k, f"Sk({k})")
    if k <= 4:
        return Regular5Status(k, Regular5.POINT, 0, example)
    return Regular5Status(k, Regular5.FAMILY, k - 4, example)


def smooth_sphere_join_predicate(m: int, s: SeSpace) -> Verdict:
    """Is ``S^(2m+1) * S`` smooth, for S of dim 7 and index 2?

    Yes when m is odd; for even m, exactly when the order of S is odd.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if s.dim != 7 or s.index != 2:
        raise WrongShape(f"{s.name} must have dim 7 and index 2, has dim {s.dim} and index {s.index}")
    if s.smooth is False:
        return Verdict.ORBIFOLD
    if m % 2 == 1:
        result = Verdict.SMOOTH
    else:
        order = s.order_support
        if order is None:
            return Verdict.INDETERMINATE
        result = Verdict.SMOOTH if order % 2 else Verdict.ORBIFOLD
    if result is Verdict.SMOOTH and s.smooth is None:
        return Verdict.INDETERMINATE
    return result


def sphere_join_check(m: int, s: SeSpace) -> bool:
    """The predicate agrees with the general certificate for ``S^(2m+1) * S``."""
    return smooth_sphere_join_predicate(m, s) is smoothness_certificate(make_sphere(m), s).verdict
