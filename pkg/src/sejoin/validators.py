"""Classification checks on SeSpace records, reported as data."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import euler_characteristic
from .space import SeSpace

RULES = {
    "index_bound_regular": "regular spaces of dim 2n+1 have index <= n+1",
    "three_sasakian_index": "3-Sasakian spaces have dim 4m+3 and index m+1 or 2m+2",
    "regular7_b2_bound": "regular 7-manifolds have b_2 <= 9",
    "regular5_classification": "regular simply connected 5-manifolds have b_2 in {0,1,3,...,8}",
    "euler_characteristic": "odd-dimensional closed spaces have Euler characteristic 0",
    "poincare_duality": "b_q = b_{dim-q}",
    "simply_connected_b1": "simply connected spaces have b_1 = 0",
    "order_one_regular_smooth": "order 1 holds exactly for smooth regular spaces",
    "integral_free_ranks": "integral free ranks equal the Betti numbers",
    "torsion_duality": "torsion in degree q matches degree dim+1-q",
}


@dataclass(frozen=True)
class Violation:
    space: str
    rule: str
    expected: str
    found: str

    def __post_init__(self):
        assert self.rule in RULES, self.rule


def validate_space(s: SeSpace) -> list[Violation]:
    out: list[Violation] = []

    def fail(rule, expected, found):
        out.append(Violation(s.name, rule, str(expected), str(found)))

    b = s.betti
    if s.regular and s.index > s.n + 1:
        fail("index_bound_regular", f"index <= {s.n + 1}", s.index)
    if s.three_sasakian:
        if s.dim % 4 != 3:
            fail("three_sasakian_index", "dim = 4m+3", s.dim)
        else:
            m = (s.dim - 3) // 4
            if s.index not in (m + 1, 2 * m + 2):
                fail("three_sasakian_index", f"index in {{{m + 1}, {2 * m + 2}}}", s.index)
    if s.regular and s.dim == 7 and b[2] > 9:
        fail("regular7_b2_bound", "b_2 <= 9", b[2])
    if s.regular and s.simply_connected and s.dim == 5 and (b[2] == 2 or b[2] > 8):
        fail("regular5_classification", "b_2 in {0,1,3,...,8}", b[2])
    chi = euler_characteristic(b)
    if chi != 0:
        fail("euler_characteristic", 0, chi)
    if not b.poincare_symmetric():
        fail("poincare_duality", "symmetric Betti vector", b)
    if s.simply_connected and b[1] != 0:
        fail("simply_connected_b1", "b_1 = 0", b[1])
    if s.order is not None:
        if (s.order == 1) != bool(s.regular and s.smooth):
            fail("order_one_regular_smooth", "order 1 iff regular and smooth",
                 f"order={s.order}, regular={s.regular}, smooth={s.smooth}")
    if s.integral is not None:
        known = s.integral.free_ranks()
        if known != b.ranks[: len(known)]:
            fail("integral_free_ranks", b.ranks[: len(known)], known)
        if not s.integral.torsion_pairing_ok():
            fail("torsion_duality", "torsion(q) = torsion(dim+1-q)", s.integral)
    return out
