"""Known values of named joins and families, checked by ``sejoin verify``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .algebra import AbelianGroup, GradedGroup, gysin_circle_betti, leaf_space_betti
from .catalog import (
    make_del_pezzo_bundle,
    make_fermat_link,
    make_sphere,
    make_three_sasakian,
    order_spq,
)
from .join import Verdict, join, smoothness_certificate
from .space import SeSpace
from .validators import validate_space


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    found: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.found


def _groups(*entries) -> GradedGroup:
    """Build a group table from entries ``f`` or ``(f, [torsion])``."""
    gs = [AbelianGroup(e) if isinstance(e, int) else AbelianGroup(e[0], e[1]) for e in entries]
    return GradedGroup(len(gs) - 1, gs)


def table_checks() -> Iterator[Check]:
    s3 = make_sphere(1)
    for (d, n), b in {(4, 3): 60, (3, 3): 10, (2, 3): 0}.items():
        yield Check(f"b3 of F({d},{n})", b, make_fermat_link(d, n).betti[3])
    yield Check("order of T(1,2,3)", 60, order_spq(1, 2, 3))
    yield Check("order of T(1,1,5)", 3, order_spq(1, 1, 5))
    yield Check("S3 * S3 Betti", (1, 0, 1, 1, 0, 1), join(s3, s3).betti.ranks)
    for ps, sig in (((1, 1, 1), 3), ((1, 2, 3), 11), ((1, 1, 5), 11), ((1, 5, 9), 59)):
        expected = _groups(1, 0, 2, 0, (1, [sig]), 1, (0, [sig]), 2, 0, 1)
        yield Check(f"S3 * T{ps} groups", expected, join(s3, make_three_sasakian(*ps)).integral)
    for k in range(3, 9):
        expected = _groups(1, 0, k + 1, 0, (0, [2] * k), k + 1, 0, 1)
        yield Check(f"S3 * Sk({k}) groups", expected, join(s3, make_del_pezzo_bundle(k)).integral)
        yield Check(f"Sk({k}) * F(4,3) b3, b5", (60, 60 * k),
                    tuple(join(make_del_pezzo_bundle(k), make_fermat_link(4, 3)).betti[q] for q in (3, 5)))
        for k2 in range(k, 9):
            sp = join(make_del_pezzo_bundle(k), make_del_pezzo_bundle(k2))
            yield Check(f"Sk({k}) * Sk({k2}) b2, b4", (k + k2 + 1, k * k2 + 1), (sp.betti[2], sp.betti[4]))
    yield Check("S3 * F(3,3) groups", _groups(1, 0, 1, 10, 0, 0, 10, 1, 0, 1), join(s3, make_fermat_link(3, 3)).integral)
    cert = smoothness_certificate(make_sphere(2), make_three_sasakian(1, 2, 3))
    yield Check("S5 * T(1,2,3) certificate", (2, Verdict.ORBIFOLD), (cert.g, cert.verdict))


def catalog_checks(catalog: dict[str, SeSpace]) -> Iterator[Check]:
    for name, s in catalog.items():
        yield Check(f"{name} validators", [], validate_space(s))
        if s.simply_connected:
            back = gysin_circle_betti(leaf_space_betti(s.betti, s.index))
            yield Check(f"{name} leaf/circle round trip", s.betti, back)


def run_checks(catalog: dict[str, SeSpace]) -> list[Check]:
    return list(table_checks()) + list(catalog_checks(catalog))

