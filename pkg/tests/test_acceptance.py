"""The thirteen acceptance criteria, at exact tolerance.

Run ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the "acceptance criteria" section of the summary.
"""

import random
from itertools import combinations_with_replacement, product
from math import gcd

from conftest import ATOMS, CATALOG
from sejoin.algebra import AbelianGroup, BettiVector, euler_characteristic, gysin_circle_betti, leaf_space_betti
from sejoin.catalog import (
    make_circle,
    make_del_pezzo_bundle,
    make_fermat_link,
    make_sphere,
    make_three_sasakian,
)
from sejoin.join import Verdict, integral_model, join, low_betti_lemma52, n_fold_join, smoothness_certificate
from sejoin.lattice import lattice_join, lattice_leq, lattice_meet, lattice_point, scaling_solution
from sejoin.search import cor418_triples, validate_space
from sejoin.space import SeSpace

S1, S3, S5, S7 = make_circle(), make_sphere(1), make_sphere(2), make_sphere(3)
DEL_PEZZO = range(3, 9)


def group(free, torsion=()):
    return AbelianGroup(free, torsion).canonical()


def test_criterion_01_fermat_betti():
    for (d, n), b3 in {(4, 3): 60, (3, 3): 10, (2, 3): 0}.items():
        assert make_fermat_link(d, n).betti[3] == b3


def test_criterion_02_s3_join_three_sasakian_groups():
    for ps, sigma in {(1, 1, 1): 3, (1, 2, 3): 11, (1, 1, 5): 11, (1, 5, 9): 59}.items():
        s = join(S3, make_three_sasakian(*ps))
        g = s.integral
        expected = [group(1), group(0), group(2), group(0), group(1, [sigma]), group(1),
                    group(0, [sigma]), group(2), group(0), group(1)]
        assert [g[q].canonical() for q in range(10)] == expected
        # free ranks from the rational engine alone
        assert g.free_ranks() == s.betti.ranks == (1, 0, 2, 0, 1, 1, 0, 2, 0, 1)


def test_criterion_03_s3_join_del_pezzo_groups():
    for k in DEL_PEZZO:
        g = join(S3, make_del_pezzo_bundle(k)).integral
        assert g[2].canonical() == group(k + 1)
        assert g[4].canonical() == group(0, [2] * k)
        assert g[5].canonical() == group(k + 1)


def test_criterion_04_del_pezzo_pairs():
    for k, k2 in product(DEL_PEZZO, repeat=2):
        a, b = make_del_pezzo_bundle(k), make_del_pezzo_bundle(k2)
        s = join(a, b)
        assert (s.betti[2], s.betti[4]) == (k + k2 + 1, k * k2 + 1)
        model = integral_model([a, b], s.betti)
        assert model is not None and model.groups.free_ranks() == s.betti.ranks


def test_criterion_05_del_pezzo_join_quartic():
    f = make_fermat_link(4, 3)
    for k in DEL_PEZZO:
        s = join(make_del_pezzo_bundle(k), f)
        assert (s.betti[3], s.betti[5]) == (60, 60 * k)


def test_criterion_06_low_betti_against_engine():
    rng = random.Random(20260419)
    in_range = [(a, b) for a, b in product(ATOMS, repeat=2) if min(a.n, b.n) >= 1]
    pairs = [rng.choice(in_range) for _ in range(200)]
    checked = 0
    for a, b in pairs:
        betti = join(a, b).betti
        low = low_betti_lemma52(a, b)
        assert "b2" in low
        for key, value in low.items():
            assert betti[int(key[1])] == value, (a.name, b.name, key)
            checked += 1
    assert checked >= 200


MONOID_ATOMS = [CATALOG[name] for name in (
    "S1", "S3", "S5", "Sk(3)", "Sk(8)", "F(4,3)", "F(3,4)", "T(1,2,3)", "T(1,1,5)", "Omega(2)",
    "Omega(1,order=1)",
)]


def test_criterion_07_monoid_laws():
    cases = 0
    for a, b, c in product(MONOID_ATOMS, repeat=3):
        ab = join(a, b)
        left, right = join(ab, c), join(a, join(b, c))
        folded = n_fold_join([c, b, a])
        assert ab == join(b, a)
        assert left == right == folded, (a.name, b.name, c.name)
        cases += 1
    for s in CATALOG.values():
        assert join(S1, s) == s == join(s, S1)
    assert cases >= 100


def test_criterion_08_smoothness_criterion():
    assert smoothness_certificate(S3, S3).verdict is Verdict.SMOOTH
    irregular = [s for s in CATALOG.values() if not s.regular]
    assert irregular
    for s in irregular:
        assert smoothness_certificate(s, s).verdict is Verdict.ORBIFOLD, s.name
        assert join(s, s).smooth is False
    cert = smoothness_certificate(S5, make_three_sasakian(1, 2, 3))
    assert (cert.g, cert.verdict) == (2, Verdict.ORBIFOLD)
    tested = 0
    for ps in combinations_with_replacement(range(1, 12), 3):
        try:
            t = make_three_sasakian(*ps)
        except ValueError:
            continue
        assert smoothness_certificate(S3, t).verdict is Verdict.SMOOTH, ps
        tested += 1
    assert tested > 50


def test_criterion_09_odd_order_triples():
    result = cor418_triples(5, ls=range(5, 9))
    expected = set()
    for rs in product(range(6), repeat=3):
        ps = tuple(4 * r + 1 for r in rs)
        if gcd(ps[0], ps[1]) == gcd(ps[0], ps[2]) == gcd(ps[1], ps[2]) == 1:
            expected.add(ps)
    assert {h.params for h in result.hits} == expected
    for h in result.hits:
        assert h.data["order"] % 2 == 1
        assert len(h.certificates) == 4
        assert all(c.verdict is Verdict.SMOOTH for c in h.certificates)


def test_criterion_10_lattice():
    for l, k in product(range(1, 13), repeat=2):
        assert lattice_point(S3, S7, l, k).sasakian_einstein == (k == 2 * l)
    pts = [lattice_point(S3, S7, l, k) for l, k in product(range(1, 7), repeat=2)]
    meet, jn = lattice_meet, lattice_join
    for p in pts:
        assert meet(p, p).coords == p.coords == jn(p, p).coords
    for p, q in product(pts, repeat=2):
        assert meet(p, q).coords == meet(q, p).coords
        assert jn(p, q).coords == jn(q, p).coords
        assert meet(p, jn(p, q)).coords == p.coords == jn(p, meet(p, q)).coords
        assert lattice_leq(p, q) == (meet(p, q).coords == p.coords)
    for p, q, r in product(pts, repeat=3):
        assert meet(meet(p, q), r).coords == meet(p, meet(q, r)).coords
        assert jn(jn(p, q), r).coords == jn(p, jn(q, r)).coords
    assert {p.rational_cohomology for p in pts} == {join(S3, S7).betti}


def test_criterion_11_scaling():
    for n1, n2 in product(range(11), repeat=2):
        s = scaling_solution(n1, n2)
        big = n1 + n2
        assert s.scalar_curvature == 4 * big * (big + 1)
        assert s.einstein_constant == 2 * (big + 1)
        assert 2 * (n1 + 1) / s.c1 == 2 * (n2 + 1) / s.c2 == 2 * (big + 1)


def _betti_ok(s):
    b = s.betti
    return euler_characteristic(b) == 0 and b.poincare_symmetric() and (not s.simply_connected or b[1] == 0)


def test_criterion_12_global_structure():
    spaces = list(CATALOG.values())
    spaces += [join(a, b) for a, b in combinations_with_replacement(ATOMS, 2)]
    spaces += [n_fold_join([S3] * r + [x]) for r in (2, 3) for x in
               (CATALOG["F(3,3)"], CATALOG["T(1,2,3)"], CATALOG["Sk(4)"])]
    for s in spaces:
        assert _betti_ok(s), s.name
        if s.integral is not None:
            assert s.integral.torsion_pairing_ok(), s.name
        model = integral_model(s.atoms, s.betti) if s.factors else None
        if model is not None:
            assert model.groups.torsion_pairing_ok(), s.name
    for s in CATALOG.values():
        if s.simply_connected:
            assert gysin_circle_betti(leaf_space_betti(s.betti, s.index)) == s.betti, s.name


def test_criterion_13_validator_gate():
    assert all(validate_space(s) == [] for s in CATALOG.values())
    b2_ten = SeSpace("b2=10", 3, 2, None, True, True, True, BettiVector(7, (1, 0, 10, 0, 0, 10, 0, 1)))
    assert "regular7_b2_bound" in {v.rule for v in validate_space(b2_ten)}
    big_index = SeSpace("Ind=n+2", 2, 4, None, True, True, True, BettiVector(5, (1, 0, 0, 0, 0, 1)))
    assert "index_bound_regular" in {v.rule for v in validate_space(big_index)}
