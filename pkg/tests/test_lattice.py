from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import scal_rescaled
from sejoin.catalog import make_del_pezzo_bundle, make_sphere, make_three_sasakian, make_toric_omega
from sejoin.errors import BothZero, IndeterminateOrder, MismatchedFactors
from sejoin.join import join
from sejoin.lattice import (
    ProductDescriptor,
    cheeger_limit,
    enumerate_smooth,
    lattice_join,
    lattice_leq,
    lattice_meet,
    lattice_point,
    scaling_solution,
)

S3, S5, S7 = make_sphere(1), make_sphere(2), make_sphere(3)
T123, T115 = make_three_sasakian(1, 2, 3), make_three_sasakian(1, 1, 5)

coord = st.integers(1, 12)


def pt(l, k, s1=S3, s2=S7):
    return lattice_point(s1, s2, l, k)


class TestPoint:
    def test_se_point_is_the_join(self):
        p = lattice_point(S3, T123, 1, 1)
        assert p.sasakian_einstein and p.orb_simply_connected
        assert p.rational_cohomology == join(S3, T123).betti

    def test_s3_s7(self):
        p = pt(1, 2)
        assert p.sasakian_einstein and p.smooth is True

    def test_smooth_by_gcd(self):
        assert lattice_point(S3, T123, 1, 1).smooth is True

    def test_not_simply_connected(self):
        assert not pt(2, 4).orb_simply_connected

    def test_both_zero(self):
        with pytest.raises(BothZero):
            pt(0, 0)

    def test_boundary(self):
        p = pt(1, 0)
        assert isinstance(p.rational_cohomology, ProductDescriptor)
        assert p.rational_cohomology.space == "S3" and p.rational_cohomology.leaf_space_of == "S7"
        # S^3 x CP^3
        assert p.rational_cohomology.betti.ranks == (1, 0, 1, 1, 1, 1, 1, 1, 0, 1)
        assert not p.sasakian_einstein
        q = pt(0, 1)
        assert q.rational_cohomology.space == "S7"

    def test_boundary_orbifold_leaf(self):
        assert lattice_point(S3, T123, 1, 0).smooth is False
        assert lattice_point(S3, T123, 0, 1).smooth is True

    def test_gcd_of_orders_forbids_smoothness(self):
        t13 = make_three_sasakian(1, 1, 3)  # order 2
        for l in range(1, 5):
            for k in range(1, 5):
                assert lattice_point(t13, T123, l, k).smooth is False

    def test_failed_gcd_is_unknown_off_the_join_point(self):
        # gcd(m1 k, m2 l) = gcd(2, 60) at (1, 2): sufficient test fails, not the SE point
        assert lattice_point(S3, T123, 1, 2).smooth is None
        assert lattice_point(S5, T123, 3, 2).smooth is False  # the join point itself

    @given(coord, coord)
    def test_smooth_implies_gcd(self, l, k):
        for s1, s2 in ((S3, T123), (S5, T115), (make_del_pezzo_bundle(4), T123)):
            p = lattice_point(s1, s2, l, k)
            if p.smooth:
                assert gcd(s1.order * k, s2.order * l) == 1
            assert p.orb_simply_connected == (gcd(l, k) == 1)

    @given(coord, coord)
    def test_se_ray(self, l, k):
        assert pt(l, k).sasakian_einstein == (k == 2 * l)

    def test_interior_betti_constant(self):
        vectors = {pt(l, k).rational_cohomology for l in range(1, 7) for k in range(1, 7)}
        assert vectors == {join(S3, S7).betti}


class TestLatticeOps:
    def test_meet_join(self):
        assert lattice_meet(pt(2, 3), pt(4, 5)).coords == (2, 1)
        assert lattice_join(pt(2, 3), pt(4, 5)).coords == (4, 15)

    def test_mismatch(self):
        with pytest.raises(MismatchedFactors):
            lattice_meet(pt(1, 1), lattice_point(S3, S5, 1, 1))

    @given(coord, coord, coord, coord, coord, coord)
    def test_laws(self, a, b, c, d, e, f):
        p, q, r = pt(a, b), pt(c, d), pt(e, f)
        meet, jn = lattice_meet, lattice_join
        assert meet(p, p).coords == p.coords and jn(p, p).coords == p.coords
        assert meet(p, q).coords == meet(q, p).coords and jn(p, q).coords == jn(q, p).coords
        assert meet(meet(p, q), r).coords == meet(p, meet(q, r)).coords
        assert jn(jn(p, q), r).coords == jn(p, jn(q, r)).coords
        assert meet(p, jn(p, q)).coords == p.coords and jn(p, meet(p, q)).coords == p.coords
        assert lattice_leq(p, q) == (meet(p, q).coords == p.coords)


class TestEnumerate:
    def test_spheres_coprime_points(self):
        pts = {p.coords for p in enumerate_smooth(S3, S3, 3, 3)}
        assert pts == {(l, k) for l in range(1, 4) for k in range(1, 4) if gcd(l, k) == 1}

    def test_even_order_partner(self):
        s9 = make_sphere(4)  # index 5
        pts = enumerate_smooth(s9, T123, 6, 6)
        assert pts and all(gcd(k, 60 * l) == 1 for p in pts for l, k in [p.coords])
        assert not join(s9, T123).smooth

    def test_k_equals_one_line(self):
        for s2 in (T123, T115, S7):
            pts = {p.coords for p in enumerate_smooth(make_del_pezzo_bundle(5), s2, 8, 1)}
            assert pts == {(l, 1) for l in range(1, 9)}

    def test_unknown_order(self):
        with pytest.raises(IndeterminateOrder):
            enumerate_smooth(S3, make_toric_omega(4), 3, 3)


class TestCheeger:
    @pytest.mark.parametrize("l,k,a,b", [(1, 1, 3, 8), (1, 0, 0, 1), (2, 3, 5, 7)])
    def test_limit_point(self, l, k, a, b):
        point, seq = cheeger_limit(S3, T123, l, k, a, b)
        assert point.coords == (l, k)
        assert f"{l}t+{a}" in seq


class TestScaling:
    def test_examples(self):
        s = scaling_solution(1, 1)
        assert (s.c1, s.c2, s.scalar_curvature) == (Fraction(2, 3), Fraction(2, 3), 24)
        assert scaling_solution(2, 3).scalar_curvature == 120
        d = scaling_solution(4, 0)
        assert d.c1 == 1 and d.scalar_curvature == 4 * 4 * 5

    @given(st.integers(0, 30), st.integers(0, 30))
    def test_oracle(self, n1, n2):
        s = scaling_solution(n1, n2)
        big = n1 + n2
        assert s.c1 * (big + 1) == n1 + 1 and s.c2 * (big + 1) == n2 + 1
        scal = scal_rescaled(Fraction(4 * n1 * (n1 + 1)), s.c1) + scal_rescaled(Fraction(4 * n2 * (n2 + 1)), s.c2)
        assert scal == 4 * big * (big + 1) == s.scalar_curvature
        assert Fraction(2 * (n1 + 1)) / s.c1 == Fraction(2 * (n2 + 1)) / s.c2 == 2 * (big + 1)
