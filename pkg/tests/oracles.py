"""Independent oracles used to freeze and cross-check expected values.

The Gysin oracle never uses the min-rank shortcut of the engine: it builds
the rational cohomology of a product of Kähler bases as explicit graded
vector spaces, forms the matrix of cup product with a positive combination
of the factors' Kähler classes, and takes exact ranks with sympy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


@dataclass
class KahlerRing:
    """Graded pieces H^0..H^{2n} with the matrix of cup product by a Kähler class."""

    n: int
    dims: list[int]
    lmaps: dict[int, sympy.Matrix]  # p -> matrix H^p -> H^{p+2}

    def lmap(self, p: int) -> sympy.Matrix:
        if p in self.lmaps:
            return self.lmaps[p]
        rows = self.dims[p + 2] if 0 <= p + 2 <= 2 * self.n else 0
        cols = self.dims[p] if 0 <= p <= 2 * self.n else 0
        return sympy.zeros(rows, cols)


def projective(n: int, scale: int = 1) -> KahlerRing:
    dims = [1 if q % 2 == 0 else 0 for q in range(2 * n + 1)]
    return KahlerRing(n, dims, {2 * i: sympy.Matrix([[scale]]) for i in range(n)})


def point() -> KahlerRing:
    return KahlerRing(0, [1], {})


def del_pezzo(k: int) -> KahlerRing:
    """CP^2 blown up at k points, class c_1 = 3h - sum e_i; form diag(1, -1, ..., -1)."""
    c1 = [3] + [-1] * k
    form = [1] + [-1] * k
    up = sympy.Matrix([[c] for c in c1])
    down = sympy.Matrix([[c * f for c, f in zip(c1, form)]])
    return KahlerRing(2, [1, 0, k + 1, 0, 1], {0: up, 2: down})


def fermat_base(d: int, n: int, middle: int) -> KahlerRing:
    """Degree-d hypersurface in CP^{n+1}: Lefschetz part plus a primitive middle block."""
    dims = [1 if q % 2 == 0 else 0 for q in range(2 * n + 1)]
    lmaps = {}
    for i in range(n):
        lmaps[2 * i] = sympy.Matrix([[d if 2 * i + 2 == 2 * n else 1]])
    if n % 2 == 1:
        dims[n] = middle
    else:
        dims[n] += middle
        # primitive classes are killed by L; L into the middle hits the hyperplane power only
        lmaps[n - 2] = sympy.Matrix([[1]] + [[0]] * middle)
        lmaps[n] = sympy.Matrix([[d] + [0] * middle])
    return KahlerRing(n, dims, lmaps)


def tensor(a: KahlerRing, b: KahlerRing, wa: int = 1, wb: int = 1) -> KahlerRing:
    """Product ring with class wa*La x 1 + wb*1 x Lb."""
    n = a.n + b.n
    blocks = {q: [(i, q - i) for i in range(2 * a.n + 1) if 0 <= q - i <= 2 * b.n] for q in range(2 * n + 1)}
    dims = [sum(a.dims[i] * b.dims[j] for i, j in blocks[q]) for q in range(2 * n + 1)]
    offsets = {}
    for q in range(2 * n + 1):
        pos = 0
        for i, j in blocks[q]:
            offsets[q, i] = pos
            pos += a.dims[i] * b.dims[j]
    lmaps = {}
    for p in range(2 * n - 1):
        m = sympy.zeros(dims[p + 2], dims[p])
        for i, j in blocks[p]:
            if not (a.dims[i] and b.dims[j]):
                continue
            c0 = offsets[p, i]
            if i + 2 <= 2 * a.n and a.dims[i + 2]:
                block = wa * sympy.kronecker_product(a.lmap(i), sympy.eye(b.dims[j]))
                r0 = offsets[p + 2, i + 2]
                m[r0:r0 + block.rows, c0:c0 + block.cols] = m[r0:r0 + block.rows, c0:c0 + block.cols] + block
            if j + 2 <= 2 * b.n and b.dims[j + 2]:
                block = wb * sympy.kronecker_product(sympy.eye(a.dims[i]), b.lmap(j))
                r0 = offsets[p + 2, i]
                m[r0:r0 + block.rows, c0:c0 + block.cols] = m[r0:r0 + block.rows, c0:c0 + block.cols] + block
        lmaps[p] = m
    return KahlerRing(n, dims, lmaps)


def circle_bundle_betti(z: KahlerRing) -> tuple[int, ...]:
    """Betti numbers of the circle bundle with Euler class the ring's Kähler class."""
    top = 2 * z.n

    def rank(p: int) -> int:
        if p < 0 or p + 2 > top or z.dims[p] == 0 or z.dims[p + 2] == 0:
            return 0
        return DomainMatrix.from_Matrix(z.lmap(p)).convert_to(QQ).rank()

    def dim(q: int) -> int:
        return z.dims[q] if 0 <= q <= top else 0

    return tuple((dim(q) - rank(q - 2)) + (dim(q - 1) - rank(q - 1)) for q in range(top + 2))


def brute_lcm(xs) -> int:
    m = max(xs)
    while any(m % x for x in xs):
        m += max(xs)
    return m


def brute_gcd(xs) -> int:
    xs = [abs(x) for x in xs]
    if all(x == 0 for x in xs):
        return 0
    return max(d for d in range(1, max(xs) + 1) if all(x % d == 0 for x in xs))


def convolve(a, b) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for (i, x), (j, y) in product(enumerate(a), enumerate(b)):
        out[i + j] += x * y
    return tuple(out)


def scal_rescaled(scal: Fraction, c: Fraction) -> Fraction:
    """Scalar curvature of c*g given that of g."""
    return scal / c


__all__ = [
    "KahlerRing",
    "brute_gcd",
    "brute_lcm",
    "circle_bundle_betti",
    "convolve",
    "del_pezzo",
    "fermat_base",
    "point",
    "projective",
    "scal_rescaled",
    "tensor",
]
