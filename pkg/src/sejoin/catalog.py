"""Building-block spaces and the catalog file.

Catalog file grammar (one record per line, ``#`` starts a comment)::

    record  := field ( "|" field )*
    field   := key "=" value
    key     := name | family | params | n | index | order | betti
             | torsion | flags | provenance
    family  := circle | sphere | del_pezzo | fermat | three_sasakian
             | toric_omega | custom
    params  := int ( "," int )*           positional constructor arguments
    order   := int | "unknown"
    betti   := int ( "," int )*           b_0 .. b_dim
    torsion := [ deg ":" ord ( "," deg ":" ord )* ]
    flags   := flag ( "," flag )*
    flag    := regular | smooth | simply_connected | three_sasakian
             | homogeneous | irreducible | reducible | ke | "moduli=" int

Whitespace around separators is ignored.  ``name`` and ``family`` are
required.  For a named family the record is rebuilt by its constructor and
every other field present must agree with it (``order`` instead supplies
the order of ``toric_omega``).  ``custom`` records need ``n``, ``index``,
``order`` and ``betti``; a ``torsion`` field, even an empty one, declares
the integral cohomology known.  Unknown keys are rejected.
"""

from __future__ import annotations

import os
from dataclasses import replace
from importlib import resources
from itertools import combinations
from math import gcd
from pathlib import Path

from .algebra import (
    AbelianGroup,
    BettiVector,
    GradedGroup,
    lcm_all,
    sphere_betti,
    sphere_group,
)
from .errors import (
    InvariantViolation,
    NotFano,
    NotPairwiseCoprime,
    OutsideDelPezzoRange,
    ParseError,
    SejoinError,
)
from .space import SeSpace

CATALOG_ENV = "SEJOIN_CATALOG"

FIELDS = ("name", "family", "params", "n", "index", "order", "betti", "torsion", "flags", "provenance")
FAMILIES = ("circle", "sphere", "del_pezzo", "fermat", "three_sasakian", "toric_omega", "custom")
FLAG_WORDS = ("regular", "smooth", "simply_connected", "three_sasakian", "homogeneous", "irreducible", "reducible", "ke")


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def make_circle() -> SeSpace:
    """The flat circle: dimension 1, index 0, identity of the join."""
    return SeSpace(
        name="S1",
        n=0,
        index=0,
        order=1,
        regular=True,
        smooth=True,
        simply_connected=False,
        betti=BettiVector.of(1, 1),
        integral=sphere_group(1),
        family="circle",
        local_orders=(1,),
        homogeneous=True,
        se_irreducible=True,
        provenance="flat circle, monoid identity",
    )


def make_sphere(n: int) -> SeSpace:
    """Standard S^{2n+1}, index n+1."""
    if n < 1:
        raise ValueError("make_sphere needs n >= 1 (use make_circle for dimension 1)")
    dim = 2 * n + 1
    return SeSpace(
        name=f"S{dim}",
        n=n,
        index=n + 1,
        order=1,
        regular=True,
        smooth=True,
        simply_connected=True,
        betti=sphere_betti(dim),
        integral=sphere_group(dim),
        family="sphere",
        params=(n,),
        local_orders=(1,),
        three_sasakian=dim % 4 == 3,
        homogeneous=True,
        se_irreducible=True,
        provenance=f"round sphere over CP^{n}",
    )


def make_del_pezzo_bundle(k: int) -> SeSpace:
    """Regular SE 5-manifold S_k over CP^2 # k(-CP^2), diffeomorphic to #k(S^2 x S^3)."""
    if not 3 <= k <= 8:
        raise OutsideDelPezzoRange(
            f"no regular SE structure over the k={k} del Pezzo surface; R_5(k) is empty for k=2 and k>=9"
            if k == 2 or k >= 9
            else f"S_k is the k-point blow-up bundle for 3 <= k <= 8 only (got k={k})"
        )
    betti = BettiVector.of(1, 0, k, k, 0, 1)
    return SeSpace(
        name=f"Sk({k})",
        n=2,
        index=1,
        order=1,
        regular=True,
        smooth=True,
        simply_connected=True,
        betti=betti,
        integral=GradedGroup.free(betti),
        family="del_pezzo",
        params=(k,),
        local_orders=(1,),
        se_irreducible=True,
        moduli_dim_lower=max(0, k - 4),
        provenance=f"circle bundle over the degree-{9 - k} del Pezzo surface",
    )


def fermat_middle_betti(d: int, n: int) -> int:
    """b_n of the link of z_0^d + ... + z_{n+1}^d = 0."""
    num = (1 - d) ** (n + 2) - 1
    q, r = divmod(num, d)
    assert r == 0
    return (-1) ** n * (1 + q)


def make_fermat_link(d: int, n: int) -> SeSpace:
    """Link S_{d,n+1} of the degree-d Fermat hypersurface in P^{n+1}, dim 2n+1."""
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    if d > n + 1:
        raise NotFano(f"F_{{{d},{n + 1}}} is Fano only for d <= n+1")
    bn = fermat_middle_betti(d, n)
    ranks = [0] * (2 * n + 2)
    ranks[0] = ranks[-1] = 1
    ranks[n] += bn
    ranks[n + 1] += bn
    # Nadel's range, plus the hyperplane (CP^n) and quadric (homogeneous) cases.
    ke = d <= 2 or (n + 1) <= 2 * d
    return SeSpace(
        name=f"F({d},{n})",
        n=n,
        index=n + 2 - d,
        order=1,
        regular=True,
        smooth=True,
        simply_connected=n >= 2 or d == 1,
        betti=BettiVector(2 * n + 1, tuple(ranks)),
        integral=sphere_group(2 * n + 1) if d == 1 else None,
        family="fermat",
        params=(d, n),
        local_orders=(1,),
        homogeneous=d <= 2,
        se_irreducible=not (d == 2 and n == 2),
        ke_certified=ke,
        provenance=f"link of the degree-{d} Fermat hypersurface in P^{n + 1}",
    )


def _require_coprime(ps) -> None:
    if any(p < 1 for p in ps):
        raise ValueError("weights must be positive")
    for a, b in combinations(ps, 2):
        if gcd(a, b) != 1:
            raise NotPairwiseCoprime(f"{tuple(ps)} is not pairwise coprime")


def order_spq(p1: int, p2: int, p3: int) -> int:
    """Order of the 3-Sasakian 7-manifold S(p1,p2,p3).

    lcm of the three pairwise half-sums when every weight is odd, of the
    pairwise sums otherwise.
    """
    ps = (p1, p2, p3)
    _require_coprime(ps)
    sums = [a + b for a, b in combinations(ps, 2)]
    if all(p % 2 for p in ps):
        sums = [s // 2 for s in sums]
    return lcm_all(sums)


def sigma2(p1: int, p2: int, p3: int) -> int:
    return p1 * p2 + p1 * p3 + p2 * p3


def make_three_sasakian(p1: int, p2: int, p3: int) -> SeSpace:
    """3-Sasakian S(p1,p2,p3): b_2 = 1, b_3 = 0, H^4 = Z_{sigma_2}."""
    order = order_spq(p1, p2, p3)
    s2 = sigma2(p1, p2, p3)
    return SeSpace(
        name=f"T({p1},{p2},{p3})",
        n=3,
        index=2,
        order=order,
        regular=order == 1,
        smooth=True,
        simply_connected=True,
        betti=BettiVector.of(1, 0, 1, 0, 0, 1, 0, 1),
        integral=GradedGroup.from_data(7, [1, 0, 1, 0, 0, 1, 0, 1], {4: [s2]}),
        family="three_sasakian",
        params=(p1, p2, p3),
        local_orders=(1,) if order == 1 else None,
        three_sasakian=True,
        homogeneous=(p1, p2, p3) == (1, 1, 1),
        se_irreducible=True,
        provenance=f"3-Sasakian 7-manifold with weights ({p1},{p2},{p3})",
    )


def make_toric_omega(k: int, order: int | None = None) -> SeSpace:
    """Toric 3-Sasakian 7-manifold S(Omega_k): b_2 = k and H^3(Z) = 0.

    Only H^0..H^3 of the integral cohomology are recorded.  The order is
    known only when supplied.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if order is not None and order < 1:
        raise ValueError("order must be positive")
    name = f"Omega({k})" if order is None else f"Omega({k},order={order})"
    return SeSpace(
        name=name,
        n=3,
        index=2,
        order=order,
        regular=order == 1,
        smooth=True,
        simply_connected=True,
        betti=BettiVector.of(1, 0, k, 0, 0, k, 0, 1),
        integral=GradedGroup(7, [AbelianGroup(1), AbelianGroup(0), AbelianGroup(k), AbelianGroup(0)]),
        family="toric_omega",
        params=(k,),
        local_orders=(1,) if order == 1 else None,
        three_sasakian=True,
        se_irreducible=True,
        provenance=f"toric 3-Sasakian 7-manifold with b_2={k}",
    )


def build_family(family: str, params: tuple[int, ...], order: int | None = None) -> SeSpace:
    try:
        if family == "circle":
            return make_circle(*params)
        if family == "sphere":
            return make_sphere(*params)
        if family == "del_pezzo":
            return make_del_pezzo_bundle(*params)
        if family == "fermat":
            return make_fermat_link(*params)
        if family == "three_sasakian":
            return make_three_sasakian(*params)
        if family == "toric_omega":
            return make_toric_omega(*params, order=order)
    except TypeError as exc:
        raise ParseError(f"wrong parameters {params} for family {family}: {exc}") from None
    raise ParseError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Catalog file
# ---------------------------------------------------------------------------


def _ints(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad integer list for {what}: {text!r}") from None


def _flags_of(space: SeSpace) -> set[str]:
    flags = set()
    for word in ("regular", "smooth", "simply_connected", "three_sasakian", "homogeneous"):
        if getattr(space, word):
            flags.add(word)
    if space.se_irreducible is True:
        flags.add("irreducible")
    elif space.se_irreducible is False:
        flags.add("reducible")
    if space.ke_certified:
        flags.add("ke")
    if space.moduli_dim_lower:
        flags.add(f"moduli={space.moduli_dim_lower}")
    return flags


def _parse_flags(text: str) -> set[str]:
    flags = {f.strip() for f in text.split(",") if f.strip()}
    for f in flags:
        if f in FLAG_WORDS:
            continue
        if f.startswith("moduli="):
            try:
                if int(f[7:]) >= 0:
                    continue
            except ValueError:
                pass
        raise ParseError(f"unknown flag {f!r}")
    if {"irreducible", "reducible"} <= flags:
        raise ParseError("flags irreducible and reducible are exclusive")
    return flags


def _parse_torsion(text: str) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for item in (t.strip() for t in text.split(",")):
        if not item:
            continue
        try:
            deg, order = (int(x) for x in item.split(":"))
        except ValueError:
            raise ParseError(f"bad torsion entry {item!r}, expected degree:order") from None
        out.setdefault(deg, []).append(order)
    return out


def _split_record(line: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for chunk in line.split("|"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, sep, value = chunk.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError(f"field {chunk!r} is not key=value")
        if key not in FIELDS:
            raise ParseError(f"unknown field {key!r}")
        if key in fields:
            raise ParseError(f"duplicate field {key!r}")
        fields[key] = value.strip()
    return fields


def _check(rule: str, name: str, ok: bool, message: str) -> None:
    if not ok:
        raise InvariantViolation(rule, f"{name}: {message}")


def parse_space(record: str | dict[str, str]) -> SeSpace:
    """Build and validate one catalog record."""
    from .validators import validate_space

    fields = _split_record(record) if isinstance(record, str) else dict(record)
    for key in fields:
        if key not in FIELDS:
            raise ParseError(f"unknown field {key!r}")
    if "name" not in fields or "family" not in fields:
        raise ParseError("records need at least name and family")
    name, family = fields["name"], fields["family"]
    if family not in FAMILIES:
        raise ParseError(f"unknown family {family!r}")

    order_text = fields.get("order")
    order: int | None = None
    if order_text is not None and order_text != "unknown":
        try:
            order = int(order_text)
        except ValueError:
            raise ParseError(f"bad order {order_text!r}") from None
    flags = _parse_flags(fields["flags"]) if "flags" in fields else None
    torsion = _parse_torsion(fields["torsion"]) if "torsion" in fields else None
    betti = _ints(fields["betti"], "betti") if "betti" in fields else None

    try:
        if family == "custom":
            space = _custom_space(name, fields, order, betti, torsion, flags)
        else:
            space = build_family(family, _ints(fields.get("params", ""), "params"), order)
            space = replace(space, name=name, provenance=fields.get("provenance", space.provenance))
            _cross_check(space, fields, order, betti, torsion, flags)
    except InvariantViolation:
        raise
    except (ValueError, SejoinError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{name}: {exc}") from None

    violations = validate_space(space)
    if violations:
        v = violations[0]
        raise InvariantViolation(v.rule, f"{name}: expected {v.expected}, found {v.found}")
    return space


def _custom_space(name, fields, order, betti, torsion, flags) -> SeSpace:
    for key in ("n", "index", "order", "betti"):
        if key not in fields:
            raise ParseError(f"custom record {name!r} needs field {key!r}")
    n = int(fields["n"])
    flags = flags or set()
    bv = BettiVector(len(betti) - 1, betti)
    integral = None
    if torsion is not None:
        integral = GradedGroup.from_data(bv.dim, bv.ranks, torsion)
    moduli = 0
    for f in flags:
        if f.startswith("moduli="):
            moduli = int(f[7:])
    return SeSpace(
        name=name,
        n=n,
        index=int(fields["index"]),
        order=order,
        regular="regular" in flags,
        smooth="smooth" in flags,
        simply_connected="simply_connected" in flags,
        betti=bv,
        integral=integral,
        family="custom",
        params=(),
        local_orders=(1,) if order == 1 else None,
        three_sasakian="three_sasakian" in flags,
        homogeneous="homogeneous" in flags,
        se_irreducible=True if "irreducible" in flags else False if "reducible" in flags else None,
        ke_certified="ke" in flags,
        moduli_dim_lower=moduli,
        provenance=fields.get("provenance", ""),
    )


def _cross_check(space, fields, order, betti, torsion, flags) -> None:
    name = space.name
    if "n" in fields:
        _check("field_mismatch", name, int(fields["n"]) == space.n, f"n={fields['n']} but family gives {space.n}")
    if "index" in fields:
        _check(
            "field_mismatch", name, int(fields["index"]) == space.index,
            f"index={fields['index']} but family gives {space.index}",
        )
    if space.family != "toric_omega" and "order" in fields:
        _check("field_mismatch", name, order == space.order, f"order={fields['order']} but family gives {space.order}")
    if betti is not None:
        _check("field_mismatch", name, betti == space.betti.ranks, f"betti {betti} but family gives {space.betti}")
    if torsion is not None and space.integral is not None:
        found = {q: sorted(g.torsion) for q, g in enumerate(space.integral.groups) if g.torsion}
        _check("field_mismatch", name, {q: sorted(v) for q, v in torsion.items()} == found, f"torsion {torsion} vs {found}")
    if flags is not None:
        expected = _flags_of(space)
        _check("field_mismatch", name, flags == expected, f"flags {sorted(flags)} vs {sorted(expected)}")


def format_record(space: SeSpace) -> str:
    """Serialize an atom as one catalog line; inverse of parse_space."""
    fields = [f"name={space.name}", f"family={space.family}"]
    if space.params:
        fields.append("params=" + ",".join(map(str, space.params)))
    fields.append(f"n={space.n}")
    fields.append(f"index={space.index}")
    fields.append("order=" + ("unknown" if space.order is None else str(space.order)))
    fields.append("betti=" + ",".join(map(str, space.betti.ranks)))
    if space.integral is not None and space.integral.complete:
        tors = [f"{q}:{t}" for q, g in enumerate(space.integral.groups) for t in g.torsion]
        fields.append("torsion=" + ",".join(tors))
    fields.append("flags=" + ",".join(sorted(_flags_of(space))))
    if space.provenance:
        fields.append(f"provenance={space.provenance}")
    return " | ".join(fields)


def parse_catalog(text: str) -> dict[str, SeSpace]:
    spaces: dict[str, SeSpace] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            space = parse_space(line)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", lineno) from None
        except InvariantViolation as exc:
            raise InvariantViolation(exc.rule, f"line {lineno}: {exc.detail}") from None
        if space.name in spaces:
            raise ParseError(f"duplicate name {space.name!r}", lineno)
        spaces[space.name] = space
    return spaces


def default_catalog_path() -> Path:
    override = os.environ.get(CATALOG_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("sejoin") / "data" / "catalog.txt"))


def load_catalog(path: str | os.PathLike | None = None) -> dict[str, SeSpace]:
    path = Path(path) if path is not None else default_catalog_path()
    return parse_catalog(path.read_text(encoding="utf-8"))
