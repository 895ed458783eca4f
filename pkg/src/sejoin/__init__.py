"""Exact invariants of joins of quasi-regular Sasakian-Einstein spaces."""

from .algebra import (
    AbelianGroup,
    BaseProfile,
    BettiVector,
    GradedGroup,
    euler_characteristic,
    gcd_all,
    gysin_circle_betti,
    invariant_factors,
    kunneth_betti,
    kunneth_integral_with_free,
    lcm_all,
    leaf_space_betti,
)
from .catalog import (
    load_catalog,
    make_circle,
    make_del_pezzo_bundle,
    make_fermat_link,
    make_sphere,
    make_three_sasakian,
    make_toric_omega,
    order_spq,
    parse_space,
    sigma2,
)
from .join import (
    IntegralModel,
    Join,
    JoinCertificate,
    Leaf,
    Scope,
    Verdict,
    integral_model,
    join,
    low_betti_lemma52,
    n_fold_join,
    relative_indices,
    smoothness_certificate,
)
from .lattice import (
    LatticePoint,
    ProductDescriptor,
    ScalingSolution,
    cheeger_limit,
    enumerate_smooth,
    lattice_join,
    lattice_leq,
    lattice_meet,
    lattice_point,
    scaling_solution,
)
from .parser import parse_expr
from .report import Report, build_report
from .search import (
    SearchResult,
    cor418_triples,
    odd_order_triples,
    regular5_status,
    smooth_sphere_join_predicate,
)
from .space import SeSpace
from .validators import Violation, validate_space

__version__ = "0.1.0"
