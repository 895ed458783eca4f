"""The invariant record of a quasi-regular Sasakian-Einstein space."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

from .algebra import BettiVector, GradedGroup
from .errors import InvariantViolation


@dataclass(frozen=True)
class SeSpace:
    """Exact discrete invariants of a Sasakian-Einstein space of dim 2n+1.

    ``order`` is None when unknown.  ``order_bounds = (lo, hi)`` then may
    bracket it: ``lo`` always divides the order, and when ``hi`` is known
    it has the same prime divisors as ``lo``.  ``smooth`` is None when
    undecided.  ``factors`` lists the atoms of a
    join in canonical order and is empty for an atom.
    """

    name: str
    n: int
    index: int
    order: int | None
    regular: bool
    smooth: bool | None
    simply_connected: bool
    betti: BettiVector
    integral: GradedGroup | None = None
    family: str = "custom"
    params: tuple = ()
    local_orders: tuple[int, ...] | None = None
    order_bounds: tuple[int, int | None] | None = None
    three_sasakian: bool = False
    homogeneous: bool = False
    se_irreducible: bool | None = None
    ke_certified: bool = True
    moduli_dim_lower: int = 0
    provenance: str = ""
    factors: tuple["SeSpace", ...] = field(default=(), repr=False)

    def __hash__(self):
        # records are immutable and hashed often as cache keys
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash(tuple(getattr(self, f.name) for f in fields(self)))
            object.__setattr__(self, "_hash", cached)
        return cached

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.betti.dim != 2 * self.n + 1:
            raise InvariantViolation(
                "betti_length", f"{self.name}: Betti vector has dim {self.betti.dim}, expected {2 * self.n + 1}"
            )
        if self.index < 0 or (self.index == 0) != (self.n == 0):
            raise InvariantViolation("index_range", f"{self.name}: index {self.index} with n={self.n}")
        if self.order is not None and self.order < 1:
            raise InvariantViolation("order_range", f"{self.name}: order must be positive")
        if self.order is not None and self.order_bounds is None:
            object.__setattr__(self, "order_bounds", (self.order, self.order))
        # Ord = 1 means smooth and regular; the converse is checked by the validators.
        if self.order == 1 and not (self.regular and self.smooth):
            raise InvariantViolation(
                "order_one_regular_smooth", f"{self.name}: order 1 requires a smooth regular space"
            )

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def atoms(self) -> tuple["SeSpace", ...]:
        return self.factors or (self,)

    @property
    def is_identity(self) -> bool:
        return self.n == 0

    @property
    def order_support(self) -> int | None:
        """A number with the same prime divisors as the order, if one is known."""
        if self.order is not None:
            return self.order
        if self.order_bounds is not None and self.order_bounds[1] is not None:
            return self.order_bounds[0]
        return None

    @property
    def order_divisor(self) -> int:
        """A known divisor of the order (1 when nothing is known)."""
        if self.order is not None:
            return self.order
        return self.order_bounds[0] if self.order_bounds is not None else 1

    def with_order(self, order: int | None) -> "SeSpace":
        return replace(self, order=order, order_bounds=None if order is None else (order, order))

    def sort_key(self) -> tuple:
        return (self.n, self.name)
