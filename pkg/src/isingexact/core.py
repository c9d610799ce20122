"""Shared domain types and reduced-unit conventions.

Everything downstream works in dimensionless couplings K = beta*J.  No
absolute temperature or interaction strength appears anywhere else in the
library; callers convert once at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

# Self-dual coupling of the isotropic square lattice: sinh(2 K_c) = 1.
K_CRIT = 0.5 * math.log(1.0 + math.sqrt(2.0))

GEOMETRIES = ("chain", "square", "triangular", "honeycomb")
BOUNDARIES = ("free", "cylinder_h", "cylinder_v", "torus")


class DomainError(ValueError):
    """Invalid argument (outside the mathematical domain of an operation)."""


class CapacityError(RuntimeError):
    """Problem size exceeds the hard limits of an exact method."""


def signed_logsumexp(terms) -> tuple:
    """log |sum_i s_i e^{l_i}| and its sign, from (log-magnitude, sign) pairs.

    Terms with sign 0 are ignored.  Returns (-inf, 0) for an exact
    cancellation or an empty sum.
    """
    terms = [(l, s) for l, s in terms if s != 0]
    if not terms:
        return (-math.inf, 0)
    top = max(l for l, _ in terms)
    if top == -math.inf:
        return (-math.inf, 0)
    acc = 0.0
    for l, s in terms:
        acc += s * math.exp(l - top)
    if acc == 0.0:
        return (-math.inf, 0)
    return (top + math.log(abs(acc)), 1 if acc > 0 else -1)


def dual_coupling(k: float) -> float:
    """Map a coupling to its dual: sinh(2k) * sinh(2k*) = 1.

    Equivalently k* = artanh(e^{-2k}).  The map is a strictly decreasing
    involution on (0, inf) with fixed point K_CRIT; it exchanges the high-
    and low-temperature sides of the square-lattice model.
    """
    if not math.isfinite(k) or k <= 0.0:
        raise DomainError(f"dual_coupling requires a finite positive coupling, got {k!r}")
    return math.atanh(math.exp(-2.0 * k))


@dataclass(frozen=True)
class ReducedCouplings:
    """Dimensionless couplings per bond direction, plus optional extras.

    k_d is the diagonal coupling of the triangular lattice (and doubles as
    the third edge-class coupling on the honeycomb lattice); h is a
    dimensionless field used only by the 1D chain methods.
    """

    k_h: float
    k_v: float
    k_d: Optional[float] = None
    h: Optional[float] = None

    def __post_init__(self):
        for name in ("k_h", "k_v"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        for name in ("k_d", "h"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class LatticeSpec:
    rows: int
    cols: int
    geometry: str = "square"
    boundary: str = "torus"

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DomainError("rows and cols must be positive")
        if self.geometry not in GEOMETRIES:
            raise DomainError(f"unknown geometry {self.geometry!r}")
        if self.boundary not in BOUNDARIES:
            raise DomainError(f"unknown boundary {self.boundary!r}")
        if self.geometry == "chain" and self.rows != 1:
            raise DomainError("chain geometry forces rows = 1")

    @property
    def num_sites(self) -> int:
        n = self.rows * self.cols
        # the honeycomb embedding carries one extra (star-center) site per cell
        return 2 * n if self.geometry == "honeycomb" else n


@dataclass(frozen=True)
class MethodResult:
    """ln Z (or ln Z per site where flagged), the producing method, and the
    numerical settings needed to reproduce the value bit-for-bit."""

    log_z: float
    method: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.log_z):
            raise DomainError("log_z must be finite")
