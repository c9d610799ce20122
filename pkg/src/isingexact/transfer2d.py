"""Dense row-to-row transfer matrix for the 2D torus.

Builds the 2^n x 2^n operator whose m-th power's trace is the partition
function of the m x n torus, and evaluates ln Tr(T^m) with per-step norm
scaling so no overflow occurs for large m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CapacityError, DomainError

MAX_COLS = 14


@dataclass(frozen=True)
class TransferOperator:
    n_cols: int
    k_a: float  # inter-row coupling
    k_b: float  # intra-row coupling (cyclic within the row)
    entries: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.n_cols


def build_transfer(n: int, k_a: float, k_b: float) -> TransferOperator:
    """T_{ij} = prod_nu exp(k_a s_nu^(i) s_nu^(j)) * prod_nu exp(k_b s_nu^(j) s_{nu+1}^(j)).

    Row states enumerate {+-1}^n in binary order with spin nu occupying bit
    (n - 1 - nu), i.e. the first spin is the most significant bit, matching
    the tensor-product ordering of the 2x2 building blocks.  The intra-row
    product is cyclic: n = 1 contributes a constant self-bond factor
    exp(k_b) and n = 2 a doubled bond, consistent with the enumeration
    oracle's wrap conventions.
    """
    if not 1 <= n <= MAX_COLS:
        raise CapacityError(f"transfer matrix supports 1..{MAX_COLS} columns, got {n}")
    if not (math.isfinite(k_a) and math.isfinite(k_b)):
        raise DomainError("couplings must be finite")
    dim = 1 << n
    idx = np.arange(dim)
    # spins[i, nu] = +-1 for state i
    bits = (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    spins = 1.0 - 2.0 * bits
    # inter-row: sum_nu s_nu^(i) s_nu^(j) = spins @ spins.T
    inter = spins @ spins.T
    # intra-row cyclic bond sum per state
    intra = np.einsum("ij,ij->i", spins, np.roll(spins, -1, axis=1))
    t = np.exp(k_a * inter) * np.exp(k_b * intra)[None, :]
    return TransferOperator(n_cols=n, k_a=k_a, k_b=k_b, entries=t)


def partition_torus_transfer(m: int, t: TransferOperator) -> float:
    """ln Tr(T^m) by repeated multiplication with norm scaling.

    The final product is never fully formed: Tr(X T) is contracted
    elementwise, which also makes the common m = 2 case O(dim^2).
    """
    if m < 1:
        raise DomainError("m must be positive")
    a = t.entries
    if m == 1:
        return math.log(float(np.trace(a)))
    x = a
    log_scale = 0.0
    for _ in range(m - 2):
        x = x @ a
        norm = float(x.max())
        x = x / norm
        log_scale += math.log(norm)
    trace = float(np.einsum("ij,ji->", x, a))
    return log_scale + math.log(trace)


def log_z_torus(m: int, n: int, k_h: float, k_v: float) -> float:
    """Convenience wrapper: ln Z of the m x n torus with horizontal coupling
    k_h (within rows) and vertical coupling k_v (between rows)."""
    return partition_torus_transfer(m, build_transfer(n, k_a=k_v, k_b=k_h))
