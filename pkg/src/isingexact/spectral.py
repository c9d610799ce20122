"""Closed-form finite-lattice partition functions from hyperbolic spectra.

Four families of exact products:

* the four-product torus formula built on the gamma spectrum,
* the four grid-parity double products and their signed combination,
* the free-boundary dimer product (cosine double product),
* the triangular-torus double sum (per-site log Z proxy).

All products are accumulated in log space; raw products overflow already
around 40 x 40.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, dual_coupling, signed_logsumexp
from .oracle import MatchingWeights
from .core import ReducedCouplings


@dataclass(frozen=True)
class GammaSpectrum:
    """The 2n hyperbolic angles of an n-column transfer direction.

    gamma[0] is carried *signed* (it changes sign at the self-dual point);
    all other angles are non-negative."""

    n: int
    gamma: np.ndarray


@dataclass(frozen=True)
class GridParity:
    """Angle-grid selector per axis: 'integer' -> {2 pi r / L},
    'half' -> {(2r+1) pi / L}."""

    parity_v: str = "integer"   # grid paired with the row direction
    parity_h: str = "integer"   # grid paired with the column direction

    def __post_init__(self):
        for p in (self.parity_v, self.parity_h):
            if p not in ("integer", "half"):
                raise DomainError(f"unknown parity {p!r}")


def _grid(parity: str, length: int) -> np.ndarray:
    r = np.arange(length)
    if parity == "integer":
        return 2.0 * np.pi * r / length
    return np.pi * (2.0 * r + 1.0) / length


def gamma_spectrum(n: int, k_t: float, k_s: float) -> GammaSpectrum:
    """gamma_k = arccosh(cosh 2k_t* cosh 2k_s - cos(pi k/n) sinh 2k_t* sinh 2k_s)
    for k >= 1, and gamma_0 = 2 (k_t* - k_s) signed.

    k_t is the coupling along the transfer direction (whose dual k_t*
    appears), k_s the in-row coupling.
    """
    if not (k_t > 0.0 and math.isfinite(k_t)):
        raise DomainError("k_t must be positive (its dual enters the spectrum)")
    if not (k_s >= 0.0 and math.isfinite(k_s)):
        raise DomainError("k_s must be non-negative")
    kd = dual_coupling(k_t)
    c = math.cosh(2.0 * kd) * math.cosh(2.0 * k_s)
    s = math.sinh(2.0 * kd) * math.sinh(2.0 * k_s)
    k = np.arange(2 * n)
    arg = c - np.cos(np.pi * k / n) * s
    gamma = np.arccosh(np.maximum(arg, 1.0))
    gamma[0] = 2.0 * (kd - k_s)
    return GammaSpectrum(n=n, gamma=gamma)


def _log_2cosh(x: np.ndarray) -> np.ndarray:
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax))


def _log_2sinh_abs(x: np.ndarray) -> np.ndarray:
    """log(2 |sinh x|); -inf at x = 0."""
    ax = np.abs(x)
    with np.errstate(divide="ignore"):
        return ax + np.log1p(-np.exp(-2.0 * ax))


def kaufman_partition(m: int, n: int, k_t: float, k_s: float) -> float:
    """ln Z of the m x n torus from the four spectral products:

    Z = 1/2 (2 sinh 2k_t)^{mn/2} [ prod 2cosh(m g_odd/2) + prod 2sinh(m g_odd/2)
        + prod 2cosh(m g_even/2) - prod 2sinh(m g_even/2) ]

    with the even-index sinh product carrying the signed gamma_0, so the
    final term changes sign with 2(k_t* - k_s) and one code path is valid on
    both sides of the critical point.
    """
    if m < 1 or n < 1:
        raise DomainError("lattice sides must be positive")
    if not (k_s > 0.0):
        raise DomainError("k_s must be positive")
    spec = gamma_spectrum(n, k_t, k_s)
    half_m = 0.5 * m * spec.gamma
    odd = half_m[1::2]
    even = half_m[0::2]
    gamma0 = half_m[0]

    t_cosh_odd = float(_log_2cosh(odd).sum())
    t_sinh_odd = float(_log_2sinh_abs(odd).sum())
    t_cosh_even = float(_log_2cosh(even).sum())
    terms = [(t_cosh_odd, 1), (t_sinh_odd, 1), (t_cosh_even, 1)]
    if gamma0 != 0.0:
        t_sinh_even = float(_log_2sinh_abs(even).sum())
        sign0 = 1 if gamma0 > 0 else -1
        terms.append((t_sinh_even, -sign0))
    log_sum, sign = signed_logsumexp(terms)
    if sign <= 0:
        raise DomainError("spectral combination lost positivity (invalid couplings?)")
    return (-math.log(2.0)
            + 0.5 * m * n * math.log(2.0 * math.sinh(2.0 * k_t))
            + log_sum)


def kacward_products(m: int, n: int, k_h: float, k_v: float,
                     gp: GridParity) -> tuple:
    """Signed log of the double product over the chosen parity grids of

        (1+x^2)(1+y^2) - 2y(1-x^2) cos theta - 2x(1-y^2) cos phi

    with x = tanh k_h, y = tanh k_v, theta on the row-direction grid
    (parity_v, size m) and phi on the column-direction grid (parity_h,
    size n).  Returns (log |P|, sign, is_zero).  Each factor is
    non-negative; it vanishes only at the critical manifold on the
    integer/integer grid, which is reported via the zero flag rather than an
    exception.
    """
    if not (k_h > 0 and k_v > 0):
        raise DomainError("couplings must be positive")
    x = math.tanh(k_h)
    y = math.tanh(k_v)
    theta = _grid(gp.parity_v, m)[:, None]
    phi = _grid(gp.parity_h, n)[None, :]
    factors = ((1.0 + x * x) * (1.0 + y * y)
               - 2.0 * y * (1.0 - x * x) * np.cos(theta)
               - 2.0 * x * (1.0 - y * y) * np.cos(phi))
    if float(factors.min()) < 1e-300:
        return (-math.inf, 0, True)
    return (float(np.log(factors).sum()), 1, False)


def kacward_log_z(m: int, n: int, k_h: float, k_v: float) -> float:
    """ln Z of the m x n torus from the four parity products:

        Z = 1/2 (2 cosh k_h cosh k_v)^{mn} (s sqrt(P_ii) + sqrt(P_ih)
            + sqrt(P_hi) + sqrt(P_hh))

    where s = sign(sinh 2k_h sinh 2k_v - 1).  The integer/integer product is
    the square of the signed sinh term of the spectral four-product, so its
    square root must re-enter with that temperature-dependent sign; at the
    critical manifold the product vanishes and the term drops out.
    """
    parities = [GridParity("integer", "integer"), GridParity("integer", "half"),
                GridParity("half", "integer"), GridParity("half", "half")]
    s1 = math.sinh(2.0 * k_h) * math.sinh(2.0 * k_v) - 1.0
    signs = [0 if s1 == 0.0 else (1 if s1 > 0 else -1), 1, 1, 1]
    terms = []
    for gp, sgn in zip(parities, signs):
        log_p, _, is_zero = kacward_products(m, n, k_h, k_v, gp)
        if is_zero:
            continue
        terms.append((0.5 * log_p, sgn))
    log_sum, sign = signed_logsumexp(terms)
    if sign <= 0:
        raise DomainError("parity-product combination lost positivity")
    pref = m * n * (math.log(2.0) + _log_cosh(k_h) + _log_cosh(k_v))
    return -math.log(2.0) + pref + log_sum


def dimer_count_free(m: int, n: int, w: MatchingWeights = MatchingWeights()) -> float:
    """Number (generating function) of dimer coverings of the free m x n grid:

        prod_{k=1}^{m/2} prod_{j=1}^{n} 2 sqrt(z1^2 cos^2(pi k/(m+1))
                                               + z2^2 cos^2(pi j/(n+1)))

    evaluated in log space.  An odd m is handled by reorienting the grid;
    odd m and odd n means no perfect matching (returns 0).
    """
    z1, z2 = w.z1, w.z2
    if m % 2 == 1:
        if n % 2 == 1:
            return 0.0
        m, n, z1, z2 = n, m, z2, z1
    if m == 0 or n == 0:
        return 1.0
    k = np.arange(1, m // 2 + 1)[:, None]
    j = np.arange(1, n + 1)[None, :]
    terms = (z1 * np.cos(np.pi * k / (m + 1))) ** 2 + (z2 * np.cos(np.pi * j / (n + 1))) ** 2
    if float(terms.min()) <= 0.0:
        return 0.0
    log_count = float((math.log(2.0) + 0.5 * np.log(terms)).sum())
    return math.exp(log_count)


def triangular_log_z_per_site(m: int, n: int, c: ReducedCouplings) -> float:
    """Finite double-sum proxy for ln Z per site of the triangular torus:

        ln 2 + (1/2mn) sum_{k,l} ln[ cosh 2H cosh 2H' cosh 2H3
            + sinh 2H sinh 2H' sinh 2H3 - sinh 2H cos w1 - sinh 2H' cos w2
            - sinh 2H3 cos(w1 + w2) ]

    on the integer grid w1 = 2 pi k/m, w2 = 2 pi l/n, with (H, H', H3) =
    (k_h, k_v, k_d).  k_d = 0 reduces term by term to the square-lattice
    double sum; the value converges to the thermodynamic integral as the
    grid refines.
    """
    kd = c.k_d if c.k_d is not None else 0.0
    for v in (c.k_h, c.k_v, kd):
        if v < 0:
            raise DomainError("triangular couplings must be non-negative")
    if c.k_h == 0.0 and c.k_v == 0.0 and kd == 0.0:
        return math.log(2.0)
    w1 = 2.0 * np.pi * np.arange(m)[:, None] / m
    w2 = 2.0 * np.pi * np.arange(n)[None, :] / n
    c1, s1 = math.cosh(2 * c.k_h), math.sinh(2 * c.k_h)
    c2, s2 = math.cosh(2 * c.k_v), math.sinh(2 * c.k_v)
    c3, s3 = math.cosh(2 * kd), math.sinh(2 * kd)
    bracket = (c1 * c2 * c3 + s1 * s2 * s3
               - s1 * np.cos(w1) - s2 * np.cos(w2) - s3 * np.cos(w1 + w2))
    if float(bracket.min()) <= 0.0:
        raise DomainError("a grid point hits a vanishing factor (critical manifold)")
    return math.log(2.0) + float(np.log(bracket).sum()) / (2.0 * m * n)


def _log_cosh(x: float) -> float:
    return abs(x) + math.log1p(math.exp(-2.0 * abs(x))) - math.log(2.0)
