"""Momentum-space description of the long-range Kitaev chain.

The chain has nearest-neighbor hopping J, chemical potential mu, and
superconducting pairing decaying as 1/d^alpha with the effective distance
d = min(l, L - l) on a closed ring with antiperiodic boundary conditions.
All quantities here are built from the pairing sum f(k) and the resulting
quasiparticle dispersion; thermodynamics and cycles live in sibling modules.
"""

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

#: Sentinel for the alpha -> infinity (nearest-neighbor pairing) limit.
SHORT_RANGE = math.inf


class InvalidParameterError(ValueError):
    """Raised when chain or cycle parameters violate their constraints."""


class DegenerateModeError(ValueError):
    """Raised when the Bogoliubov angle is requested at a gapless mode."""


class GaplessConfigurationError(RuntimeError):
    """Raised when a winding number is requested for a (near-)gapless chain."""


@dataclass(frozen=True)
class ChainParams:
    """Static description of the working medium.

    ``alpha = SHORT_RANGE`` (i.e. ``math.inf``) selects the exact
    nearest-neighbor pairing limit where f(k) = 2 sin k; it is a first-class
    variant, not a large-alpha approximation.
    """

    L: int
    J: float = 1.0
    Delta: float = 1.0
    mu: float = 0.0
    alpha: float = SHORT_RANGE

    def __post_init__(self):
        if self.L < 2 or self.L % 2 != 0:
            raise InvalidParameterError(f"L must be even and >= 2, got {self.L}")
        if not (self.alpha > 0.0):
            raise InvalidParameterError(f"alpha must be > 0, got {self.alpha}")
        for name in ("J", "Delta", "mu"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidParameterError(f"{name} must be finite, got {v}")

    @property
    def short_range(self) -> bool:
        return math.isinf(self.alpha)

    def with_mu(self, mu: float) -> "ChainParams":
        return replace(self, mu=mu)


@dataclass(frozen=True, eq=False)
class QuasiparticleSpectrum:
    """Positive-momentum quasiparticle energies for a fixed ChainParams.

    ``energies[i]`` corresponds to ``momentum_grid(params.L)[i]``.
    """

    params: ChainParams
    energies: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class WindingResult:
    w: float
    residual: float
    grid_density: int


def momentum_grid(L: int) -> np.ndarray:
    """Positive momenta pi*(2n-1)/L, n = 1..L/2, of the antiperiodic ring."""
    if L < 2 or L % 2 != 0:
        raise InvalidParameterError(f"L must be even and >= 2, got {L}")
    n = np.arange(1, L // 2 + 1)
    return np.pi * (2 * n - 1) / L


@lru_cache(maxsize=None)
def _pairing_weights(L: int, alpha: float) -> np.ndarray:
    """d_l^(-alpha) for l = 1..L-1 with d_l = min(l, L - l)."""
    ell = np.arange(1, L)
    d = np.minimum(ell, L - ell)
    w = d.astype(float) ** (-alpha)
    w.setflags(write=False)
    return w


def _pairing_sum(k: np.ndarray, L: int, alpha: float) -> np.ndarray:
    """Literal sum over l of sin(k*l)/d_l^alpha, chunked over k."""
    w = _pairing_weights(L, alpha)
    ell = np.arange(1, L, dtype=float)
    k = np.asarray(k, dtype=float)
    flat = k.ravel()
    out = np.empty_like(flat)
    # Keep the outer-product workspace below ~32 MB for large winding grids.
    chunk = max(1, (4 << 20) // max(L, 1))
    for i in range(0, flat.size, chunk):
        block = flat[i : i + chunk]
        out[i : i + chunk] = np.sin(np.multiply.outer(block, ell)) @ w
    return out.reshape(k.shape)


def pairing_function(k, params: ChainParams):
    """Long-range pairing sum f(k); exactly 2 sin k in the short-range limit.

    Accepts a scalar or an ndarray of momenta.
    """
    scalar = np.isscalar(k)
    karr = np.atleast_1d(np.asarray(k, dtype=float))
    if params.short_range:
        out = 2.0 * np.sin(karr)
    else:
        out = _pairing_sum(karr, params.L, params.alpha)
    return float(out[0]) if scalar else out.reshape(np.shape(k))


@lru_cache(maxsize=256)
def _grid_pairing(L: int, alpha: float) -> np.ndarray:
    """Pairing sum on the positive momentum grid, cached per (L, alpha)."""
    k = momentum_grid(L)
    if math.isinf(alpha):
        f = 2.0 * np.sin(k)
    else:
        f = _pairing_sum(k, L, alpha)
    f.setflags(write=False)
    return f


def quasiparticle_energy(k, params: ChainParams):
    """Dispersion sqrt((J cos k + mu)^2 + (Delta f(k)/2)^2) >= 0."""
    f = pairing_function(k, params)
    return np.hypot(params.J * np.cos(k) + params.mu, 0.5 * params.Delta * f)


def spectrum_energies(params: ChainParams) -> np.ndarray:
    """Energies on the positive momentum grid (cached pairing sum)."""
    k = momentum_grid(params.L)
    f = _grid_pairing(params.L, params.alpha)
    return np.hypot(params.J * np.cos(k) + params.mu, 0.5 * params.Delta * f)


def build_spectrum(params: ChainParams) -> QuasiparticleSpectrum:
    return QuasiparticleSpectrum(params=params, energies=spectrum_energies(params))


def bogoliubov_angle(k: float, params: ChainParams) -> float:
    """Branch-resolved Bogoliubov angle in (-pi/2, pi/2].

    Defined through atan2 of the Bloch-vector components rather than the
    tan-based form, which is branch-ambiguous.
    """
    y = -0.5 * params.Delta * pairing_function(k, params)
    x = params.J * math.cos(k) + params.mu
    if x == 0.0 and y == 0.0:
        raise DegenerateModeError(f"gapless mode at k={k}: Bogoliubov angle undefined")
    return 0.5 * math.atan2(y, x)


def winding_number(
    params: ChainParams,
    grid_density: int = 100_000,
    gap_floor: float | None = None,
) -> WindingResult:
    """Winding of the Bloch vector (J cos k + mu, Delta f(k)/2) over (-pi, pi).

    Computed by cumulative unwrapping of the vector angle on a uniform grid of
    ``grid_density`` points; the pairing sum uses the finite-L form at
    ``params.L``.  Returns the winding and its residual to the nearest
    half-integer; residuals above tolerance are reported in-band, not raised.
    """
    if grid_density < 1000:
        raise InvalidParameterError(f"grid_density must be >= 1000, got {grid_density}")
    if gap_floor is None:
        gap_floor = 1e-6 * max(abs(params.J), abs(params.Delta), abs(params.mu))
    k = np.linspace(-np.pi, np.pi, grid_density)
    f = pairing_function(k, params)
    x = params.J * np.cos(k) + params.mu
    y = 0.5 * params.Delta * f
    eps = np.hypot(x, y)
    if np.min(eps) < gap_floor:
        raise GaplessConfigurationError(
            f"minimum gap {np.min(eps):.3e} below floor {gap_floor:.3e}; "
            "winding undefined near a gapless configuration"
        )
    phase = np.unwrap(np.arctan2(y, x))
    w = (phase[-1] - phase[0]) / (2.0 * np.pi)
    residual = abs(w - round(2.0 * w) / 2.0)
    return WindingResult(w=float(w), residual=float(residual), grid_density=grid_density)


def spectrum_scan(params_base: ChainParams, mu_values) -> list[tuple[float, np.ndarray]]:
    """Sorted single-particle levels {+-eps_k} for each mu in ``mu_values``."""
    rows = []
    for mu in mu_values:
        e = spectrum_energies(params_base.with_mu(float(mu)))
        levels = np.sort(np.concatenate([-e, e]))
        rows.append((float(mu), levels))
    return rows


def min_gap(params: ChainParams) -> float:
    """Minimum quasiparticle energy over the momentum grid."""
    return float(np.min(spectrum_energies(params)))
