"""Quasistatic Otto and Stirling cycles and enhancement-ratio diagnostics.

Sign convention: every heat is positive when absorbed by the working medium.
A cycle evaluation builds the initial- and final-mu spectra on the same
momentum grid and reduces them with O(L) mode sums; the heavy pairing sum is
cached per (L, alpha) inside the chain module.
"""

import math
from dataclasses import dataclass

import numpy as np

from .chain import ChainParams, InvalidParameterError, spectrum_energies
from .thermo import lncosh


class ContractViolationError(ValueError):
    """Raised when paired cycle results do not share the same cycle spec."""


@dataclass(frozen=True)
class BathPair:
    """Inverse temperatures of the hot and cold reservoirs (beta_h <= beta_c)."""

    beta_h: float
    beta_c: float

    def __post_init__(self):
        if not (0.0 < self.beta_h <= self.beta_c) or not math.isfinite(self.beta_c):
            raise InvalidParameterError(
                f"need 0 < beta_h <= beta_c finite, got ({self.beta_h}, {self.beta_c})"
            )


@dataclass(frozen=True)
class CycleSpec:
    """One cycle: chain template plus initial/final mu and the two baths.

    ``base.mu`` is ignored; the cycle replaces it with mu_i / mu_f.
    Engine-level analysis requires alpha > 1 for finite-range chains.
    """

    base: ChainParams
    mu_i: float
    mu_f: float
    baths: BathPair

    def __post_init__(self):
        if not (0.0 <= self.mu_f <= self.mu_i):
            raise InvalidParameterError(
                f"need 0 <= mu_f <= mu_i, got mu_f={self.mu_f}, mu_i={self.mu_i}"
            )
        if not self.base.short_range and self.base.alpha <= 1.0:
            raise InvalidParameterError(
                f"cycle operations require alpha > 1, got {self.base.alpha}"
            )

    def same_cycle_except_range(self, other: "CycleSpec") -> bool:
        return (
            self.mu_i == other.mu_i
            and self.mu_f == other.mu_f
            and self.baths == other.baths
            and self.base.L == other.base.L
            and self.base.J == other.base.J
            and self.base.Delta == other.base.Delta
        )


@dataclass(frozen=True)
class OttoResult:
    spec: CycleSpec
    Q_h: float
    Q_c: float
    W: float
    eta: float | None
    engine_valid: bool

    def to_json_dict(self) -> dict:
        return {
            "cycle": "otto",
            "Q": {"h": self.Q_h, "c": self.Q_c},
            "W": self.W,
            "eta": self.eta,
            "engine_valid": self.engine_valid,
        }


@dataclass(frozen=True)
class StirlingResult:
    spec: CycleSpec
    Q_I: float
    Q_II: float
    Q_III: float
    Q_IV: float
    W: float
    Q_h: float
    eta: float | None
    engine_valid: bool

    def to_json_dict(self) -> dict:
        return {
            "cycle": "stirling",
            "Q": {
                "I": self.Q_I,
                "II": self.Q_II,
                "III": self.Q_III,
                "IV": self.Q_IV,
                "h": self.Q_h,
            },
            "W": self.W,
            "eta": self.eta,
            "engine_valid": self.engine_valid,
        }


@dataclass(frozen=True)
class RatioDiagnostics:
    """Enhancement ratios of a finite-alpha cycle against its short-range twin.

    Undefined components (vanishing denominators, non-engine efficiency) are
    NaN; ``defined`` is True only when all four components are defined.
    """

    R_W: float
    R_eta: float
    dQ_rel: float
    xi: float
    defined: bool


def otto_mode_sums(eps_i, eps_f, beta_h: float, beta_c: float):
    """Per-cycle Otto heats and work as mode sums over the last axis.

    ``eps_i`` has shape (nk,); ``eps_f`` may carry leading batch axes.
    W is accumulated independently of Q_h and Q_c (same occupation factor,
    different energy weights) so the first law is a nontrivial check.
    """
    eps_i = np.asarray(eps_i, dtype=float)
    eps_f = np.asarray(eps_f, dtype=float)
    occ = np.tanh(0.5 * beta_c * eps_f) - np.tanh(0.5 * beta_h * eps_i)
    Q_h = np.sum(eps_i * occ, axis=-1)
    Q_c = -np.sum(eps_f * occ, axis=-1)
    W = np.sum((eps_i - eps_f) * occ, axis=-1)
    return Q_h, Q_c, W


def stirling_mode_sums(eps_i, eps_f, beta_h: float, beta_c: float):
    """Per-process Stirling heats, closed-form work, and hot-bath heat.

    Returns (Q_I, Q_II, Q_III, Q_IV, W, Q_h) with W from the two-bracket
    isothermal ln cosh form, independent of the Q-sum.
    """
    eps_i = np.asarray(eps_i, dtype=float)
    eps_f = np.asarray(eps_f, dtype=float)
    lc_hi = lncosh(0.5 * beta_h * eps_i)
    lc_hf = lncosh(0.5 * beta_h * eps_f)
    lc_ci = lncosh(0.5 * beta_c * eps_i)
    lc_cf = lncosh(0.5 * beta_c * eps_f)
    t_hi = np.tanh(0.5 * beta_h * eps_i)
    t_hf = np.tanh(0.5 * beta_h * eps_f)
    t_ci = np.tanh(0.5 * beta_c * eps_i)
    t_cf = np.tanh(0.5 * beta_c * eps_f)

    Q_I = np.sum(
        (2.0 / beta_h) * (lc_hf - lc_hi) - (eps_f * t_hf - eps_i * t_hi), axis=-1
    )
    Q_II = np.sum(eps_f * (t_hf - t_cf), axis=-1)
    Q_III = np.sum(
        (2.0 / beta_c) * (lc_ci - lc_cf) - (eps_i * t_ci - eps_f * t_cf), axis=-1
    )
    Q_IV = np.sum(eps_i * (t_ci - t_hi), axis=-1)
    W = np.sum((2.0 / beta_h) * (lc_hf - lc_hi) + (2.0 / beta_c) * (lc_ci - lc_cf), axis=-1)
    Q_h = Q_I + Q_IV
    return Q_I, Q_II, Q_III, Q_IV, W, Q_h


def _cycle_energies(spec: CycleSpec):
    eps_i = spectrum_energies(spec.base.with_mu(spec.mu_i))
    eps_f = spectrum_energies(spec.base.with_mu(spec.mu_f))
    return eps_i, eps_f


def otto_cycle(spec: CycleSpec) -> OttoResult:
    """Evaluate one quasistatic Otto cycle.

    Engine validity requires W > 0 and Q_h > -Q_c > 0; eta = W/Q_h is
    reported only for valid engines.
    """
    eps_i, eps_f = _cycle_energies(spec)
    Q_h, Q_c, W = otto_mode_sums(eps_i, eps_f, spec.baths.beta_h, spec.baths.beta_c)
    Q_h, Q_c, W = float(Q_h), float(Q_c), float(W)
    engine_valid = W > 0.0 and Q_h > -Q_c > 0.0
    eta = W / Q_h if engine_valid else None
    return OttoResult(spec=spec, Q_h=Q_h, Q_c=Q_c, W=W, eta=eta, engine_valid=engine_valid)


def stirling_cycle(spec: CycleSpec) -> StirlingResult:
    """Evaluate one quasistatic Stirling cycle (W > 0 and Q_h > 0 for an engine)."""
    eps_i, eps_f = _cycle_energies(spec)
    Q_I, Q_II, Q_III, Q_IV, W, Q_h = stirling_mode_sums(
        eps_i, eps_f, spec.baths.beta_h, spec.baths.beta_c
    )
    Q_I, Q_II, Q_III, Q_IV = float(Q_I), float(Q_II), float(Q_III), float(Q_IV)
    W, Q_h = float(W), float(Q_h)
    engine_valid = W > 0.0 and Q_h > 0.0
    eta = W / Q_h if engine_valid else None
    return StirlingResult(
        spec=spec,
        Q_I=Q_I,
        Q_II=Q_II,
        Q_III=Q_III,
        Q_IV=Q_IV,
        W=W,
        Q_h=Q_h,
        eta=eta,
        engine_valid=engine_valid,
    )


def carnot_efficiency(baths: BathPair) -> float:
    """Carnot bound 1 - beta_h/beta_c for the given bath pair."""
    return 1.0 - baths.beta_h / baths.beta_c


def ratio_diagnostics(lr, sr) -> RatioDiagnostics:
    """Compare a finite-alpha run ``lr`` with its short-range reference ``sr``.

    R_W needs W_sr != 0; dQ_rel needs Q_h_sr != 0; xi needs a nonvanishing
    heat difference and a defined reference efficiency; R_eta needs both runs
    engine-valid.  Zero tests use a 1e-14 tolerance on the reference scale.
    """
    if type(lr) is not type(sr):
        raise ContractViolationError("cannot compare results of different cycle kinds")
    if not lr.spec.same_cycle_except_range(sr.spec):
        raise ContractViolationError("cycle specs differ beyond the interaction range")

    tol = 1e-14 * max(abs(sr.W), abs(sr.Q_h), 1.0)
    R_W = lr.W / sr.W if abs(sr.W) > tol else math.nan
    dQ = sr.Q_h - lr.Q_h
    dQ_rel = dQ / sr.Q_h if abs(sr.Q_h) > tol else math.nan
    if lr.engine_valid and sr.engine_valid:
        R_eta = lr.eta / sr.eta
    else:
        R_eta = math.nan
    if abs(dQ) > tol and sr.eta is not None and sr.eta != 0.0:
        xi = (sr.W - lr.W) / (sr.eta * dQ)
    else:
        xi = math.nan
    defined = all(math.isfinite(v) for v in (R_W, R_eta, dQ_rel, xi))
    return RatioDiagnostics(R_W=R_W, R_eta=R_eta, dQ_rel=dQ_rel, xi=xi, defined=defined)
