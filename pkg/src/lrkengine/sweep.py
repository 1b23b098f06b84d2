"""Grid sweeps over cycle parameters: ratio curves, maximum-ratio surfaces,
enhancement-region masks, and optimal-condition search.

All sweeps are deterministic: grid points are evaluated independently and
written into preallocated tables indexed by grid coordinates, so the result
is identical for any worker count.  The short-range reference at a given
(mu grid, baths) is computed once per sweep and shared through a cache.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .chain import SHORT_RANGE, ChainParams, InvalidParameterError, spectrum_energies
from .cycles import otto_mode_sums, stirling_mode_sums

CYCLE_KINDS = ("otto", "stirling")


class InsufficientDataError(RuntimeError):
    """Raised when too few engine-valid grid points exist for an extremum."""


def default_mu_ratio_grid() -> np.ndarray:
    return np.linspace(0.0, 1.0, 201)


def default_beta_ratio_grid() -> np.ndarray:
    """99 uniform interior points of (0, 1)."""
    return np.linspace(0.0, 1.0, 101)[1:-1]


def default_alpha_grid() -> np.ndarray:
    return np.geomspace(1.025, 6.0, 100)


@dataclass(frozen=True)
class SweepConfig:
    cycle_kind: str
    base: ChainParams
    mu_i: float = 2.0
    mu_ratio_grid: tuple = field(default_factory=lambda: tuple(default_mu_ratio_grid()))
    alpha_grid: tuple = field(default_factory=lambda: tuple(default_alpha_grid()))
    beta_c: float = 5.0
    beta_ratio_grid: tuple = field(default_factory=lambda: tuple(default_beta_ratio_grid()))
    workers: int = 1

    def __post_init__(self):
        if self.cycle_kind not in CYCLE_KINDS:
            raise InvalidParameterError(f"unknown cycle kind {self.cycle_kind!r}")
        if self.beta_c <= 0.0 or self.workers < 1:
            raise InvalidParameterError("beta_c must be > 0 and workers >= 1")
        for name, grid, lo, hi in (
            ("mu_ratio_grid", self.mu_ratio_grid, 0.0, 1.0),
            ("alpha_grid", self.alpha_grid, 1.0, math.inf),
            ("beta_ratio_grid", self.beta_ratio_grid, 0.0, 1.0),
        ):
            arr = np.asarray(grid, dtype=float)
            if arr.size == 0 or np.any(np.diff(arr) < 0):
                raise InvalidParameterError(f"{name} must be non-empty and sorted")
            if name == "alpha_grid":
                ok = np.all(arr > 1.0)
            elif name == "beta_ratio_grid":
                ok = np.all((arr > 0.0) & (arr < 1.0))
            else:
                ok = np.all((arr >= 0.0) & (arr <= 1.0))
            if not ok:
                raise InvalidParameterError(f"{name} values out of range")


@dataclass(frozen=True)
class SweepRow:
    mu_ratio: float
    R_W: float
    R_eta: float
    dQ_rel: float
    xi: float
    engine_lr: bool
    engine_sr: bool


@dataclass(frozen=True, eq=False)
class RegionMap:
    mu_ratio_grid: np.ndarray
    beta_ratio_grid: np.ndarray
    mask: np.ndarray  # [i_mu, j_beta], True = enhancement
    alpha: float
    cycle_kind: str
    excluded: int  # grid points dropped as non-engine or undefined-ratio

    @property
    def area(self) -> float:
        return float(np.mean(self.mask))


@dataclass(frozen=True)
class MaxRatioPoint:
    R_W_max: float
    R_eta_max: float
    arg_mu_ratio_W: float
    arg_mu_ratio_eta: float
    excluded: int
    cusp_mu_ratios_W: tuple = ()
    cusp_mu_ratios_eta: tuple = ()


@dataclass(frozen=True)
class OptimalCondition:
    alpha_star_W: float
    beta_ratio_star_W: float
    alpha_star_eta: float
    beta_ratio_star_eta: float
    R_W_max: float
    R_eta_max: float
    coincident: bool


@dataclass(eq=False)
class CycleTable:
    """Per-mu-grid-point cycle quantities for one (alpha, baths)."""

    W: np.ndarray
    Q_h: np.ndarray
    eta: np.ndarray  # NaN where not engine-valid
    engine_valid: np.ndarray


class ReferenceCache:
    """Shared store of cycle tables, counting actual evaluations.

    Short-range reference tables are keyed identically to finite-alpha ones;
    sharing the cache across a sweep guarantees each (mu grid, baths)
    reference is computed exactly once.
    """

    def __init__(self):
        self._store: dict = {}
        self.evaluations = 0

    def table(self, kind, base: ChainParams, mu_i, mu_ratios, beta_h, beta_c) -> CycleTable:
        key = (kind, base.L, base.J, base.Delta, base.alpha, mu_i, tuple(mu_ratios), beta_h, beta_c)
        hit = self._store.get(key)
        if hit is None:
            hit = _evaluate_table(kind, base, mu_i, np.asarray(mu_ratios), beta_h, beta_c)
            self._store[key] = hit
            self.evaluations += 1
        return hit


def _evaluate_table(kind, base, mu_i, mu_ratios, beta_h, beta_c) -> CycleTable:
    eps_i = spectrum_energies(base.with_mu(float(mu_i)))
    k = np.pi * (2 * np.arange(1, base.L // 2 + 1) - 1) / base.L
    from .chain import _grid_pairing  # shared cache with single-cycle evaluation

    f = _grid_pairing(base.L, base.alpha)
    mu_f = np.asarray(mu_ratios, dtype=float) * float(mu_i)
    eps_f = np.hypot(base.J * np.cos(k)[None, :] + mu_f[:, None], 0.5 * base.Delta * f[None, :])

    if kind == "otto":
        Q_h, Q_c, W = otto_mode_sums(eps_i, eps_f, beta_h, beta_c)
        valid = (W > 0.0) & (Q_h > -Q_c) & (-Q_c > 0.0)
    else:
        _, _, _, _, W, Q_h = stirling_mode_sums(eps_i, eps_f, beta_h, beta_c)
        valid = (W > 0.0) & (Q_h > 0.0)
    eta = np.where(valid, np.divide(W, Q_h, out=np.full_like(W, np.nan), where=Q_h != 0), np.nan)
    return CycleTable(W=W, Q_h=Q_h, eta=eta, engine_valid=valid)


def _pair_tables(config: SweepConfig, alpha: float, beta_ratio: float, cache: ReferenceCache):
    beta_c = config.beta_c
    beta_h = beta_ratio * beta_c
    base_lr = replace(config.base, alpha=float(alpha))
    base_sr = replace(config.base, alpha=SHORT_RANGE)
    lr = cache.table(config.cycle_kind, base_lr, config.mu_i, config.mu_ratio_grid, beta_h, beta_c)
    sr = cache.table(config.cycle_kind, base_sr, config.mu_i, config.mu_ratio_grid, beta_h, beta_c)
    return lr, sr


def sweep_mu(
    config: SweepConfig, alpha: float, beta_ratio: float, cache: ReferenceCache | None = None
) -> list[SweepRow]:
    """Ratio diagnostics along the mu_f/mu_i grid at fixed (alpha, beta_h/beta_c)."""
    cache = cache if cache is not None else ReferenceCache()
    lr, sr = _pair_tables(config, alpha, beta_ratio, cache)
    tol = 1e-14 * np.maximum(np.maximum(np.abs(sr.W), np.abs(sr.Q_h)), 1.0)
    rows = []
    for i, r in enumerate(config.mu_ratio_grid):
        W_sr, Q_sr = sr.W[i], sr.Q_h[i]
        R_W = lr.W[i] / W_sr if abs(W_sr) > tol[i] else math.nan
        dQ = Q_sr - lr.Q_h[i]
        dQ_rel = dQ / Q_sr if abs(Q_sr) > tol[i] else math.nan
        both = bool(lr.engine_valid[i] and sr.engine_valid[i])
        R_eta = lr.eta[i] / sr.eta[i] if both else math.nan
        eta_sr = sr.eta[i]
        if abs(dQ) > tol[i] and math.isfinite(eta_sr) and eta_sr != 0.0:
            xi = (W_sr - lr.W[i]) / (eta_sr * dQ)
        else:
            xi = math.nan
        rows.append(
            SweepRow(
                mu_ratio=float(r),
                R_W=float(R_W),
                R_eta=float(R_eta),
                dQ_rel=float(dQ_rel),
                xi=float(xi),
                engine_lr=bool(lr.engine_valid[i]),
                engine_sr=bool(sr.engine_valid[i]),
            )
        )
    return rows


def _golden_refine(fun, xs, i_max, tol=1e-6):
    """Golden-section maximum inside the bracketing triple around grid index i_max."""
    lo, hi = xs[max(i_max - 1, 0)], xs[min(i_max + 1, len(xs) - 1)]
    if hi - lo <= tol:
        return xs[i_max], fun(xs[i_max])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    x = 0.5 * (a + b)
    return x, fun(x)


def _point_ratio(config: SweepConfig, alpha, beta_ratio, mu_ratio, which: str) -> float:
    beta_c = config.beta_c
    beta_h = beta_ratio * beta_c
    ratios = np.asarray([mu_ratio])
    lr = _evaluate_table(config.cycle_kind, replace(config.base, alpha=float(alpha)), config.mu_i, ratios, beta_h, beta_c)
    sr = _evaluate_table(config.cycle_kind, replace(config.base, alpha=SHORT_RANGE), config.mu_i, ratios, beta_h, beta_c)
    if not (lr.engine_valid[0] and sr.engine_valid[0]):
        return -math.inf
    if which == "W":
        return float(lr.W[0] / sr.W[0])
    return float(lr.eta[0] / sr.eta[0])


def _stable_argmax(R, xs, valid, point_fun, rel_tol=0.05):
    """Index of the largest grid value that survives a half-step refinement.

    Ratio curves diverge where the reference work crosses zero at the edge of
    the engine-valid region; the shoulder cells of such a divergence are not
    maxima of anything physical.  A candidate is exempted as a cusp cell when
    a grid neighbor is non-engine or when re-evaluating at a half-step
    midpoint exceeds the cell value by more than ``rel_tol`` (relative).
    Returns (index, cusp indices in descending-R order).
    """
    order = np.argsort(-R, kind="stable")
    cusps = []
    for i in order:
        i = int(i)
        if not np.isfinite(R[i]):
            break
        neighbors = [j for j in (i - 1, i + 1) if 0 <= j < xs.size]
        if not all(valid[j] for j in neighbors):
            cusps.append(i)
            continue
        bound = R[i] + rel_tol * max(abs(R[i]), 1.0)
        if any(point_fun(0.5 * (xs[i] + xs[j])) > bound for j in neighbors):
            cusps.append(i)
            continue
        return i, cusps
    raise InsufficientDataError("no refinement-stable maximum on the mu grid")


def max_ratios(
    config: SweepConfig,
    alpha: float,
    beta_ratio: float,
    cache: ReferenceCache | None = None,
    refine: bool = False,
) -> MaxRatioPoint:
    """Grid maxima of R_W and R_eta over mu_f/mu_i; non-engine points excluded.

    Cells flagged unstable under half-step grid refinement (divergence
    shoulders at the engine-validity boundary) are exempted from the maxima
    and listed.  Ties break toward the smallest grid index.  With ``refine``
    the maximum is polished by a golden-section search inside the bracketing
    triple.
    """
    cache = cache if cache is not None else ReferenceCache()
    lr, sr = _pair_tables(config, alpha, beta_ratio, cache)
    valid = lr.engine_valid & sr.engine_valid & (np.abs(sr.W) > 0) & (np.abs(sr.Q_h) > 0)
    n_valid = int(np.sum(valid))
    if n_valid < 3:
        raise InsufficientDataError(
            f"only {n_valid} engine-valid grid points at alpha={alpha}, "
            f"beta_h/beta_c={beta_ratio}; need at least 3"
        )
    xs = np.asarray(config.mu_ratio_grid, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        R_W = np.where(valid, lr.W / sr.W, -np.inf)
        R_eta = np.where(valid, lr.eta / sr.eta, -np.inf)
    i_W, cusps_W = _stable_argmax(
        R_W, xs, valid, lambda x: _point_ratio(config, alpha, beta_ratio, x, "W")
    )
    i_eta, cusps_eta = _stable_argmax(
        R_eta, xs, valid, lambda x: _point_ratio(config, alpha, beta_ratio, x, "eta")
    )
    out = MaxRatioPoint(
        R_W_max=float(R_W[i_W]),
        R_eta_max=float(R_eta[i_eta]),
        arg_mu_ratio_W=float(xs[i_W]),
        arg_mu_ratio_eta=float(xs[i_eta]),
        excluded=int(xs.size - n_valid),
        cusp_mu_ratios_W=tuple(float(xs[i]) for i in cusps_W),
        cusp_mu_ratios_eta=tuple(float(xs[i]) for i in cusps_eta),
    )
    if refine:
        xw, fw = _golden_refine(lambda x: _point_ratio(config, alpha, beta_ratio, x, "W"), xs, i_W)
        xe, fe = _golden_refine(lambda x: _point_ratio(config, alpha, beta_ratio, x, "eta"), xs, i_eta)
        if fw >= out.R_W_max:
            out = replace(out, R_W_max=float(fw), arg_mu_ratio_W=float(xw))
        if fe >= out.R_eta_max:
            out = replace(out, R_eta_max=float(fe), arg_mu_ratio_eta=float(xe))
    return out


def enhancement_regions(
    config: SweepConfig, alpha: float, cache: ReferenceCache | None = None
) -> RegionMap:
    """Mask of (mu_f/mu_i, beta_h/beta_c) cells with R_W > 1 and R_eta > 1."""
    cache = cache if cache is not None else ReferenceCache()
    mu = np.asarray(config.mu_ratio_grid, dtype=float)
    br = np.asarray(config.beta_ratio_grid, dtype=float)
    mask = np.zeros((mu.size, br.size), dtype=bool)
    excl = np.zeros(br.size, dtype=int)

    def fill(j):
        lr, sr = _pair_tables(config, alpha, br[j], cache)
        both = lr.engine_valid & sr.engine_valid
        with np.errstate(divide="ignore", invalid="ignore"):
            R_W = lr.W / sr.W
            R_eta = lr.eta / sr.eta
        col = both & (R_W > 1.0) & (R_eta > 1.0)
        mask[:, j] = col
        excl[j] = int(np.sum(~both))

    # References are cached per beta ratio first so parallel fills stay pure.
    for j in range(br.size):
        _pair_tables(config, alpha, br[j], cache)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            list(pool.map(fill, range(br.size)))
    else:
        for j in range(br.size):
            fill(j)
    return RegionMap(
        mu_ratio_grid=mu,
        beta_ratio_grid=br,
        mask=mask,
        alpha=float(alpha),
        cycle_kind=config.cycle_kind,
        excluded=int(excl.sum()),
    )


def optimal_condition(config: SweepConfig, cache: ReferenceCache | None = None) -> OptimalCondition:
    """Argmax of the maximum ratios over the (alpha, beta_h/beta_c) grid.

    ``coincident`` is True when the work and efficiency argmax points agree
    within one grid cell in both directions.
    """
    cache = cache if cache is not None else ReferenceCache()
    alphas = np.asarray(config.alpha_grid, dtype=float)
    brs = np.asarray(config.beta_ratio_grid, dtype=float)
    R_W_m = np.full((alphas.size, brs.size), -np.inf)
    R_eta_m = np.full((alphas.size, brs.size), -np.inf)

    # Warm the short-range reference cache serially: one entry per beta ratio.
    for j in range(brs.size):
        cache.table(
            config.cycle_kind,
            replace(config.base, alpha=SHORT_RANGE),
            config.mu_i,
            config.mu_ratio_grid,
            brs[j] * config.beta_c,
            config.beta_c,
        )

    def run_alpha(i):
        local = ReferenceCache()
        for j in range(brs.size):
            try:
                mr = max_ratios(config, alphas[i], brs[j], cache=_Chained(cache, local))
            except InsufficientDataError:
                continue
            R_W_m[i, j] = mr.R_W_max
            R_eta_m[i, j] = mr.R_eta_max

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            list(pool.map(run_alpha, range(alphas.size)))
    else:
        for i in range(alphas.size):
            run_alpha(i)

    if not np.isfinite(R_W_m).any() or not np.isfinite(R_eta_m).any():
        raise InsufficientDataError("no engine-valid (alpha, beta ratio) grid points")
    iW, jW = np.unravel_index(int(np.argmax(R_W_m)), R_W_m.shape)
    iE, jE = np.unravel_index(int(np.argmax(R_eta_m)), R_eta_m.shape)
    coincident = abs(iW - iE) <= 1 and abs(jW - jE) <= 1
    return OptimalCondition(
        alpha_star_W=float(alphas[iW]),
        beta_ratio_star_W=float(brs[jW]),
        alpha_star_eta=float(alphas[iE]),
        beta_ratio_star_eta=float(brs[jE]),
        R_W_max=float(R_W_m[iW, jW]),
        R_eta_max=float(R_eta_m[iE, jE]),
        coincident=coincident,
    )


class _Chained:
    """Read-through view: shared reference cache first, then a private one.

    Keeps worker threads from racing on the shared dict while still reusing
    the pre-warmed short-range tables.
    """

    def __init__(self, shared: ReferenceCache, local: ReferenceCache):
        self.shared = shared
        self.local = local

    def table(self, kind, base, mu_i, mu_ratios, beta_h, beta_c):
        key = (kind, base.L, base.J, base.Delta, base.alpha, mu_i, tuple(mu_ratios), beta_h, beta_c)
        hit = self.shared._store.get(key)
        if hit is not None:
            return hit
        return self.local.table(kind, base, mu_i, mu_ratios, beta_h, beta_c)
