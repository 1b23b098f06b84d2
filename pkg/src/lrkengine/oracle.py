"""Small-L ground truth: real-space BdG matrix, Jacobi eigensolve, and exact
2^L partition-function enumeration.  Test-only; performance is a non-goal.

The quadratic form is assembled so its positive eigenvalues equal the
momentum-space dispersion directly: hopping enters with J/2, pairing with
Delta/(4 d^alpha), the on-site term with the full mu.  The L = 2 case fixes
this convention analytically and gates the batch comparisons.
"""

import math

import numpy as np

from .chain import ChainParams, QuasiparticleSpectrum

ORACLE_L_CAP = 64
ENUMERATION_L_CAP = 16


class OracleScaleError(ValueError):
    """Raised when an oracle is asked for a system above its size cap."""


class EigensolverError(RuntimeError):
    """Raised when the Jacobi sweep fails to converge."""


def bdg_matrix(params: ChainParams) -> np.ndarray:
    """Real symmetric 2L x 2L quadratic-form matrix in the (c, c^dag) basis.

    Bonds wrapping the ring carry the antiperiodic sign flip, for hopping and
    pairing alike.  The short-range limit is encoded as nearest-neighbor
    pairing with doubled weight so that f(k) = 2 sin k is reproduced.
    """
    L = params.L
    if L > ORACLE_L_CAP:
        raise OracleScaleError(f"oracle BdG matrix capped at L={ORACLE_L_CAP}, got {L}")

    A = np.zeros((L, L))
    np.fill_diagonal(A, -params.mu)
    for j in range(L):
        j2, sign = j + 1, 1.0
        if j2 >= L:
            j2, sign = j2 - L, -1.0
        A[j, j2] += -0.5 * params.J * sign
        A[j2, j] += -0.5 * params.J * sign

    # Pairing coefficients of c_{j+l}^dag c_j^dag, antisymmetrized below.
    C = np.zeros((L, L))
    if params.short_range:
        weights = {1: 2.0}
    else:
        weights = {l: min(l, L - l) ** (-params.alpha) for l in range(1, L)}
    for l, w in weights.items():
        g = 0.25 * params.Delta * w
        for j in range(L):
            j2, sign = j + l, 1.0
            if j2 >= L:
                j2, sign = j2 - L, -1.0
            C[j2, j] += g * sign
    B = C - C.T

    top = np.hstack([A, B])
    bot = np.hstack([-B, -A])
    return np.vstack([top, bot])


def jacobi_eigenvalues(m: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, atol=1e-12 * (1.0 + np.abs(a).max())):
        raise ValueError("jacobi_eigenvalues requires a square symmetric matrix")
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    thresh = tol * scale
    diag_mask = np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # Summed directly over off-diagonal entries: the Sum(a^2) - Sum(diag^2)
        # form cancels catastrophically once the matrix is nearly diagonal.
        off = math.sqrt(float(np.sum(np.square(a[~diag_mask]))))
        if off <= thresh:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh / n:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(1.0, theta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    raise EigensolverError(f"Jacobi sweep did not converge in {max_sweeps} sweeps")


def exact_spectrum(m: np.ndarray) -> np.ndarray:
    """Sorted non-negative eigenvalues; the negative partners are discarded."""
    ev = jacobi_eigenvalues(m)
    n = ev.size
    if n % 2 != 0:
        raise ValueError("BdG matrix must have even dimension")
    # Particle-hole symmetry pairs the spectrum about zero: keep the top half.
    return np.sort(ev)[n // 2 :]


def enumerate_partition(spec: QuasiparticleSpectrum, beta: float) -> float:
    """Z by brute-force sum over all 2^L quasiparticle occupation patterns.

    Each positive-momentum energy appears for both the k and -k modes;
    many-body energies are sum_k eps_k (n_k - 1/2) over all L modes.
    """
    L = spec.params.L
    if L > ENUMERATION_L_CAP:
        raise OracleScaleError(f"enumeration capped at L={ENUMERATION_L_CAP}, got {L}")
    modes = np.repeat(np.asarray(spec.energies, dtype=float), 2)
    assert modes.size == L
    states = np.arange(2**L, dtype=np.uint32)
    occ = (states[:, None] >> np.arange(L)) & 1
    energies = occ @ modes - 0.5 * modes.sum()
    return float(np.sum(np.exp(-float(beta) * energies)))
