"""Dense complex matrix primitives: spectra, fractional powers, polar parts.

Everything downstream (predicates, pencils, transforms) is built from these
routines, so their tolerance behavior is pinned here: Hermitian inputs are
validated then symmetrized, PSD powers clamp eigenvalues below the rank
cutoff before powering, and the polar isometry is truncated at the same
cutoff so the kernel of U always equals the kernel of |T|.
"""
from __future__ import annotations

import dataclasses

import numpy as np

from .config import ABS_FLOOR, DEFAULT, ToleranceConfig
from .errors import ConvergenceFailure, InvalidParameter, NonHermitianInput, NotPositive


def as_operator(m) -> np.ndarray:
    """Validate and return a square, finite complex128 matrix."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InvalidParameter(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InvalidParameter("matrix entries must be finite")
    return a


def adjoint(t: np.ndarray) -> np.ndarray:
    return t.conj().T


def operator_norm(t) -> float:
    """Largest singular value."""
    a = as_operator(t)
    try:
        return float(np.linalg.svd(a, compute_uv=False)[0])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc


def rel_scale(t: np.ndarray) -> float:
    """Comparison scale: operator norm floored away from zero."""
    return max(operator_norm(t), ABS_FLOOR)


def general_eigenvalues(t) -> np.ndarray:
    """All n eigenvalues (with multiplicity), sorted by (real, imag)."""
    a = as_operator(t)
    try:
        w = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    order = np.lexsort((w.imag, w.real))
    return w[order]


def spectral_radius(t) -> float:
    return float(np.max(np.abs(general_eigenvalues(t))))


@dataclasses.dataclass(frozen=True)
class HermitianEigen:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _require_hermitian(a: np.ndarray, cfg: ToleranceConfig, what: str) -> np.ndarray:
    """Check near-Hermitianness and return the symmetrized matrix."""
    asym = operator_norm(a - adjoint(a))
    if asym > cfg.eq_rtol * rel_scale(a):
        raise NonHermitianInput(
            f"{what}: anti-Hermitian part {asym:.3e} exceeds "
            f"{cfg.eq_rtol:.1e} * scale {rel_scale(a):.3e}"
        )
    return (a + adjoint(a)) / 2.0


def hermitian_eig(a, cfg: ToleranceConfig = DEFAULT) -> HermitianEigen:
    """Eigendecomposition of a (tolerantly) Hermitian matrix."""
    h = _require_hermitian(as_operator(a), cfg, "hermitian_eig")
    try:
        w, q = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigh failed: {exc}") from exc
    return HermitianEigen(w, q)


def psd_power(a, alpha: float, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """Fractional power A^alpha of a PSD matrix via its eigensystem.

    Eigenvalues below rank_tol * ||A|| are clamped to zero before powering;
    eigenvalues below -psd_tol * ||A|| raise NotPositive.
    """
    alpha = float(alpha)
    if not alpha > 0.0:
        raise InvalidParameter(f"power must be positive, got {alpha}")
    eig = hermitian_eig(a, cfg)
    w, q = eig.eigenvalues, eig.eigenvectors
    scale = max(float(np.max(np.abs(w))), ABS_FLOOR)
    if float(w[0]) < -cfg.psd_tol * scale:
        raise NotPositive(
            f"matrix has eigenvalue {w[0]:.6e} below -psd_tol * {scale:.3e}"
        )
    w = np.where(w < cfg.rank_tol * scale, 0.0, w)
    powered = w**alpha
    r = (q * powered) @ q.conj().T
    return (r + adjoint(r)) / 2.0


def _svd(t: np.ndarray):
    try:
        return np.linalg.svd(t)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc


def modulus(t, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """|T| = (T*T)^(1/2), from the SVD of T for small-singular-value accuracy."""
    return modulus_power(t, 1.0, cfg)


def modulus_adjoint(t, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """|T*| = (TT*)^(1/2)."""
    return modulus_power(adjoint(as_operator(t)), 1.0, cfg)


def modulus_power(t, s: float, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """|T|^s for s >= 0 via singular values of T.

    Singular values below rank_tol * sigma_max are clamped to zero first,
    matching psd_power's rank policy (0**0 evaluates to 1, so s = 0 gives
    the identity, which is the convention making T |T|^(s-1) = U |T|^s at
    s = 1 exact).
    """
    s = float(s)
    if s < 0.0:
        raise InvalidParameter(f"modulus power must be nonnegative, got {s}")
    a = as_operator(t)
    _, sig, vh = _svd(a)
    if sig[0] > 0.0:
        sig = np.where(sig < cfg.rank_tol * sig[0], 0.0, sig)
    powered = sig**s
    r = (vh.conj().T * powered) @ vh
    return (r + adjoint(r)) / 2.0


@dataclasses.dataclass(frozen=True)
class PolarDecomposition:
    """T = U P with P = |T| PSD and U a partial isometry, N(U) = N(P)."""

    u: np.ndarray
    p: np.ndarray
    rank: int


def polar_decompose(t, cfg: ToleranceConfig = DEFAULT) -> PolarDecomposition:
    """Canonical polar decomposition from the SVD.

    U = W_r V_r* keeps only singular directions above rank_tol * sigma_max,
    and P zeroes the same singular values, so ||U P - T|| <= rank_tol * ||T||
    and the two kernels agree by construction.
    """
    a = as_operator(t)
    w, sig, vh = _svd(a)
    smax = float(sig[0]) if sig.size else 0.0
    if smax <= ABS_FLOOR:
        n = a.shape[0]
        return PolarDecomposition(np.zeros((n, n), np.complex128), np.zeros((n, n), np.complex128), 0)
    cutoff = cfg.rank_tol * smax
    r = int(np.count_nonzero(sig > cutoff))
    u = w[:, :r] @ vh[:r, :]
    sig = np.where(sig > cutoff, sig, 0.0)
    p = (vh.conj().T * sig) @ vh
    p = (p + adjoint(p)) / 2.0
    return PolarDecomposition(u, p, r)


def is_psd(m, cfg: ToleranceConfig = DEFAULT, scale: float | None = None):
    """(decision, margin) for positive semidefiniteness of a Hermitian matrix.

    margin = lambda_min / max(scale, floor); scale defaults to ||M||.  Class
    predicates pass the homogeneous scale of the parent operator instead so
    margins of near-zero differences stay meaningful.
    """
    eig = hermitian_eig(m, cfg)
    w = eig.eigenvalues
    denom = max(float(np.max(np.abs(w))) if scale is None else float(scale), ABS_FLOOR)
    margin = float(w[0]) / denom
    return margin >= -cfg.psd_tol, margin


def rank(t, cfg: ToleranceConfig = DEFAULT) -> int:
    """Number of singular values above rank_tol * sigma_max."""
    a = as_operator(t)
    sig = np.linalg.svd(a, compute_uv=False)
    if sig.size == 0 or sig[0] <= ABS_FLOOR:
        return 0
    return int(np.count_nonzero(sig > cfg.rank_tol * sig[0]))


def kernel_projector(t, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """Orthogonal projector onto N(T)."""
    a = as_operator(t)
    _, sig, vh = _svd(a)
    smax = float(sig[0]) if sig.size else 0.0
    if smax <= ABS_FLOOR:
        return np.eye(a.shape[0], dtype=np.complex128)
    keep = sig <= cfg.rank_tol * smax
    vk = vh[keep, :].conj().T
    p = vk @ vk.conj().T
    return (p + adjoint(p)) / 2.0


def range_projector(t, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """Orthogonal projector onto R(T)."""
    a = as_operator(t)
    w, sig, _ = _svd(a)
    smax = float(sig[0]) if sig.size else 0.0
    if smax <= ABS_FLOOR:
        return np.zeros_like(a)
    keep = sig > cfg.rank_tol * smax
    wr = w[:, keep]
    p = wr @ wr.conj().T
    return (p + adjoint(p)) / 2.0


def matrix_power(t, n: int) -> np.ndarray:
    """T^n by repeated multiplication (n >= 0)."""
    if not (isinstance(n, (int, np.integer)) and n >= 0):
        raise InvalidParameter(f"matrix power must be a nonnegative integer, got {n!r}")
    a = as_operator(t)
    out = np.eye(a.shape[0], dtype=np.complex128)
    for _ in range(int(n)):
        out = out @ a
    return out
