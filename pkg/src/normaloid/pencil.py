"""Decision procedures for the paranormal inequality family.

An n x n matrix T is absolute-(p,r)-paranormal when

    || |T|^p |T*|^r x ||^r  >=  || |T*|^r x ||^(p+r)       for all unit x,

equivalently when the pencil

    M(lam) = r |T*|^r |T|^(2p) |T*|^r - (p+r) lam^p |T*|^(2r) + p lam^(p+r) I

is PSD for every lam > 0.  Minimizing the pencil's quadratic form over lam
for a fixed unit vector x gives the scalar reduction

    min_lam <M(lam) x, x> = r * (a(x) - b(x)^((p+r)/r)),   lam* = b(x)^(1/r),

with a(x) = <|T*|^r |T|^(2p) |T*|^r x, x> and b(x) = <|T*|^(2r) x, x>.  So
membership is exactly nonnegativity of the sphere objective

    f(x) = a(x) - b(x)^gamma,   gamma = (p+r)/r,

and the same template covers paranormal (A = (T^2)* T^2, B = T*T, gamma = 2),
k-paranormal, and absolute-k-paranormal checks.  The sphere optimizer is the
authoritative decider; the lambda grid is a refutation-complete cross-check;
a dense quasi-random sphere scan serves as an oracle for small dimensions.

All checks normalize T to unit operator norm first, so margins are already
relative and the PSD threshold applies directly.
"""
from __future__ import annotations

import dataclasses
import functools

import numpy as np
from scipy.stats import norm as _norm_dist
from scipy.stats import qmc

from . import kernels
from .config import ABS_FLOOR, DEFAULT, ToleranceConfig
from .errors import InvalidParameter, NotBinormal
from .linalg import (
    adjoint,
    as_operator,
    hermitian_eig,
    matrix_power,
    operator_norm,
    psd_power,
)

# restarts stop early once a violation this deep is found (normalized units)
EARLY_STOP_MARGIN = -1e-3
# coordinates of b(x) below this are treated as exactly zero in the objective
B_FLOOR = 1e-14
# dense oracle defaults
ORACLE_SAMPLES_LOG2 = 18  # 2**18 = 262144 > 2e5 unit vectors
ORACLE_MAX_DIM = 4


@dataclasses.dataclass
class PencilCertificate:
    """Outcome of one membership check, with enough data to replay it.

    margin is the smallest objective value found (sphere/oracle methods) or
    the smallest pencil eigenvalue over the lambda grid, in unit-norm
    normalized units.  When decision is False at least one witness field is
    populated; re-evaluating the witness reproduces margin to 1e-12.
    """

    method: str
    decision: bool
    margin: float
    witness_lambda: float | None = None
    witness_vector: np.ndarray | None = None
    evaluations: int = 0
    confidence: str = "high"


def _validate_pr(p: float, r: float) -> tuple[float, float]:
    p, r = float(p), float(r)
    if not (p > 0.0) or not (r > 0.0):
        raise InvalidParameter(f"exponents must be positive, got p={p}, r={r}")
    return p, r


def pencil_matrix(t, p: float, r: float, lam: float, cfg: ToleranceConfig = DEFAULT) -> np.ndarray:
    """The Hermitian pencil M(lam) for the raw (unnormalized) matrix."""
    p, r = _validate_pr(p, r)
    lam = float(lam)
    if not lam > 0.0:
        raise InvalidParameter(f"lambda must be positive, got {lam}")
    a = as_operator(t)
    tt = adjoint(a) @ a
    tts = a @ adjoint(a)
    mod_r = psd_power(tts, r / 2.0, cfg)  # |T*|^r
    mod_2p = psd_power(tt, p, cfg)  # |T|^(2p)
    mod_2r = psd_power(tts, r, cfg)  # |T*|^(2r)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    m = r * (mod_r @ mod_2p @ mod_r) - (p + r) * lam**p * mod_2r + p * lam ** (p + r) * eye
    return (m + adjoint(m)) / 2.0


def ando_pencil_matrix(t, lam: float) -> np.ndarray:
    """Paranormality pencil T*^2 T^2 - 2 lam T*T + lam^2 I."""
    lam = float(lam)
    if not lam > 0.0:
        raise InvalidParameter(f"lambda must be positive, got {lam}")
    a = as_operator(t)
    a2 = a @ a
    m = adjoint(a2) @ a2 - 2.0 * lam * (adjoint(a) @ a) + lam**2 * np.eye(a.shape[0], dtype=np.complex128)
    return (m + adjoint(m)) / 2.0


def abs_pr_forms(t_hat: np.ndarray, p: float, r: float, cfg: ToleranceConfig = DEFAULT):
    """(A, B, gamma) of the sphere objective for a unit-norm matrix."""
    p, r = _validate_pr(p, r)
    tt = adjoint(t_hat) @ t_hat
    tts = t_hat @ adjoint(t_hat)
    mod_r = psd_power(tts, r / 2.0, cfg)
    mod_2p = psd_power(tt, p, cfg)
    a = mod_r @ mod_2p @ mod_r
    a = (a + adjoint(a)) / 2.0
    b = psd_power(tts, r, cfg)
    return a, b, (p + r) / r


def paranormal_forms(t_hat: np.ndarray):
    """(A, B, gamma) encoding ||T^2 x|| >= ||T x||^2 on the unit sphere."""
    t2 = t_hat @ t_hat
    a = adjoint(t2) @ t2
    return (a + adjoint(a)) / 2.0, adjoint(t_hat) @ t_hat, 2.0


@functools.lru_cache(maxsize=32)
def _unit_sphere_cache(n: int, count_log2: int, seed: int) -> np.ndarray:
    """Deterministic quasi-random unit vectors in C^n (rows)."""
    sob = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
    u = sob.random_base2(count_log2)
    # keep strictly inside (0,1) so the normal inverse CDF stays finite
    u = np.clip(u, 1e-12, 1.0 - 1e-12)
    z = _norm_dist.ppf(u)
    pts = z[:, :n] + 1j * z[:, n:]
    nrm = np.linalg.norm(pts, axis=1)
    bad = nrm < 1e-9
    if bad.any():
        pts[bad] = 0.0
        pts[bad, 0] = 1.0
        nrm[bad] = 1.0
    pts /= nrm[:, None]
    pts.setflags(write=False)
    return pts


def sphere_points(n: int, count: int, seed: int) -> np.ndarray:
    """count quasi-random unit vectors in C^n, reproducible for fixed seed."""
    if count < 1:
        raise InvalidParameter(f"count must be positive, got {count}")
    log2 = max(int(np.ceil(np.log2(count))), 0)
    return _unit_sphere_cache(int(n), log2, int(seed))[:count]


def _starts(a: np.ndarray, b: np.ndarray, cfg: ToleranceConfig, seed: int) -> np.ndarray:
    """Optimizer starts: eigenvectors of both forms first, then Sobol points.

    For commuting diagonal forms the objective is concave along eigenvalue
    mixtures, so minima sit at eigenvectors; putting them first lets the
    early-stop cutoff trigger immediately on decisive violations.
    """
    n = a.shape[0]
    eig_a = hermitian_eig(a).eigenvectors.T
    eig_b = hermitian_eig(b).eigenvectors.T
    uniform = np.full((1, n), 1.0 / np.sqrt(n), dtype=np.complex128)
    qr = sphere_points(n, cfg.sphere_restarts, seed)
    return np.vstack([eig_a, eig_b, uniform, qr])


def _normalize(t) -> tuple[np.ndarray, float]:
    a = as_operator(t)
    nrm = operator_norm(a)
    if nrm <= ABS_FLOOR:
        return a, 0.0
    return a / nrm, nrm


def _sphere_certificate(a, b, gamma, cfg, seed, t_hat, p=None, r=None) -> PencilCertificate:
    starts = _starts(a, b, cfg, seed)
    f, x, evals, conv = kernels.sphere_minimize(
        a, b, starts, gamma, b_floor=B_FLOOR, early_stop=EARLY_STOP_MARGIN
    )
    confidence = "high"
    if conv == 0 and f >= EARLY_STOP_MARGIN:
        # optimizer made no certified progress: fall back or flag
        if t_hat.shape[0] <= ORACLE_MAX_DIM:
            if p is not None:
                return dense_oracle(t_hat, p, r, cfg, seed=seed)
            return _oracle_from_forms(a, b, gamma, cfg, seed)
        confidence = "reduced"
    decision = f >= -cfg.psd_tol
    return PencilCertificate(
        method="sphere-opt",
        decision=decision,
        margin=float(f),
        witness_vector=None if decision else x,
        evaluations=evals,
        confidence=confidence,
    )


def check_abs_pr_sphere(t, p: float, r: float, cfg: ToleranceConfig = DEFAULT,
                        seed: int = 0) -> PencilCertificate:
    """Authoritative absolute-(p,r)-paranormality decision via sphere descent."""
    p, r = _validate_pr(p, r)
    t_hat, nrm = _normalize(t)
    if nrm == 0.0:
        return PencilCertificate(method="sphere-opt", decision=True, margin=0.0)
    a, b, gamma = abs_pr_forms(t_hat, p, r, cfg)
    return _sphere_certificate(a, b, gamma, cfg, seed, t_hat, p=p, r=r)


def lambda_grid(norm_squared: float, points: int) -> np.ndarray:
    """Log-spaced lambda samples on [1e-6 * ||T||^2, ||T||^2]."""
    hi = norm_squared if norm_squared > 0.0 else 1.0
    return np.logspace(np.log10(hi) - 6.0, np.log10(hi), points)


def check_abs_pr_lambda_grid(t, p: float, r: float, cfg: ToleranceConfig = DEFAULT) -> PencilCertificate:
    """Refutation-complete grid scan of the pencil's minimum eigenvalue.

    A negative eigenvalue at any sampled lambda certifies non-membership
    (the pencil condition is necessary); a clean grid does not certify
    membership by itself, which is why the sphere method stays authoritative.
    """
    p, r = _validate_pr(p, r)
    t_hat, nrm = _normalize(t)
    if nrm == 0.0:
        return PencilCertificate(method="lambda-grid", decision=True, margin=0.0)
    a, b, gamma = abs_pr_forms(t_hat, p, r, cfg)
    eye = np.eye(t_hat.shape[0], dtype=np.complex128)
    best = np.inf
    best_lam = None
    evals = 0
    for lam in lambda_grid(1.0, cfg.grid_points):
        m = r * a - (p + r) * lam**p * b + p * lam ** (p + r) * eye
        w = np.linalg.eigvalsh((m + adjoint(m)) / 2.0)
        evals += 1
        if w[0] < best:
            best = float(w[0])
            best_lam = float(lam)
    decision = best >= -cfg.psd_tol
    return PencilCertificate(
        method="lambda-grid",
        decision=decision,
        margin=best,
        witness_lambda=None if decision else best_lam,
        evaluations=evals,
    )


def _oracle_from_forms(a, b, gamma, cfg: ToleranceConfig, seed: int,
                       samples_log2: int = ORACLE_SAMPLES_LOG2) -> PencilCertificate:
    pts = _unit_sphere_cache(a.shape[0], samples_log2, seed + 104729)
    vals = kernels.objective_batch(a, b, pts, gamma, b_floor=B_FLOOR)
    i = int(np.argmin(vals))
    f = float(vals[i])
    decision = f >= -cfg.psd_tol
    return PencilCertificate(
        method="dense-oracle",
        decision=decision,
        margin=f,
        witness_vector=None if decision else pts[i].copy(),
        evaluations=int(pts.shape[0]),
    )


def dense_oracle(t, p: float, r: float, cfg: ToleranceConfig = DEFAULT, seed: int = 0,
                 samples_log2: int = ORACLE_SAMPLES_LOG2) -> PencilCertificate:
    """Dense quasi-random sphere scan; independent of the optimizer's starts."""
    p, r = _validate_pr(p, r)
    t_hat, nrm = _normalize(t)
    if nrm == 0.0:
        return PencilCertificate(method="dense-oracle", decision=True, margin=0.0)
    a, b, gamma = abs_pr_forms(t_hat, p, r, cfg)
    return _oracle_from_forms(a, b, gamma, cfg, seed, samples_log2)


def evaluate_objective(t, p: float, r: float, x, cfg: ToleranceConfig = DEFAULT) -> float:
    """Replay the normalized sphere objective at a stored witness vector."""
    p, r = _validate_pr(p, r)
    t_hat, nrm = _normalize(t)
    if nrm == 0.0:
        return 0.0
    a, b, gamma = abs_pr_forms(t_hat, p, r, cfg)
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    v = v / np.linalg.norm(v)
    av = float(np.real(v.conj() @ (a @ v)))
    bv = max(float(np.real(v.conj() @ (b @ v))), 0.0)
    return av - (bv**gamma if bv > B_FLOOR else 0.0)


def check_paranormal(t, cfg: ToleranceConfig = DEFAULT, seed: int = 0) -> PencilCertificate:
    """Paranormality via sphere descent, cross-checked on the lambda grid.

    Disagreement between the two methods beyond the marginal band escalates
    to the dense oracle for n <= 4 and downgrades confidence otherwise.
    """
    t_hat, nrm = _normalize(t)
    if nrm == 0.0:
        return PencilCertificate(method="sphere-opt", decision=True, margin=0.0)
    a, b, gamma = paranormal_forms(t_hat)
    cert = _sphere_certificate(a, b, gamma, cfg, seed, t_hat)

    eye = np.eye(t_hat.shape[0], dtype=np.complex128)
    grid_min = np.inf
    grid_lam = None
    for lam in lambda_grid(1.0, cfg.grid_points):
        m = a - 2.0 * lam * b + lam**2 * eye
        w = np.linalg.eigvalsh((m + adjoint(m)) / 2.0)
        if w[0] < grid_min:
            grid_min = float(w[0])
            grid_lam = float(lam)
    grid_refutes = grid_min < -cfg.psd_tol

    if grid_refutes and cert.decision:
        # grid found a violated lambda the optimizer missed
        if t_hat.shape[0] <= ORACLE_MAX_DIM:
            oracle = _oracle_from_forms(a, b, gamma, cfg, seed)
            if not oracle.decision:
                return oracle
        return PencilCertificate(
            method="lambda-grid",
            decision=False,
            margin=grid_min,
            witness_lambda=grid_lam,
            evaluations=cert.evaluations,
            confidence="reduced",
        )
    return cert


def simultaneous_diagonalize(p_mat, q_mat, cfg: ToleranceConfig = DEFAULT):
    """Joint eigenvalues (f_i, g_i) of two commuting Hermitian matrices.

    Diagonalizes the first, clusters its eigenvalues, then diagonalizes the
    second inside each cluster's eigenspace.  Returns (f, g, basis).
    """
    p_mat = as_operator(p_mat)
    q_mat = as_operator(q_mat)
    eig = hermitian_eig(p_mat, cfg)
    w, v = eig.eigenvalues, eig.eigenvectors
    scale = max(float(np.max(np.abs(w))), ABS_FLOOR)
    gap = 1e-8 * scale
    f = np.array(w, dtype=float)
    g = np.empty_like(f)
    basis = np.array(v, dtype=np.complex128)
    i = 0
    n = len(w)
    while i < n:
        j = i + 1
        while j < n and w[j] - w[j - 1] <= gap:
            j += 1
        block = v[:, i:j]
        sub = block.conj().T @ q_mat @ block
        sw, sv = np.linalg.eigh((sub + sub.conj().T) / 2.0)
        g[i:j] = sw
        basis[:, i:j] = block @ sv
        i = j
    return f, g, basis


def binormal_scalar_check(t, p: float, r: float, cfg: ToleranceConfig = DEFAULT):
    """(decision, margin) for absolute-(p,r)-paranormality of a binormal matrix.

    For binormal T the moduli squared commute; in a joint eigenbasis the
    pencil condition reduces to: every joint pair with g > 0 satisfies
    f >= g.  (Minimizing over lambda lands at lambda = g and leaves
    r * g^r * (f^p - g^p) >= 0; the converse follows from the weighted
    arithmetic-geometric mean bound, so this is an equivalence and the
    exponents only need to be valid, they do not move the answer.)

    margin is the worst normalized f - g over active pairs (0.0 when no
    pair is active).  Raises NotBinormal when the moduli do not commute.
    """
    p, r = _validate_pr(p, r)
    t_hat, nrm = _normalize(t)
    if nrm == 0.0:
        return True, 0.0
    tt = adjoint(t_hat) @ t_hat
    tts = t_hat @ adjoint(t_hat)
    comm = tt @ tts - tts @ tt
    if operator_norm(comm) > cfg.eq_rtol:
        raise NotBinormal(
            f"moduli do not commute: ||[T*T, TT*]|| / ||T||^4 = {operator_norm(comm):.3e}"
        )
    f, g, _ = simultaneous_diagonalize(tt, tts, cfg)
    active = g > cfg.psd_tol
    if not active.any():
        return True, 0.0
    margin = float(np.min(f[active] - g[active]))
    return margin >= -cfg.psd_tol, margin
