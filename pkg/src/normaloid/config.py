"""Tolerance policy shared by every predicate and decision procedure.

All comparisons in the library are relative to a natural scale of the input
(operator norm raised to the homogeneity degree of the quantity), with an
absolute floor so the zero matrix never divides by zero.  Three named
profiles exist; any field can be overridden through NORMALOID_* environment
variables when configs are built via :func:`from_env`.
"""
from __future__ import annotations

import dataclasses
import os

from .errors import InvalidParameter

# absolute fallback scale: quantities compared relative to max(scale, ABS_FLOOR)
ABS_FLOOR = 1e-14

ENV_PREFIX = "NORMALOID_"


@dataclasses.dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy knobs.

    eq_rtol         relative tolerance for operator equalities
    psd_tol         relative slack for positive-semidefinite checks
    rank_tol        singular values below rank_tol * sigma_max count as zero
    sphere_restarts quasi-random restarts of the unit-sphere optimizer
    grid_points     log-spaced sample count for lambda-pencil scans
    """

    eq_rtol: float = 1e-10
    psd_tol: float = 1e-9
    rank_tol: float = 1e-10
    sphere_restarts: int = 64
    grid_points: int = 200

    def __post_init__(self):
        for name in ("eq_rtol", "psd_tol", "rank_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise InvalidParameter(f"{name} must lie in (0, 1), got {value!r}")
        for name in ("sphere_restarts", "grid_points"):
            value = getattr(self, name)
            if not (isinstance(value, int) and value >= 1):
                raise InvalidParameter(f"{name} must be a positive integer, got {value!r}")


DEFAULT = ToleranceConfig()

PROFILES = {
    "default": DEFAULT,
    "strict": ToleranceConfig(eq_rtol=1e-12, psd_tol=1e-11, rank_tol=1e-12),
    "loose": ToleranceConfig(eq_rtol=1e-8, psd_tol=1e-7, rank_tol=1e-8),
}

_FIELD_TYPES = {
    "eq_rtol": float,
    "psd_tol": float,
    "rank_tol": float,
    "sphere_restarts": int,
    "grid_points": int,
}


def from_env(profile: str = "default", environ=None) -> ToleranceConfig:
    """Build a config from a named profile plus NORMALOID_* overrides.

    Recognized variables: NORMALOID_EQ_RTOL, NORMALOID_PSD_TOL,
    NORMALOID_RANK_TOL, NORMALOID_SPHERE_RESTARTS, NORMALOID_GRID_POINTS.
    """
    if profile not in PROFILES:
        raise InvalidParameter(
            f"unknown tolerance profile {profile!r}; expected one of {sorted(PROFILES)}"
        )
    env = os.environ if environ is None else environ
    overrides = {}
    for field, typ in _FIELD_TYPES.items():
        raw = env.get(ENV_PREFIX + field.upper())
        if raw is None:
            continue
        try:
            overrides[field] = typ(raw)
        except ValueError as exc:
            raise InvalidParameter(
                f"cannot parse {ENV_PREFIX + field.upper()}={raw!r} as {typ.__name__}"
            ) from exc
    return dataclasses.replace(PROFILES[profile], **overrides)


def is_marginal(margin: float, threshold: float) -> bool:
    """True when a margin sits in the fragile annulus around its threshold.

    Membership is margin >= -threshold.  Margins in (-10*threshold,
    -threshold/10) are too close to the cut to trust either way; property
    suites skip such trials instead of counting them.  Exact members
    (margin ~ 0) and decisive rejections are both solid.
    """
    return -10.0 * threshold < margin < -threshold / 10.0
