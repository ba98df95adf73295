"""Bundled counterexample and anchor matrices with recorded verdicts.

Each fixture ships as a matrix JSON file plus an expected verdict map over
plain class ids.  For parametrized classes (p-hyponormal, k-paranormal,
absolute-k/(p,r)-paranormal) the expectation applies to every parameter
choice classify tests, which is well defined for these matrices: in finite
dimension the whole absolute-paranormal family collapses to normality, and
the recorded k-paranormal answers were computed per fixture.

load_fixtures() re-derives every verdict with classify and raises
FixtureMismatch on the first disagreement, so a drifting predicate cannot
silently invalidate the corpus.
"""
from __future__ import annotations

import dataclasses
from importlib import resources

import numpy as np

from .classes import classify
from .config import DEFAULT, ToleranceConfig
from .errors import FixtureMismatch
from .matrixio import matrix_from_obj
import json


@dataclasses.dataclass(frozen=True)
class Fixture:
    name: str
    matrix: np.ndarray
    expected: dict
    provenance: str


_ALL_FALSE = {
    "self-adjoint": False,
    "positive": False,
    "unitary": False,
    "isometry": False,
    "orthogonal-projection": False,
    "partial-isometry": False,
    "normal": False,
    "subnormal": False,
    "quasinormal": False,
    "hyponormal": False,
    "p-hyponormal": False,
    "class-A": False,
    "paranormal": False,
    "k-paranormal": False,
    "absolute-k-paranormal": False,
    "absolute-pr-paranormal": False,
    "normaloid": False,
    "binormal": False,
    "posinormal": False,
}

_ALL_TRUE = {k: True for k in _ALL_FALSE}


def _exp(**overrides) -> dict:
    out = dict(_ALL_FALSE)
    out.update(overrides)
    return out


_REGISTRY = (
    (
        "normaloid_swap3",
        _exp(normaloid=True, binormal=True, posinormal=True),
        "weighted two-cycle glued to a norm-attaining fixed direction: "
        "norm and spectral radius both equal 2, moduli commute, polar factor "
        "is a self-adjoint symmetry, yet the matrix is far from normal",
    ),
    (
        "partial_isometry_shift",
        _exp(**{"partial-isometry": True, "normaloid": True, "binormal": True}),
        "rank-2 partial isometry fixing one direction and shifting another; "
        "every power has unit norm so it is normaloid, but it does not "
        "commute with its modulus",
    ),
    (
        "swap_symmetry",
        {**_ALL_TRUE, "positive": False, "orthogonal-projection": False},
        "self-adjoint unitary symmetry exchanging two coordinates (the polar "
        "factor of the weighted two-cycle fixture)",
    ),
    (
        "nilpotent_jordan2",
        _exp(**{"partial-isometry": True, "binormal": True}),
        "2x2 nilpotent Jordan block: norm 1 with empty nonzero spectrum, the "
        "extreme failure of the norm-radius equality; also a partial isometry",
    ),
    (
        "normaloid_halfshift",
        _exp(normaloid=True, binormal=True),
        "normaloid whose square is an orthogonal projection while the matrix "
        "itself is not a partial isometry (modulus squared has eigenvalue 1/4)",
    ),
    (
        "nilpotent_double",
        _exp(binormal=True),
        "scaled 2x2 nilpotent: binormal with square zero (a partial isometry) "
        "while the matrix itself is not a partial isometry",
    ),
    (
        "involution_shear",
        _exp(posinormal=True, binormal=True),
        "invertible shear squaring to the identity: posinormal (invertible) "
        "with a partial-isometry square, but not normaloid and not a "
        "partial isometry itself",
    ),
    (
        "identity3",
        _ALL_TRUE,
        "3x3 identity: member of every class in the hierarchy",
    ),
)


def _load_matrix_resource(name: str) -> np.ndarray:
    ref = resources.files("normaloid").joinpath("fixtures", f"{name}.json")
    with ref.open("r", encoding="utf-8") as fp:
        return matrix_from_obj(json.load(fp))


def fixture_registry() -> tuple:
    """All bundled fixtures (matrices loaded, verdicts not yet verified)."""
    out = []
    for name, expected, provenance in _REGISTRY:
        out.append(
            Fixture(
                name=name,
                matrix=_load_matrix_resource(name),
                expected=dict(expected),
                provenance=provenance,
            )
        )
    return tuple(out)


def verify_fixture(fixture: Fixture, cfg: ToleranceConfig = DEFAULT) -> None:
    """Re-derive the fixture's verdicts; raise FixtureMismatch on drift."""
    report = classify(fixture.matrix, cfg=cfg)
    seen = set()
    for verdict in report.verdicts:
        expected = fixture.expected.get(verdict.class_id)
        if expected is None:
            continue
        seen.add(verdict.class_id)
        if verdict.member != expected:
            raise FixtureMismatch(
                f"fixture {fixture.name!r}: class {verdict.class_id!r} "
                f"(parameters {verdict.parameters!r}) classified "
                f"{verdict.member}, registry records {expected}"
            )
    missing = set(fixture.expected) - seen
    if missing:
        raise FixtureMismatch(
            f"fixture {fixture.name!r}: no verdicts produced for {sorted(missing)}"
        )


def load_fixtures(cfg: ToleranceConfig = DEFAULT) -> tuple:
    """Load and verify the whole corpus."""
    fixtures = fixture_registry()
    for fixture in fixtures:
        verify_fixture(fixture, cfg)
    return fixtures


def get_fixture(name: str) -> Fixture:
    for fixture in fixture_registry():
        if fixture.name == name:
            return fixture
    raise KeyError(f"unknown fixture {name!r}")
