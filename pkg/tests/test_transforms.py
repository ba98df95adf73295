import numpy as np
import pytest

from normaloid.config import DEFAULT
from normaloid.errors import (
    InvalidParameter,
    NotBinormal,
    NotPositive,
    NotUnit,
    PremiseViolated,
)
from normaloid.fixtures import get_fixture
from normaloid.generators import gen_binormal, gen_normal, gen_psd, gen_random
from normaloid.linalg import adjoint, operator_norm
from normaloid.transforms import (
    embry_power_identity,
    fundamental_identity_residual,
    generalized_transform,
    holder_mccarthy_check,
    intermediate_power_inequality_check,
    polar_conjugation_residual,
    power_inequality_check,
    trans_equiv_residual,
)


def test_transform_of_fixture_at_s2_frozen_value():
    # |T| = diag(2,1,2), U swaps rows 2 and 3; the s=2 transform is
    # U|T|^2 conjugated into [[4,0,0],[0,0,4],[0,1,0]]
    t = get_fixture("normaloid_swap3").matrix
    res = generalized_transform(t, 2.0)
    expected = np.array([[4, 0, 0], [0, 0, 4], [0, 1, 0]], dtype=complex)
    np.testing.assert_allclose(res.matrix, expected, atol=1e-10)
    for name, value in res.residuals.items():
        assert value <= 1e-10, name


def test_transform_s1_is_original_matrix():
    t = gen_random(4, 13)
    res = generalized_transform(t, 1.0)
    np.testing.assert_allclose(res.matrix, t, atol=1e-10 * operator_norm(t))


def test_transform_rejects_nonpositive_s():
    with pytest.raises(InvalidParameter):
        generalized_transform(np.eye(2), 0.0)


def test_fundamental_identity_residual_small_across_alphas():
    for seed in range(5):
        t = gen_random(4, 100 + seed)
        for alpha in (0.3, 0.5, 1.0, 2.0, 3.7):
            assert fundamental_identity_residual(t, alpha) <= 1e-10


def test_polar_conjugation_residual_small():
    for seed in range(5):
        t = gen_random(3, 200 + seed)
        for q in (0.5, 1.0, 2.0, 3.0):
            assert polar_conjugation_residual(t, q) <= 1e-10


def test_trans_equiv_residual_small_and_validates_s():
    for seed in range(5):
        t = gen_random(3, 300 + seed)
        for s in (1.0, 1.5, 2.0, 3.0):
            assert trans_equiv_residual(t, s) <= 1e-10
    with pytest.raises(InvalidParameter):
        trans_equiv_residual(gen_random(2, 0), 0.5)


def test_power_inequality_holds_with_cushioned_lambda():
    t = gen_binormal(4, 17, min_sv=0.4)
    from normaloid.classes import posinormal_lambda_min

    lam = 1.01 * posinormal_lambda_min(t)
    for n in (1, 2, 3, 4):
        ok, margin = power_inequality_check(t, lam, n)
        assert ok, (n, margin)
        assert margin >= -DEFAULT.psd_tol
    for k in (1, 2, 3):
        ok, margin = intermediate_power_inequality_check(t, lam, k)
        assert ok, (k, margin)


def test_power_inequality_premise_violation_raises():
    # diag with permutation moving the kernel: no lambda can work
    t = np.array([[0, 0, 1], [0.5, 0, 0], [0, 0, 0]], dtype=complex)
    tt = adjoint(t) @ t
    tts = t @ adjoint(t)
    assert operator_norm(tt @ tts - tts @ tt) < 1e-14  # binormal
    with pytest.raises(PremiseViolated):
        power_inequality_check(t, 100.0, 2)


def test_power_inequality_rejects_nonbinormal():
    t = np.array([[1, 1], [0, 1]], dtype=complex)
    with pytest.raises(NotBinormal):
        power_inequality_check(t, 2.0, 2)


def test_power_inequality_validates_parameters():
    t = gen_normal(2, 1)
    with pytest.raises(InvalidParameter):
        power_inequality_check(t, -1.0, 2)
    with pytest.raises(InvalidParameter):
        power_inequality_check(t, 1.0, 0)


def test_holder_mccarthy_gap_flips_at_alpha_one():
    # A = diag(1,4), x uniform: <A^2 x, x> = 8.5 >= <Ax,x>^2 = 6.25,
    # and the exponent below one reverses the comparison
    a = np.diag([1.0, 4.0]).astype(complex)
    x = np.array([1.0, 1.0]) / np.sqrt(2.0)
    ok2, gap2 = holder_mccarthy_check(a, x, 2.0)
    assert ok2
    assert gap2 == pytest.approx((8.5 - 6.25) / operator_norm(a) ** 2, abs=1e-12)
    ok_half, gap_half = holder_mccarthy_check(a, x, 0.5)
    assert ok_half
    assert gap_half > 0
    ok1, gap1 = holder_mccarthy_check(a, x, 1.0)
    assert ok1
    assert gap1 == pytest.approx(0.0, abs=1e-12)


def test_holder_mccarthy_random_psd():
    for seed in range(8):
        a = gen_psd(3, seed)
        rng = np.random.Generator(np.random.PCG64(seed))
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        x = x / np.linalg.norm(x)
        for alpha in (0.3, 0.5, 1.0, 2.0, 3.0):
            ok, gap = holder_mccarthy_check(a, x, alpha)
            assert ok, (seed, alpha, gap)


def test_holder_mccarthy_input_validation():
    a = np.diag([1.0, 4.0]).astype(complex)
    with pytest.raises(NotUnit):
        holder_mccarthy_check(a, np.array([1.0, 1.0]), 2.0)
    with pytest.raises(NotPositive):
        holder_mccarthy_check(np.diag([1.0, -1.0]), np.array([1.0, 0.0]), 2.0)
    with pytest.raises(InvalidParameter):
        holder_mccarthy_check(a, np.array([1.0, 0.0, 0.0]), 2.0)


def test_embry_residual_zero_for_quasinormal_one_for_shift():
    from normaloid.generators import gen_quasinormal_partial_isometry

    q = gen_quasinormal_partial_isometry(4, 2, 3)
    for n in (1, 2, 3):
        assert embry_power_identity(q, n) <= 1e-12
    v = get_fixture("partial_isometry_shift").matrix
    assert embry_power_identity(v, 2) == pytest.approx(1.0, abs=1e-12)


def test_embry_validates_power():
    with pytest.raises(InvalidParameter):
        embry_power_identity(np.eye(2), 0)
