import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformosc import (
    STANDARD_A,
    STANDARD_B,
    ConventionViolation,
    GuardBandExceeded,
    build_rep,
    coherent_state,
    continuity_modulus,
    deformed_exponential,
    eigen_residual,
    normalization_constant,
    overlap,
    overlap_vector,
    target_moments,
)
from deformosc.suite import verify_coherent, z_grid


@pytest.fixture(scope="module")
def rep100():
    return build_rep(STANDARD_A, 100)


def test_vacuum_state(rep100):
    s = coherent_state(STANDARD_A, 0.0)
    assert s.terms == 1
    np.testing.assert_array_equal(s.vector(), [1.0])
    assert eigen_residual(rep100, s) == 0.0


def test_coefficients_are_normalization_constants():
    z = 0.5
    s = coherent_state(STANDARD_A, z)
    c = np.array([normalization_constant(STANDARD_A, n) * z ** n for n in range(s.terms)])
    np.testing.assert_allclose(s.coefficients.real, c, rtol=1e-12)
    assert s.truncation_estimate < 1e-14


def test_eigen_residual_examples(rep100):
    assert eigen_residual(rep100, coherent_state(STANDARD_A, 0.5)) < 1e-10
    rep_b = build_rep(STANDARD_B, 100)
    assert eigen_residual(rep_b, coherent_state(STANDARD_B, 0.3j)) < 1e-10


def test_eigen_residual_grid(rep100):
    grid = z_grid()
    assert len(grid) == 25 and max(abs(z) for z in grid) <= 1
    for z in grid:
        assert eigen_residual(rep100, coherent_state(STANDARD_A, z)) <= 1e-9


def test_regime_b_state_normalized():
    s = coherent_state(STANDARD_B, 0.5)
    assert np.linalg.norm(s.vector()) == pytest.approx(1.0, abs=1e-14)
    a = coherent_state(STANDARD_A, 0.5)
    np.testing.assert_allclose(np.abs(s.vector()), np.abs(a.vector()[: s.terms]), rtol=1e-10)


def test_guard_band():
    s = coherent_state(STANDARD_A, 0.9)
    with pytest.raises(GuardBandExceeded):
        eigen_residual(build_rep(STANDARD_A, s.terms), s)


def test_convention_required():
    with pytest.raises(ConventionViolation):
        coherent_state(STANDARD_A.with_(chi0=0.5), 0.3)
    with pytest.raises(ConventionViolation):
        overlap(STANDARD_A.with_(nu=0.5), 0.3, 0.2)
    with pytest.raises(ConventionViolation):
        target_moments(STANDARD_A.with_(nu=2.0), 3)


def test_overlap_examples():
    assert overlap(STANDARD_A, 0.7, 0.7) == pytest.approx(1.0, abs=1e-15)
    z1 = 0.6
    expected = 1 / math.sqrt(deformed_exponential(z1 ** 2, STANDARD_A).value)
    assert overlap(STANDARD_A, z1, 0.0) == pytest.approx(expected, rel=1e-14)
    assert abs(overlap(STANDARD_A, 0.4, 0.2) - overlap_vector(STANDARD_A, 0.4, 0.2)) < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.complex_numbers(max_magnitude=0.95), st.complex_numbers(max_magnitude=0.95))
def test_overlap_hermitian_and_bounded(z1, z2):
    o12 = overlap(STANDARD_A, z1, z2)
    o21 = overlap(STANDARD_A, z2, z1)
    assert o12 == pytest.approx(o21.conjugate(), abs=1e-14)
    assert abs(o12) <= 1 + 1e-14
    assert abs(o12 - overlap_vector(STANDARD_A, z1, z2)) < 1e-9


def test_continuity():
    assert continuity_modulus(STANDARD_A, 0.3, 0.0).value == 0.0
    c = continuity_modulus(STANDARD_A, 0.3, 1e-3)
    assert c.value < 1e-2
    assert c.agreement < 1e-9
    half = continuity_modulus(STANDARD_A, 0.3, 5e-4)
    assert half.value <= c.value / 2 * (1 + 1e-3)


def test_target_moments():
    assert target_moments(STANDARD_A, 0) == 1.0
    assert target_moments(STANDARD_A, 1) == pytest.approx(16 / 7, rel=1e-14)
    for prm in (STANDARD_A, STANDARD_B):
        for n in range(21):
            m = target_moments(prm, n)
            assert m > 0
            assert m * normalization_constant(prm, n) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_verify_coherent_suite():
    for prm in (STANDARD_A, STANDARD_B):
        report = verify_coherent(prm)
        assert report.ok
        assert len(report.entries) == 6
