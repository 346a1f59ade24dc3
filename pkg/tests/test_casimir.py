import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformosc import (
    STANDARD_A,
    STANDARD_B,
    CasimirParams,
    InvalidParameter,
    NonPositiveStructureFunction,
    casimir_energy,
    check_factorial_sign_identity,
    classify_regime,
    deformed_factorial,
    effective_params,
    energy,
)
from deformosc.casimir import BETA_GRID, GAMMA_GRID, factorial_product, verify_casimir


def test_effective_params():
    eff = effective_params(CasimirParams(STANDARD_A, 0.0, 0.0))
    assert (eff.phi1, eff.phi2) == (1.0, 1.0)
    eff = effective_params(CasimirParams(STANDARD_A, 0.5, 0.1, 1.0))
    assert eff.phi1 == pytest.approx(1.2 * 0.9 ** -0.5, rel=1e-15)
    assert eff.phi1 == pytest.approx(1.26491, abs=1e-5)
    assert eff.phi2 == pytest.approx(1.07331, abs=1e-5)
    assert classify_regime(eff) == eff.regime


def test_invalid_casimir_params():
    with pytest.raises(InvalidParameter):
        CasimirParams(STANDARD_A, omega2=-1.0)
    with pytest.raises(NonPositiveStructureFunction):
        CasimirParams(STANDARD_A, gamma=-1.0, omega2=1.0)


def test_forms_agree_on_grid():
    for beta in BETA_GRID:
        for gamma in GAMMA_GRID:
            cp = CasimirParams(STANDARD_A, beta, gamma)
            for n in range(51):
                a, b = casimir_energy(cp, n)
                assert a == pytest.approx(b, rel=1e-12)
                assert a == pytest.approx(energy(effective_params(cp), n), rel=1e-12)


def test_plain_specialization_matches_energy():
    plain = STANDARD_A.with_(phi1=1.0, phi2=1.0)
    for n in range(31):
        a, _ = casimir_energy(CasimirParams(STANDARD_A, 0.0, 0.0), n)
        assert a == pytest.approx(energy(plain, n), rel=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(0.0, 1.0), st.floats(0.0, 3.0), st.integers(0, 40))
def test_energy_scales_linearly(beta, gamma, omega2, n):
    cp = CasimirParams(STANDARD_A, beta, gamma, omega2)
    base = casimir_energy(CasimirParams(STANDARD_A, beta, 0.0, omega2), n)[0]
    assert casimir_energy(cp, n)[0] == pytest.approx(cp.scale * base, rel=1e-13)


def test_factorial_examples():
    cp = CasimirParams(STANDARD_A, 0.5, 0.1)
    assert deformed_factorial(cp, 0) == 1.0
    assert deformed_factorial(cp, 1) == pytest.approx(cp.scale, rel=1e-15)
    plain = CasimirParams(STANDARD_A, 0.0, 0.0)
    d = 1 / 0.9 - 0.8
    expected = np.prod([(0.9 ** -k - 0.8 ** k) / d for k in (1, 2, 3)])
    assert deformed_factorial(plain, 3) == pytest.approx(expected, rel=1e-14)
    for m in range(9):
        assert deformed_factorial(cp, m) == pytest.approx(factorial_product(cp, m), rel=1e-13)


def test_factorial_sign_identity():
    cp = CasimirParams(STANDARD_A, 0.5, 0.1)
    assert check_factorial_sign_identity(cp, 0) == 0.0
    assert check_factorial_sign_identity(cp, 1) <= 1e-15
    for m in range(2, 9):
        assert check_factorial_sign_identity(cp, m) < 1e-12


@pytest.mark.parametrize("prm", [STANDARD_A, STANDARD_B], ids=["A", "B"])
def test_verify_casimir(prm):
    report = verify_casimir(prm)
    assert report.ok
    assert not report.errata
    assert report["energy equals dense eigenvalues of the effective representation"].passed
