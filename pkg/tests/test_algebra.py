import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformosc import (
    STANDARD_A,
    STANDARD_B,
    DeformationParams,
    GuardBandExceeded,
    Regime,
    build_rep,
    random_params,
    vacuum_consistent_chi0,
)
from deformosc.algebra import (
    safe_columns,
    vacuum_is_consistent,
    verify_algebra,
    verify_defining_relations,
    verify_nfold_relations,
    verify_number_relations,
    verify_ordering_formulas,
    verify_specializations,
    verify_spectrum,
    verify_twisted_commutators,
)
from deformosc.fockrep import FockRep
from deformosc.report import DIAGNOSTIC, ERRATUM, FAIL, check

def _statuses(report):
    return {e.identity_name: e.status for e in report.entries}


@pytest.mark.parametrize("prm", [STANDARD_A, STANDARD_B], ids=["A", "B"])
def test_standard_sets_pass(prm):
    report = verify_algebra(build_rep(prm, 64))
    assert report.ok, [e.identity_name for e in report.failures]
    assert len(report.entries) > 40


def test_standard_a_errata_are_localized():
    report = verify_algebra(build_rep(STANDARD_A, 64))
    errata = {e.identity_name: e for e in report.errata}
    expected = {f"a ad^{k} - p^(-n nu) ad^{k} a (n-fold)" for k in range(1, 5)}
    expected |= {f"ad^{m} a^{n} (n<m, regime A)" for n, m in [(1, 2), (1, 3), (2, 3)]}
    expected |= {f"[a^{n}, ad^{m}]_q^nu (n<m, regime A)" for n, m in [(1, 2), (1, 3), (2, 3)]}
    assert set(errata) == expected
    for e in errata.values():
        assert e.max_rel_residual > 1e-3
        assert e.variant_residual <= 1e-11
    assert errata["a ad^2 - p^(-n nu) ad^2 a (n-fold)"].best_variant == \
        "structure function factor restored"


def test_standard_b_errata_include_energy():
    report = verify_algebra(build_rep(STANDARD_B, 64))
    e = report["energy as printed vs eig(H) (regime B)"]
    assert e.status == ERRATUM
    assert e.variant_residual <= 1e-10
    assert report["energy corrected form vs eig(H) (regime B)"].passed


def test_defining_relations_vacuum_defect():
    rep = build_rep(STANDARD_A.with_(), 50)
    report = verify_defining_relations(rep, 1e-12)
    st_ = _statuses(report)
    assert st_["aa^dag - q^nu a^dag a = phi1 p^(-alpha N) (off-vacuum)"] == "pass"
    defect = report["aa^dag - q^nu a^dag a = phi1 p^(-alpha N) (vacuum defect)"]
    assert defect.status == DIAGNOSTIC
    assert defect.max_abs_residual == pytest.approx(0.8 * 45 / 28, rel=1e-12)
    other = report["aa^dag - p^-nu a^dag a = phi2 q^(alpha N) (vacuum defect)"]
    assert other.max_abs_residual == pytest.approx(45 / 28 / 0.9, rel=1e-12)


def test_defining_relations_with_vacuum_at_chi0_star():
    prm = STANDARD_A.with_(chi0=vacuum_consistent_chi0(STANDARD_A))
    rep = build_rep(prm, 64)
    assert vacuum_is_consistent(rep)
    report = verify_defining_relations(rep)
    assert report.ok
    assert all("with vacuum" in n for n in report.names())
    assert all(e.max_rel_residual <= 1e-11 for e in report.entries)
    assert verify_spectrum(rep).ok


def test_number_relations():
    for prm in (STANDARD_A, STANDARD_B, DeformationParams(p=0.999, q=0.999)):
        report = verify_number_relations(build_rep(prm, 64), 1e-15)
        assert report.ok
    rep = build_rep(STANDARD_A.with_(alpha=2.0, nu=1.0), 20)
    assert np.allclose(np.diag(rep.number, 0)[1] - np.diag(rep.number)[0], 0.5)
    assert verify_number_relations(rep, 1e-15).ok


@pytest.mark.parametrize("prm", [STANDARD_A, STANDARD_B], ids=["A", "B"])
def test_twisted_commutators(prm):
    report = verify_twisted_commutators(build_rep(prm, 64), 5, 1e-11)
    assert report.ok
    assert len(report.entries) == 12


def test_guard_band_exceeded():
    rep = build_rep(STANDARD_A, 4)
    with pytest.raises(GuardBandExceeded):
        verify_twisted_commutators(rep, 5)
    with pytest.raises(GuardBandExceeded):
        safe_columns(rep, [[1] * 6])


def test_safe_columns_rule():
    rep = build_rep(STANDARD_A, 10)
    # two lowerings then three raisings: needs k >= 2 and peaks at k + 1
    cols, guard = safe_columns(rep, [[-1, -1, 1, 1, 1]])
    assert guard == 1
    assert list(cols) == list(range(2, 9))
    # three raisings first: peaks at k + 3, never dips below k
    cols, guard = safe_columns(rep, [[1, 1, 1, -1, -1]])
    assert guard == 3
    assert list(cols) == list(range(0, 7))
    cols, _ = safe_columns(rep, [[-1, 1]], include_vacuum=True)
    assert cols[0] == 0


def test_ordering_specializations():
    report = verify_ordering_formulas(build_rep(STANDARD_A, 64), 1, 1)
    assert report.ok
    assert all(e.max_rel_residual < 1e-12 for e in report.entries)
    assert verify_ordering_formulas(build_rep(STANDARD_A, 64), 1, 2)["a^1 ad^2 (n<m, regime A)"].passed


def test_specializations():
    report = verify_specializations(0.9, 0.8, 64, 1e-11)
    assert report.ok
    assert any(n.startswith("Chakrabarti-Jagannathan") for n in report.names())
    assert any(n.startswith("Burban") for n in report.names())


def _corrupted(rep: FockRep, level: int, factor: float) -> FockRep:
    low = rep.lowering.copy()
    low[level - 1, level] *= factor
    return FockRep(rep.dim, low, low.T.copy(), rep.number, rep.params, rep.ladder)


def test_negative_control_corrupted_lowering():
    rep = _corrupted(build_rep(STANDARD_A, 64), 7, 1 + 1e-6)
    report = verify_defining_relations(rep)
    assert not report.ok


def test_negative_control_wrong_rhs():
    rep = build_rep(STANDARD_A, 64)
    a, ad = rep.lowering, rep.raising
    q, p = STANDARD_A.q, STANDARD_A.p
    cols = np.arange(1, 63)
    aad, ada = a @ ad, q * ad @ a
    rhs = np.diag(p ** (-rep.exponents))
    good = check("ok", (aad - ada)[:, cols], rhs[:, cols], 1e-11, terms=(aad[:, cols], ada[:, cols]))
    assert good.passed
    # dropping phi2 in a tiny column entry must still be caught
    wrong = rhs.copy()
    wrong[40, 40] *= 0.5
    bad = check("bad", (aad - ada)[:, cols], wrong[:, cols], 1e-11,
                terms=(aad[:, cols], ada[:, cols]))
    assert bad.status == FAIL


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(list(Regime)), st.booleans())
def test_random_parameter_sets(seed, regime, star):
    prm = random_params(np.random.default_rng(seed), regime, star)
    report = verify_algebra(build_rep(prm, 64))
    assert report.ok, [(e.identity_name, e.max_rel_residual) for e in report.failures]


def test_nfold_regime_b():
    report = verify_nfold_relations(build_rep(STANDARD_B, 64), 4)
    assert report.ok
    assert len(report.errata) >= 1


def test_residual_invariant_under_adjoint():
    from deformosc.report import residuals

    rep = build_rep(STANDARD_A, 40)
    a, ad = rep.lowering, rep.raising
    aad, ada = a @ ad, STANDARD_A.q * ad @ a
    rhs = np.diag(STANDARD_A.phi1 * STANDARD_A.p ** (-rep.exponents))
    lhs = aad - ada
    rhs[0, 0] = lhs[0, 0]  # drop the vacuum defect, keep everything else
    fwd = residuals(lhs[:-1, :-1], rhs[:-1, :-1], (aad[:-1, :-1], ada[:-1, :-1]))
    adj = residuals(lhs.T[:-1, :-1], rhs.T[:-1, :-1], (aad.T[:-1, :-1], ada.T[:-1, :-1]))
    assert fwd == adj


@pytest.mark.parametrize("prm", [STANDARD_A, STANDARD_B], ids=["A", "B"])
def test_residual_stable_in_dimension(prm):
    worst = []
    for dim in (16, 32, 64):
        report = verify_defining_relations(build_rep(prm, dim))
        worst.append(max(e.max_rel_residual for e in report.entries if "off-vacuum" in e.identity_name))
    # no growth beyond a few ulps of accumulation
    assert worst[1] <= worst[0] + 4e-16 and worst[2] <= worst[1] + 4e-16
    assert max(worst) < 1e-14
