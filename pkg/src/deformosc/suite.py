"""Aggregate verification over all modules."""

from __future__ import annotations

import numpy as np

from .algebra import verify_algebra, verify_specializations
from .casimir import verify_casimir
from .coherent import (
    coherent_state,
    continuity_modulus,
    eigen_residual,
    overlap,
    overlap_vector,
    target_moments,
)
from .correlators import ANTINORMAL, NORMAL, dense_expectation, expectation, sweep_branches
from .fockrep import build_rep, normalization_constant
from .params import DeformationParams, dual
from .qseries import check_pq_binomial, deformed_exponential, q_exponential
from .report import VerificationReport, check, check_abs

SUITES = ("algebra", "coherent", "correlators", "casimir", "all")

# per-suite tolerances used when the caller does not override them
DEFAULT_TOL = {"algebra": 1e-11, "coherent": 1e-9, "correlators": 1e-9, "casimir": 1e-12,
               "series": 1e-10}


def convention_params(params: DeformationParams) -> DeformationParams:
    """The chi0 = 0, nu = alpha member of the family, used by coherent-state checks."""
    if params.chi0 == 0 and params.nu == params.alpha:
        return params
    return params.with_(chi0=0.0, nu=params.alpha)


def z_grid(radius: float = 1.0, points: int = 5) -> list[complex]:
    """points x points square grid inscribed in the disc |z| <= radius."""
    h = radius / np.sqrt(2) * 0.99
    axis = np.linspace(-h, h, points)
    return [complex(x, y) for x in axis for y in axis]


def verify_coherent(params: DeformationParams, tol: float = 1e-9, dim: int = 100,
                    terms: int = 80) -> VerificationReport:
    prm = convention_params(params)
    report = VerificationReport(tol)
    rep = build_rep(prm, dim)
    terms = min(terms, dim - 1)
    grid = z_grid()
    states = [coherent_state(prm, z, terms) for z in grid]
    report.add(check_abs("coherent eigen residual ||a v - z v|| (5x5 grid, |z| <= 1)",
                         [eigen_residual(rep, s) for s in states], tol, f"columns 0..{dim - 2}",
                         guard_band=1))
    norms = [np.sum(np.abs(s.coefficients) ** 2) / s.normalization - 1 for s in states]
    report.add(check_abs("coherent normalization sum |c_n|^2 / N(|z|^2) = 1", norms, tol))
    gaps = [overlap(prm, z1, z2) - overlap_vector(prm, z1, z2)
            for z1 in grid[::3] for z2 in grid[1::4]]
    report.add(check_abs("overlap series form vs vector form", gaps, tol))
    report.add(check_abs("overlap <z|z> = 1", [overlap(prm, z, z) - 1 for z in grid], tol))
    c = continuity_modulus(prm, 0.3, 1e-3)
    report.add(check_abs("continuity modulus: vector difference vs 2(1 - Re overlap)",
                         [c.agreement], tol, note=f"modulus {c.value:.6g} at |dz| = 1e-3"))
    moments = np.array([target_moments(prm, n) * normalization_constant(prm, n) ** 2
                        for n in range(21)])
    report.add(check("target moments times C_n^2 = 1", moments, np.ones(21), 1e-12,
                     subspace="n 0..20"))
    return report


def verify_correlators(params: DeformationParams, tol: float = 1e-9, terms: int = 80) -> VerificationReport:
    """Branch sweep in both regimes and coherent expectations."""
    prm = convention_params(params)
    report = VerificationReport(tol)
    for member in (prm, dual(prm)):
        tag = member.regime.value
        report.extend(sweep_branches(member, tol=tol), prefix=f"[regime {tag}] ")
        zs = (0.5, 0.3 - 0.4j, 0.8j)
        gaps, anti = [], []
        for z in zs:
            for m in range(4):
                for n in range(4):
                    gaps.append(expectation(member, z, m, n, NORMAL, terms)
                                - np.conj(z) ** m * z ** n)
                    e = expectation(member, z, m, n, ANTINORMAL, terms)
                    d = dense_expectation(member, z, m, n, ANTINORMAL, terms)
                    anti.append((e - d) / max(abs(d), 1.0))
        report.add(check_abs(f"[regime {tag}] normal expectation = conj(z)^m z^n", gaps, tol,
                             subspace="m, n <= 3"))
        report.add(check_abs(f"[regime {tag}] antinormal expectation vs dense quadratic form",
                             anti, tol, subspace="m, n <= 3"))
    return report


def verify_series(tol: float = 1e-10) -> VerificationReport:
    """Scalar checks of qseries: binomial theorem and limit reductions."""
    report = VerificationReport(tol)
    report.add(check_abs("(p,q)-binomial theorem at a=0.3, b=0.2, p=1, q=0.5, z=0.4",
                         [check_pq_binomial(0.3, 0.2, 1.0, 0.5, 0.4)], tol))
    q = 0.7
    prm = DeformationParams(p=1.0, q=q)
    n = np.arange(0, 20)
    from .qseries import deformed_number

    report.add(check("p = 1 deformed number equals (1 - q^n)/(1 - q)",
                     deformed_number(n.astype(float), prm), (1 - q ** n) / (1 - q), 1e-13))
    report.add(check("p = 1 normalizing series equals the q-exponential",
                     [deformed_exponential(1.0, prm).value], [q_exponential(1.0, q)], 1e-12))
    return report


def run_suite(params: DeformationParams, dim: int = 64, tol: float | None = None,
              suite: str = "all") -> VerificationReport:
    """Run one suite (or all of them) and return the combined report."""
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}, got {suite!r}")

    def t(name):
        return DEFAULT_TOL[name] if tol is None else tol

    report = VerificationReport(tol if tol is not None else min(DEFAULT_TOL.values()))
    if suite in ("algebra", "all"):
        report.extend(verify_algebra(build_rep(params, dim), t("algebra")), prefix="algebra: ")
        report.extend(verify_specializations(params.p, params.q, dim, t("algebra")),
                      prefix="algebra: ")
    if suite in ("coherent", "all"):
        report.extend(verify_coherent(params, t("coherent"), max(dim, 100)), prefix="coherent: ")
    if suite in ("correlators", "all"):
        report.extend(verify_correlators(params, t("correlators")), prefix="correlators: ")
    if suite in ("casimir", "all"):
        report.extend(verify_casimir(params, t("casimir"), dim=dim), prefix="casimir: ")
    if suite == "all":
        report.extend(verify_series(t("series")), prefix="series: ")
    return report


__all__ = [
    "DEFAULT_TOL",
    "SUITES",
    "convention_params",
    "run_suite",
    "verify_coherent",
    "verify_correlators",
    "verify_series",
    "z_grid",
]
