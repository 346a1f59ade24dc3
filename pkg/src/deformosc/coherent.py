"""Deformed coherent states: eigenvectors of the annihilation operator.

|z> = N(|z|^2)^(-1/2) sum_n C_n z^n |n>, with C_n the Fock normalization
constants (chi0 = 0, nu = alpha) and N the deformed exponential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConventionViolation, GuardBandExceeded, NonConvergence
from .fockrep import FockRep
from .params import DeformationParams, Regime, check_nondegenerate, classify_regime
from .qseries import DEFAULT_TOL, _exponential_ratio, deformed_exponential, pochhammer

TRIM = 1e-16


def _require_convention(params: DeformationParams) -> None:
    if params.chi0 != 0:
        raise ConventionViolation(f"coherent states assume chi0 = 0, got {params.chi0!r}")
    if params.nu != params.alpha:
        raise ConventionViolation(
            f"coherent states assume nu = alpha, got nu={params.nu!r}, alpha={params.alpha!r}")


@dataclass(frozen=True, eq=False)
class CoherentState:
    z: complex
    terms: int
    coefficients: np.ndarray = field(repr=False)
    normalization: float
    params: DeformationParams
    truncation_estimate: float

    def vector(self) -> np.ndarray:
        """Normalized coefficient vector of length ``terms``."""
        return self.coefficients / math.sqrt(self.normalization)

    def padded(self, dim: int) -> np.ndarray:
        v = np.zeros(dim, dtype=complex)
        v[: self.terms] = self.vector()
        return v


def _coefficients(params: DeformationParams, z: complex, terms: int) -> np.ndarray:
    """c_n = C_n z^n built from the ratio C_n^2 / C_{n-1}^2, trimmed at 1e-16 relative."""
    grow, scale, ratio, b = _exponential_ratio(params, classify_regime(params))
    out = [1.0 + 0j]
    c2 = 1.0  # C_n^2
    peak = 1.0
    for n in range(1, terms):
        c2 *= grow ** (n - 1) * scale / (1.0 - ratio * b ** n)
        c = math.sqrt(c2) * z ** n
        mag = abs(c)
        if not math.isfinite(mag):
            raise NonConvergence(f"coherent coefficients overflow at n={n}")
        peak = max(peak, mag)
        if mag < TRIM * peak:
            break
        out.append(c)
    return np.array(out, dtype=complex)


def coherent_state(params: DeformationParams, z: complex, terms: int = 80,
                   tol: float = DEFAULT_TOL) -> CoherentState:
    """Truncated coherent state; ``terms`` is an upper bound on the vector length."""
    _require_convention(params)
    check_nondegenerate(params)
    if terms < 1:
        raise ValueError(f"terms must be positive, got {terms}")
    z = complex(z)
    coeffs = _coefficients(params, z, terms)
    series = deformed_exponential(abs(z) ** 2, params, tol=tol)
    norm = float(series.value)
    kept = float(np.sum(np.abs(coeffs) ** 2))
    estimate = max(series.truncation_estimate, abs(1.0 - kept / norm))
    return CoherentState(z=z, terms=coeffs.size, coefficients=coeffs, normalization=norm,
                         params=params, truncation_estimate=estimate)


def eigen_residual(rep: FockRep, state: CoherentState) -> float:
    """||a v - z v|| / ||v|| with the top component of the vector excluded."""
    if state.terms > rep.dim - 1:
        raise GuardBandExceeded(f"terms = {state.terms} exceeds dim - 1 = {rep.dim - 1}")
    v = state.padded(rep.dim)
    diff = rep.lowering @ v - state.z * v
    keep = state.terms - 1
    return float(np.linalg.norm(diff[:keep]) / np.linalg.norm(v))


def overlap(params: DeformationParams, z1: complex, z2: complex, tol: float = DEFAULT_TOL) -> complex:
    """<z2|z1> = N(z1 conj(z2)) / sqrt(N(|z1|^2) N(|z2|^2))."""
    _require_convention(params)
    z1, z2 = complex(z1), complex(z2)
    cross = deformed_exponential(z1 * z2.conjugate(), params, tol=tol).value
    n1 = deformed_exponential(abs(z1) ** 2, params, tol=tol).value
    n2 = deformed_exponential(abs(z2) ** 2, params, tol=tol).value
    return complex(cross / math.sqrt(n1 * n2))


def overlap_vector(params: DeformationParams, z1: complex, z2: complex, terms: int = 200) -> complex:
    """Same overlap from the truncated coefficient vectors."""
    s1 = coherent_state(params, z1, terms)
    s2 = coherent_state(params, z2, terms)
    dim = max(s1.terms, s2.terms)
    return complex(np.vdot(s2.padded(dim), s1.padded(dim)))


@dataclass(frozen=True)
class ContinuityResult:
    vector_norm: float
    overlap_norm: float

    @property
    def agreement(self) -> float:
        return abs(self.vector_norm - self.overlap_norm)

    @property
    def value(self) -> float:
        return self.vector_norm


def continuity_modulus(params: DeformationParams, z: complex, dz: complex,
                       terms: int = 200) -> ContinuityResult:
    """|| |z+dz> - |z> || from the vector difference and from 2(1 - Re overlap)."""
    z, dz = complex(z), complex(dz)
    a = coherent_state(params, z + dz, terms)
    b = coherent_state(params, z, terms)
    dim = max(a.terms, b.terms)
    direct = float(np.linalg.norm(a.padded(dim) - b.padded(dim)))
    gap = 2.0 * (1.0 - overlap(params, z + dz, z).real)
    return ContinuityResult(direct, math.sqrt(max(gap, 0.0)))


def target_moments(params: DeformationParams, n: int) -> float:
    """n-th power moment the resolution-of-unity weight must reproduce (equals 1/C_n^2)."""
    _require_convention(params)
    check_nondegenerate(params)
    nu, Q = params.nu, params.pq
    binom2 = n * (n - 1) / 2
    if classify_regime(params) is Regime.A:
        b = Q ** nu
        return (params.p ** (-nu * binom2) * pochhammer(params.phi2 / params.phi1 * b, b, n)
                * (params.phi1 / (1 - b)) ** n)
    b = Q ** (-nu)
    return (params.q ** (nu * binom2) * pochhammer(params.phi1 / params.phi2 * b, b, n)
            * (params.phi2 / (1 - b)) ** n)


__all__ = [
    "CoherentState",
    "ContinuityResult",
    "coherent_state",
    "continuity_modulus",
    "eigen_residual",
    "overlap",
    "overlap_vector",
    "target_moments",
]
