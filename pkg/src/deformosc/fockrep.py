"""Truncated Fock-space matrices, spectra and normalization constants.

The representation is lowest weight: ``a|0> = 0`` even when the formal vacuum
eigenvalue of a^dagger a (the deformed number at ``alpha*chi0``) is nonzero.
The defining relations then hold exactly on span{|1>, |2>, ...} and on the
vacuum only for ``chi0 = vacuum_consistent_chi0(params)``.

N acts as ``chi0 + n*nu/alpha`` on level n, so that [N, a^dagger] = (nu/alpha) a^dagger
and ``p**(-alpha N)`` carries the exponent ``alpha*chi0 + n*nu`` used by the
ladder coefficients.  For nu == alpha this is the familiar ``chi0 + n``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .exceptions import ConventionViolation, NegativeRadicand
from .params import DeformationParams, Regime, classify_regime, radicand, validate
from .qseries import deformed_number, pochhammer, tau


@dataclass(frozen=True)
class LadderCoefficients:
    """``down[n]`` is <n-1|a|n> for n = 1..D-1 (index 0 unused, set to 0).

    ``up[n]`` is <n+1|a^dagger|n> for n = 0..D-2.
    """

    down: np.ndarray
    up: np.ndarray


@dataclass(frozen=True, eq=False)
class FockRep:
    dim: int
    lowering: np.ndarray
    raising: np.ndarray
    number: np.ndarray
    params: DeformationParams
    ladder: LadderCoefficients = field(repr=False)

    @property
    def exponents(self) -> np.ndarray:
        """alpha * N on each level, i.e. alpha*chi0 + n*nu."""
        return level_exponents(self.params, np.arange(self.dim))

    def number_function(self, f) -> np.ndarray:
        """Diagonal matrix f(alpha N)."""
        return np.diag(f(self.exponents))


def level_exponents(params: DeformationParams, n):
    return params.alpha * params.chi0 + params.nu * np.asarray(n, dtype=float)


def ladder_coefficients(params: DeformationParams, max_level: int) -> LadderCoefficients:
    """Ladder coefficients from the regime-specific closed form.

    Regime A: sqrt(tau) p**(-(n-1)nu/2) sqrt(1 - (phi2/phi1)(pq)**(alpha chi0 + n nu)).
    Regime B mirrors this with q**((n-1)nu/2) and (pq)**-(...).
    """
    report = validate(params, max(1, max_level))
    n = np.arange(1, max_level + 1, dtype=float)
    rad = radicand(params, n, report.regime)
    if np.any(rad <= 0):
        raise NegativeRadicand(f"ladder radicand non-positive: min {rad.min()!r}")
    t = tau(params)
    if report.regime is Regime.A:
        scale = params.p ** (-(n - 1) * params.nu / 2)
    else:
        scale = params.q ** ((n - 1) * params.nu / 2)
    coeffs = np.sqrt(t) * scale * np.sqrt(rad)
    down = np.concatenate([[0.0], coeffs])
    return LadderCoefficients(down=down, up=coeffs.copy())


def build_rep(params: DeformationParams, dim: int) -> FockRep:
    """Dense D x D matrices of a, a^dagger and N."""
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    ladder = ladder_coefficients(params, dim - 1) if dim > 1 else LadderCoefficients(
        np.zeros(1), np.zeros(0)
    )
    # lowering: <n-1|a|n> on the first superdiagonal
    lowering = np.diag(ladder.down[1:dim], k=1) if dim > 1 else np.zeros((1, 1))
    raising = lowering.T.copy()
    number = np.diag(params.chi0 + np.arange(dim) * params.nu / params.alpha)
    for m in (lowering, raising, number):
        m.setflags(write=False)
    return FockRep(dim=dim, lowering=lowering, raising=raising, number=number,
                   params=params, ladder=ladder)


def energy(params: DeformationParams, n: int) -> float:
    """Eigenvalue of H = a^dagger a + a a^dagger on level n from the closed form.

    Regime B uses the exponent -(alpha chi0 + n nu) inside the braces, which is
    what the product eigenvalues require.
    """
    regime = classify_regime(params)
    p, q, nu = params.p, params.q, params.nu
    x = params.alpha * params.chi0 + n * nu
    t = tau(params)
    if regime is Regime.A:
        braces = 1 + p ** (-nu) - (params.phi2 / params.phi1) * params.pq ** x * (1 + q ** nu)
        return t * p ** (-(n - 1) * nu) * braces
    braces = 1 + q ** nu - (params.phi1 / params.phi2) * params.pq ** (-x) * (1 + p ** (-nu))
    return t * q ** ((n - 1) * nu) * braces


def energy_as_printed_regime_b(params: DeformationParams, n: int) -> float:
    """Regime-B energy with the literal (pq)**(+x) exponent; kept for the erratum report."""
    p, q, nu = params.p, params.q, params.nu
    x = params.alpha * params.chi0 + n * nu
    t = params.phi2 * q ** (params.alpha * params.chi0 + nu) / (q ** nu - p ** (-nu))
    braces = 1 + q ** nu - (params.phi1 / params.phi2) * params.pq ** x * (1 + p ** (-nu))
    return t * q ** ((n - 1) * nu) * braces


def spectrum(params: DeformationParams, levels: int) -> list[float]:
    return [energy(params, n) for n in range(levels)]


def hamiltonian(rep: FockRep) -> np.ndarray:
    a, ad = rep.lowering, rep.raising
    return ad @ a + a @ ad


def matrix_spectrum(rep: FockRep) -> np.ndarray:
    """Eigenvalues of the truncated H, ordered by the basis level they live on."""
    values, vectors = np.linalg.eigh(hamiltonian(rep))
    level = np.argmax(np.abs(vectors), axis=0)
    ordered = np.empty(rep.dim)
    ordered[level] = values
    return ordered


def _require_chi0_zero(params: DeformationParams) -> None:
    if params.chi0 != 0:
        raise ConventionViolation(f"normalization constants assume chi0 = 0, got {params.chi0!r}")


def normalization_constant(params: DeformationParams, n: int) -> float:
    """C_n with |n> = C_n (a^dagger)**n |0>, chi0 = 0."""
    _require_chi0_zero(params)
    regime = classify_regime(params)
    nu = params.nu
    if regime is Regime.A:
        b = params.pq ** nu
        sq = (params.p ** (nu * comb(n, 2)) * ((1 - b) / params.phi1) ** n
              / pochhammer(params.phi2 / params.phi1 * b, b, n))
    else:
        b = params.pq ** (-nu)
        sq = (params.q ** (-nu * comb(n, 2)) * ((1 - b) / params.phi2) ** n
              / pochhammer(params.phi1 / params.phi2 * b, b, n))
    return float(np.sqrt(sq))


def normalization_constants(params: DeformationParams, count: int) -> np.ndarray:
    return np.array([normalization_constant(params, n) for n in range(count)])


def eigenvalue_consistency(rep: FockRep) -> np.ndarray:
    """<n|a^dagger a|n> minus the deformed number on each level n (vacuum included)."""
    diag = np.diag(rep.raising @ rep.lowering)
    return diag - deformed_number(rep.exponents, rep.params)


def spectrum_csv(params: DeformationParams, levels: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "E_n"])
    for n, e in enumerate(spectrum(params, levels)):
        writer.writerow([n, format(e, ".17g")])
    return buf.getvalue()


def spectrum_json(params: DeformationParams, levels: int) -> str:
    from ._json import dumps

    return dumps([{"n": n, "energy": e} for n, e in enumerate(spectrum(params, levels))])


__all__ = [
    "FockRep",
    "LadderCoefficients",
    "build_rep",
    "energy",
    "energy_as_printed_regime_b",
    "hamiltonian",
    "ladder_coefficients",
    "level_exponents",
    "matrix_spectrum",
    "normalization_constant",
    "normalization_constants",
    "spectrum",
    "spectrum_csv",
    "spectrum_json",
]
