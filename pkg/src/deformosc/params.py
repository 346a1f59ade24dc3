"""Deformation parameters, regime classification and the duality map."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .exceptions import (
    DegenerateDeformation,
    InvalidParameter,
    NegativeRadicand,
    NoAdmissibleRegime,
)

#: absolute tolerance used for comparisons against zero
ATOL = 1e-12


class Regime(str, enum.Enum):
    """Admissible branch of the algebra.

    ``A``: pq < 1 and phi2 <= phi1.  ``B``: pq > 1 and phi1 <= phi2.
    """

    A = "A"
    B = "B"

    def flipped(self) -> "Regime":
        return Regime.B if self is Regime.A else Regime.A


@dataclass(frozen=True)
class DeformationParams:
    """The tuple (p, q, alpha, nu, phi1, phi2, chi0).

    ``phi1`` and ``phi2`` are the (already evaluated) structure functions and
    ``chi0`` is the N-eigenvalue of the vacuum.  Only positivity is checked at
    construction; regime and degeneracy checks live in :func:`classify_regime`
    and :func:`validate`.
    """

    p: float
    q: float
    alpha: float = 1.0
    nu: float = 1.0
    phi1: float = 1.0
    phi2: float = 1.0
    chi0: float = 0.0

    def __post_init__(self):
        for name in ("p", "q", "alpha", "nu", "phi1", "phi2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameter(f"{name} must be a positive finite real, got {value!r}")
        if not math.isfinite(self.chi0):
            raise InvalidParameter(f"chi0 must be finite, got {self.chi0!r}")

    @property
    def pq(self) -> float:
        return self.p * self.q

    @property
    def regime(self) -> Regime:
        return classify_regime(self)

    def with_(self, **changes) -> "DeformationParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q, "alpha": self.alpha, "nu": self.nu,
            "phi1": self.phi1, "phi2": self.phi2, "chi0": self.chi0,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DeformationParams":
        known = {"p", "q", "alpha", "nu", "phi1", "phi2", "chi0"}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameter(f"unknown parameter keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})


@dataclass(frozen=True)
class ValidationReport:
    regime: Regime
    radicand_floor: float
    vacuum_defect: float


def check_nondegenerate(params: DeformationParams, atol: float = ATOL) -> None:
    """Raise :class:`DegenerateDeformation` when p**-nu == q**nu."""
    denom = params.p ** (-params.nu) - params.q ** params.nu
    if abs(denom) <= atol * max(1.0, params.p ** (-params.nu)):
        raise DegenerateDeformation(
            f"degenerate deformation: (pq)^nu = {params.pq ** params.nu!r} equals 1"
        )


def classify_regime(params: DeformationParams, atol: float = ATOL) -> Regime:
    check_nondegenerate(params, atol)
    if params.pq < 1 and params.phi2 <= params.phi1:
        return Regime.A
    if params.pq > 1 and params.phi1 <= params.phi2:
        return Regime.B
    raise NoAdmissibleRegime(
        f"no admissible regime: pq={params.pq!r}, phi1={params.phi1!r}, phi2={params.phi2!r} "
        "(need pq<1 with phi2<=phi1, or pq>1 with phi1<=phi2)"
    )


def radicand(params: DeformationParams, n, regime: Regime | None = None):
    """Square-root argument of the ladder coefficient lowering level ``n``.

    Works elementwise on arrays of levels.
    """
    regime = regime or classify_regime(params)
    x = params.alpha * params.chi0 + params.nu * n
    if regime is Regime.A:
        return 1.0 - (params.phi2 / params.phi1) * params.pq ** x
    return 1.0 - (params.phi1 / params.phi2) * params.pq ** (-x)


def validate(params: DeformationParams, max_level: int, atol: float = ATOL) -> ValidationReport:
    """Classify ``params`` and check that levels 1..max_level are constructible."""
    from .qseries import deformed_number

    regime = classify_regime(params, atol)
    levels = [radicand(params, n, regime) for n in range(1, max(1, max_level) + 1)]
    floor = min(levels)
    if floor <= 0:
        n_bad = 1 + levels.index(floor)
        raise NegativeRadicand(
            f"ladder radicand {floor!r} <= 0 at level {n_bad}; a representation of "
            f"dimension {max_level} is impossible"
        )
    defect = abs(deformed_number(params.alpha * params.chi0, params))
    return ValidationReport(regime=regime, radicand_floor=floor, vacuum_defect=defect)


def dual(params: DeformationParams) -> DeformationParams:
    """The map p -> 1/q, q -> 1/p, phi1 <-> phi2; swaps regimes A and B."""
    return replace(
        params,
        p=1.0 / params.q,
        q=1.0 / params.p,
        phi1=params.phi2,
        phi2=params.phi1,
    )


def vacuum_consistent_chi0(params: DeformationParams) -> float:
    """The chi0 for which a^dagger a annihilates the vacuum.

    Solves phi1 p**(-alpha chi0) = phi2 q**(alpha chi0).
    """
    if params.phi1 == params.phi2:
        return 0.0
    check_nondegenerate(params)
    log_pq = math.log(params.pq)
    if log_pq == 0.0:
        raise DegenerateDeformation("degenerate deformation: pq = 1")
    return math.log(params.phi1 / params.phi2) / (params.alpha * log_pq)


# Reference parameter sets used throughout the tests and the demos.
STANDARD_A = DeformationParams(p=0.9, q=0.8, alpha=1.0, nu=1.0, phi1=1.0, phi2=0.5, chi0=0.0)
STANDARD_B = dual(STANDARD_A)


def chakrabarti_jagannathan(p: float, q: float) -> DeformationParams:
    """nu = alpha = 1 and phi1 = phi2 = 1."""
    return DeformationParams(p=p, q=q)


def burban(p: float, q: float, alpha: float, beta: float, ell: float) -> DeformationParams:
    """phi1 = p**-beta and phi2 = q**beta with nu playing the role of ``ell``."""
    return DeformationParams(p=p, q=q, alpha=alpha, nu=ell, phi1=p ** (-beta), phi2=q ** beta)


def random_params(rng, regime: Regime = Regime.A, vacuum_consistent: bool = False) -> DeformationParams:
    """A random valid parameter set in ``regime``; ``rng`` is a numpy Generator.

    Regime-B sets are duals of regime-A draws.  With ``vacuum_consistent`` the
    vacuum N-eigenvalue is set to :func:`vacuum_consistent_chi0`.
    """
    while True:
        p = rng.uniform(0.75, 1.0)
        q = rng.uniform(0.6, 0.95)
        if p * q < 0.95:
            break
    phi1 = rng.uniform(0.5, 2.0)
    prm = DeformationParams(
        p=p, q=q, alpha=rng.uniform(0.5, 1.5), nu=rng.uniform(0.5, 1.5),
        phi1=phi1, phi2=phi1 * rng.uniform(0.1, 0.9),
    )
    if regime is Regime.B:
        prm = dual(prm)
    if vacuum_consistent:
        prm = replace(prm, chi0=vacuum_consistent_chi0(prm))
    return prm
