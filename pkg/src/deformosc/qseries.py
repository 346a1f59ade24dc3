"""Scalar special functions.

Pochhammer products, the generalized deformed number, the normalizing series
of the coherent states, finite deformed hypergeometric sums and a numerical
check of the (p,q)-binomial theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DegenerateDeformation, NonConvergence, VanishingDenominator
from .params import ATOL, DeformationParams, Regime, check_nondegenerate, classify_regime

DEFAULT_TOL = 1e-14
DEFAULT_MAX_TERMS = 10_000


@dataclass(frozen=True)
class SeriesResult:
    value: complex | float
    terms_used: int
    truncation_estimate: float


def pochhammer(a, q, n: int):
    """(a; q)_n = prod_{k<n} (1 - a q**k); the empty product is 1."""
    result = 1.0
    for k in range(n):
        result *= 1.0 - a * q ** k
    return result


def double_pochhammer(a, b, p, q, n: int):
    """((a, b); (p, q))_n = prod_{k<n} (a p**k - b q**k)."""
    result = 1.0
    for k in range(n):
        result *= a * p ** k - b * q ** k
    return result


def deformed_number(x, params: DeformationParams):
    """(phi1 p**-x - phi2 q**x) / (p**-nu - q**nu) for a real exponent ``x``.

    At ``x = alpha*chi0 + n*nu`` this is the a^dagger a eigenvalue on level n.
    Accepts numpy arrays for ``x``.
    """
    p, q, nu = params.p, params.q, params.nu
    denom = p ** (-nu) - q ** nu
    if abs(denom) <= ATOL * max(1.0, p ** (-nu)):
        raise DegenerateDeformation(f"degenerate deformation: p^-nu == q^nu ({denom!r})")
    return (params.phi1 * p ** (-x) - params.phi2 * q ** x) / denom


def plain_deformed_number(x, p: float, q: float, nu: float):
    """The phi1 = phi2 = 1 deformed number (p**-x - q**x) / (p**-nu - q**nu)."""
    denom = p ** (-nu) - q ** nu
    if abs(denom) <= ATOL * max(1.0, p ** (-nu)):
        raise DegenerateDeformation(f"degenerate deformation: p^-nu == q^nu ({denom!r})")
    return (p ** (-x) - q ** x) / denom


def tau(params: DeformationParams) -> float:
    """Ladder prefactor tau evaluated on the vacuum for the active regime."""
    regime = classify_regime(params)
    p, q, nu = params.p, params.q, params.nu
    x0 = params.alpha * params.chi0
    if regime is Regime.A:
        return params.phi1 * p ** (-x0 - nu) / (p ** (-nu) - q ** nu)
    return params.phi2 * q ** (x0 + nu) / (q ** nu - p ** (-nu))


def _exponential_ratio(params: DeformationParams, regime: Regime):
    """Return (prefactor base, per-term scale, ratio, pochhammer base).

    Term n of the series is base**(n(n-1)/2) * (scale x)**n / (ratio*b; b)_n
    with b the pochhammer base.
    """
    p, q, nu = params.p, params.q, params.nu
    if regime is Regime.A:
        b = params.pq ** nu
        return p ** nu, (1.0 - b) / params.phi1, params.phi2 / params.phi1, b
    b = params.pq ** (-nu)
    return q ** (-nu), (1.0 - b) / params.phi2, params.phi1 / params.phi2, b


def deformed_exponential(
    x,
    params: DeformationParams,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Normalizing series N_nu(x) of the coherent states (chi0 = 0 convention).

    Terms are summed until the magnitude of the next one drops below ``tol``.
    ``x`` may be complex (the overlap formula needs z * conj(z')).
    """
    check_nondegenerate(params)
    regime = classify_regime(params)
    grow, scale, ratio, b = _exponential_ratio(params, regime)
    if grow > 1.0 and x != 0:
        # terms grow like grow**(n^2/2): the radius of convergence is zero
        raise NonConvergence(
            f"series diverges for every x != 0 (p**nu or q**-nu = {grow!r} > 1)")
    is_complex = isinstance(x, complex)
    term = 1.0 + 0j if is_complex else 1.0
    total = term
    for n in range(max_terms):
        # term_{n+1} / term_n
        denom = 1.0 - ratio * b ** (n + 1)
        term = term * grow ** n * scale * x / denom
        magnitude = abs(term)
        if not math.isfinite(magnitude):
            raise NonConvergence(f"series terms overflow after {n + 1} terms (x={x!r})")
        if magnitude < tol:
            return SeriesResult(total, n + 1, magnitude)
        total += term
    raise NonConvergence(
        f"series not converged after {max_terms} terms; next term {abs(term)!r} >= tol {tol!r}"
    )


def q_exponential(x: float, q: float, tol: float = DEFAULT_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Jackson q-exponential sum x**n / [n]_q! with [n]_q = (1 - q**n)/(1 - q)."""
    term, total = 1.0, 1.0
    for n in range(1, max_terms):
        term *= x * (1.0 - q) / (1.0 - q ** n)
        total += term
        if abs(term) < tol:
            return total
    raise NonConvergence(f"q-exponential did not converge at x={x!r}, q={q!r}")


def deformed_hypergeometric_L(lam, sigma, p, q, z, m: int):
    """Finite sum over n <= m of ((lam, sigma); (p, q))_n / ((p, q); (p, q))_n z**n."""
    total = 0.0
    numer, denom, power = 1.0, 1.0, 1.0
    for n in range(m + 1):
        if n > 0:
            k = n - 1
            factor = p ** (k + 1) - q ** (k + 1)
            if factor == 0.0:
                raise VanishingDenominator(f"p^{k + 1} == q^{k + 1} in ((p,q);(p,q))_{n}")
            numer *= lam * p ** k - sigma * q ** k
            denom *= factor
            power *= z
        total += numer / denom * power
    return total


def check_pq_binomial(a, b, p, q, z, sum_terms: int = 60, product_terms: int = 60) -> float:
    """Relative gap between both sides of the (p,q)-binomial theorem.

    Left: partial series of ((a,b);(p,q))_n / ((p,q);(p,q))_n z**n.
    Right: ((p, b z); (p, q))_K / ((p, a z); (p, q))_K with K = ``product_terms``.
    The identity is only used for |q/p| < 1; outside that NonConvergence is raised.
    """
    if not abs(q / p) < 1:
        raise NonConvergence(f"(p,q)-binomial check needs |q/p| < 1, got {q / p!r}")
    terms = []
    numer, denom, power = 1.0, 1.0, 1.0
    for n in range(sum_terms):
        if n > 0:
            k = n - 1
            factor = p ** (k + 1) - q ** (k + 1)
            if factor == 0.0:
                raise VanishingDenominator(f"p^{k + 1} == q^{k + 1}")
            numer *= a * p ** k - b * q ** k
            denom *= factor
            power *= z
        terms.append(numer / denom * power)
    tail = [abs(t) for t in terms[-10:]]
    if any(t2 > t1 and t1 > 0 for t1, t2 in zip(tail, tail[1:])):
        raise NonConvergence("partial-sum terms of the (p,q)-binomial series are not decreasing")
    lhs = math.fsum(terms)
    rhs = double_pochhammer(p, b * z, p, q, product_terms) / double_pochhammer(p, a * z, p, q, product_terms)
    return abs(lhs - rhs) / abs(rhs)


def euler_q_exponential(x: float, q: float, factors: int = 2000) -> float:
    """Product form 1 / ((1 - q) x; q)_infinity of the q-exponential, |(1-q)x| < 1."""
    return 1.0 / pochhammer((1.0 - q) * x, q, factors)


__all__ = [
    "SeriesResult",
    "pochhammer",
    "double_pochhammer",
    "deformed_number",
    "plain_deformed_number",
    "tau",
    "deformed_exponential",
    "q_exponential",
    "euler_q_exponential",
    "deformed_hypergeometric_L",
    "check_pq_binomial",
]
