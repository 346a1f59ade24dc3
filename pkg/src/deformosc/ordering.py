"""Closed forms for a^n (a^dagger)^m, (a^dagger)^m a^n and their q^nu-brackets.

Every right-hand side has the shape ``f(alpha N) X`` where ``X`` is
``(a^dagger)^(m-n)``, ``a^(n-m)`` or the identity, so a closed form is encoded
as the scalar function ``f`` of the exponent ``x = alpha N`` on the row state.
Translation operators become argument shifts ``x -> x + k nu``; the operator
T of the ladder prefactor becomes the scalar function :func:`t_a` / :func:`t_b`.

Each formula is given as printed, plus a short list of documented variants
used to rank alternatives when the printed form disagrees with the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .params import DeformationParams, Regime
from .qseries import pochhammer

Fn = Callable[[object], object]


def t_a(params: DeformationParams, x, phi=None):
    """T_{p^-1,q}(phi1) on a state with alpha N = x."""
    p, q, nu = params.p, params.q, params.nu
    phi = params.phi1 if phi is None else phi
    return phi * p ** (-x - nu) / (p ** (-nu) - q ** nu)


def t_b(params: DeformationParams, x, phi=None):
    """T_{q,p^-1}(phi2) on a state with alpha N = x."""
    p, q, nu = params.p, params.q, params.nu
    phi = params.phi2 if phi is None else phi
    return phi * q ** (x + nu) / (q ** nu - p ** (-nu))


def raise_lower_block(params: DeformationParams, n: int, x):
    """a^n (a^dagger)^n restricted to the factor in front (no shift)."""
    nu, Q = params.nu, params.pq
    if params.regime is Regime.A:
        r = params.phi2 / params.phi1
        return params.p ** (-nu * comb(n, 2)) * t_a(params, x) ** n * pochhammer(
            r * Q ** (x + nu), Q ** nu, n)
    r = params.phi1 / params.phi2
    return params.q ** (nu * comb(n, 2)) * t_b(params, x) ** n * pochhammer(
        r * Q ** (-x - nu), Q ** (-nu), n)


def lower_raise_block(params: DeformationParams, m: int, x, phi_swapped: bool = False):
    """(a^dagger)^m a^m-type factor (p^{nu C(m,2)} [S^-1 T^m] (r Q^x; Q^-nu)_m in regime A)."""
    nu, Q = params.nu, params.pq
    if params.regime is Regime.A:
        r = params.phi2 / params.phi1
        return params.p ** (nu * comb(m, 2)) * t_a(params, x - nu) ** m * pochhammer(
            r * Q ** x, Q ** (-nu), m)
    if phi_swapped:
        # literal n = m regime-B display: T_{q,p^-1}(phi1) and phi2/phi1
        r = params.phi2 / params.phi1
        t = t_b(params, x - nu, phi=params.phi1)
    else:
        r = params.phi1 / params.phi2
        t = t_b(params, x - nu)
    return params.q ** (-nu * comb(m, 2)) * t ** m * pochhammer(r * Q ** (-x), Q ** nu, m)


@dataclass
class OrderingFormula:
    """One printed closed form.

    ``terms`` is a list of (coefficient, word) making up the left side; a word
    lists ladder steps in application order (+1 raising, -1 lowering).  ``tail`` is ``("raise", k)``,
    ``("lower", k)`` or ``("none", 0)``.
    """

    name: str
    terms: list
    tail: tuple
    printed: Fn
    variants: dict[str, Fn] = field(default_factory=dict)


def _word(n_lower: int, m_raise: int, lower_first: bool) -> list[int]:
    if lower_first:
        return [-1] * n_lower + [1] * m_raise
    return [1] * m_raise + [-1] * n_lower


def formulas(params: DeformationParams, n: int, m: int) -> list[OrderingFormula]:
    """All closed forms for the pair (n, m) in the regime of ``params``."""
    nu, qnu = params.nu, params.q ** params.nu
    regime = params.regime
    tag = regime.value
    anti = _word(n, m, lower_first=False)   # a^n (a^dagger)^m: raise first
    norm = _word(n, m, lower_first=True)    # (a^dagger)^m a^n: lower first
    out: list[OrderingFormula] = []

    if n < m:
        tail = ("raise", m - n)

        def h(x):
            return raise_lower_block(params, n, x)

        out.append(OrderingFormula(
            f"a^{n} ad^{m} (n<m, regime {tag})", [(1.0, anti)], tail, h))

        def shifted_all(x):
            return raise_lower_block(params, n, x - m * nu)

        if regime is Regime.A:
            def printed_normal(x):
                # bracket [S^-m T]^n: the shift reaches T only
                r = params.phi2 / params.phi1
                Q = params.pq
                return (params.p ** (-nu * comb(n, 2)) * t_a(params, x - m * nu) ** n
                        * pochhammer(r * Q ** (x + nu), Q ** nu, n))

            out.append(OrderingFormula(
                f"ad^{m} a^{n} (n<m, regime A)", [(1.0, norm)], tail, printed_normal,
                {"translation applied to the whole N-dependent factor": shifted_all}))
            out.append(OrderingFormula(
                f"[a^{n}, ad^{m}]_q^nu (n<m, regime A)", [(1.0, anti), (-qnu, norm)], tail,
                lambda x: h(x) - qnu * h(x + m * nu),
                {"translation S^-m instead of S^m": lambda x: h(x) - qnu * shifted_all(x)}))
        else:
            def shifted_t_only(x):
                r = params.phi1 / params.phi2
                Q = params.pq
                return (params.q ** (nu * comb(n, 2)) * t_b(params, x - m * nu) ** n
                        * pochhammer(r * Q ** (-x - nu), Q ** (-nu), n))

            out.append(OrderingFormula(
                f"ad^{m} a^{n} (n<m, regime B)", [(1.0, norm)], tail, shifted_all,
                {"translation applied to T only": shifted_t_only}))
            out.append(OrderingFormula(
                f"[a^{n}, ad^{m}]_q^nu (n<m, regime B)", [(1.0, anti), (-qnu, norm)], tail,
                lambda x: h(x) - qnu * shifted_all(x),
                {"translation S^+m": lambda x: h(x) - qnu * h(x + m * nu)}))

    elif n > m:
        tail = ("lower", n - m)

        def g(x):
            return lower_raise_block(params, m, x)

        out.append(OrderingFormula(
            f"a^{n} ad^{m} (n>m, regime {tag})", [(1.0, anti)], tail,
            lambda x: g(x + n * nu),
            {"no outer translation": g}))
        out.append(OrderingFormula(
            f"ad^{m} a^{n} (n>m, regime {tag})", [(1.0, norm)], tail, g,
            {"outer translation S^n": lambda x: g(x + n * nu)}))
        out.append(OrderingFormula(
            f"[a^{n}, ad^{m}]_q^nu (n>m, regime {tag})", [(1.0, anti), (-qnu, norm)], tail,
            lambda x: g(x + n * nu) - qnu * g(x),
            {"translation S^-n": lambda x: g(x - n * nu) - qnu * g(x)}))

    else:
        tail = ("none", 0)
        out.append(OrderingFormula(
            f"a^{n} ad^{n} (n=m, regime {tag})", [(1.0, anti)], tail,
            lambda x: raise_lower_block(params, n, x)))
        if regime is Regime.A:
            out.append(OrderingFormula(
                f"ad^{n} a^{n} (n=m, regime A)", [(1.0, norm)], tail,
                lambda x: lower_raise_block(params, n, x)))
        else:
            out.append(OrderingFormula(
                f"ad^{n} a^{n} (n=m, regime B)", [(1.0, norm)], tail,
                lambda x: lower_raise_block(params, n, x, phi_swapped=True),
                {"phi1 <-> phi2 in T and in the Pochhammer ratio":
                 lambda x: lower_raise_block(params, n, x)}))
    return out
