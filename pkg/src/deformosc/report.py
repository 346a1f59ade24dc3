"""Verification report: named residuals with pass/fail status."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._json import dumps

PASS = "pass"
FAIL = "fail"
ERRATUM = "erratum-candidate"
DIAGNOSTIC = "diagnostic"

#: half-width of the diagonal window used by :func:`residuals`
WINDOW = 4


@dataclass
class Entry:
    identity_name: str
    max_abs_residual: float
    max_rel_residual: float
    guard_band: int
    subspace: str
    passed: bool
    status: str = PASS
    best_variant: str | None = None
    variant_residual: float | None = None
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "identity_name": self.identity_name,
            "max_abs_residual": float(self.max_abs_residual),
            "max_rel_residual": float(self.max_rel_residual),
            "guard_band": int(self.guard_band),
            "subspace": self.subspace,
            "pass": bool(self.passed),
            "status": self.status,
        }
        if self.best_variant is not None:
            out["best_variant"] = self.best_variant
            out["variant_residual"] = float(self.variant_residual)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    tolerance: float
    entries: list[Entry] = field(default_factory=list)

    def add(self, entry: Entry) -> Entry:
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for e in other.entries:
            if prefix:
                e.identity_name = f"{prefix}{e.identity_name}"
            self.entries.append(e)
        return self

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == FAIL]

    @property
    def errata(self) -> list[Entry]:
        return [e for e in self.entries if e.status == ERRATUM]

    @property
    def ok(self) -> bool:
        """True iff no entry failed; erratum candidates and diagnostics do not count."""
        return not self.failures

    def __getitem__(self, name: str) -> Entry:
        for e in self.entries:
            if e.identity_name == name:
                return e
        raise KeyError(name)

    def names(self) -> list[str]:
        return [e.identity_name for e in self.entries]

    def to_dict(self) -> dict:
        return {"tolerance": float(self.tolerance), "entries": [e.to_dict() for e in self.entries]}

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _diagonal_window_max(a: np.ndarray, width: int) -> np.ndarray:
    """Largest value of ``a`` within ``width`` steps along each entry's diagonal."""
    out = a.copy()
    for k in range(1, width + 1):
        if a.ndim == 1:
            out[k:] = np.maximum(out[k:], a[:-k])
            out[:-k] = np.maximum(out[:-k], a[k:])
        else:
            out[k:, k:] = np.maximum(out[k:, k:], a[:-k, :-k])
            out[:-k, :-k] = np.maximum(out[:-k, :-k], a[k:, k:])
    return out


def residuals(lhs, rhs, terms=()) -> tuple[float, float]:
    """(max |lhs - rhs|, relative residual).

    Without ``terms`` the relative residual divides by the larger max-norm of
    the two sides.  ``terms`` are the individual products summed into ``lhs``;
    then each entry is measured against sum |term| + |rhs|, the scale that
    bounds floating-point error in a difference of large products and one a
    wrong right side of comparable size cannot hide under (a single global
    scale lets exponentially small columns pass unchecked).  The scale is
    taken as the largest one within ``WINDOW`` steps along the entry's
    diagonal, so entries that vanish identically (below the vacuum) are judged
    against their neighbours rather than against closed-form round-off.
    """
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    if lhs.size == 0:
        return 0.0, 0.0
    gap = np.abs(lhs - rhs)
    diff = float(np.max(gap))
    if terms:
        denom = np.abs(rhs) + sum(np.abs(np.asarray(t)) for t in terms)
        denom = _diagonal_window_max(denom, WINDOW)
        live = denom > 0
        if np.any(gap[~live] > 0):
            return diff, float("inf")
        return diff, float(np.max(gap[live] / denom[live])) if np.any(live) else 0.0
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return diff, (diff / scale if scale > 0 else 0.0)


def check(name: str, lhs, rhs, tol: float, guard_band: int = 0, subspace: str = "",
          note: str = "", terms=()) -> Entry:
    abs_res, rel_res = residuals(lhs, rhs, terms)
    ok = rel_res <= tol
    return Entry(name, abs_res, rel_res, guard_band, subspace, ok, PASS if ok else FAIL, note=note)


def check_with_variants(name: str, lhs, printed, variants: dict, tol: float,
                        guard_band: int = 0, subspace: str = "", note: str = "",
                        terms=()) -> Entry:
    """Compare a printed closed form; on failure, rank documented variants.

    ``variants`` maps a short description to an alternative right-hand side.
    A failing printed form becomes an erratum candidate carrying its measured
    residual and the best-matching variant; it is never replaced silently.
    """
    entry = check(name, lhs, printed, tol, guard_band, subspace, note, terms)
    if entry.passed:
        return entry
    entry.status = ERRATUM
    best, best_res = None, np.inf
    for label, rhs in variants.items():
        _, rel = residuals(lhs, rhs, terms)
        if rel < best_res:
            best, best_res = label, rel
    if best is not None:
        entry.best_variant = best
        entry.variant_residual = best_res
        if best_res > tol:
            entry.note = (entry.note + "; " if entry.note else "") + "no documented variant matches"
    return entry


def diagnostic(name: str, value: float, subspace: str, note: str = "") -> Entry:
    return Entry(name, abs(value), abs(value), 0, subspace, True, DIAGNOSTIC, note=note)


def check_abs(name: str, values, tol: float, subspace: str = "", note: str = "",
              guard_band: int = 0) -> Entry:
    """Pass when every entry of ``values`` (residuals whose target is 0) is at most ``tol``."""
    values = np.abs(np.asarray(values, dtype=complex))
    worst = float(values.max()) if values.size else 0.0
    ok = worst <= tol
    return Entry(name, worst, worst, guard_band, subspace, ok, PASS if ok else FAIL, note=note)
