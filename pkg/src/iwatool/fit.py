"""Exact recovery of the growth quadruple (rho, mu, lambda, nu).

A stabilized order-exponent sequence obeys
    x_n = rho*(n+1)*l^n + mu*l^n + lambda*n + nu
for all n past some index.  The quadruple is solved exactly over the
rationals from the last four points and accepted only if it is integral,
satisfies the sign constraints, and reproduces a confirmation window of
additional trailing points; otherwise an Unstable marker is returned,
never a best-effort guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import TooFewPoints


@dataclass(frozen=True)
class ParamFit:
    """Fitted quadruple plus the first index at which the law holds."""

    rho: int
    mu: int
    lam: int
    nu: int
    stable_from: int
    per_phi: str | None = None

    def sign_constraints_ok(self) -> bool:
        if self.rho < 0:
            return False
        if self.rho == 0 and self.mu < 0:
            return False
        if self.rho == 0 and self.mu == 0 and self.lam < 0:
            return False
        return True


@dataclass(frozen=True)
class Unstable:
    """The sequence does not stabilize onto the exact law."""

    reason: str


def _law(rho, mu, lam, nu, ell, n):
    return rho * (n + 1) * ell ** n + mu * ell ** n + lam * n + nu


def predict(fit: ParamFit, ell: int, n: int) -> int:
    """Evaluate rho*(n+1)*l^n + mu*l^n + lambda*n + nu exactly."""
    return _law(fit.rho, fit.mu, fit.lam, fit.nu, ell, n)


def _solve_last_four(ell, pts):
    """Exact rational solve of the 4x4 system on four consecutive points.

    The basis {(n+1)l^n, l^n, n, 1} is linearly independent on any four
    consecutive integers (checked by the nonzero determinant below), so the
    system is never singular.
    """
    rows = []
    rhs = []
    for n, x in pts:
        rows.append([Fraction((n + 1) * ell ** n), Fraction(ell ** n),
                     Fraction(n), Fraction(1)])
        rhs.append(Fraction(x))
    # Gaussian elimination over Q
    m = [row + [b] for row, b in zip(rows, rhs)]
    size = 4
    for col in range(size):
        piv = next(r for r in range(col, size) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][size] for r in range(size)]


def fit_sequence(ell: int, points, window: int = 3):
    """Fit the exact growth law to (n, x_n) points.

    points must have distinct consecutive n and contain at least 4 + window
    entries.  Returns a ParamFit or an Unstable marker.
    """
    if window < 0:
        raise ValueError("window must be >= 0")
    pts = sorted(points)
    if len(pts) < 4 + window:
        raise TooFewPoints(
            f"need at least {4 + window} points, got {len(pts)}")
    ns = [n for n, _ in pts]
    if len(set(ns)) != len(ns) or any(b - a != 1 for a, b in zip(ns, ns[1:])):
        raise TooFewPoints("points must have distinct consecutive n")
    sol = _solve_last_four(ell, pts[-4:])
    if any(v.denominator != 1 for v in sol):
        return Unstable("solution on the last four points is not integral")
    rho, mu, lam, nu = (int(v) for v in sol)
    fit = ParamFit(rho, mu, lam, nu, stable_from=0)
    if not fit.sign_constraints_ok():
        return Unstable("solution violates the sign constraints")
    # longest suffix of points reproduced exactly by the law
    stable_from = None
    for n, x in reversed(pts):
        if _law(rho, mu, lam, nu, ell, n) != x:
            break
        stable_from = n
    matched_extra = pts[-4][0] - stable_from if stable_from is not None else 0
    if matched_extra < window:
        return Unstable(
            f"law confirmed on only {max(0, matched_extra)} extra trailing "
            f"points; window requires {window}")
    return ParamFit(rho, mu, lam, nu, stable_from=stable_from)


def fit_family(ell: int, sequences: dict, window: int = 3) -> dict:
    """Componentwise fit_sequence over a map of labels to point lists."""
    out = {}
    for label, pts in sequences.items():
        res = fit_sequence(ell, pts, window)
        if isinstance(res, ParamFit):
            res = ParamFit(res.rho, res.mu, res.lam, res.nu,
                           res.stable_from, per_phi=str(label))
        out[label] = res
    return out
