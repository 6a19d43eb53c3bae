"""Kink-profile waveforms built from a second logarithmic derivative of
1 + exp(mu*x + lam*t + delta), plus the six-equation coefficient system
those waveforms must satisfy and its two solved parameter branches.

Substituting the waveform into the evolution equation and clearing the
(1 + zeta)^7 denominator, zeta = exp(mu*x + lam*t + delta), leaves a
degree-6 polynomial whose coefficients pair up with opposite signs
(zeta^6/zeta^1, zeta^5/zeta^2, zeta^4/zeta^3).  `system_residuals`
evaluates all six in that paired layout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import expr as ex
from .errors import ConstraintViolation, InvalidParams

__all__ = ["ColeHopfParams", "cole_hopf_u", "system_residuals", "branch_params"]

X = ex.var("x")
T = ex.var("t")


@dataclass(frozen=True)
class ColeHopfParams:
    """Amplitude, background, wavenumber, frequency, and phase shift."""

    A: float
    B: float
    mu: float
    lam: float
    delta: float = 0.0

    def violations(self):
        out = []
        if self.A == 0:
            out.append("A != 0")
        if self.lam == 0:
            out.append("lambda != 0")
        if self.mu == 0:
            out.append("mu != 0")
        return out


def cole_hopf_u(p):
    """B + A*mu^2 / (2*(1 + cosh(mu*x + lam*t + delta))) as an expression."""
    bad = p.violations()
    if bad:
        raise InvalidParams("; ".join(bad))
    A, B, mu, lam, delta = (Fraction(v) for v in (p.A, p.B, p.mu, p.lam, p.delta))
    phase = ex.add(ex.mul(mu, X), ex.mul(lam, T), ex.as_expr(delta))
    return ex.add(ex.as_expr(B),
                  ex.div(ex.mul(A, mu * mu), ex.mul(2, ex.add(1, ex.cosh(phase)))))


def system_residuals(p, b):
    """The six cleared-coefficient left-hand sides at (p, b).

    Exact (Fraction) when all inputs are rational; floats otherwise.  No
    preconditions: degenerate parameters are allowed and simply evaluated.
    """
    A, B, mu, lam = p.A, p.B, p.mu, p.lam
    eq1 = B * mu**3 + lam * mu**2 - (b * B**2 + B**2) * mu - lam
    eq3 = ((b * A + A) * mu**5 - (2 * A * B + 2 * A * b * B + 9 * B) * mu**3
           - 9 * lam * mu**2 - (3 * b * B**2 + 3 * B**2) * mu - 3 * lam)
    eq5 = ((b * A**2 + A**2 + 5 * b * A + 11 * A) * mu**5
           + (2 * A * B + 2 * A * b * B + 10 * B) * mu**3
           + 10 * lam * mu**2 + (2 * b * B**2 + 2 * B**2) * mu + 2 * lam)
    return (eq1, -eq1, eq3, -eq3, eq5, eq5)


def discriminant(b, mu):
    """1 - b*(b+2)*(mu^4 - 1); real branches require this to be >= 0."""
    return 1 - b * (b + 2) * (mu**4 - 1)


def branch_params(branch, b, mu):
    """The closed-form (A, B, lambda) for the plus or minus branch.

    plus carries +sqrt(S) in B with lam = -mu*(b+1-sqrt(S))/2; minus
    carries -sqrt(S) with lam = -mu*(b+1+sqrt(S))/2.
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', not {branch!r}")
    violations = []
    if b == -1:
        violations.append("b != -1")
    if b == -2:
        violations.append("b != -2")
    if mu == 0:
        violations.append("mu != 0")
    S = discriminant(b, mu)
    if S < 0:
        violations.append("discriminant S >= 0")
    if violations:
        raise ConstraintViolation(violations)
    root = math.sqrt(S)
    A = -6 * (b + 2) / (b + 1)
    if branch == "plus":
        B = (2 * mu**2 - 1 + b * (mu**2 - 1) + root) / (2 * (b + 1))
        lam = -0.5 * mu * (b + 1 - root)
    else:
        B = (b * mu**2 + 2 * mu**2 - 1 - b - root) / (2 * (b + 1))
        lam = -0.5 * mu * (b + 1 + root)
    if lam == 0:
        raise ConstraintViolation(["lambda != 0"])
    return A, B, lam
