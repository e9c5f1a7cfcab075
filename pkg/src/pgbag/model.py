"""Pseudo-Gaussian oscillator model.

A scalar particle of mass M confined by a pseudo-Gaussian well is described,
after rescaling to the dimensionless coordinate xi = sqrt(M*omega)*x, by the
operator

    -d^2/dxi^2 + W(xi),
    W(xi) = k*(lambda + sum_{i=1}^r C_i xi^(2i)) * exp(-xi^2/k) - lambda*(k-1),

with k = M/omega and coefficients C_i = (lambda + i) / (k^i * i!).  These
coefficients are the ones that cancel every Maclaurin term xi^4 ... xi^(2r),
so that W(xi) = lambda + xi^2 + O(xi^(2r+2)) and the well is harmonic near the
origin while decaying to the constant -lambda*(k-1) at infinity.

Exact rational arithmetic is used for the coefficients and Maclaurin
expansion whenever the inputs are rational: the cancellation is an identity,
not an approximation, and floating evaluation would mask it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "ModelParams",
    "CoefficientSet",
    "make_params",
    "coefficients",
    "eval_w",
    "eval_v",
    "taylor_coeffs",
]


def _exact(value) -> Fraction:
    """Exact rational mirror of a parameter (floats map to their binary value)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    raise TypeError(f"expected a real number, got {type(value).__name__}")


@dataclass(frozen=True)
class ModelParams:
    """Validated model parameters (natural units, hbar = c = 1).

    M, omega and k always satisfy k = M/omega; `k_exact` and `lam_exact`
    retain the inputs as exact rationals so that coefficient identities can
    be checked without roundoff.  `flags` records soft validation warnings
    (the constructor only rejects values that make the model meaningless).
    """

    M: float
    omega: float
    k: float
    lam: float
    r: int
    N: int
    k_exact: Fraction
    lam_exact: Fraction
    flags: tuple[str, ...]

    @property
    def threshold(self) -> float:
        """Separation value -lambda*(k-1); eigenvalues below it are discrete."""
        return float(-self.lam_exact * (self.k_exact - 1))

    @property
    def u_exact(self) -> Fraction:
        """Inverse Gaussian width 1/k as an exact rational."""
        return 1 / self.k_exact


@dataclass(frozen=True)
class CoefficientSet:
    """Polynomial coefficients C_1..C_r of the well, as exact rationals."""

    c: tuple[Fraction, ...]

    def floats(self) -> tuple[float, ...]:
        return tuple(float(ci) for ci in self.c)

    def __len__(self) -> int:
        return len(self.c)

    def __getitem__(self, i: int) -> Fraction:
        return self.c[i]


def _as_int(value, name: str) -> int:
    iv = int(value)
    if iv != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return iv


def make_params(*, M=None, omega=None, k=None, lam, r=3, N=50) -> ModelParams:
    """Build validated ModelParams from either (M, omega) or k alone.

    When only k is given, omega defaults to 1 and M = k, which leaves the
    dimensionless spectrum unchanged and fixes the energy unit.  Exactly one
    of the two forms must be used.

    Raises ValueError for non-positive M, omega or k, for r < 1, or N < 2.
    Questionable but admissible parameters (lam >= 0, k <= 1, non-integer
    lam) are recorded in `flags` instead of being rejected.
    """
    if k is not None:
        if M is not None or omega is not None:
            raise ValueError("give either k or (M, omega), not both")
        k_exact = _exact(k)
        if k_exact <= 0:
            raise ValueError("k must be positive")
        omega_exact = Fraction(1)
        m_exact = k_exact
    else:
        if M is None or omega is None:
            raise ValueError("give either k or both M and omega")
        m_exact = _exact(M)
        omega_exact = _exact(omega)
        if m_exact <= 0:
            raise ValueError("M must be positive")
        if omega_exact <= 0:
            raise ValueError("omega must be positive")
        k_exact = m_exact / omega_exact

    lam_exact = _exact(lam)
    r = _as_int(r, "r")
    N = _as_int(N, "N")
    if r < 1:
        raise ValueError("r must be at least 1")
    if N < 2:
        raise ValueError("N must be at least 2")

    flags = []
    if lam_exact >= 0:
        flags.append(f"lambda = {float(lam_exact):g} >= 0: well has no attractive core")
    if lam_exact.denominator != 1:
        flags.append(f"lambda = {float(lam_exact):g} is not an integer")
    if k_exact <= 1:
        flags.append(f"k = {float(k_exact):g} <= 1")
    if -lam_exact * (k_exact - 1) <= 0:
        flags.append("threshold <= 0, no discrete levels expected")

    return ModelParams(
        M=float(m_exact),
        omega=float(omega_exact),
        k=float(k_exact),
        lam=float(lam_exact),
        r=r,
        N=N,
        k_exact=k_exact,
        lam_exact=lam_exact,
        flags=tuple(flags),
    )


def coefficients(params: ModelParams) -> CoefficientSet:
    """Exact well coefficients C_i = (lambda + i) / (k^i * i!), i = 1..r."""
    lam, k = params.lam_exact, params.k_exact
    return CoefficientSet(
        c=tuple((lam + i) / (k**i * math.factorial(i)) for i in range(1, params.r + 1))
    )


def eval_w(params: ModelParams, xi):
    """Scaled potential W(xi); accepts scalars or arrays, even in xi.

    W(0) = lambda and W -> -lambda*(k-1) as |xi| -> infinity.
    """
    scalar = np.ndim(xi) == 0
    x2 = np.square(np.asarray(xi, dtype=float))
    c = coefficients(params).floats()
    poly = np.zeros_like(x2)
    for ci in reversed(c):
        poly = (poly + ci) * x2
    poly += params.lam
    out = params.k * poly * np.exp(-x2 / params.k) - params.lam * (params.k - 1.0)
    return float(out) if scalar else out


def eval_v(params: ModelParams, x):
    """Physical-coordinate potential V(x), in units of mass squared.

    V(x) = M^2 * (lambda + sum_i C_i (M*omega)^i x^(2i)) * exp(-omega^2 x^2);
    under xi = sqrt(M*omega)*x it satisfies
    W(xi) = V(x)/(M*omega) - lambda*(k-1).
    """
    scalar = np.ndim(x) == 0
    x2 = np.square(np.asarray(x, dtype=float))
    mw = params.M * params.omega
    c = coefficients(params).floats()
    poly = np.zeros_like(x2)
    for i in range(len(c), 0, -1):
        poly = (poly + c[i - 1] * mw**i) * x2
    poly += params.lam
    out = params.M**2 * poly * np.exp(-(params.omega**2) * x2)
    return float(out) if scalar else out


def taylor_coeffs(params: ModelParams, j_max: int) -> list[Fraction]:
    """Exact Maclaurin coefficients t_j of xi^(2j) in W(xi), j = 0..j_max.

    Treats lambda as the i = 0 well coefficient so a single convolution with
    the Gaussian series covers every term.  By construction t_0 = lambda,
    t_1 = 1, and t_j = 0 for 2 <= j <= r.
    """
    j_max = _as_int(j_max, "j_max")
    if j_max < 0:
        raise ValueError("j_max must be nonnegative")
    lam, k = params.lam_exact, params.k_exact
    c = (lam,) + coefficients(params).c
    out = []
    for j in range(j_max + 1):
        t = k * sum(
            c[i] * (-1) ** (j - i) / (k ** (j - i) * math.factorial(j - i))
            for i in range(min(j, params.r) + 1)
        )
        if j == 0:
            t -= lam * (k - 1)
        out.append(t)
    return out
