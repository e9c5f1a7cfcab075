"""Operator matrices in the harmonic-oscillator energy basis.

All builders return dense, exactly symmetric float64 arrays indexed by the
oscillator quantum number n = 0, 1, ..., N-1.  Every operator handled here is
even in xi, so entries with odd n + m vanish identically (parity selection)
and are never touched.

The Gaussian matrix elements come from the generating-function identity

    integral F_sigma(xi) exp(-u xi^2) F_tau(xi) dxi
        = (1+u)^(-1/2) * exp(alpha*sigma*tau + beta*(sigma^2 + tau^2)),
    alpha = 2/(1+u),  beta = -u/(1+u),

where F_tau(xi) = pi^(-1/4) exp(-xi^2/2 + 2*xi*tau - tau^2) generates the
normalized oscillator eigenfunctions.  Reading off the sigma^n tau^m
coefficient gives the closed form

    <n|exp(-u xi^2)|m> = sqrt(n! m! / 2^(n+m)) * (1+u)^(-1/2)
        * sum_p alpha^p * beta^((n+m-2p)/2) / (p! ((n-p)/2)! ((m-p)/2)!),

summed over p <= min(n, m) with p = n = m (mod 2).  Moment matrices
<n|xi^(2i) exp(-u xi^2)|m> follow by repeated application of the tridiagonal
xi^2 ladder matrix, carried out at a padded size so that the truncated
products equal the infinite-basis ones on the leading block.

Everything up to the final float conversion is computed in exact rational
arithmetic: naive floating evaluation of the closed form loses the
sqrt(n! m!) scale near n = 70, while the rational route is exact, makes the
output bitwise symmetric, and costs little at these sizes.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .model import ModelParams, coefficients

__all__ = [
    "xi2_matrix",
    "kinetic_matrix",
    "gaussian_matrix",
    "moment_matrices",
    "hamiltonian",
]


def xi2_matrix(N: int) -> np.ndarray:
    """Position-squared operator: diag n + 1/2, couplings sqrt((n+1)(n+2))/2."""
    if N < 1:
        raise ValueError("N must be at least 1")
    a = np.zeros((N, N))
    for n in range(N):
        a[n, n] = n + 0.5
    for n in range(N - 2):
        off = math.sqrt((n + 1) * (n + 2)) / 2.0
        a[n, n + 2] = off
        a[n + 2, n] = off
    return a


def kinetic_matrix(N: int) -> np.ndarray:
    """Kinetic operator -d^2/dxi^2: same diagonal as xi^2, negated couplings.

    kinetic_matrix(N) + xi2_matrix(N) equals diag(2n + 1) exactly.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    a = np.zeros((N, N))
    for n in range(N):
        a[n, n] = n + 0.5
    for n in range(N - 2):
        off = -math.sqrt((n + 1) * (n + 2)) / 2.0
        a[n, n + 2] = off
        a[n + 2, n] = off
    return a


def _rational(u) -> Fraction:
    if isinstance(u, Fraction):
        return u
    if isinstance(u, (int, np.integer)):
        return Fraction(int(u))
    if isinstance(u, (float, np.floating)):
        return Fraction(float(u))
    raise TypeError(f"expected a real width parameter, got {type(u).__name__}")


def _scaled_gaussian(u: Fraction, size: int) -> list[list[Fraction]]:
    """Rational core R with <n|exp(-u xi^2)|m> = sqrt(n!m!/(2^(n+m)(1+u))) R[n][m]."""
    alpha = Fraction(2) / (1 + u)
    beta = -u / (1 + u)
    fact = [math.factorial(i) for i in range(size + 1)]
    apow = [Fraction(1)]
    bpow = [Fraction(1)]
    for _ in range(size):
        apow.append(apow[-1] * alpha)
        bpow.append(bpow[-1] * beta)
    R = [[Fraction(0)] * size for _ in range(size)]
    for n in range(size):
        for m in range(n, size, 2):
            acc = Fraction(0)
            for p in range(n % 2, n + 1, 2):
                acc += (
                    apow[p]
                    * bpow[(n + m - 2 * p) // 2]
                    / (fact[p] * fact[(n - p) // 2] * fact[(m - p) // 2])
                )
            R[n][m] = acc
            R[m][n] = acc
    return R


def _apply_xi2(R: list[list[Fraction]]) -> list[list[Fraction]]:
    """Left-multiply the rational core by the xi^2 ladder (scaled form).

    In the scaled representation the ladder couplings become rational:
    1 from below, (2n+1)/2 on the diagonal, (n+1)(n+2)/4 from above.  Rows
    within two of the padded edge become inexact; callers keep enough padding
    that the returned leading block is still the infinite-basis product.
    """
    size = len(R)
    out = [[Fraction(0)] * size for _ in range(size)]
    for n in range(size):
        diag = Fraction(2 * n + 1, 2)
        up = Fraction((n + 1) * (n + 2), 4)
        row = R[n]
        below = R[n - 2] if n >= 2 else None
        above = R[n + 2] if n + 2 < size else None
        out_row = out[n]
        for m in range(n % 2, size, 2):
            v = diag * row[m]
            if below is not None:
                v += below[m]
            if above is not None:
                v += up * above[m]
            out_row[m] = v
    return out


def _signed_sqrt(square: Fraction, negative: bool) -> float:
    """Float sqrt of an exact nonnegative rational, safe for huge operands."""
    num, den = square.as_integer_ratio()
    try:
        v = math.sqrt(num / den)
    except OverflowError:
        shift = ((num.bit_length() - den.bit_length() - 512) // 2) * 2
        v = math.ldexp(math.sqrt((num >> shift) / den), shift // 2)
    return -v if negative else v


def _dense_block(R: list[list[Fraction]], u: Fraction, N: int) -> np.ndarray:
    """Leading N x N block of the unscaled matrix, one float rounding per entry."""
    fact = [math.factorial(i) for i in range(N)]
    one_plus_u = 1 + u
    out = np.zeros((N, N))
    for n in range(N):
        for m in range(n, N, 2):
            q = R[n][m]
            if not q:
                continue
            t = Fraction(fact[n] * fact[m], 1 << (n + m)) / one_plus_u
            v = _signed_sqrt(t * q * q, q < 0)
            out[n, m] = v
            out[m, n] = v
    return out


def gaussian_matrix(u, N: int) -> np.ndarray:
    """Matrix of exp(-u xi^2) in the energy basis (u >= 0).

    u = 0 gives the identity; the ground-state entry is (1+u)^(-1/2).
    """
    uq = _rational(u)
    if uq < 0:
        raise ValueError("u must be nonnegative: exp(-u xi^2) integrals diverge")
    if N < 1:
        raise ValueError("N must be at least 1")
    return _dense_block(_scaled_gaussian(uq, N), uq, N)


def moment_matrices(u, N: int, r: int, padding: int | None = None) -> list[np.ndarray]:
    """Matrices G_i of xi^(2i) exp(-u xi^2) for i = 1..r, exact to roundoff.

    Built as repeated xi^2-ladder products of the Gaussian matrix at size
    N + padding and truncated back to N x N.  The ladder only couples
    n -> n, n +/- 2, so padding >= 2r guarantees the truncated products
    equal the infinite-basis ones on the leading block; larger padding
    changes nothing.
    """
    uq = _rational(u)
    if uq < 0:
        raise ValueError("u must be nonnegative: exp(-u xi^2) integrals diverge")
    if N < 2:
        raise ValueError("N must be at least 2")
    if r < 1:
        raise ValueError("r must be at least 1")
    if padding is None:
        padding = 2 * r
    elif padding < 2 * r:
        raise ValueError(f"padding must be at least 2*r = {2 * r}")
    R = _scaled_gaussian(uq, N + padding)
    out = []
    for _ in range(r):
        R = _apply_xi2(R)
        out.append(_dense_block(R, uq, N))
    return out


def hamiltonian(params: ModelParams) -> np.ndarray:
    """Truncated N x N matrix of -d^2/dxi^2 + W(xi) in the energy basis.

    Assembled as kinetic + k*lambda*G_0 + k*sum_i C_i*G_i - lambda*(k-1)*I
    with u = 1/k.  The potential part is accumulated in exact rational
    arithmetic on the padded ladder products, so the result is exactly
    symmetric and parity-block structured, and a rebuild is bitwise
    reproducible.
    """
    k, lam = params.k_exact, params.lam_exact
    u = 1 / k
    N, r = params.N, params.r
    size = N + 2 * r
    c = coefficients(params).c

    R = _scaled_gaussian(u, size)
    klam = k * lam
    pot = [[klam * q for q in row] for row in R]
    for i in range(1, r + 1):
        R = _apply_xi2(R)
        kc = k * c[i - 1]
        for n in range(size):
            pot_row, r_row = pot[n], R[n]
            for m in range(n % 2, size, 2):
                pot_row[m] += kc * r_row[m]

    H = _dense_block(pot, u, N)
    shift = float(-lam * (k - 1))
    for n in range(N):
        H[n, n] += (n + 0.5) + shift
    for n in range(N - 2):
        off = -math.sqrt((n + 1) * (n + 2)) / 2.0
        H[n, n + 2] += off
        H[n + 2, n] += off
    return H
