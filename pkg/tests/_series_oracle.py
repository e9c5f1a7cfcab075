"""Generating-function test oracle: matrix elements by series extraction.

Independent of the production closed forms: expands the generating
functional as a bivariate series in (sigma, tau) and reads off the
coefficient of sigma^n tau^m, i.e.

    <n|X|m> = sqrt(n! m! / 2^(n+m)) * [sigma^n tau^m] Z(sigma, tau).

Practical for small n, m only; that is all a cross-check needs.
"""

import math
from fractions import Fraction

# Z = poly(sigma, tau) * exp(2*sigma*tau), poly keyed by (sigma_power, tau_power)
KINETIC_POLY = {
    (0, 0): Fraction(1, 2),
    (2, 0): Fraction(-1),
    (1, 1): Fraction(2),
    (0, 2): Fraction(-1),
}
XI2_POLY = {
    (0, 0): Fraction(1, 2),
    (2, 0): Fraction(1),
    (1, 1): Fraction(2),
    (0, 2): Fraction(1),
}


def ho_poly(lam: Fraction) -> dict:
    """Polynomial factor for the oscillator operator kinetic + xi^2 + lam."""
    return {(0, 0): 1 + lam, (1, 1): Fraction(4)}


def element_from_exp_poly(n: int, m: int, poly: dict, a: Fraction = Fraction(2)) -> float:
    """Entry <n|X|m> for Z = poly(sigma, tau) * exp(a*sigma*tau), exact rationals."""
    coeff = Fraction(0)
    for (i, j), c in poly.items():
        p = n - i
        if p >= 0 and m - j == p:
            coeff += c * a**p / math.factorial(p)
    scale = Fraction(math.factorial(n) * math.factorial(m), 2 ** (n + m))
    return math.sqrt(float(scale)) * float(coeff)


def gaussian_family_element(n: int, m: int, pref: float, a: float, b: float) -> float:
    """Entry for Z = pref * exp(a*sigma*tau + b*(sigma^2 + tau^2)), in floats.

    Covers both the production exponent (a = 2/(1+u), b = -u/(1+u)) and
    variants with a different quadratic coefficient.
    """
    if (n + m) % 2:
        return 0.0
    total = 0.0
    for p in range(n % 2, min(n, m) + 1, 2):
        e = (n + m - 2 * p) // 2
        total += a**p * b**e / (
            math.factorial(p) * math.factorial((n - p) // 2) * math.factorial((m - p) // 2)
        )
    scale = math.sqrt(math.factorial(n) * math.factorial(m) / 2.0 ** (n + m))
    return scale * pref * total
