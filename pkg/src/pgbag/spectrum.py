"""Diagonalization, level classification, and physical energies.

Eigenvalues eps of the scaled operator relate to the oscillator-like
pseudoquantum number through eps = 2*nu + 1.  Levels with eps strictly below
the separation threshold eps* = -lambda*(k-1) are discrete bound states;
their physical energy follows from

    E^2 = M^2 + M*omega*(eps + lambda*(k-1)),

which maps eps = eps* to E = M (continuum edge) and eps = eps* - k to E = 0.
Deeper levels have E^2 < 0 (the well outweighs the mass gap); they are
reported with a supercritical flag rather than dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrix import hamiltonian
from .model import ModelParams, make_params

__all__ = [
    "Level",
    "SpectrumResult",
    "ScanPoint",
    "eigenvalues_sym",
    "nu_of",
    "classify",
    "energies",
    "solve",
    "scan",
]

SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class Level:
    """One eigenvalue with its classification and mapped energy."""

    n: int
    eps: float
    nu: float
    is_discrete: bool
    E: float | None
    supercritical: bool


@dataclass(frozen=True)
class SpectrumResult:
    """Full solve output: sorted eigenvalues plus per-level records."""

    params: ModelParams
    eigenvalues: np.ndarray
    threshold: float
    discrete_count: int
    levels: tuple[Level, ...]

    @property
    def discrete(self) -> tuple[Level, ...]:
        return tuple(lev for lev in self.levels if lev.is_discrete)


@dataclass(frozen=True)
class ScanPoint:
    """One point of a parameter scan; exactly one of result/error is set."""

    vary: str
    value: float
    result: SpectrumResult | None
    error: str | None


def eigenvalues_sym(H: np.ndarray, vectors: bool = False):
    """All eigenvalues of a dense symmetric matrix, ascending.

    Rejects matrices whose asymmetry exceeds 1e-12 relative to the largest
    entry.  With vectors=True also returns the orthonormal eigenvector
    columns; the pairs satisfy ||H v - eps v|| <= 1e-10 ||H||.
    """
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError("H must be a square matrix")
    scale = max(1.0, float(np.max(np.abs(H))))
    if float(np.max(np.abs(H - H.T))) > SYMMETRY_RTOL * scale:
        raise ValueError("H is not symmetric")
    if vectors:
        w, v = np.linalg.eigh(H)
        return w, v
    return np.linalg.eigvalsh(H)


def nu_of(eps):
    """Pseudoquantum number nu = (eps - 1)/2 of an eigenvalue (or array)."""
    return (np.asarray(eps, dtype=float) - 1.0) / 2.0 if np.ndim(eps) else (float(eps) - 1.0) / 2.0


def _check_ascending(eps: np.ndarray):
    if eps.size > 1 and np.any(np.diff(eps) < 0):
        raise ValueError("eigenvalues must be in ascending order")


def classify(eps, params: ModelParams) -> tuple[int, float]:
    """Discrete count D = #{eps_n < eps*} and the threshold eps* itself.

    The inequality is strict: a level exactly at the threshold already
    overlaps the continuum.
    """
    eps = np.asarray(eps, dtype=float)
    _check_ascending(eps)
    eps_star = params.threshold
    return int(np.sum(eps < eps_star)), eps_star


def energies(eps, params: ModelParams) -> tuple[Level, ...]:
    """Per-level records for ascending eigenvalues.

    E = sqrt(M^2 + M*omega*(eps + lambda*(k-1))) when the square is
    nonnegative; otherwise E is None and the level is flagged supercritical.
    """
    eps = np.asarray(eps, dtype=float)
    _check_ascending(eps)
    eps_star = params.threshold
    mw = params.M * params.omega
    levels = []
    for n, e in enumerate(eps):
        e = float(e)
        e_sq = params.M**2 + mw * (e - eps_star)
        if e_sq >= 0.0:
            energy, critical = math.sqrt(e_sq), False
        else:
            energy, critical = None, True
        levels.append(
            Level(
                n=n,
                eps=e,
                nu=nu_of(e),
                is_discrete=e < eps_star,
                E=energy,
                supercritical=critical,
            )
        )
    return tuple(levels)


def _gershgorin_interval(H: np.ndarray) -> tuple[float, float]:
    d = np.diag(H)
    radius = np.sum(np.abs(H), axis=1) - np.abs(d)
    return float(np.min(d - radius)), float(np.max(d + radius))


def solve(params: ModelParams) -> SpectrumResult:
    """Assemble the truncated operator, diagonalize, and classify all levels."""
    H = hamiltonian(params)
    lo, hi = _gershgorin_interval(H)
    eps = eigenvalues_sym(H)
    slack = 1e-8 * max(1.0, abs(lo), abs(hi))
    if eps[0] < lo - slack or eps[-1] > hi + slack:
        raise ArithmeticError("eigenvalues escaped the Gershgorin interval")
    levels = energies(eps, params)
    eps = np.array(eps)
    eps.flags.writeable = False
    return SpectrumResult(
        params=params,
        eigenvalues=eps,
        threshold=params.threshold,
        discrete_count=sum(lev.is_discrete for lev in levels),
        levels=levels,
    )


def scan(base: ModelParams, vary: str, values) -> list[ScanPoint]:
    """Solve once per value of the varied parameter ('k' or 'lambda').

    Output order follows input order.  A failing point is recorded with its
    error message and the scan continues.  Varying k rebuilds the model from
    k alone (omega = 1, M = k); varying lambda keeps the base M and omega.
    """
    if vary not in ("k", "lambda"):
        raise ValueError("vary must be 'k' or 'lambda'")
    values = list(values)
    if not values:
        raise ValueError("values must be nonempty")
    points = []
    for value in values:
        try:
            if vary == "k":
                p = make_params(k=value, lam=base.lam_exact, r=base.r, N=base.N)
            else:
                p = make_params(
                    M=base.M, omega=base.omega, lam=value, r=base.r, N=base.N
                )
            points.append(ScanPoint(vary=vary, value=float(value), result=solve(p), error=None))
        except Exception as exc:
            points.append(ScanPoint(vary=vary, value=float(value), result=None, error=str(exc)))
    return points
