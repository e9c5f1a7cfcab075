"""Independent verification paths for the matrix build and the spectrum.

Two oracles that fail independently of the closed-form pipeline:

* `quad_element` evaluates <n| xi^(2i) exp(-u xi^2) |m> by Gauss-Hermite
  quadrature after the substitution eta = xi*sqrt(1+u), which turns the
  integrand into a polynomial times exp(-eta^2).  With enough nodes the rule
  is exact, so this checks matrix ELEMENTS to roundoff.

* `grid_spectrum` rediscretizes the scaled operator with second-order central
  differences on a Dirichlet box and extrapolates the two-grid results, which
  checks the SPECTRUM without touching the energy basis at all.

`validate` runs both against the production code and collects the
discrepancies into a JSON-serializable report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_hermite

from .model import ModelParams, eval_w
from .matrix import gaussian_matrix, moment_matrices
from .spectrum import solve

__all__ = [
    "GridDomainError",
    "GridSpectrum",
    "ValidationReport",
    "hermite_fn",
    "quad_element",
    "default_box_size",
    "grid_eigenvalues",
    "grid_spectrum",
    "validate",
]

BOUNDARY_MASS_LIMIT = 1e-8


class GridDomainError(RuntimeError):
    """Box too small: a bound state leaks into the Dirichlet walls."""

    def __init__(self, mass: float, L: float, suggested_L: float):
        self.mass = mass
        self.L = L
        self.suggested_L = suggested_L
        super().__init__(
            f"domain too small: boundary wavefunction mass {mass:.2e} exceeds "
            f"{BOUNDARY_MASS_LIMIT:.0e} at L = {L:g}; retry with L >= {suggested_L:g}"
        )


def _hermite_rows(n_max: int, xi: np.ndarray) -> np.ndarray:
    """Rows j = 0..n_max of the normalized Hermite polynomial part.

    Row j times exp(-xi^2/2) is the unit-norm oscillator eigenfunction u_j.
    Uses the stable normalized three-term recurrence.
    """
    rows = np.empty((n_max + 1, xi.size))
    rows[0] = math.pi ** -0.25
    if n_max >= 1:
        rows[1] = math.sqrt(2.0) * xi * rows[0]
    for j in range(2, n_max + 1):
        rows[j] = xi * math.sqrt(2.0 / j) * rows[j - 1] - math.sqrt((j - 1) / j) * rows[j - 2]
    return rows


def hermite_fn(n: int, xi):
    """Normalized oscillator eigenfunction u_n(xi); scalar or array input."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    scalar = np.ndim(xi) == 0
    x = np.atleast_1d(np.asarray(xi, dtype=float))
    out = _hermite_rows(n, x)[n] * np.exp(-x * x / 2.0)
    return float(out[0]) if scalar else out


@lru_cache(maxsize=128)
def _gauss_hermite(count: int):
    nodes, weights = roots_hermite(count)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def quad_element(n: int, m: int, i: int, u: float, nodes: int | None = None) -> float:
    """Integral of u_n(xi) * xi^(2i) * exp(-u xi^2) * u_m(xi) by quadrature.

    After eta = xi*sqrt(1+u) the integrand is a degree n+m+2i polynomial
    times exp(-eta^2), so Gauss-Hermite quadrature with at least
    (n+m+2i)/2 + 1 nodes is exact up to roundoff.  The default node count
    n+m+2i+8 sits comfortably past that bound.
    """
    if n < 0 or m < 0 or i < 0:
        raise ValueError("n, m and i must be nonnegative")
    u = float(u)
    if u < 0:
        raise ValueError("u must be nonnegative: the integral diverges for u < 0")
    degree = n + m + 2 * i
    if nodes is None:
        nodes = degree + 8
    elif nodes < degree // 2 + 1:
        raise ValueError(f"need at least {degree // 2 + 1} nodes for exactness")
    eta, weights = _gauss_hermite(nodes)
    s = math.sqrt(1.0 + u)
    xi = eta / s
    rows = _hermite_rows(max(n, m), xi)
    f = rows[n] * rows[m]
    if i:
        f = f * xi ** (2 * i)
    return float(weights @ f) / s


def default_box_size(
    params: ModelParams, floor: float = 8.0, cap: float = 64.0, step: float = 0.25
) -> float:
    """Smallest half-domain L at which the potential has reached its asymptote.

    Scans upward from `floor` for the first L with
    |W(L) + lambda*(k-1)| < 1e-10 * max(1, |threshold|); the tail is probed
    over [L, L+4] as well, because the polynomial prefactor can cross zero
    and make a single-point test fire early.  Raises ValueError past `cap`
    (very large k flattens so slowly that a box this wide is useless; pass L
    explicitly there).
    """
    eps_star = params.threshold
    tol = 1e-10 * max(1.0, abs(eps_star))
    probe = np.linspace(0.0, 4.0, 17)
    L = floor
    while L <= cap:
        tail = np.max(np.abs(eval_w(params, L + probe) - eps_star))
        if tail < tol:
            return L
        L += step
    raise ValueError(
        f"potential tail has not flattened to {tol:.1e} by L = {cap:g}; "
        "pass an explicit half-domain L"
    )


def grid_eigenvalues(potential, L: float, points: int, vmax: float, vectors: bool = False):
    """Dirichlet eigenvalues of -d''/dxi^2 + potential on [-L, L] below vmax.

    Second-order central differences on `points` equispaced nodes (boundary
    values clamped to zero).  Returns (w, v, x, h) with v None unless
    requested; w is ascending and restricted to vmax at the top and to the
    potential minimum minus one at the bottom (a lower bound for this
    discretization).
    """
    if points < 3:
        raise ValueError("points must be at least 3")
    xs = np.linspace(-L, L, points)
    h = xs[1] - xs[0]
    x_in = xs[1:-1]
    W = np.asarray(potential(x_in), dtype=float)
    diag = W + 2.0 / h**2
    off = np.full(points - 3, -1.0 / h**2)
    lo = float(W.min()) - 1.0
    if vectors:
        w, v = eigh_tridiagonal(diag, off, select="v", select_range=(lo, vmax))
        return w, v, x_in, h
    w = eigh_tridiagonal(diag, off, select="v", select_range=(lo, vmax), eigvals_only=True)
    return w, None, x_in, h


@dataclass(frozen=True)
class GridSpectrum:
    """Two-grid finite-difference spectrum with Richardson correction."""

    eigenvalues: np.ndarray
    error_estimates: np.ndarray
    L: float
    points: int
    threshold: float
    boundary_mass: float


def grid_spectrum(
    params: ModelParams,
    L: float | None = None,
    points: int | None = None,
    margin: float = 1.0,
) -> GridSpectrum:
    """Grid-oracle eigenvalues of the scaled operator below threshold + margin.

    Solves on `points` and 2*points - 1 nodes (same box, halved step) and
    returns the Richardson-extrapolated levels together with per-level
    discretization estimates |fine - coarse| / 3.  Bound candidates (below
    the threshold) must keep their probability mass away from the walls;
    otherwise the box is rejected with a suggested larger L.
    """
    if points is None:
        points = 4001
    points = int(points)
    if points < 201 or points % 2 == 0:
        raise ValueError("points must be an odd integer >= 201")
    if L is None:
        L = default_box_size(params)
    L = float(L)
    eps_star = params.threshold
    vmax = eps_star + margin

    def potential(x):
        return eval_w(params, x)

    w_coarse, _, _, _ = grid_eigenvalues(potential, L, points, vmax)
    w_fine, vecs, x_fine, h_fine = grid_eigenvalues(
        potential, L, 2 * points - 1, vmax, vectors=True
    )
    count = min(len(w_coarse), len(w_fine))
    corrected = (4.0 * w_fine[:count] - w_coarse[:count]) / 3.0
    estimates = np.abs(w_fine[:count] - w_coarse[:count]) / 3.0

    edge = np.abs(x_fine) >= L - max(1.0, 0.05 * L)
    worst = 0.0
    for j in range(count):
        if w_fine[j] >= eps_star:
            continue
        worst = max(worst, float(np.sum(vecs[edge, j] ** 2)))
    if worst > BOUNDARY_MASS_LIMIT:
        raise GridDomainError(worst, L, float(math.ceil(1.5 * L)))

    corrected.flags.writeable = False
    estimates.flags.writeable = False
    return GridSpectrum(
        eigenvalues=corrected,
        error_estimates=estimates,
        L=L,
        points=points,
        threshold=eps_star,
        boundary_mass=worst,
    )


@dataclass(frozen=True)
class ValidationReport:
    """Discrepancies between the production pipeline and both oracles."""

    element_max_abs_diff: dict[int, float]
    spectral_diffs: list[float]
    grid_meta: dict
    nu_integer_distances: list[dict]

    def to_dict(self) -> dict:
        return {
            "element_max_abs_diff": {str(i): v for i, v in self.element_max_abs_diff.items()},
            "spectral_diffs": list(self.spectral_diffs),
            "grid_meta": dict(self.grid_meta),
            "nu_integer_distances": [dict(d) for d in self.nu_integer_distances],
        }


def validate(
    params: ModelParams,
    n_max: int = 30,
    *,
    spectral_levels: int = 10,
    grid_points: int = 4001,
) -> ValidationReport:
    """Run both oracles against the closed-form build and collect the diffs.

    Element check: worst |closed form - quadrature| per moment order i over
    n, m <= n_max.  Spectral check: the lowest min(D, spectral_levels)
    discrete levels against the Richardson-corrected grid.  When the
    asymptote rule cannot produce a box (very large k), a box sized from the
    classical turning point of the highest compared level is used instead and
    recorded in grid_meta.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    u = params.u_exact
    uf = float(u)
    blocks = [gaussian_matrix(u, n_max + 1)]
    blocks += moment_matrices(u, n_max + 1, params.r)
    element_diff: dict[int, float] = {}
    for i, block in enumerate(blocks):
        worst = 0.0
        for n in range(n_max + 1):
            for m in range(n, n_max + 1, 2):
                worst = max(worst, abs(block[n, m] - quad_element(n, m, i, uf)))
        element_diff[i] = worst

    result = solve(params)
    count = min(result.discrete_count, spectral_levels)
    diffs: list[float] = []
    meta: dict = {"half_domain": None, "points": grid_points, "convergence_estimate": None,
                  "box_rule_satisfied": None}
    if count:
        eps_cap = float(result.eigenvalues[count - 1])
        try:
            L = default_box_size(params)
            meta["box_rule_satisfied"] = True
        except ValueError:
            # turning-point fallback for wells that flatten far beyond any sane box
            L = max(8.0, math.sqrt(max(eps_cap - params.lam, 1.0)) + 4.0)
            meta["box_rule_satisfied"] = False
        vmax = eps_cap + 0.5

        def potential(x):
            return eval_w(params, x)

        w_coarse, _, _, _ = grid_eigenvalues(potential, L, grid_points, vmax)
        w_fine, _, _, _ = grid_eigenvalues(potential, L, 2 * grid_points - 1, vmax)
        n_cmp = min(count, len(w_coarse), len(w_fine))
        corrected = (4.0 * w_fine[:n_cmp] - w_coarse[:n_cmp]) / 3.0
        diffs = [abs(float(result.eigenvalues[j]) - float(corrected[j])) for j in range(n_cmp)]
        meta["half_domain"] = L
        if n_cmp:
            meta["convergence_estimate"] = float(
                np.max(np.abs(w_fine[:n_cmp] - w_coarse[:n_cmp]) / 3.0)
            )

    distances = []
    for lev in result.levels:
        if not lev.is_discrete:
            continue
        nearest_half = round(lev.nu - 0.5) + 0.5
        distances.append(
            {
                "n": lev.n,
                "nu": lev.nu,
                "dist_integer": abs(lev.nu - round(lev.nu)),
                "dist_half_integer": abs(lev.nu - nearest_half),
            }
        )

    return ValidationReport(
        element_max_abs_diff=element_diff,
        spectral_diffs=diffs,
        grid_meta=meta,
        nu_integer_distances=distances,
    )
