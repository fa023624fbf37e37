"""Continuous view of the breakpoint construction.

A schedule optimal for weighted completion time, normalized so that
``sum w_j C_j* = 1`` and with time measured in units of the optimal makespan
``L``, is a probability distribution over completion times. Truncating at
``alpha * L`` and appending a makespan schedule gives an average-completion
ratio of at most ``1 + A(alpha, f)`` where

    A(alpha, f) = integral over x >= alpha of (1 + alpha - x) / x  f(x) dx.

The worst distribution for breakpoints restricted to ``[0, rho]`` is
:func:`f_opt`, which makes ``A`` constant (an equalizer) at
``beta(rho) - 1``; :func:`dual_h` is the matching strategy for the breakpoint
player. :func:`solve_game` computes the same value from a discretized
zero-sum game.

Everything here is binary64; exact rationals stay in the scheduling modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect, linprog

from .core import Instance, Schedule
from .errors import DegenerateError, DomainError, GameConvergenceError

TOTAL_TOL = 1e-10
DEFAULT_POINTS = 200_001

# rounded pairs as usually quoted, for side-by-side reporting
COROLLARY_PAIRS = ((2.0, 1.582), (1.695, 2.0), (1.806, 1.806))


def beta(rho: float) -> float:
    """Average-completion factor ``e^rho / (e^rho - 1)`` paired with makespan ``1 + rho``."""
    if not rho > 0:
        raise DomainError(f"beta needs rho > 0, got {rho}")
    return -1.0 / math.expm1(-rho)


def rho_for_beta(b: float) -> float:
    if not b > 1:
        raise DomainError(f"need beta > 1, got {b}")
    return math.log(b / (b - 1))


def balanced_rho() -> float:
    """The rho where both factors coincide: ``1 + rho = beta(rho)``."""
    return bisect(lambda r: 1 + r - beta(r), 0.5, 1.0, xtol=1e-12, rtol=4 * np.finfo(float).eps)


def corollary_table() -> list[dict]:
    """Derived pairs next to their rounded quoted values."""
    rows = []
    for rho, quoted in ((1.0, COROLLARY_PAIRS[0]), (math.log(2), COROLLARY_PAIRS[1]),
                        (balanced_rho(), COROLLARY_PAIRS[2])):
        rows.append({"rho": rho, "makespan": 1 + rho, "avg": beta(rho),
                     "quoted_makespan": quoted[0], "quoted_avg": quoted[1]})
    return rows


@dataclass(frozen=True)
class Pdf:
    """A density on a grid (piecewise linear, trapezoid rule) plus point masses."""

    grid: np.ndarray = field(default_factory=lambda: np.zeros(0))
    density: np.ndarray = field(default_factory=lambda: np.zeros(0))
    masses: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        dens = np.asarray(self.density, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "density", dens)
        object.__setattr__(self, "masses",
                           tuple((float(x), float(m)) for x, m in self.masses))
        if grid.shape != dens.shape or grid.ndim != 1:
            raise DomainError("grid and density must be 1-d arrays of equal length")
        if len(grid) == 1:
            raise DomainError("a density needs at least two grid points")
        if len(grid) and (grid[0] < 0 or np.any(np.diff(grid) <= 0)):
            raise DomainError("grid must be non-negative and strictly increasing")
        if np.any(dens < 0):
            raise DomainError("negative density")
        if any(x < 0 or m < 0 for x, m in self.masses):
            raise DomainError("point masses need location >= 0 and mass >= 0")
        if abs(self.total() - 1) > TOTAL_TOL:
            raise DomainError(f"total measure {self.total()!r} is not 1")

    def continuous_mass(self) -> float:
        if not len(self.grid):
            return 0.0
        return float(np.trapezoid(self.density, self.grid))

    def total(self) -> float:
        return self.continuous_mass() + math.fsum(m for _, m in self.masses)

    def at(self, x: float) -> float:
        if not len(self.grid):
            return 0.0
        return float(np.interp(x, self.grid, self.density, left=0.0, right=0.0))


def _integrate(f: Pdf, lo: float, hi: float,
               kernel: Callable[[np.ndarray], np.ndarray],
               singular_at_zero: bool = False) -> float:
    """Trapezoid integral of ``kernel * density`` over ``[lo, hi]``."""
    g, d = f.grid, f.density
    if not len(g):
        return 0.0
    lo, hi = max(lo, g[0]), min(hi, g[-1])
    if lo >= hi:
        return 0.0
    inside = (g > lo) & (g < hi)
    xs = np.concatenate([[lo], g[inside], [hi]])
    ds = np.concatenate([[f.at(lo)], d[inside], [f.at(hi)]])
    live = ds > 0
    if singular_at_zero and np.any(live & (xs == 0)):
        raise DomainError("kernel is singular at x = 0 where the density is positive")
    vals = np.zeros_like(xs)
    vals[live] = kernel(xs[live]) * ds[live]
    if singular_at_zero and xs[0] == 0 and len(xs) >= 3:
        # density vanishes at 0 but kernel * density has a finite limit there
        vals[0] = 2 * vals[1] - vals[2]
    return float(np.trapezoid(vals, xs))


def A(alpha: float, f: Pdf) -> float:
    """``integral_{x >= alpha} (1 + alpha - x)/x f(x) dx``; atoms at ``x == alpha`` count."""
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    atoms = []
    for x, m in f.masses:
        if x >= alpha and m > 0:
            if x == 0:
                raise DomainError("point mass at 0 makes the kernel singular")
            atoms.append((1 + alpha - x) / x * m)
    return math.fsum(atoms) + _integrate(f, alpha, math.inf, lambda x: (1 + alpha - x) / x,
                                         singular_at_zero=True)


def composed_avg_bound(alpha: float, f: Pdf) -> float:
    """Upper bound on the average-completion ratio after a breakpoint at ``alpha * L``."""
    return 1.0 + A(alpha, f)


def f_opt(rho: float, points: int = DEFAULT_POINTS) -> Pdf:
    """Worst-case completion-time distribution for breakpoints in ``[0, rho]``.

    Density ``e^rho/(e^rho - 1) x e^-x`` on ``[0, rho)`` and an atom of
    ``rho / (e^rho - 1)`` at ``rho``.
    """
    if not rho > 0:
        raise DomainError("rho must be positive")
    em1 = math.expm1(rho)
    x = np.linspace(0.0, rho, points)
    dens = (em1 + 1) / em1 * x * np.exp(-x)
    return Pdf(x, dens, ((rho, rho / em1),))


def dual_h(rho: float, points: int = DEFAULT_POINTS) -> Pdf:
    """Breakpoint distribution ``e^alpha / (e^rho - 1)`` on ``[0, rho]``."""
    if not 0 < rho <= 1:
        raise DomainError("dual_h is defined for rho in (0, 1]")
    a = np.linspace(0.0, rho, points)
    return Pdf(a, np.exp(a) / math.expm1(rho))


def dual_payoff(x: float, h: Pdf) -> float:
    """Expected ``A``-kernel at completion point ``x`` when the breakpoint is drawn from ``h``."""
    if not x > 0:
        raise DomainError("x must be positive")
    atoms = math.fsum((1 + a - x) / x * m for a, m in h.masses if a <= x)
    return atoms + _integrate(h, 0.0, x, lambda a: (1 + a - x) / x)


def _partial_trapezoid(grid: np.ndarray, vals: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Trapezoid integral of the piecewise-linear ``vals`` from ``grid[0]`` to each ``u``."""
    cum = np.concatenate([[0.0], np.cumsum((vals[1:] + vals[:-1]) / 2 * np.diff(grid))])
    k = np.clip(np.searchsorted(grid, u, side="right") - 1, 0, len(grid) - 2)
    vu = np.interp(u, grid, vals)
    return cum[k] + (u - grid[k]) * (vals[k] + vu) / 2


def dual_payoff_many(xs, h: Pdf) -> np.ndarray:
    """Vectorized :func:`dual_payoff`, same quadrature."""
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0):
        raise DomainError("x must be positive")
    out = np.zeros_like(xs)
    for a, m in h.masses:
        out += np.where(a <= xs, (1 + a - xs) / xs * m, 0.0)
    g, d = h.grid, h.density
    if len(g):
        u = np.clip(xs, g[0], g[-1])
        mass = _partial_trapezoid(g, d, u)
        first = _partial_trapezoid(g, g * d, u)
        out += np.where(xs > g[0], ((1 - xs) * mass + first) / xs, 0.0)
    return out


def schedule_masses(S: Schedule, L, instance: Instance) -> dict[Fraction, Fraction]:
    """Exact atoms ``location C_j/L -> w_j C_j / sum_k w_k C_k`` (jobs with ``C_j = 0`` dropped)."""
    L = Fraction(L)
    if L <= 0:
        raise DegenerateError("L must be positive")
    total = S.weighted_sum(instance)
    if total <= 0:
        raise DegenerateError("weighted completion sum is zero")
    atoms: dict[Fraction, Fraction] = {}
    for j, c in sorted(S.completion.items()):
        if c > 0:
            loc = c / L
            atoms[loc] = atoms.get(loc, Fraction(0)) + instance.w(j) * c / total
    return atoms


def schedule_to_pdf(S: Schedule, L, instance: Instance) -> Pdf:
    atoms = schedule_masses(S, L, instance)
    return Pdf(masses=tuple((float(x), float(m)) for x, m in sorted(atoms.items())))


@dataclass(frozen=True)
class GameSolution:
    rho: float
    N: int
    primal: Pdf
    dual: Pdf
    primal_value: float
    dual_value: float
    gap: float
    lower_bound: float
    """Value the primal strategy guarantees against every real ``alpha`` in ``[0, rho]``."""

    @property
    def target(self) -> float:
        return beta(self.rho) - 1


def payoff_matrix(rho: float, N: int, strict: bool = False) -> np.ndarray:
    """Rows: breakpoints ``alpha_i``; columns: completion points ``x_k``; both ``i*rho/N``."""
    g = np.arange(1, N + 1) * (rho / N)
    a, x = g[:, None], g[None, :]
    live = x > a if strict else x >= a
    return np.where(live, (1 + a - x) / x, 0.0)


def _to_distribution(v: np.ndarray) -> np.ndarray:
    v = np.clip(np.asarray(v, dtype=float), 0.0, None)
    s = v.sum()
    if s <= 0:
        raise GameConvergenceError("solver returned an empty strategy", math.inf)
    return v / s


def solve_game(rho: float, N: int = 1000, eps: float = 1e-3) -> GameSolution:
    """Solve the discretized max-min game exactly with an LP (HiGHS).

    The completion-point player maximizes ``min_alpha sum_k K[alpha, x_k] p_k``;
    the breakpoint strategy is read off the LP duals. Both values are
    recomputed from the strategies, so ``gap`` is a certificate, not a solver
    estimate.
    """
    if not rho > 0:
        raise DomainError("rho must be positive")
    if N < 100:
        raise DomainError("grid size N must be at least 100")
    if not eps > 0:
        raise DomainError("eps must be positive")
    K = payoff_matrix(rho, N)
    c = np.zeros(N + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-K, np.ones((N, 1))])
    A_eq = np.zeros((1, N + 1))
    A_eq[0, :N] = 1.0
    bounds = [(0, None)] * N + [(None, None)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(N), A_eq=A_eq, b_eq=[1.0],
                  bounds=bounds, method="highs")
    if res.status != 0:
        raise GameConvergenceError(f"LP solver failed: {res.message}", math.inf)
    p = _to_distribution(res.x[:N])
    q = _to_distribution(-res.ineqlin.marginals)
    primal_value = float((K @ p).min())
    dual_value = float((q @ K).max())
    gap = max(dual_value - primal_value, 0.0)
    if gap > eps:
        raise GameConvergenceError("duality gap above tolerance", gap)

    g = np.arange(1, N + 1) * (rho / N)
    at_zero = float(np.sum((1 - g) / g * p))
    # A(alpha) is increasing between grid points, so its infimum over real
    # alpha sits at 0 or just to the right of some x_k < rho
    left_limits = payoff_matrix(rho, N, strict=True)[:-1] @ p
    lower = min(at_zero, float(left_limits.min()))
    keep_p, keep_q = p > 0, q > 0
    primal = Pdf(masses=tuple(zip(g[keep_p], p[keep_p])))
    dual = Pdf(masses=tuple(zip(g[keep_q], q[keep_q])))
    return GameSolution(rho, N, primal, dual, primal_value, dual_value, gap, lower)


def equalizer_table(rho: float, samples: int = 200,
                    points: int = DEFAULT_POINTS) -> list[tuple[float, float, float]]:
    """``(alpha, A(alpha, f_opt), deviation from beta - 1)`` on evenly spaced alphas."""
    f = f_opt(rho, points)
    target = beta(rho) - 1
    rows = []
    for alpha in np.linspace(0.0, rho, samples):
        a = A(float(alpha), f)
        rows.append((float(alpha), a, a - target))
    return rows


def max_dual_payoff(rho: float = 1.0, upper: float = 3.0, count: int = 10_000,
                    points: int = DEFAULT_POINTS) -> tuple[float, float]:
    """Largest ``dual_payoff`` under ``dual_h(rho)`` over an even grid in ``(0, upper]``."""
    h = dual_h(rho, points)
    xs = np.linspace(upper / count, upper, count)
    vals = dual_payoff_many(xs, h)
    k = int(np.argmax(vals))
    return float(xs[k]), float(vals[k])


def convergence_study(rho: float, sizes: Sequence[int]) -> list[tuple[int, float, float]]:
    """``(N, primal_value, |primal_value - (beta - 1)|)`` for each grid size."""
    target = beta(rho) - 1
    out = []
    for N in sizes:
        sol = solve_game(rho, N)
        out.append((N, sol.primal_value, abs(sol.primal_value - target)))
    return out
