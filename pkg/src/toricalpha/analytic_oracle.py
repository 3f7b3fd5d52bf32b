"""Floating-point checks of the integrability statements behind the exact formula.

This is the only module that uses floats. It works with the potential
``u(y) = log sum_i exp(<v_i, y>)`` over the lattice points ``v_i`` of the
anticanonical polytope. It classifies the model integral

    I(R) = int_{[-R, R]^n} exp(-alpha <v, y>) / exp(u(y))^(1 - alpha) dy

as convergent or divergent by watching how ``I(R)`` grows with the cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from . import exact_linalg as el
from .config import DEFAULT, Settings
from .polytope_geometry import AnticanonicalPolytope, gauge, lattice_points


@dataclass(frozen=True)
class PotentialData:
    exponents: np.ndarray  # (k, n) integer lattice points of the polytope
    dim: int
    # (radius, step) -> grid points, u on the grid, sup-norm of each point
    _grids: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_polytope(cls, p: AnticanonicalPolytope) -> "PotentialData":
        pts = np.array(lattice_points(p, 1), dtype=np.int64)
        return cls(pts, p.dim)

    @cached_property
    def simplices(self) -> tuple[np.ndarray, np.ndarray]:
        """Affinely independent (n+1)-subsets of exponents and log of their squared volumes."""
        idx, logw = [], []
        rows = [tuple(int(x) for x in e) for e in self.exponents]
        for subset in combinations(range(len(rows)), self.dim + 1):
            d = el.det([(1,) + rows[i] for i in subset])
            if d:
                idx.append(subset)
                logw.append(2 * np.log(abs(d)))
        return np.array(idx, dtype=np.int64), np.array(logw)


@dataclass
class ConvergenceVerdict:
    verdict: str  # "convergent", "divergent" or "inconclusive"
    estimates: list[tuple[float, float]] = field(default_factory=list)
    log_estimates: list[float] = field(default_factory=list)
    growth_ratio: float = float("nan")
    note: str = ""

    def to_dict(self) -> dict:
        return {"verdict": self.verdict,
                "estimates": [[r, v] for r, v in self.estimates],
                "log_estimates": list(self.log_estimates),
                "growth_ratio": self.growth_ratio, "note": self.note}


def exact_convergence_predicate(p: AnticanonicalPolytope, alpha, v: Sequence) -> bool:
    """Whether ``-alpha / (1 - alpha) * v`` lies strictly inside the polytope."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    scale = -alpha / (1 - alpha)
    return gauge(p, [scale * Fraction(x) for x in v]) < 1


def log_potential(pot: PotentialData, y: np.ndarray) -> np.ndarray:
    """``u(y)`` for points ``y`` of shape (..., n)."""
    return logsumexp(np.asarray(y, dtype=float) @ pot.exponents.T, axis=-1)


def potential_hessian(pot: PotentialData, y: Sequence[float]) -> np.ndarray:
    """Hessian of ``u``: covariance of the exponents under softmax weights.

    Exponents are centred at the dominant one first, which keeps the result
    accurate far out where the weights are extremely lopsided.
    """
    y = np.asarray(y, dtype=float)
    s = pot.exponents @ y
    top = int(np.argmax(s))
    w = np.exp(s - s[top])
    w /= w.sum()
    shifted = (pot.exponents - pot.exponents[top]).astype(float)
    mean = w @ shifted
    return (shifted * w[:, None]).T @ shifted - np.outer(mean, mean)


def log_hessian_density(pot: PotentialData, y) -> np.ndarray | float:
    """``log(exp(u) * det Hess u)``; accepts one point or an (m, n) array.

    The Hessian is a covariance, and its determinant expands (Cauchy-Binet)
    into a sum over affinely independent (n+1)-subsets ``S`` of exponents of
    ``prod_{k in S} p_k * det[1, v_k]^2``. Every term is nonnegative, so the
    sum stays accurate where the matrix itself is nearly singular.
    """
    y = np.asarray(y, dtype=float)
    single = y.ndim == 1
    pts = y[None, :] if single else y
    s = pts @ pot.exponents.T
    idx, logw = pot.simplices
    out = logsumexp(s[:, idx].sum(axis=2) + logw, axis=1) - pot.dim * logsumexp(s, axis=1)
    return float(out[0]) if single else out


def hessian_density(pot: PotentialData, y: Sequence[float]) -> float:
    """``exp(u) * det Hess u`` at ``y``; bounded above and below on all of R^n."""
    return float(np.exp(log_hessian_density(pot, y)))


def _grid(radius: float, step: float, dim: int) -> np.ndarray:
    n_side = int(round(radius / step))
    axis = (np.arange(-n_side, n_side) + 0.5) * step
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _grid_potential(pot: PotentialData, radius: float, step: float):
    key = (radius, step)
    if key not in pot._grids:
        if len(pot._grids) >= 4:
            pot._grids.pop(next(iter(pot._grids)))
        y = _grid(radius, step, pot.dim)
        pot._grids[key] = (y, log_potential(pot, y), np.max(np.abs(y), axis=1))
    return pot._grids[key]


def _classify(log_est: list[float], settings: Settings) -> tuple[str, float]:
    if len(log_est) < 2:
        return "inconclusive", float("nan")
    ratio = float(np.exp(log_est[-1] - log_est[-2]))
    increasing = all(b > a for a, b in zip(log_est, log_est[1:]))
    if ratio - 1 < settings.saturation_tol:
        return "convergent", ratio
    if increasing and ratio >= settings.growth_factor:
        return "divergent", ratio
    return "inconclusive", ratio


def model_integral_estimate(pot: PotentialData, alpha: float, v: Sequence[float],
                            cutoffs: Sequence[float] = (40, 80, 160, 320),
                            step: float = 0.5, settings: Settings = DEFAULT) -> ConvergenceVerdict:
    """Midpoint-rule estimates of the model integral on growing boxes.

    All boxes share one grid, so each estimate extends the previous one by the
    cells between the two cutoffs.
    """
    cutoffs = [float(r) for r in cutoffs]
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("cutoffs must be strictly increasing")
    if pot.dim > 3:
        return ConvergenceVerdict("inconclusive", note="integration limited to n <= 3")
    n_cells = (2 * round(cutoffs[-1] / step)) ** pot.dim
    if n_cells > settings.max_cells:
        return ConvergenceVerdict("inconclusive",
                                  note=f"{n_cells} cells exceed the budget of {settings.max_cells}")
    v = np.asarray(v, dtype=float)
    y, u, reach = _grid_potential(pot, cutoffs[-1], step)
    log_f = -alpha * (y @ v) - (1 - alpha) * u
    log_cell = pot.dim * np.log(step)
    log_est = []
    for r in cutoffs:
        log_est.append(float(logsumexp(log_f[reach < r]) + log_cell))
    verdict, ratio = _classify(log_est, settings)
    with np.errstate(over="ignore"):
        estimates = [(r, float(np.exp(le))) for r, le in zip(cutoffs, log_est)]
    return ConvergenceVerdict(verdict, estimates, log_est, ratio)


def bisect_threshold(pot: PotentialData, v: Sequence[float], lo: float = 0.05, hi: float = 0.95,
                     width: float = 0.01, **kwargs) -> tuple[float, float]:
    """Bracket the integrability threshold in alpha from numerical verdicts alone.

    ``lo`` must come out convergent and ``hi`` divergent. Inconclusive probes
    are retried halfway towards each end before giving up.
    """
    def verdict(a):
        return model_integral_estimate(pot, a, v, **kwargs).verdict

    if verdict(lo) != "convergent" or verdict(hi) != "divergent":
        raise ValueError("initial bracket does not straddle the threshold")
    while hi - lo > width:
        mid = (lo + hi) / 2
        res = verdict(mid)
        if res == "convergent":
            lo = mid
        elif res == "divergent":
            hi = mid
        else:
            moved = False
            if verdict((lo + mid) / 2) == "convergent":
                lo, moved = (lo + mid) / 2, True
            if verdict((mid + hi) / 2) == "divergent":
                hi, moved = (mid + hi) / 2, True
            if not moved:
                break
    return lo, hi


@dataclass
class ExtremalReport:
    epsilons: list[float]
    estimates: list[float]
    increasing: bool
    positive: bool
    last_increment: float


def extremal_divergence_check(pot: PotentialData, alpha: float, v_tilde: Sequence[float],
                              epsilons: Sequence[float] = (1.0, 0.1, 0.01),
                              radius: float = 20.0, step: float = 0.25) -> ExtremalReport:
    """Integrals of ``exp(-alpha * phi_eps) * det Hess u`` on a fixed box.

    ``phi_eps = log((exp(<v_tilde, y>) + eps) / exp(u))`` decreases as eps
    shrinks, so the estimates must increase.
    """
    eps = [float(e) for e in epsilons]
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be strictly decreasing")
    y = _grid(radius, step, pot.dim)
    u = log_potential(pot, y)
    log_det = log_hessian_density(pot, y) - u
    lin = y @ np.asarray(v_tilde, dtype=float)
    log_cell = pot.dim * np.log(step)
    out = []
    for e in eps:
        phi = np.logaddexp(lin, np.log(e)) - u
        out.append(float(np.exp(logsumexp(-alpha * phi + log_det) + log_cell)))
    increasing = all(b > a for a, b in zip(out, out[1:]))
    last = (out[-1] - out[-2]) / out[-2] if len(out) > 1 else float("nan")
    return ExtremalReport(eps, out, increasing, all(x > 0 for x in out), last)
