"""Tunable limits and numerical tolerances."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    # largest lattice rank accepted; symmetry search is |cones| * n!
    max_dim: int = 8
    # relative increment below which cutoff estimates count as saturated
    saturation_tol: float = 0.01
    # minimal ratio between the last two cutoff estimates to call divergence
    growth_factor: float = 1.5
    # cell budget for one quadrature run; above this the verdict is inconclusive
    max_cells: int = 4_000_000


DEFAULT = Settings()
