"""Exact alpha_G-invariants of smooth toric Fano manifolds from fan data."""

__version__ = "0.1.0"

from .alpha import AlphaReport, alpha_g, alpha_m_report, m_zero, optimum_ratio, stable_set_data
from .fan_model import FanData, FanDiagnosis, FanValidationError, validate_fan
from .polytope_geometry import (AnticanonicalPolytope, SectionPolytope, barycenter,
                                build_polytope, gauge, lattice_points, ray_boundary_point,
                                section)
from .symmetry import SymmetryGroup, fixed_space, is_symmetric, weyl_group

__all__ = [
    "AlphaReport", "AnticanonicalPolytope", "FanData", "FanDiagnosis", "FanValidationError",
    "SectionPolytope", "SymmetryGroup", "alpha_g", "alpha_m_report", "barycenter",
    "build_polytope", "fixed_space", "gauge", "is_symmetric", "lattice_points", "m_zero",
    "optimum_ratio", "ray_boundary_point", "section", "stable_set_data", "validate_fan",
    "weyl_group",
]
