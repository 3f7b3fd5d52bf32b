"""Exact alpha_G-invariant of a smooth toric Fano manifold.

For a non-symmetric fan the invariant is ``t / (1 + t)``, where ``t`` is the
smallest ratio ``|w_v| / |v|`` over nonzero fixed boundary points ``v`` and
``w_v`` is the boundary point on the opposite ray. Since ``w_v = -v / g(-v)``
for the gauge ``g``, the ratio is ``1 / g(-v)``. ``g(-.)`` is convex, so its
maximum over the fixed section is reached at a vertex and the search is
finite and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .exact_linalg import RatVector
from .fan_model import FanData, require_fano
from .polytope_geometry import (AnticanonicalPolytope, SectionPolytope, build_polytope,
                                gauge, section)
from .symmetry import FixedSpace, SymmetryGroup, fixed_space, weyl_group


@dataclass(frozen=True)
class CertificateEntry:
    """Gauge evaluations at one vertex of the fixed section."""

    point: RatVector
    gauge: Fraction
    antipodal_gauge: Fraction
    binding_facet: int

    @property
    def ratio(self) -> Fraction:
        return 1 / self.antipodal_gauge


@dataclass
class AlphaReport:
    symmetric: bool
    alpha: Fraction
    t_star: Fraction | None = None
    minimizers: list[RatVector] = field(default_factory=list)
    m_zero: int | None = None
    certificate: list[CertificateEntry] = field(default_factory=list)


def stable_set_data(fan: FanData, polytope: AnticanonicalPolytope | None = None
                    ) -> tuple[SymmetryGroup, FixedSpace, SectionPolytope | None]:
    """Symmetry group, its fixed space on M, and the section whose boundary is S.

    The section is None when only the origin is fixed.
    """
    group = weyl_group(fan)
    fixed = fixed_space(group, "M")
    if fixed.dim == 0:
        return group, fixed, None
    if polytope is None:
        polytope = build_polytope(fan)
    return group, fixed, section(polytope, fixed.basis)


def certificate(sec: SectionPolytope) -> list[CertificateEntry]:
    amb = sec.ambient
    entries = []
    for u in sec.vertices:
        v = sec.to_ambient(u)
        neg = tuple(-x for x in v)
        pairings = [sum((a * b for a, b in zip(neg, c)), Fraction(0)) for c in amb.facet_normals]
        g_neg = max(pairings)
        entries.append(CertificateEntry(v, gauge(amb, v), g_neg, pairings.index(g_neg)))
    return entries


def optimum_ratio(sec: SectionPolytope) -> tuple[Fraction, list[RatVector]]:
    """Smallest ``1 / g(-v)`` over the boundary of the section, and its vertex minimizers."""
    if not sec.vertices:
        raise ValueError("section polytope is empty")
    cert = certificate(sec)
    worst = max(e.antipodal_gauge for e in cert)
    return 1 / worst, [e.point for e in cert if e.antipodal_gauge == worst]


def m_zero(minimizers: Sequence[Sequence]) -> int:
    """Least dilation making some minimizer a lattice point."""
    if not minimizers:
        raise ValueError("need at least one minimizer")
    return min(lcm(*(Fraction(x).denominator for x in v)) for v in minimizers)


def alpha_g(fan: FanData) -> AlphaReport:
    """alpha_G of a toric Fano fan; raises NotFanoInputError otherwise."""
    require_fano(fan)
    _, _, sec = stable_set_data(fan)
    if sec is None:
        return AlphaReport(symmetric=True, alpha=Fraction(1))
    cert = certificate(sec)
    t_star, minimizers = optimum_ratio(sec)
    return AlphaReport(symmetric=False, alpha=t_star / (1 + t_star), t_star=t_star,
                       minimizers=minimizers, m_zero=m_zero(minimizers), certificate=cert)


@dataclass(frozen=True)
class AlphaMRow:
    m: int
    value: Fraction | None
    lower: Fraction
    upper: Fraction
    determined: bool


def alpha_m_report(fan: FanData, m_max: int | None = None,
                   report: AlphaReport | None = None) -> list[AlphaMRow]:
    """alpha_{m,G} for m = 1..m_max.

    From m_zero on the sequence equals alpha_G. Below it only the bracket
    ``[alpha_G, 1)`` is known.
    """
    report = alpha_g(fan) if report is None else report
    threshold = 1 if report.symmetric else report.m_zero
    if m_max is None:
        m_max = threshold + 2
    rows = []
    for m in range(1, m_max + 1):
        if m >= threshold:
            rows.append(AlphaMRow(m, report.alpha, report.alpha, report.alpha, True))
        else:
            rows.append(AlphaMRow(m, None, report.alpha, Fraction(1), False))
    return rows
