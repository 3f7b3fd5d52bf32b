"""The anticanonical polytope ``{a : <a, b_rho> <= 1}`` and exact queries on it.

Both :class:`AnticanonicalPolytope` and :class:`SectionPolytope` are written as
``{x : <x, c_i> <= 1}`` with the origin in the interior, so the gauge of a
point is simply the largest pairing with a facet normal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, factorial, floor
from typing import Iterable, Sequence

from . import exact_linalg as el
from .exact_linalg import RatVector
from .fan_model import FanData, Finding


class NotFanoError(ValueError):
    def __init__(self, findings: Sequence[Finding]):
        self.findings = list(findings)
        super().__init__("; ".join(str(f) for f in self.findings))


@dataclass(frozen=True)
class AnticanonicalPolytope:
    dim: int
    facet_normals: tuple[tuple[int, ...], ...]
    vertices: tuple[RatVector, ...]
    # vertex a_tau of each maximal cone, in cone order
    cone_vertices: tuple[RatVector, ...] = ()

    def transformed(self, u: Sequence[Sequence[int]]) -> "AnticanonicalPolytope":
        """Polytope of the fan ``u . fan``: normals map by ``u``, points by ``u^-T``."""
        ut = el.inverse_transpose(u)
        cone_vertices = tuple(el.matvec(ut, v) for v in self.cone_vertices)
        return AnticanonicalPolytope(
            self.dim,
            tuple(el.matvec(u, b) for b in self.facet_normals),
            tuple(sorted(el.matvec(ut, v) for v in self.vertices)),
            cone_vertices,
        )


@dataclass(frozen=True)
class SectionPolytope:
    """Intersection of a polytope with a linear subspace, in subspace coordinates."""

    ambient: AnticanonicalPolytope
    subspace_basis: tuple[RatVector, ...]
    vertices: tuple[RatVector, ...]
    facet_normals: tuple[RatVector, ...]

    @property
    def dim(self) -> int:
        return len(self.subspace_basis)

    def to_ambient(self, y: Sequence) -> RatVector:
        return tuple(sum((c * b[k] for c, b in zip(y, self.subspace_basis)), Fraction(0))
                     for k in range(self.ambient.dim))


def enumerate_vertices(normals: Sequence[Sequence], dim: int) -> list[RatVector]:
    """Vertices of ``{x : <x, c> <= 1 for c in normals}`` by intersecting ``dim``-subsets."""
    found = set()
    for rows in combinations(range(len(normals)), dim):
        m = [normals[i] for i in rows]
        try:
            x = el.solve_square(m, [1] * dim)
        except el.SingularMatrixError:
            continue
        if all(el.dot(x, c) <= 1 for c in normals):
            found.add(x)
    return sorted(found)


def affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    return el.rank(diffs) if diffs else 0


def build_polytope(fan: FanData) -> AnticanonicalPolytope:
    """Anticanonical polytope of a complete regular fan.

    Each maximal cone contributes the point where its generators pair to 1.
    Raises :class:`NotFanoError` unless these points are exactly the vertices
    and each one is tight on exactly the facets of its own cone.
    """
    findings: list[Finding] = []
    normals = fan.rays
    cone_vertices = []
    for j, cone in enumerate(fan.max_cones):
        try:
            a = el.solve_square(fan.cone_generators(j), [1] * fan.dim)
        except el.SingularMatrixError:
            raise NotFanoError([Finding("degenerate-cone", j, "cone generators are dependent")])
        cone_vertices.append(a)
        pairings = [el.dot(a, b) for b in normals]
        over = [i for i, s in enumerate(pairings) if s > 1]
        if over:
            findings.append(Finding("not-convex", j, f"vertex {_fmt(a)} violates facet of ray {over[0]}"))
            continue
        tight = {i for i, s in enumerate(pairings) if s == 1}
        if tight != set(cone):
            extra = sorted(tight - set(cone))
            findings.append(Finding("vertex-tightness", j,
                                    f"vertex {_fmt(a)} is also tight on rays {extra}"))
    if findings:
        raise NotFanoError(findings)
    vertices = sorted(set(cone_vertices))
    if len(vertices) != len(cone_vertices):
        raise NotFanoError([Finding("vertex-collision", None,
                                    "two maximal cones share the same vertex")])
    independent = enumerate_vertices(normals, fan.dim)
    if independent != vertices:
        raise NotFanoError([Finding("vertex-mismatch", None,
                                    "polytope has vertices not coming from maximal cones")])
    return AnticanonicalPolytope(fan.dim, normals, tuple(vertices), tuple(cone_vertices))


def _fmt(v: Iterable) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def gauge(p, x: Sequence) -> Fraction:
    """Largest pairing of ``x`` with a facet normal of ``p``.

    Below 1 in the interior, 1 on the boundary, above 1 outside.
    """
    return max(Fraction(el.dot(x, c)) for c in p.facet_normals)


def ray_boundary_point(p, direction: Sequence) -> RatVector:
    """Where the ray from the origin through ``direction`` leaves ``p``."""
    d = el.as_rat_vector(direction)
    if not any(d):
        raise ValueError("direction must be nonzero")
    g = gauge(p, d)
    return tuple(x / g for x in d)


def section(p: AnticanonicalPolytope, subspace_basis: Sequence[Sequence]) -> SectionPolytope:
    """Slice ``p`` by ``span(subspace_basis)``, keeping only facet-defining inequalities."""
    basis = tuple(el.as_rat_vector(b) for b in subspace_basis)
    d = len(basis)
    if d < 1:
        raise ValueError("subspace must have dimension at least 1")
    if el.rank(basis) != d:
        raise ValueError("subspace basis is linearly dependent")
    induced = sorted({tuple(el.dot(b, c) for b in basis) for c in p.facet_normals} - {(0,) * d})
    induced = [tuple(Fraction(x) for x in c) for c in induced]
    vertices = enumerate_vertices(induced, d)
    facets = [c for c in induced
              if affine_dim([v for v in vertices if el.dot(v, c) == 1]) == d - 1]
    return SectionPolytope(p, basis, tuple(vertices), tuple(facets))


def lattice_points(p: AnticanonicalPolytope, m: int = 1) -> list[tuple[int, ...]]:
    """Integer points of the dilation ``m * p``, sorted lexicographically."""
    if m < 1:
        raise ValueError("dilation factor must be a positive integer")
    ranges = []
    for k in range(p.dim):
        coords = [v[k] * m for v in p.vertices]
        ranges.append(range(floor(min(coords)), ceil(max(coords)) + 1))
    return [x for x in product(*ranges) if all(el.dot(x, b) <= m for b in p.facet_normals)]


def _facets_of_face(face: Sequence[int], points, normals, k: int) -> list[tuple[int, ...]]:
    out = []
    for c in normals:
        tight = tuple(i for i in face if el.dot(points[i], c) == 1)
        if len(tight) < len(face) and tight not in out and \
                affine_dim([points[i] for i in tight]) == k - 1:
            out.append(tight)
    return out


def triangulate(points: Sequence[RatVector], normals, face: Sequence[int] | None = None,
                k: int | None = None) -> list[tuple[int, ...]]:
    """Pulling triangulation of a face of ``{<x, c> <= 1}``.

    The lexicographically smallest vertex is coned over triangulations of the
    facets that miss it. Returns simplices as tuples of indices into ``points``.
    """
    if face is None:
        face = tuple(range(len(points)))
    if k is None:
        k = affine_dim([points[i] for i in face])
    if k == 0:
        return [(face[0],)]
    apex = min(face, key=lambda i: points[i])
    simplices = []
    for facet in _facets_of_face(face, points, normals, k):
        if apex in facet:
            continue
        simplices.extend((apex,) + s for s in triangulate(points, normals, facet, k - 1))
    return simplices


def boundary_simplices(points: Sequence[RatVector], normals, dim: int) -> list[tuple[int, ...]]:
    """Triangulation of the boundary: every facet triangulated separately."""
    full = tuple(range(len(points)))
    out = []
    for facet in _facets_of_face(full, points, normals, dim):
        out.extend(triangulate(points, normals, facet, dim - 1))
    return out


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    base = vertices[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(v, base)] for v in vertices[1:]]
    return abs(el.rat_det(rows)) / factorial(len(rows))


def volume(p: AnticanonicalPolytope) -> Fraction:
    pts = list(p.vertices)
    return sum((simplex_volume([pts[i] for i in s]) for s in triangulate(pts, p.facet_normals)),
               Fraction(0))


def barycenter(p: AnticanonicalPolytope) -> RatVector:
    """Exact centroid, from a pulling triangulation anchored at the smallest vertex."""
    pts = list(p.vertices)
    total = Fraction(0)
    acc = [Fraction(0)] * p.dim
    for s in triangulate(pts, p.facet_normals):
        verts = [pts[i] for i in s]
        vol = simplex_volume(verts)
        total += vol
        for k in range(p.dim):
            acc[k] += vol * sum(v[k] for v in verts) / len(verts)
    return tuple(a / total for a in acc)
