"""Lattice automorphisms of a fan and their fixed subspaces.

The group acts on N by matrices sending rays to rays and maximal cones to
maximal cones. On M it acts by the inverse transpose, which preserves the
anticanonical polytope.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Literal

from . import exact_linalg as el
from .exact_linalg import IntMatrix, RatVector
from .fan_model import FanData

Side = Literal["N", "M"]


@dataclass(frozen=True)
class SymmetryGroup:
    dim: int
    elements: tuple[IntMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def dual(self, g: IntMatrix) -> IntMatrix:
        return el.inverse_transpose(g)

    def action(self, side: Side) -> tuple[IntMatrix, ...]:
        if side == "N":
            return self.elements
        if side == "M":
            return tuple(self.dual(g) for g in self.elements)
        raise ValueError(f"side must be 'N' or 'M', got {side!r}")


@dataclass(frozen=True)
class FixedSpace:
    side: Side
    basis: tuple[RatVector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _maps_fan_to_itself(g: IntMatrix, fan: FanData, ray_index: dict) -> bool:
    images = []
    for r in fan.rays:
        img = el.matvec(g, r)
        if img not in ray_index:
            return False
        images.append(ray_index[img])
    if len(set(images)) != len(images):
        return False
    cones = {frozenset(c) for c in fan.max_cones}
    return all(frozenset(images[i] for i in c) in cones for c in fan.max_cones)


def weyl_group(fan: FanData) -> SymmetryGroup:
    """All lattice automorphisms preserving the fan, sorted lexicographically.

    A symmetry sends the generators of a reference cone to the generators of
    some maximal cone in some order, so trying every (cone, ordering) pair
    enumerates the group.
    """
    ray_index = {r: i for i, r in enumerate(fan.rays)}
    b0 = el.transpose(fan.cone_generators(0))
    b0_inv = el.inverse(b0)
    found = set()
    for j in range(len(fan.max_cones)):
        for order in permutations(fan.cone_generators(j)):
            g = el.to_int_matrix(el.matmul(el.transpose(order), b0_inv))
            if g is None or abs(el.det(g)) != 1:
                continue
            if _maps_fan_to_itself(g, fan, ray_index):
                found.add(g)
    return SymmetryGroup(fan.dim, tuple(sorted(found)))


def fixed_space(group: SymmetryGroup, side: Side) -> FixedSpace:
    n = group.dim
    rows = []
    for g in group.action(side):
        for i in range(n):
            rows.append([g[i][j] - (i == j) for j in range(n)])
    return FixedSpace(side, tuple(el.kernel_basis(rows, cols=n)))


def is_symmetric(fan: FanData, group: SymmetryGroup | None = None) -> bool:
    """True iff no nonzero lattice vector is fixed by every fan symmetry."""
    group = weyl_group(fan) if group is None else group
    dim_n = fixed_space(group, "N").dim
    dim_m = fixed_space(group, "M").dim
    if dim_n != dim_m:
        raise AssertionError(f"fixed spaces disagree: dim N-side {dim_n}, M-side {dim_m}")
    return dim_n == 0
