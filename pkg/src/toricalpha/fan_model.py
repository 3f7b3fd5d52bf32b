"""Complete regular fans and the checks that make them toric Fano.

A fan is given by primitive ray generators in the lattice N and maximal cones
as index sets into the rays. Only simplicial fans with ``n`` generators per
maximal cone are representable.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import exact_linalg as el
from .config import DEFAULT


@dataclass(frozen=True)
class Finding:
    """One failed check: what kind, which ray or cone index, and why."""

    kind: str
    index: int | None
    reason: str

    def __str__(self) -> str:
        where = "" if self.index is None else f" at index {self.index}"
        return f"{self.kind}{where}: {self.reason}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index, "reason": self.reason}


class FanValidationError(ValueError):
    """Structurally invalid fan data (bad rays or cones)."""

    def __init__(self, findings: Sequence[Finding]):
        self.findings = list(findings)
        super().__init__("; ".join(str(f) for f in self.findings))


@dataclass(frozen=True)
class FanData:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(tuple(int(i) for i in c)
                                                    for c in self.max_cones))
        findings = _structural_findings(self)
        if findings:
            raise FanValidationError(findings)

    @classmethod
    def from_lists(cls, rays, max_cones, name: str = "", dim: int | None = None) -> "FanData":
        rays = [tuple(r) for r in rays]
        if dim is None:
            if not rays:
                raise FanValidationError([Finding("empty", None, "fan has no rays")])
            dim = len(rays[0])
        return cls(dim=dim, rays=tuple(rays), max_cones=tuple(tuple(c) for c in max_cones),
                   name=name)

    def cone_generators(self, cone: int) -> tuple[tuple[int, ...], ...]:
        return tuple(self.rays[i] for i in self.max_cones[cone])

    def transformed(self, u: Sequence[Sequence[int]]) -> "FanData":
        """Image of the fan under a unimodular change of basis of N."""
        return FanData(self.dim, tuple(el.matvec(u, r) for r in self.rays),
                       self.max_cones, self.name)


@dataclass
class FanDiagnosis:
    is_complete: bool
    is_regular: bool
    is_fano: bool
    failures: list[Finding] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"is_complete": self.is_complete, "is_regular": self.is_regular,
                "is_fano": self.is_fano,
                "failures": [f.to_dict() for f in self.failures]}


def _structural_findings(fan: FanData) -> list[Finding]:
    out: list[Finding] = []
    n = fan.dim
    if n < 1:
        return [Finding("dimension", None, f"lattice rank must be positive, got {n}")]
    if n > DEFAULT.max_dim:
        return [Finding("dimension", None, f"lattice rank {n} exceeds the limit {DEFAULT.max_dim}")]
    seen: dict[tuple[int, ...], int] = {}
    for i, r in enumerate(fan.rays):
        if len(r) != n:
            out.append(Finding("ray-dimension", i, f"ray {list(r)} has {len(r)} coordinates, expected {n}"))
            continue
        g = 0
        for x in r:
            g = gcd(g, x)
        if g == 0:
            out.append(Finding("zero-ray", i, "ray generator is the zero vector"))
        elif g != 1:
            out.append(Finding("non-primitive-ray", i, f"non-primitive ray {list(r)} (gcd {g})"))
        if r in seen:
            out.append(Finding("duplicate-ray", i, f"ray {list(r)} repeats ray {seen[r]}"))
        else:
            seen[r] = i
    if out:
        return out
    used = set()
    for j, c in enumerate(fan.max_cones):
        if len(c) != n:
            out.append(Finding("cone-size", j, f"maximal cone has {len(c)} rays, expected {n}"))
            continue
        if len(set(c)) != len(c):
            out.append(Finding("cone-repeat", j, "maximal cone repeats a ray index"))
            continue
        bad = [i for i in c if not 0 <= i < len(fan.rays)]
        if bad:
            out.append(Finding("cone-index", j, f"ray index {bad[0]} out of range 0..{len(fan.rays) - 1}"))
            continue
        used.update(c)
        if el.det([fan.rays[i] for i in c]) == 0:
            out.append(Finding("degenerate-cone", j, "cone generators are linearly dependent"))
    if not fan.max_cones:
        out.append(Finding("empty", None, "fan has no maximal cones"))
    if not out:
        for i in range(len(fan.rays)):
            if i not in used:
                out.append(Finding("unused-ray", i, "ray lies in no maximal cone"))
    cone_sets = [frozenset(c) for c in fan.max_cones]
    for j, c in enumerate(cone_sets):
        if c in cone_sets[:j]:
            out.append(Finding("duplicate-cone", j, "maximal cone listed twice"))
    return out


def ridge_adjacency(fan: FanData) -> dict[tuple[int, ...], list[int]]:
    """Map each ridge (sorted ``n-1`` ray indices) to the maximal cones containing it."""
    adj: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for j, cone in enumerate(fan.max_cones):
        for ridge in combinations(sorted(cone), fan.dim - 1):
            adj[ridge].append(j)
    return dict(adj)


def _ridge_normal(fan: FanData, ridge: tuple[int, ...]) -> tuple[Fraction, ...]:
    rows = [fan.rays[i] for i in ridge]
    (normal,) = el.kernel_basis(rows, cols=fan.dim)
    return normal


def _covering_degree(fan: FanData) -> int:
    """Number of maximal cones whose interior contains a generic point."""
    gens0 = fan.cone_generators(0)
    inverses = [el.inverse(el.transpose(fan.cone_generators(j))) for j in range(len(fan.max_cones))]
    for shift in range(50):
        coeffs = [Fraction(1, i + shift + 2) for i in range(fan.dim)]
        p = tuple(sum(c * g[k] for c, g in zip(coeffs, gens0)) for k in range(fan.dim))
        degree = 0
        generic = True
        for inv in inverses:
            lam = el.matvec(inv, p)
            if all(x > 0 for x in lam):
                degree += 1
            elif all(x >= 0 for x in lam):
                generic = False
                break
        if generic:
            return degree
    raise RuntimeError("no generic test point found")


def check_completeness(fan: FanData) -> list[Finding]:
    findings = []
    adj = ridge_adjacency(fan)
    for ridge, cones in sorted(adj.items()):
        if len(cones) != 2:
            findings.append(Finding("ridge-multiplicity", cones[0],
                                    f"ridge {list(ridge)} lies in {len(cones)} maximal cone(s), expected 2"))
            continue
        if fan.dim == 1:
            continue
        normal = _ridge_normal(fan, ridge)
        sides = []
        for j in cones:
            (extra,) = set(fan.max_cones[j]) - set(ridge)
            sides.append(el.dot(normal, fan.rays[extra]))
        if not (sides[0] * sides[1] < 0):
            findings.append(Finding("ridge-fold", cones[0],
                                    f"cones {cones} lie on the same side of ridge {list(ridge)}"))
    # connectivity of the cone adjacency graph
    ncones = len(fan.max_cones)
    nbrs: dict[int, set[int]] = defaultdict(set)
    for cones in adj.values():
        for a in cones:
            nbrs[a].update(c for c in cones if c != a)
    reached = {0}
    stack = [0]
    while stack:
        for b in nbrs[stack.pop()]:
            if b not in reached:
                reached.add(b)
                stack.append(b)
    if len(reached) != ncones:
        missing = min(set(range(ncones)) - reached)
        findings.append(Finding("disconnected", missing, "cone adjacency graph is not connected"))
    if not findings:
        degree = _covering_degree(fan)
        if degree != 1:
            findings.append(Finding("overlap", None,
                                    f"cones cover space {degree} times; they must overlap only in faces"))
    return findings


def validate_fan(fan: FanData) -> FanDiagnosis:
    """Decide completeness, regularity and the Fano property."""
    failures: list[Finding] = []
    regular = True
    for j in range(len(fan.max_cones)):
        d = el.det(fan.cone_generators(j))
        if abs(d) != 1:
            regular = False
            failures.append(Finding("not-regular", j, f"cone generators have determinant {d}"))
    complete_failures = check_completeness(fan)
    failures.extend(complete_failures)
    complete = not complete_failures
    fano = False
    if regular and complete:
        from .polytope_geometry import NotFanoError, build_polytope

        try:
            build_polytope(fan)
            fano = True
        except NotFanoError as exc:
            failures.extend(exc.findings)
    return FanDiagnosis(is_complete=complete, is_regular=regular, is_fano=fano, failures=failures)


class NotFanoInputError(ValueError):
    """Operation requires a toric Fano fan; carries the diagnosis."""

    def __init__(self, diagnosis: FanDiagnosis):
        self.diagnosis = diagnosis
        reasons = "; ".join(str(f) for f in diagnosis.failures) or "not Fano"
        super().__init__(f"fan is not a smooth toric Fano fan: {reasons}")


def require_fano(fan: FanData) -> FanDiagnosis:
    diag = validate_fan(fan)
    if not diag.is_fano:
        raise NotFanoInputError(diag)
    return diag
