from fractions import Fraction
from itertools import product

from toricalpha.polytope_geometry import boundary_simplices, gauge


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def sample_boundary(sec, resolution=64):
    """Rational grid on every boundary simplex of a section polytope (ambient coords)."""
    pts = list(sec.vertices)
    seen = set()
    for simplex in boundary_simplices(pts, sec.facet_normals, sec.dim):
        corners = [pts[i] for i in simplex]
        for weights in compositions(resolution, len(corners)):
            y = tuple(sum((Fraction(w, resolution) * c[k] for w, c in zip(weights, corners)),
                          Fraction(0)) for k in range(sec.dim))
            seen.add(y)
    return [sec.to_ambient(y) for y in sorted(seen)]


def sampled_min_ratio(sec, resolution=64):
    amb = sec.ambient
    return min(1 / gauge(amb, [-x for x in v]) for v in sample_boundary(sec, resolution))
