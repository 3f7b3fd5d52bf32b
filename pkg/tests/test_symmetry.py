import random
from itertools import product

import pytest

from conftest import BL_P3, CATALOG, P1, P3, product_fan, random_unimodular
from toricalpha import exact_linalg as el
from toricalpha.polytope_geometry import build_polytope
from toricalpha.symmetry import SymmetryGroup, fixed_space, is_symmetric, weyl_group


def brute_force_group(fan, bound=2):
    """Every integer matrix with small entries that permutes rays and cones."""
    n = fan.dim
    rays = set(fan.rays)
    cones = {frozenset(fan.rays[i] for i in c) for c in fan.max_cones}
    found = set()
    for entries in product(range(-bound, bound + 1), repeat=n * n):
        g = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if abs(el.det(g)) != 1:
            continue
        if {el.matvec(g, r) for r in fan.rays} != rays:
            continue
        if {frozenset(el.matvec(g, r) for r in c) for c in cones} == cones:
            found.add(g)
    return found


@pytest.mark.parametrize("name, order", [("p2", 6), ("p1xp1", 8), ("dp1", 2), ("dp2", 2), ("dp3", 12)])
def test_group_orders(name, order):
    assert weyl_group(CATALOG[name]).order == order


def test_group_matches_brute_force(catalog_fan):
    assert set(weyl_group(catalog_fan).elements) == brute_force_group(catalog_fan)


def test_dp1_group_is_swap():
    assert weyl_group(CATALOG["dp1"]).elements == (((0, 1), (1, 0)), ((1, 0), (0, 1)))


def test_group_axioms(catalog_fan):
    g = weyl_group(catalog_fan)
    elems = set(g.elements)
    assert el.identity(2) in elems
    for a in elems:
        assert abs(el.det(a)) == 1
        assert el.to_int_matrix(el.inverse(a)) in elems
        for b in elems:
            assert el.matmul(a, b) in elems
    assert list(g.elements) == sorted(g.elements)


def test_dual_action_preserves_polytope(catalog_fan):
    p = build_polytope(catalog_fan)
    verts = set(p.vertices)
    for g in weyl_group(catalog_fan).action("M"):
        assert {el.matvec(g, v) for v in verts} == verts


def test_fixed_spaces():
    assert fixed_space(weyl_group(CATALOG["p2"]), "N").basis == ()
    assert fixed_space(weyl_group(CATALOG["p2"]), "M").basis == ()
    assert fixed_space(weyl_group(CATALOG["dp1"]), "M").basis == ((1, 1),)
    trivial = SymmetryGroup(3, (el.identity(3),))
    assert fixed_space(trivial, "M").dim == 3
    assert fixed_space(trivial, "N").basis == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_fixed_dims_agree(catalog_fan):
    g = weyl_group(catalog_fan)
    assert fixed_space(g, "N").dim == fixed_space(g, "M").dim


@pytest.mark.parametrize("name, expected", [
    ("p2", True), ("p1xp1", True), ("dp3", True), ("dp1", False), ("dp2", False)])
def test_is_symmetric(name, expected):
    assert is_symmetric(CATALOG[name]) is expected


def test_three_dimensional_groups():
    assert weyl_group(P3).order == 24
    assert is_symmetric(P3)
    g = weyl_group(BL_P3)
    assert g.order == 6
    assert fixed_space(g, "M").basis == ((1, 1, 1),)
    cube = product_fan(product_fan(P1, P1), P1)
    assert weyl_group(cube).order == 48


def test_group_under_change_of_basis(catalog_fan):
    rng = random.Random(2)
    g = weyl_group(catalog_fan)
    for _ in range(10):
        u = random_unimodular(rng, 2)
        h = weyl_group(catalog_fan.transformed(u))
        assert h.order == g.order
        u_inv = el.to_int_matrix(el.inverse(u))
        conj = {el.matmul(el.matmul(u, a), u_inv) for a in g.elements}
        assert conj == set(h.elements)
