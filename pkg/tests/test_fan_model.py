import random

import pytest

from conftest import BL_P3, CATALOG, P1, P3, product_fan, random_unimodular
from toricalpha.fan_model import FanData, FanValidationError, ridge_adjacency, validate_fan

P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
P2_CONES = [(0, 1), (1, 2), (2, 0)]


def test_p2_is_fano():
    d = validate_fan(FanData.from_lists(P2_RAYS, P2_CONES))
    assert (d.is_complete, d.is_regular, d.is_fano) == (True, True, True)
    assert d.failures == []


def test_missing_cone_is_incomplete():
    d = validate_fan(FanData.from_lists(P2_RAYS, [(0, 1), (2, 0)]))
    assert not d.is_complete
    assert not d.is_fano
    assert any(f.kind == "ridge-multiplicity" for f in d.failures)


def test_non_primitive_ray_is_rejected():
    with pytest.raises(FanValidationError) as exc:
        FanData.from_lists([(2, 0), (0, 1), (-1, -1)], P2_CONES)
    (finding,) = exc.value.findings
    assert finding.kind == "non-primitive-ray" and finding.index == 0


@pytest.mark.parametrize("rays, cones, kind", [
    ([(1, 0), (1, 0), (-1, -1)], P2_CONES, "duplicate-ray"),
    ([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 5)], "cone-index"),
    ([(1, 0), (0, 1), (-1, -1), (2, 1)], P2_CONES, "unused-ray"),
    ([(1, 0), (-1, 0), (0, 1)], [(0, 1), (0, 2)], "degenerate-cone"),
    ([(0, 0), (0, 1), (-1, -1)], P2_CONES, "zero-ray"),
    ([(1, 0), (0, 1)], [(0,)], "cone-size"),
])
def test_structural_errors(rays, cones, kind):
    with pytest.raises(FanValidationError) as exc:
        FanData.from_lists(rays, cones)
    assert kind in {f.kind for f in exc.value.findings}


def test_ridge_adjacency_p2():
    adj = ridge_adjacency(FanData.from_lists(P2_RAYS, P2_CONES))
    assert adj == {(0,): [0, 2], (1,): [0, 1], (2,): [1, 2]}


def test_ridge_adjacency_single_cone():
    adj = ridge_adjacency(FanData.from_lists([(1, 0), (0, 1)], [(0, 1)]))
    assert adj == {(0,): [0], (1,): [0]}


def test_ridge_adjacency_dp3():
    adj = ridge_adjacency(CATALOG["dp3"])
    assert len(adj) == 6
    assert all(len(c) == 2 for c in adj.values())


def test_non_regular_fan():
    # weighted projective plane P(1,1,2): complete, not smooth
    d = validate_fan(FanData.from_lists([(1, 0), (0, 1), (-1, -2)], P2_CONES))
    assert d.is_complete and not d.is_regular and not d.is_fano


def test_smooth_complete_not_fano():
    # Hirzebruch surface F_2 has a (-2)-curve, so -K is not ample
    f2 = FanData.from_lists([(1, 0), (0, 1), (-1, 2), (0, -1)], [(0, 1), (1, 2), (2, 3), (3, 0)])
    d = validate_fan(f2)
    assert d.is_complete and d.is_regular and not d.is_fano
    assert any(f.kind == "vertex-tightness" for f in d.failures)


def test_double_cover_is_not_complete():
    # rays winding twice around the origin: every ridge has two cones but cones overlap
    rays = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (-1, -1), (1, -1)]
    # first lap on the axes, second lap on the diagonals
    cones = [(i, (i + 1) % 8) for i in range(8)]
    d = validate_fan(FanData.from_lists(rays, cones))
    assert not d.is_complete
    assert "overlap" in {f.kind for f in d.failures}


def test_catalog_all_fano(catalog_fan):
    assert validate_fan(catalog_fan).is_fano


@pytest.mark.parametrize("fan", [P1, P3, BL_P3, product_fan(CATALOG["dp2"], P1)],
                         ids=["p1", "p3", "bl_p3", "dp2xp1"])
def test_higher_and_lower_dimensional_fano(fan):
    assert validate_fan(fan).is_fano


def test_relabeling_invariance(catalog_fan):
    rng = random.Random(7)
    base = validate_fan(catalog_fan)
    for _ in range(10):
        perm = list(range(len(catalog_fan.rays)))
        rng.shuffle(perm)
        inv = {old: new for new, old in enumerate(perm)}
        rays = [catalog_fan.rays[i] for i in perm]
        cones = [tuple(inv[i] for i in c) for c in catalog_fan.max_cones]
        rng.shuffle(cones)
        d = validate_fan(FanData.from_lists(rays, cones))
        assert (d.is_complete, d.is_regular, d.is_fano) == \
            (base.is_complete, base.is_regular, base.is_fano)


def test_basis_invariance(catalog_fan):
    rng = random.Random(11)
    for _ in range(10):
        u = random_unimodular(rng, 2)
        d = validate_fan(catalog_fan.transformed(u))
        assert d.is_fano and d.is_complete and d.is_regular
