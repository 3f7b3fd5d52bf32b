import random
from fractions import Fraction
from itertools import product

import pytest

from toricalpha import exact_linalg as el
from toricalpha.cli_io import catalog
from toricalpha.fan_model import FanData

CATALOG = catalog()
NON_SYMMETRIC = ("dp1", "dp2")
SYMMETRIC = ("p2", "p1xp1", "dp3")


@pytest.fixture(params=sorted(CATALOG))
def catalog_fan(request):
    return CATALOG[request.param]


@pytest.fixture
def fans():
    return CATALOG


def random_unimodular(rng: random.Random, n: int, steps: int = 6, bound: int = 2):
    """Product of random elementary matrices and signed permutations."""
    m = [list(r) for r in el.identity(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([k for k in range(-bound, bound + 1) if k])
        for col in range(n):
            m[i][col] += c * m[j][col]
        if rng.random() < 0.3:
            m[i], m[j] = m[j], m[i]
        if rng.random() < 0.3:
            m[i] = [-x for x in m[i]]
    u = el.as_int_matrix(m)
    assert abs(el.det(u)) == 1
    return u


def product_fan(a: FanData, b: FanData, name: str = "") -> FanData:
    rays = [tuple(r) + (0,) * b.dim for r in a.rays] + [(0,) * a.dim + tuple(r) for r in b.rays]
    off = len(a.rays)
    cones = [tuple(ca) + tuple(off + i for i in cb) for ca, cb in product(a.max_cones, b.max_cones)]
    return FanData.from_lists(rays, cones, name=name)


P1 = FanData.from_lists([(1,), (-1,)], [(0,), (1,)], name="p1")
P3 = FanData.from_lists([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
                        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], name="p3")
# blow-up of P^3 at a torus-fixed point
BL_P3 = FanData.from_lists(
    [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (1, 1, 1)],
    [(0, 1, 4), (1, 2, 4), (0, 2, 4), (0, 1, 3), (1, 2, 3), (0, 2, 3)], name="bl_p3")


def frac_vec(*xs):
    return tuple(Fraction(x) for x in xs)


_ACCEPTANCE: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    name = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        prev = _ACCEPTANCE.get(name, "PASS")
        _ACCEPTANCE[name] = "PASS" if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _ACCEPTANCE.items():
        terminalreporter.write_line(f"{status}  {name}")
