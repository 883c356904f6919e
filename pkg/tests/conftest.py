import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import lattice_points_in_polygon  # noqa: E402

from gkzstab.config import load_configuration  # noqa: E402

SEGMENT = [(0,), (1,), (2,)]
UNIT_TRIANGLE = [(0, 0), (1, 0), (0, 1)]
UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
CONIC = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
SQUARE3 = [(x, y) for x in (-1, 0, 1) for y in (-1, 0, 1)]
TRAPEZOID = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)]
MOTHER = [(0, 0), (4, 0), (0, 4), (1, 1), (2, 1), (1, 2)]


@pytest.fixture
def segment():
    return load_configuration(SEGMENT, "segment")


@pytest.fixture
def conic():
    return load_configuration(CONIC, "conic")


@pytest.fixture
def unit_triangle():
    return load_configuration(UNIT_TRIANGLE, "triangle")


@pytest.fixture
def unit_square():
    return load_configuration(UNIT_SQUARE, "square")


def random_saturated(rng, max_points=10):
    """A random saturated configuration with n in {1, 2} and at most
    ``max_points`` lattice points."""
    while True:
        if rng.random() < 0.25:
            length = rng.randint(1, max_points - 1)
            return [(x,) for x in range(length + 1)]
        corners = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(3, 5))]
        xs = {p[0] for p in corners}
        ys = {p[1] for p in corners}
        if len(xs) < 2 or len(ys) < 2:
            continue
        try:
            pts = lattice_points_in_polygon(corners)
        except IndexError:
            continue
        if len(pts) <= max_points:
            try:
                load_configuration(pts)
            except ValueError:
                continue
            return pts


def random_configs(seed, count, max_points=10):
    rng = random.Random(seed)
    return [random_saturated(rng, max_points) for _ in range(count)]


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {title}")
