import numpy as np
import pytest

from qdomains.algebra.field import gaussrat
from qdomains.domains import ConformalMap, univalence_check
from qdomains.intertwine import build_axis, build_bundle


@pytest.fixture(autouse=True)
def _single_thread(monkeypatch):
    monkeypatch.delenv("QDOMAINS_THREADS", raising=False)
    monkeypatch.delenv("QDOMAINS_LOG_LEVEL", raising=False)


@pytest.fixture
def unit_disk_at_two():
    """``|z − 2| < 1``: the disk from the closed-form flux example."""
    return ConformalMap.disk(1, gaussrat(2))


@pytest.fixture
def cardioid_like():
    return ConformalMap(z1=[3, 0], r=1, u=["1/5"])


@pytest.fixture
def axis_one():
    return build_bundle("axis:1")


@pytest.fixture
def axis_one_raw():
    """``T = x∂x − 1`` without the leading-coefficient rescaling."""
    return build_axis(1, normalize=False)


@pytest.fixture
def random_maps():
    """Seeded univalent maps away from both coordinate axes.

    Coefficients are multiples of 1/40 so the exact flux systems stay small.
    ``spread`` bounds the numerators of the higher coefficients.
    """

    def draw(count, seed=0, max_degree=3, spread=4):
        rng = np.random.default_rng(seed)
        maps = []
        while len(maps) < count:
            degree = int(rng.integers(1, max_degree + 1))
            candidate = ConformalMap(
                z1=[f"{rng.integers(120, 161)}/40", f"{rng.integers(60, 101)}/40"],
                r=f"{rng.integers(16, 33)}/40",
                u=[
                    [f"{a}/40", f"{b}/40"]
                    for a, b in rng.integers(-spread, spread + 1, size=(degree, 2))
                ],
            )
            if univalence_check(candidate).passed:
                maps.append(candidate)
        return maps

    return draw
