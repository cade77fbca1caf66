import numpy as np
import pytest

from jndbem.raster import EdgeMap, GrayImage


def random_edge_map(rng, width, height, max_pixels, nonempty=False) -> EdgeMap:
    lo = 1 if nonempty else 0
    n = int(rng.integers(lo, max_pixels + 1))
    pts = set()
    for _ in range(n):
        pts.add((int(rng.integers(0, width)), int(rng.integers(0, height))))
    return EdgeMap(width, height, frozenset(pts))


def random_image(rng, width, height) -> GrayImage:
    return GrayImage(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


@pytest.fixture
def rng():
    return np.random.default_rng(42)
