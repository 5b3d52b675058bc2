import random

import pytest

from shortcut_frechet.geom import PolygonalCurve, normalize_curve


def random_pair(rng: random.Random, n1=None, n2=None, noise=1.0, spikes=0.3):
    """Correlated pair: ``T`` a rightward random walk, ``B`` a noisy resample
    of ``T`` with occasional spikes that shortcuts can cut off."""
    n1 = n1 or rng.randint(2, 8)
    n2 = n2 or rng.randint(2, 10)
    T = [(0.0, 0.0)]
    for _ in range(n1 - 1):
        T.append((T[-1][0] + rng.uniform(0.5, 3), T[-1][1] + rng.uniform(-2, 2)))
    Tc = normalize_curve(T)
    B = []
    for k in range(n2):
        p = Tc.at(k / (n2 - 1))
        x, y = p.x + rng.gauss(0, noise), p.y + rng.gauss(0, noise)
        if 0 < k < n2 - 1 and rng.random() < spikes:
            y += rng.choice((-1, 1)) * rng.uniform(3, 10)
        B.append((x, y))
    B[0] = (rng.gauss(0, 0.3), rng.gauss(0, 0.3))
    B[-1] = (Tc[-1].x + rng.gauss(0, 0.3), Tc[-1].y + rng.gauss(0, 0.3))
    return Tc, normalize_curve(B)


def random_walk(rng: random.Random, n: int, step=1.0):
    pts = [(0.0, 0.0)]
    for _ in range(n - 1):
        pts.append((pts[-1][0] + rng.uniform(0.2, 1.0) * step, pts[-1][1] + rng.uniform(-1, 1) * step))
    return PolygonalCurve(pts)


@pytest.fixture
def spike_pair():
    T = PolygonalCurve([(0, 0), (10, 0)])
    B = PolygonalCurve([(0, 0), (4, 0), (5, 5), (6, 0), (10, 0)])
    return T, B


@pytest.fixture
def parallel_pair():
    return PolygonalCurve([(0, 0), (10, 0)]), PolygonalCurve([(0, 1), (10, 1)])
