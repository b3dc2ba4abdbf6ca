from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import tdabm

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def d1():
    cloud, coloring = tdabm.load_csv(FIXTURES / "dataset1.csv", ["X1", "X2"], "Y")
    return cloud, coloring


@pytest.fixture(scope="session")
def d2():
    cloud, coloring = tdabm.load_csv(FIXTURES / "dataset2.csv", ["X1", "X2"], "Y")
    return cloud, coloring


@pytest.fixture(scope="session")
def d1_cover(d1):
    cloud, _ = d1
    return tdabm.build_cover(cloud, tdabm.CoverConfig(1.5))


@pytest.fixture(scope="session")
def d2_cover(d2):
    cloud, _ = d2
    return tdabm.build_cover(cloud, tdabm.CoverConfig(1.5))


@pytest.fixture(scope="session")
def d1_graph(d1, d1_cover):
    _, coloring = d1
    return tdabm.build_graph(d1_cover, coloring)


def random_cloud(rng: np.random.Generator, n: int, k: int) -> tdabm.PointCloud:
    """A mildly clustered cloud so covers at small eps are non-trivial."""
    centers = rng.normal(scale=1.5, size=(max(1, n // 80), k))
    assignments = rng.integers(len(centers), size=n)
    values = centers[assignments] + rng.normal(scale=0.8, size=(n, k))
    columns = tuple(f"c{i}" for i in range(k))
    return tdabm.PointCloud(values, columns)


@pytest.fixture(scope="session")
def corpus_specs():
    """200 random (cloud, eps, policy, seed) instances, generated once.

    Cover construction is deliberately left to the tests so the timed
    acceptance check includes build cost; assertions come from the
    independent oracle module.
    """
    rng = np.random.default_rng(20260825)
    instances = []
    for i in range(200):
        n = int(rng.integers(2, 501))
        k = int(rng.integers(1, 6))
        eps = float(rng.uniform(0.1, 3.0))
        policy = "sequential" if i % 2 == 0 else "random"
        seed = int(rng.integers(0, 10_000))
        cloud = random_cloud(rng, n, k)
        instances.append((cloud, eps, policy, seed))
    return instances
