"""Acceptance gate: one test per release criterion.

Each test prints one ``ACCEPTANCE PASS/FAIL <criterion>`` line (shown
with ``pytest -s``; ``pytest -v`` gives the same verdict per test name).
Expected values fall into three groups: frozen reference constants for
the committed fixtures, cross-checks against the independent brute-force
oracle in ``oracle.py``, and determinism/invariant sweeps over random
corpora.

Two criteria are kept red on purpose because their reference values are
internally inconsistent; the tests assert them as given rather than
silently adopting corrected numbers.

1. Summary statistics (two cells). The exact ball-size references pin
   the fixture data uniquely, and variance algebra then fixes the
   remaining statistics: with sd(Y) = 1.41874 on dataset 1,
   corr(X1, X2) must be -0.00641, which forces sd of dataset 2's mixed
   X2 to sqrt(1 + sqrt(0.75) * -0.00641) = 0.99722, not the referenced
   0.999; and the dataset-1 X2 median matches the referenced magnitude
   0.032 to 3e-4 but with the opposite sign. No dataset can satisfy
   both references.

2. Stability ball-count support floor. The referenced support band
   [5, 12] excludes 4-ball covers, but 4-ball covers are a genuine
   ~5% outcome of the randomized greedy process on dataset 1 at
   eps=1.5: an independent brute-force re-derivation (full distance
   matrix, no library code) over 1000 uniform reorderings yields ball
   counts {4: 52, 5: 284, 6: 476, 7: 175, 8: 13}, identical to the
   harness, and the equivalent protocol that draws each landmark
   uniformly from the uncovered set gives the same ~5% rate. Each
   4-ball cover verifies as complete with pairwise landmark distances
   above eps, so the floor of 5 contradicts the process itself; a
   100-rep run avoids a 4 with probability ~0.5%, and hunting for such
   a seed would fake the result. The inference claims themselves (the
   actual consistency property) hold in 100/100 reps and are asserted
   first, so this test fails only on the support band.
"""
import time
from contextlib import contextmanager

import numpy as np
import pytest

import tdabm

from .conftest import FIXTURES
from .oracle import oracle_cover, oracle_edges


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE FAIL {name}")
        raise
    print(f"ACCEPTANCE PASS {name}")


# Frozen whole-dataset summary reference: {dataset: {variable: {stat: value}}}.
# See the module docstring for the two cells that are inconsistent with the
# exact ball sizes below ("dataset1 X2 50%" and "dataset2 X2 sd").
SUMMARY_REFERENCE = {
    "dataset1": {
        "X1": {"mean": 0.000, "sd": 1.000, "min": -1.738, "25%": -0.833,
               "50%": -0.028, "75%": 0.844, "max": 1.753},
        "X2": {"mean": 0.000, "sd": 1.000, "min": -1.749, "25%": -0.852,
               "50%": 0.032, "75%": 0.859, "max": 1.734},
        "Y": {"mean": 0.000, "sd": 1.418, "min": -3.244, "25%": -0.988,
              "50%": 0.019, "75%": 1.027, "max": 3.400},
    },
    "dataset2": {
        "X1": {"mean": 0.000, "sd": 1.000, "min": -1.738, "25%": -0.833,
               "50%": -0.028, "75%": 0.844, "max": 1.753},
        "X2": {"mean": 0.000, "sd": 0.999, "min": -2.335, "25%": -0.774,
               "50%": 0.051, "75%": 0.723, "max": 2.308},
        "Y": {"mean": 0.000, "sd": 1.002, "min": -2.240, "25%": -0.761,
              "50%": 0.009, "75%": 0.713, "max": 2.339},
    },
}

BALL_SIZES = {
    "dataset1": [485, 307, 225, 380, 209, 176, 306],
    "dataset2": [503, 309, 307, 199, 280],
}

# Frozen per-ball reference for dataset 1 at eps=1.5, sequential policy:
# (X1 mean, sd, min, max, X2 ..., Y ..., member count) per ball id.
BALL_REFERENCE_D1 = {
    0: (0.085, 0.772, -1.429, 1.542, 0.672, 0.617, -0.531, 1.734,
        -0.587, 0.995, -2.768, 1.255, 485),
    1: (-1.028, 0.438, -1.738, -0.180, -0.340, 0.746, -1.748, 1.113,
        -0.688, 0.880, -2.784, 0.811, 307),
    2: (0.826, 0.554, -0.314, 1.748, -1.012, 0.454, -1.748, -0.182,
        1.838, 0.614, 0.759, 3.400, 225),
    3: (0.931, 0.505, -0.082, 1.753, 0.044, 0.750, -1.451, 1.487,
        0.887, 0.893, -0.687, 3.086, 380),
    4: (-0.985, 0.487, -1.738, -0.112, 0.991, 0.451, 0.002, 1.707,
        -1.976, 0.587, -3.244, -0.915, 209),
    5: (0.971, 0.492, -0.069, 1.753, 1.076, 0.407, 0.294, 1.734,
        -0.105, 0.697, -1.734, 1.365, 176),
    6: (-0.373, 0.723, -1.736, 1.059, -1.065, 0.414, -1.749, -0.195,
        0.693, 0.857, -0.814, 2.639, 306),
}

_cache: dict = {}


def load(name):
    key = ("data", name)
    if key not in _cache:
        _cache[key] = tdabm.load_csv(
            FIXTURES / f"{name}.csv", ["X1", "X2"], "Y"
        )
    return _cache[key]


def corpus_covers(corpus_specs):
    """Build (and cache) library covers for the shared 200-instance corpus."""
    if "covers" not in _cache:
        t0 = time.perf_counter()
        covers = [
            (cloud, eps, policy, seed,
             tdabm.build_cover(cloud, tdabm.CoverConfig(eps, policy, seed)))
            for cloud, eps, policy, seed in corpus_specs
        ]
        _cache["covers"] = covers
        _cache["covers_elapsed"] = time.perf_counter() - t0
    return _cache["covers"]


def test_summary_statistics_reference_table():
    with criterion("whole-dataset summary statistics match the frozen "
                   "reference within 1e-3 per cell, under 1 second"):
        t0 = time.perf_counter()
        mismatches = []
        for name, reference in SUMMARY_REFERENCE.items():
            cloud, y = load(name)
            stats = tdabm.summary_stats(cloud, [y]).as_dict()
            for var, cells in reference.items():
                for stat, want in cells.items():
                    got = stats[stat][var]
                    if abs(got - want) > 1e-3:
                        mismatches.append(
                            f"{name} {var} {stat}: reference {want}, "
                            f"fixture {got:.5f}"
                        )
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, f"took {elapsed:.2f}s"
        assert not mismatches, (
            "cells out of tolerance (see module docstring for why these "
            "two cannot hold): " + "; ".join(mismatches)
        )


def test_dataset2_sample_correlation():
    with criterion("dataset2 sample corr(X1, X2) = 0.496 within 0.002"):
        cloud, _ = load("dataset2")
        r = float(np.corrcoef(cloud.column("X1"), cloud.column("X2"))[0, 1])
        assert abs(r - 0.496) <= 0.002, f"corr {r:.5f}"


def test_cover_ball_counts_and_sizes():
    with criterion("sequential covers at eps=1.5: 7 and 5 balls with exact "
                   "reference sizes, under 1 second"):
        t0 = time.perf_counter()
        for name, sizes in BALL_SIZES.items():
            cloud, _ = load(name)
            cover = tdabm.build_cover(cloud, tdabm.CoverConfig(1.5))
            _cache[("cover", name)] = cover
            assert len(cover) == len(sizes)
            assert cover.sizes() == sizes
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, f"took {elapsed:.2f}s"


def fixture_cover(name):
    key = ("cover", name)
    if key not in _cache:
        cloud, _ = load(name)
        _cache[key] = tdabm.build_cover(cloud, tdabm.CoverConfig(1.5))
    return _cache[key]


def test_ball_summary_reference_cells():
    with criterion("dataset1 per-ball summaries match the frozen reference "
                   "within 1e-3 per cell"):
        cloud, y = load("dataset1")
        cover = fixture_cover("dataset1")
        table = tdabm.ball_summary(cover, cloud, [y]).as_dict()
        columns = [
            f"{v}_{s}"
            for v in ("X1", "X2", "Y")
            for s in ("mean", "sd", "min", "max")
        ] + ["obs"]
        for ball, reference in BALL_REFERENCE_D1.items():
            for col, want in zip(columns, reference):
                got = table[ball][col]
                if col == "obs":
                    assert got == want, f"ball {ball} obs {got} != {want}"
                else:
                    assert abs(got - want) <= 1e-3, (
                        f"ball {ball} {col}: reference {want}, got {got:.5f}"
                    )


def test_graph_topology_reference():
    with criterion("dataset1 graph: balls 0,2,3,6 pairwise connected and "
                   "no 4-6 edge"):
        cloud, y = load("dataset1")
        graph = tdabm.build_graph(fixture_cover("dataset1"), y)
        quad = (0, 2, 3, 6)
        for i, a in enumerate(quad):
            for b in quad[i + 1:]:
                assert graph.has_edge(a, b), f"missing edge {a}-{b}"
        assert not graph.has_edge(4, 6)


def test_filter_by_positive_mean_outcome():
    with criterion("dataset1 filter mean-Y > 0 keeps exactly balls 2, 3, 6"):
        cloud, y = load("dataset1")
        graph = tdabm.build_graph(fixture_cover("dataset1"), y)
        kept = tdabm.filter_by(graph, lambda n: n.colorings["Y"] > 0)
        assert kept.node_ids() == [2, 3, 6]


def test_cover_oracle_suite(corpus_specs):
    with criterion("200-cloud corpus: covers match the brute-force oracle, "
                   "pass all invariants, and rebuild identically, "
                   "under 30 seconds"):
        covers = corpus_covers(corpus_specs)
        t0 = time.perf_counter()
        for cloud, eps, policy, seed, cover in covers:
            expected = oracle_cover(cloud.values, eps, policy, seed)
            assert cover.landmarks() == [lm for lm, _ in expected]
            for ball, (_, members) in zip(cover.balls, expected):
                assert ball.members.tolist() == members
            diag = tdabm.assert_cover_valid(cloud, cover)
            assert diag.ok, diag.failure
            rebuilt = tdabm.build_cover(
                cloud, tdabm.CoverConfig(eps, policy, seed)
            )
            assert rebuilt == cover
        elapsed = time.perf_counter() - t0 + _cache["covers_elapsed"]
        assert elapsed < 30.0, f"took {elapsed:.2f}s"


def test_edge_oracle_suite(corpus_specs):
    with criterion("200-cloud corpus: graph edges equal brute-force "
                   "intersection edges exactly"):
        for cloud, eps, policy, seed, cover in corpus_covers(corpus_specs):
            got = [
                (e.a, e.b, e.intersection_size)
                for e in tdabm.intersection_edges(cover)
            ]
            assert got == oracle_edges(
                [(b.landmark, b.members.tolist()) for b in cover.balls]
            )


def test_points_and_balls_row_counts(corpus_specs):
    with criterion("points-and-balls row count = sum of ball sizes on every "
                   "corpus instance; 2088 and 1598 rows on the fixtures"):
        for cloud, eps, policy, seed, cover in corpus_covers(corpus_specs):
            assert len(tdabm.points_and_balls(cover)) == sum(cover.sizes())
        assert len(tdabm.points_and_balls(fixture_cover("dataset1"))) == 2088
        assert len(tdabm.points_and_balls(fixture_cover("dataset2"))) == 1598


def test_stability_harness():
    with criterion("dataset1, 100 reorderings: per-ball mean-X1/mean-Y "
                   "correlate positively and mean-X2/mean-Y negatively in "
                   "100/100 reps; ball counts stay in [5, 12]; "
                   "under 30 seconds"):
        cloud, y = load("dataset1")
        claims = [
            tdabm.claim_corr(
                "corr(mean-X1,mean-Y)>0", cloud.column("X1"), y.values
            ),
            tdabm.claim_corr(
                "corr(mean-X2,mean-Y)<0", cloud.column("X2"), y.values,
                positive=False,
            ),
        ]
        t0 = time.perf_counter()
        report = tdabm.run_stability(cloud, y, 1.5, 100, 0, claims)
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0, f"took {elapsed:.2f}s"
        assert report.aggregate["corr(mean-X1,mean-Y)>0"] == 1.0
        assert report.aggregate["corr(mean-X2,mean-Y)<0"] == 1.0
        counts = tdabm.ball_count_distribution(report)
        # red on purpose: 4-ball covers are a real ~5% outcome of the
        # process (see module docstring), so the floor of 5 cannot hold
        assert set(counts) <= set(range(5, 13)), dict(counts)


def test_render_determinism_and_json_round_trip():
    with criterion("SVG/JSON/DOT are byte-identical across repeated calls; "
                   "JSON round-trip is lossless on 100 random graphs"):
        cloud, y = load("dataset1")
        graph = tdabm.build_graph(fixture_cover("dataset1"), y)
        layout = tdabm.spring_layout(graph)
        config = tdabm.RenderConfig("Y")
        assert tdabm.render_svg(graph, layout, config) == tdabm.render_svg(
            graph, layout, config
        )
        assert tdabm.export_json(graph, fixture_cover("dataset1"), layout) \
            == tdabm.export_json(graph, fixture_cover("dataset1"), layout)
        assert tdabm.export_dot(graph, config) == tdabm.export_dot(
            graph, config
        )
        rng = np.random.default_rng(7)
        for _ in range(100):
            n = int(rng.integers(10, 80))
            values = rng.normal(size=(n, 2))
            cl = tdabm.PointCloud(values, ("a", "b"))
            col = tdabm.ColoringVariable("y", rng.normal(size=n))
            cov = tdabm.build_cover(cl, tdabm.CoverConfig(0.7))
            g = tdabm.build_graph(cov, col)
            lay = tdabm.spring_layout(g)
            text = tdabm.export_json(g, cov, lay)
            g2, cov2, lay2 = tdabm.import_json(text)
            assert g2 == g and cov2 == cov and lay2 == lay
            assert tdabm.export_json(g2, cov2, lay2) == text


def test_layout_determinism_and_topology_invariance():
    with criterion("identical (topology, k, seed) give identical "
                   "coordinates; layout seed never changes node/edge sets"):
        cloud, y = load("dataset1")
        # two independently built graph objects with the same topology
        graph_a = tdabm.build_graph(fixture_cover("dataset1"), y)
        graph_b = tdabm.build_graph(
            tdabm.build_cover(cloud, tdabm.CoverConfig(1.5)), y
        )
        config = tdabm.LayoutConfig(k=0.4, seed=9)
        assert tdabm.spring_layout(graph_a, config) == tdabm.spring_layout(
            graph_b, config
        )
        snapshot = (tuple(graph_a.node_ids()), tuple(graph_a.edges))
        for seed in range(5):
            tdabm.spring_layout(graph_a, tdabm.LayoutConfig(seed=seed))
            assert (tuple(graph_a.node_ids()), tuple(graph_a.edges)) == snapshot
