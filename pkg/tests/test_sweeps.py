"""Exhaustive sweeps; run with `pytest -m slow`."""

from __future__ import annotations

import pytest

from src.catalog import Catalog
from src.cluster import checks
from src.cluster.rform import verify_prop4
from src.quiver import dynkin_quiver, orientations
from src.tilting import enumerate_tilting

pytestmark = pytest.mark.slow

SWEEP_CHECKS = (
    checks.verify_separation,
    checks.verify_lemmas_2_3_4,
    verify_prop4,
    checks.verify_prop5,
    checks.verify_prop6,
    checks.verify_theorem2b,
    checks.verify_theorem2c_proxy,
    checks.verify_prop7,
)

DYNKIN_SUITE = [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6), ("D", 4), ("D", 5)]


@pytest.mark.parametrize(("kind", "n", "count"), [("A", 5, 42), ("A", 6, 132), ("D", 4, 20), ("D", 5, 77)])
def test_tilting_counts(kind, n, count):
    assert len(enumerate_tilting(Catalog.build(dynkin_quiver(kind, n)))) == count


@pytest.mark.parametrize(("kind", "n"), DYNKIN_SUITE)
def test_theorem1_over_every_orientation(kind, n):
    for q in orientations(dynkin_quiver(kind, n)):
        report = checks.verify_theorem1_all(Catalog.build(q))
        assert report.passed, (q.name, report.counterexamples[:3])


@pytest.mark.parametrize("check", SWEEP_CHECKS, ids=lambda c: c.__name__)
@pytest.mark.parametrize(("kind", "n"), DYNKIN_SUITE)
def test_properties_over_every_orientation(kind, n, check):
    for q in orientations(dynkin_quiver(kind, n)):
        cat = Catalog.build(q)
        report = checks.sweep(check.__name__, cat, enumerate_tilting(cat), check)
        assert report.passed, (q.name, report.counterexamples[:3])
