from __future__ import annotations

import pytest

from src import linrep
from src.cluster import checks
from src.cluster.dimvecs import cluster_dimvecs
from src.cluster.rform import build_rE, positive_roots_with_retry, verify_prop4
from src.forms import enumerate_positive_roots
from src.tilting import PreconditionError, tilting_module


def _label_of(t, index):
    return t.catalog[index].label


def test_cluster_values_on_t33(t33_tilting):
    dims = cluster_dimvecs(t33_tilting)
    assert len(dims) == 15
    assert len(set(dims.vectors())) == 15
    by_x = {r.x: r for r in dims}
    assert by_x[(1, 1, 1, 0, 0)].q_b == 5
    for x in ((1, 1, 0, 0, 0), (1, 0, 1, 0, 0), (1, 1, 1, 1, 0), (1, 1, 1, 0, 1)):
        assert by_x[x].q_b == 3
        assert by_x[x].tag == "M"
    assert all(r.q_b == 1 for r in dims if r.tag != "M")
    assert sorted(r.q_b for r in dims.with_tag("M")) == [3, 3, 3, 3, 5]


def test_abs_g_is_a_nonnegative_vector(t33_tilting):
    for r in cluster_dimvecs(t33_tilting):
        assert all(v >= 0 for v in r.abs_g)
        assert r.abs_g == tuple(abs(v) for v in r.g)


@pytest.mark.parametrize(
    "check",
    [
        checks.verify_separation,
        checks.verify_lemmas_2_3_4,
        checks.verify_prop5,
        checks.verify_prop6,
        checks.verify_theorem1,
        checks.verify_theorem2b,
        checks.verify_theorem2c_proxy,
        checks.verify_prop7,
        verify_prop4,
    ],
)
def test_properties_hold_on_t33(t33_tilting, check):
    report = check(t33_tilting)
    assert report.passed, report.counterexamples
    assert report.checked > 0
    assert report.subject == "t33[" + ",".join(t33_tilting.labels) + "]"


def test_prop5_counts_mixed_modules(t33_tilting):
    assert checks.verify_prop5(t33_tilting).checked == 5


def test_mixed_pairs_on_t33(t33_tilting):
    t = t33_tilting
    pairs = {(_label_of(t, p.x), _label_of(t, p.y)) for p in checks.mixed_pairs(t)}
    assert pairs == {("tI3'", "P3"), ("tI3'", "P1"), ("tI3", "P1"), ("tI3", "P3'")}
    assert all(p.ext == 1 for p in checks.mixed_pairs(t))


def test_middle_term_of_a_mixed_pair_is_mixed(t33_catalog, t33_tilting):
    x = t33_catalog.by_label("tI3")
    y = t33_catalog.by_label("P1")
    middle = linrep.build_extension(x.rep, y.rep, [1])
    found = t33_catalog.identify(middle)
    assert found is not None
    assert t33_catalog[found].dim == (1, 1, 0, 0, 0)
    assert found in t33_tilting.classification.mixed


def test_predecessors_of_tau_t(t33_catalog, t33_tilting):
    d = checks.predecessor_indices(t33_tilting)
    g_in_d = {t33_catalog[i].label for i in t33_tilting.classification.torsion if i in d}
    assert g_in_d == {"P1", "P3", "P3'"}
    assert set(t33_tilting.classification.torsion_free) <= d


def test_re_bigraph_on_t33(t33_tilting):
    re = build_rE(t33_tilting)
    assert set(re.labels) == {"tI3", "tI3'", "P1", "P3", "P3'"}
    assert re.sides == (0, 0, 1, 1, 1)
    assert len(re.bigraph.non_isolated()) == 5
    assert re.bigraph.solid_count() == 4
    assert re.bigraph.dotted_count() == 2
    roots = positive_roots_with_retry(re.form)
    assert len(roots.non_simple()) == 5


def test_re_coordinates_decode_to_torsion_parts(t33_catalog, t33_tilting):
    re = build_rE(t33_tilting)
    idx = t33_catalog.find_by_dim((1, 1, 1, 0, 0))[0].index
    f_side, g_side = re.decode(re.coordinates(idx))
    assert f_side == {"tI3": 1, "tI3'": 1}
    assert g_side == {"P1": 1}


def test_re_dot_output(t33_tilting):
    dot = build_rE(t33_tilting).bigraph.to_dot(elide_isolated=True)
    assert dot.count("style=solid") == 4
    assert dot.count("style=dashed") == 2


def test_root_cap_retry_doubles_once(t33_tilting):
    re = build_rE(t33_tilting)
    assert len(positive_roots_with_retry(re.form, cap=1)) == len(enumerate_positive_roots(re.form, cap=6))


def test_checks_need_a_preprojective_tilting_module(atilde2_catalog):
    t = tilting_module(atilde2_catalog, "P1,P3,R1_0_1")
    assert not t.preprojective
    with pytest.raises(PreconditionError):
        checks.verify_prop5(t)
    with pytest.raises(PreconditionError):
        build_rE(t)


def test_theorem1_sweep_over_a4(a4_catalog):
    report = checks.verify_theorem1_all(a4_catalog)
    assert report.passed
    assert report.property == "thm1"
    assert report.checked == 14 * 10


def test_lemmas_on_every_a4_tilting_module(a4_catalog):
    from src.tilting import enumerate_tilting

    for t in enumerate_tilting(a4_catalog):
        if not t.preprojective:
            continue
        for check in (checks.verify_lemmas_2_3_4, checks.verify_prop5, checks.verify_theorem2b, verify_prop4):
            report = check(t)
            assert report.passed, (check.__name__, t, report.counterexamples)
