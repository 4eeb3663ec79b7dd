from __future__ import annotations

import numpy as np
import pytest

from src.forms import (
    BigraphForm,
    FormError,
    IncompleteRootSetError,
    RootCapExceeded,
    RootSet,
    UnitForm,
    abs_fiber_check,
    apply_linear,
    bigraph_to_form,
    enumerate_positive_roots,
    enumerate_roots,
    form_to_bigraph,
    is_positive_definite,
    random_positive_definite_form,
    root_bounds,
)
from src.quiver import DimensionMismatchError, dynkin_quiver, euler_matrix


def _euler_form(q) -> UnitForm:
    return UnitForm(euler_matrix(q), labels=q.vertex_labels)


def test_unit_form_rejects_bad_matrices():
    with pytest.raises(FormError):
        UnitForm(np.array([[2, 0], [0, 1]]))
    with pytest.raises(FormError):
        UnitForm(np.array([1, 0]))
    with pytest.raises(DimensionMismatchError):
        UnitForm(np.eye(2, dtype=np.int64), labels=("a",))


def test_forms_compare_by_symmetrization():
    a = UnitForm(np.array([[1, -1], [0, 1]]))
    b = UnitForm(np.array([[1, 0], [-1, 1]]))
    assert a == b
    assert hash(a) == hash(b)
    assert a.cross(0, 1) == -1


@pytest.mark.parametrize(("n", "count"), [(2, 3), (4, 10), (5, 15)])
def test_positive_roots_of_type_a(n, count):
    roots = enumerate_positive_roots(_euler_form(dynkin_quiver("A", n)))
    assert len(roots) == count
    assert roots.complete
    assert all(min(x) >= 0 for x in roots)


def test_a2_roots():
    roots = enumerate_positive_roots(_euler_form(dynkin_quiver("A", 2)))
    assert roots.vectors == ((0, 1), (1, 0), (1, 1))
    assert roots.non_simple() == [(1, 1)]


def test_d4_root_cap_exceeded():
    form = _euler_form(dynkin_quiver("D", 4))
    with pytest.raises(RootCapExceeded) as exc:
        enumerate_positive_roots(form, cap=1)
    assert exc.value.cap == 1
    assert (1, 2, 1, 1) in exc.value.frontier
    assert len(enumerate_positive_roots(form, cap=2)) == 12


def test_all_roots_are_signed_positive_roots():
    form = _euler_form(dynkin_quiver("A", 4))
    roots = enumerate_roots(form)
    assert len(roots) == 20
    assert not roots.mixed()
    assert root_bounds(form) == [1, 1, 1, 1]


def test_root_bounds_need_positive_definite(kronecker):
    form = _euler_form(kronecker)
    assert not is_positive_definite(form)
    with pytest.raises(FormError):
        root_bounds(form)


def test_mixed_roots_of_a_non_quiver_form():
    # q = x1^2 + x2^2 + x1 x2 has the root (1, -1)
    form = UnitForm(np.array([[1, 1], [0, 1]]))
    roots = enumerate_roots(form)
    assert (1, -1) in roots
    assert roots.sign((1, -1)) == "mixed"
    assert sorted(roots.mixed()) == [(-1, 1), (1, -1)]


def test_apply_linear_maps_roots():
    form = _euler_form(dynkin_quiver("A", 2))
    roots = enumerate_positive_roots(form)
    image = apply_linear(np.array([[1, 0], [1, 1]]), roots)
    assert image.vectors == ((0, 1), (1, 1), (1, 2))
    with pytest.raises(FormError):
        apply_linear(np.array([[1, 1], [1, 1]]), roots)


def test_abs_fiber_check_passes_on_euler_form(t33):
    form = _euler_form(t33)
    report = abs_fiber_check(form, enumerate_roots(form), subject="t33")
    assert report.passed
    assert report.property == "prop7"
    assert report.checked == 30


def test_abs_fiber_check_guards_its_input():
    form = UnitForm(np.eye(2, dtype=np.int64))
    with pytest.raises(IncompleteRootSetError):
        abs_fiber_check(form, RootSet(((1, 0),), complete=False))
    with pytest.raises(FormError):
        abs_fiber_check(form, RootSet(((1, 1),)))


def test_random_positive_definite_form_is_reproducible():
    a = random_positive_definite_form(4, np.random.default_rng(7))
    b = random_positive_definite_form(4, np.random.default_rng(7))
    assert a == b
    assert is_positive_definite(a)


def test_bigraph_edges_respect_sides():
    with pytest.raises(FormError):
        BigraphForm(("a", "b"), (0, 0), solid={(0, 1): 1})
    with pytest.raises(FormError):
        BigraphForm(("a", "b"), (0, 1), dotted={(0, 1): 1})


def test_bigraph_and_form_agree():
    m = np.array([[1, -1, 1], [0, 1, 0], [0, 0, 1]])
    form = UnitForm(m)
    b = form_to_bigraph(form, ("x", "y", "z"), (0, 1, 0))
    assert b.solid == {(0, 1): 1}
    assert b.dotted == {(0, 2): 1}
    assert b.non_isolated() == [0, 1]
    assert bigraph_to_form(b) == form
    dot = b.to_dot(elide_isolated=False)
    assert '"x" -- "y" [style=solid];' in dot
    assert '"x" -- "z" [style=dashed];' in dot


@pytest.mark.parametrize(("kind", "n"), [("A", 2), ("A", 4), ("A", 6), ("D", 4), ("D", 5), ("D", 6)])
def test_abs_fiber_on_dynkin_euler_forms(kind, n):
    form = _euler_form(dynkin_quiver(kind, n))
    assert abs_fiber_check(form, enumerate_roots(form)).passed


def test_abs_fiber_on_random_forms():
    rng = np.random.default_rng(11)
    for k in range(100):
        form = random_positive_definite_form(2 + k % 4, rng)
        report = abs_fiber_check(form, enumerate_roots(form))
        assert report.passed, (form.matrix.tolist(), report.counterexamples)


def test_sym_pair_polarizes_random_forms():
    rng = np.random.default_rng(5)
    for k in range(20):
        form = random_positive_definite_form(2 + k % 4, rng)
        for _ in range(10):
            x = rng.integers(-2, 3, size=form.n)
            y = rng.integers(-2, 3, size=form.n)
            assert form.sym_pair(x, y) == form.sym_pair(y, x)
            assert form(x + y) == form(x) + form(y) + 2 * form.sym_pair(x, y)
            assert form.sym_pair(x, x) == form(x)


def test_positive_definite_forms_derive_their_own_cap():
    from src.settings import settings

    form = _euler_form(dynkin_quiver("D", 4))
    assert max(root_bounds(form)) == 2
    settings.root_cap = 1
    assert len(enumerate_positive_roots(form)) == 12
