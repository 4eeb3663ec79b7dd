from __future__ import annotations

import numpy as np
import pytest

from src.quiver import (
    CycleError,
    DuplicateVertexError,
    LoopError,
    QuiverError,
    QuiverSyntaxError,
    UnknownVertexError,
    bilinear,
    coxeter_inverse,
    coxeter_matrix,
    dumps_quiver,
    dynkin_quiver,
    euler_matrix,
    orientations,
    parse_quiver,
    quadratic,
    reflect_vector,
    sym_pair,
)

from tests.conftest import quiver_path


def test_parse_t33_file(t33):
    assert t33.name == "t33"
    assert t33.vertex_labels == ("1", "2", "2'", "3", "3'")
    assert t33.arrows == ((1, 0), (2, 0), (3, 1), (4, 2))
    assert t33.sinks() == [0]
    assert sorted(t33.sources()) == [3, 4]


def test_parse_header_comments_and_continuation():
    q = parse_quiver(
        """
        quiver K   # header
        vertices: a
                  b
        arrows: b->a b->a
        """
    )
    assert q.name == "K"
    assert q.vertex_labels == ("a", "b")
    assert q.arrow_count(1, 0) == 2


@pytest.mark.parametrize(
    ("text", "error"),
    [
        ("vertices: 1 1", DuplicateVertexError),
        ("vertices: 1 2\narrows: 1->3", UnknownVertexError),
        ("vertices: 1\narrows: 1->1", LoopError),
        ("vertices: 1 2\narrows: 1->2 2->1", CycleError),
        ("arrows: 1->2", QuiverSyntaxError),
        ("vertices: 1 2\narrows: 1-2", QuiverSyntaxError),
        ("vertices: 1 2\nedges: 1->2", QuiverSyntaxError),
    ],
)
def test_parse_rejects_malformed_input(text, error):
    with pytest.raises(error):
        parse_quiver(text)


def test_syntax_error_carries_position():
    with pytest.raises(QuiverSyntaxError) as exc:
        parse_quiver("vertices: 1 2\narrows: 1->2 oops")
    assert exc.value.line == 2
    assert exc.value.column == 14


def test_quiver_errors_are_value_errors():
    assert issubclass(QuiverError, ValueError)


def test_dumps_then_parse_keeps_structure(t33):
    again = parse_quiver(dumps_quiver(t33))
    assert again.vertex_labels == t33.vertex_labels
    assert again.arrows == t33.arrows


def test_path_counts_give_projective_and_injective_dims(t33, atilde2):
    assert t33.path_counts_from(3) == (1, 1, 0, 1, 0)
    assert t33.path_counts_to(0) == (1, 1, 1, 1, 1)
    # two paths 3 ~> 1 in the triangle
    assert atilde2.path_counts_from(2) == (2, 1, 1)


def test_admissible_order_starts_at_a_sink(t33):
    order = t33.admissible_order()
    assert sorted(order) == list(range(t33.n))
    assert order[0] in t33.sinks()
    seen = set()
    for k in order:
        assert all(t33.arrows[a][1] in seen for a in t33.arrows_out_of(k))
        seen.add(k)


def test_opposite_and_reflect(a2):
    op = a2.opposite()
    assert op.arrows == ((0, 1),)
    assert op.name == "A2^op"
    assert a2.reflect(0).arrows == op.arrows
    d4 = dynkin_quiver("D", 4)
    with pytest.raises(QuiverError):
        d4.reflect(1)


def test_orientations_of_a4_path():
    qs = orientations(dynkin_quiver("A", 4))
    assert len(qs) == 8
    assert len({q.arrows for q in qs}) == 8
    assert qs[0].name == "A4#0"


def test_orientations_skip_cyclic(atilde2):
    # 8 orientations of a triangle, two of them oriented cycles
    assert len(orientations(atilde2)) == 6


def test_euler_form_of_kronecker(kronecker):
    e = euler_matrix(kronecker)
    assert e.tolist() == [[1, 0], [-2, 1]]
    assert quadratic(e, (1, 1)) == 0
    assert bilinear(e, (0, 1), (1, 0)) == -2


def test_coxeter_matrix_identity(t33):
    e = euler_matrix(t33)
    phi = coxeter_matrix(e)
    rng = np.random.default_rng(3)
    for _ in range(10):
        x, y = rng.integers(-3, 4, size=(2, t33.n))
        assert bilinear(e, x, y) == -bilinear(e, y, phi @ x)
    assert (phi @ coxeter_inverse(e) == np.eye(t33.n, dtype=np.int64)).all()


def test_reflect_vector_is_involution(a4):
    x = (1, 2, 1, 0)
    for k in range(a4.n):
        assert reflect_vector(a4, k, reflect_vector(a4, k, x)) == x


def test_dynkin_quiver_rejects_unknown_type():
    with pytest.raises(QuiverError):
        dynkin_quiver("E", 3)


def test_quiver_files_exist():
    for name in ("t33", "a2", "a4", "a5", "d4", "kronecker", "atilde2"):
        assert quiver_path(name).is_file()


def test_sym_pair_polarizes_the_euler_form(t33, kronecker):
    rng = np.random.default_rng(3)
    for q in (t33, kronecker):
        e = euler_matrix(q)
        for _ in range(50):
            x = rng.integers(-3, 4, size=q.n)
            y = rng.integers(-3, 4, size=q.n)
            assert sym_pair(e, x, y) == sym_pair(e, y, x)
            assert quadratic(e, x + y) == quadratic(e, x) + quadratic(e, y) + 2 * sym_pair(e, x, y)
    e = euler_matrix(kronecker)
    assert sym_pair(e, (1, 0), (0, 1)) == -1
    assert sym_pair(e, (1, 0), (1, 0)) == 1
