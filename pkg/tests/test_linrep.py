from __future__ import annotations

from fractions import Fraction

import pytest

from src import linalg as la
from src import linrep
from src.linrep import (
    ExtDimensionError,
    NonBrickSummandError,
    NotConstructibleError,
    RepresentationError,
)


def _a2_bricks(a2):
    # S1 = P1, P2 = I1, S2 = I2
    return [linrep.projective_rep(a2, 0), linrep.projective_rep(a2, 1), linrep.simple_rep(a2, 1)]


def test_representation_checks_shapes(a2):
    with pytest.raises(RepresentationError):
        linrep.Representation(a2, (1, 1), (la.qmat([[1, 0]]),))
    with pytest.raises(RepresentationError):
        linrep.representation(a2, (1, 1, 1), [[[1]]])
    with pytest.raises(RepresentationError):
        linrep.Representation(a2, (1, -1), (la.zeros(1, 0),))


def test_projective_and_injective_dims(t33):
    for v in range(t33.n):
        assert linrep.projective_rep(t33, v).dim == t33.path_counts_from(v)
        assert linrep.injective_rep(t33, v).dim == t33.path_counts_to(v)


def test_hom_from_projective_reads_the_vertex(t33):
    x = linrep.build_root_rep(t33, (1, 1, 1, 1, 0))
    for v in range(t33.n):
        assert linrep.hom_dim(linrep.projective_rep(t33, v), x) == x.dim[v]
        assert linrep.hom_dim(x, linrep.injective_rep(t33, v)) == x.dim[v]


def test_hom_basis_elements_are_morphisms(t33):
    p = linrep.projective_rep(t33, 3)
    x = linrep.build_root_rep(t33, (1, 1, 1, 1, 0))
    basis = linrep.hom_basis(p, x)
    assert len(basis) == 1
    assert all(linrep.is_morphism(p, x, f) for f in basis)


def test_ext_between_simples_counts_arrows(a2, kronecker):
    s1, s2 = linrep.simple_rep(a2, 0), linrep.simple_rep(a2, 1)
    assert linrep.ext1_dim(s2, s1) == 1
    assert linrep.ext1_dim(s1, s2) == 0
    k1, k2 = linrep.simple_rep(kronecker, 0), linrep.simple_rep(kronecker, 1)
    assert linrep.ext1_dim(k2, k1) == 2
    assert linrep.ext_space(k2, k1).dim == 2


def test_projectives_and_injectives_are_ext_free(t33):
    x = linrep.build_root_rep(t33, (1, 1, 1, 0, 0))
    for v in range(t33.n):
        assert linrep.ext1_dim(linrep.projective_rep(t33, v), x) == 0
        assert linrep.ext1_dim(x, linrep.injective_rep(t33, v)) == 0


def test_nonsplit_extension_of_simples_is_projective(a2):
    bricks = _a2_bricks(a2)
    s1, _, s2 = bricks
    middle = linrep.build_extension(s2, s1, [1])
    assert middle.dim == (1, 1)
    assert linrep.end_dim(middle) == 1
    assert linrep.decompose(middle, bricks) == [(1, 1)]
    split = linrep.build_extension(s2, s1, [0])
    assert linrep.decompose(split, bricks) == [(0, 1), (2, 1)]


def test_extension_coordinates_are_checked(a2):
    s1, s2 = linrep.simple_rep(a2, 0), linrep.simple_rep(a2, 1)
    with pytest.raises(ExtDimensionError):
        linrep.build_extension(s2, s1, [1, 1])


def test_decompose_direct_sum(a2):
    bricks = _a2_bricks(a2)
    r = linrep.direct_sum(bricks[0], bricks[0], bricks[2])
    assert r.dim == (2, 1)
    assert linrep.decompose(r, bricks) == [(0, 2), (2, 1)]
    assert linrep.is_isomorphic(r, linrep.direct_sum(bricks[2], bricks[0], bricks[0]), bricks)
    assert not linrep.is_isomorphic(r, linrep.direct_sum(bricks[0], bricks[1]), bricks)


def test_decompose_needs_every_summand_listed(a2):
    bricks = _a2_bricks(a2)
    with pytest.raises(NonBrickSummandError):
        linrep.decompose(bricks[1], [bricks[0], bricks[2]])


def test_torsion_submodule_of_projective(a2):
    p1, p2, _ = _a2_bricks(a2)
    split = linrep.torsion_submodule([p1], p2)
    assert split.torsion.dim == (1, 0)
    assert split.quotient.dim == (0, 1)
    cls = linrep.ext_class([p1], p2)
    assert cls.space.dim == 1
    assert not cls.is_split


def test_ext_class_of_torsion_module_is_split(a2):
    p1, p2, _ = _a2_bricks(a2)
    cls = linrep.ext_class([p2], p2)
    assert cls.target.dim == (1, 1)
    assert cls.source.is_zero
    assert cls.is_split


def test_ext_class_recovers_the_extension(t33):
    x = linrep.simple_rep(t33, 1)
    y = linrep.simple_rep(t33, 0)
    middle = linrep.build_extension(x, y, [Fraction(3)])
    cls = linrep.ext_class([y], middle)
    assert cls.source.dim == x.dim
    assert cls.target.dim == y.dim
    assert cls.coordinates != (0,)


def test_subrepresentation_must_be_closed(a2):
    p2 = linrep.projective_rep(a2, 1)
    # the top of P2 is not a subrepresentation
    with pytest.raises(RepresentationError):
        linrep.subrepresentation(p2, [la.zeros(1, 0), la.identity(1)])


def test_reflection_functors(a2):
    p2 = linrep.projective_rep(a2, 1)
    down = linrep.reflect_at_sink(p2, 0)
    assert down.dim == (0, 1)
    assert down.quiver.arrows == ((0, 1),)
    back = linrep.reflect_at_source(down, 0)
    assert back.dim == (1, 1)
    assert back.quiver == a2
    assert linrep.reflect_at_sink(linrep.simple_rep(a2, 0), 0).is_zero
    with pytest.raises(RepresentationError):
        linrep.reflect_at_sink(p2, 1)


@pytest.mark.parametrize("dim", [(1, 0), (2, 1), (3, 2), (2, 3), (0, 1)])
def test_build_root_rep_on_kronecker(kronecker, dim):
    rep = linrep.build_root_rep(kronecker, dim)
    assert rep.dim == dim
    assert rep.quiver == kronecker
    assert linrep.end_dim(rep) == 1
    assert linrep.ext1_dim(rep, rep) == 0


def test_build_root_rep_rejects_non_roots(kronecker, a4):
    with pytest.raises(NotConstructibleError):
        linrep.build_root_rep(kronecker, (1, 1))
    with pytest.raises(NotConstructibleError):
        linrep.build_root_rep(a4, (1, 0, 1, 0))


def test_every_a4_root_is_a_brick(a4):
    from src.forms import UnitForm, enumerate_positive_roots
    from src.quiver import euler_matrix

    for x in enumerate_positive_roots(UnitForm(euler_matrix(a4))):
        rep = linrep.build_root_rep(a4, x)
        assert rep.dim == x
        assert linrep.end_dim(rep) == 1


def test_dual_lives_on_the_opposite_quiver(t33):
    p = linrep.projective_rep(t33, 3)
    d = linrep.dual(p)
    assert d.quiver == t33.opposite()
    assert linrep.end_dim(d) == 1
    assert linrep.hom_dim(d, linrep.injective_rep(t33.opposite(), 3)) == 1


def test_text_format(t33):
    rep = linrep.build_root_rep(t33, (1, 1, 1, 0, 0))
    text = linrep.dumps(rep)
    assert text.startswith("dim: 1 1 1 0 0\n")
    assert "a2 3->2: -" in text
    again = linrep.loads(text, t33)
    assert again.dim == rep.dim
    assert all(la.equal(a, b) for a, b in zip(again.maps, rep.maps))
    with pytest.raises(RepresentationError):
        linrep.loads("a0 2->1: 1", t33)


def test_mixed_modules_are_rebuilt_from_their_ext_class(t33_tilting):
    cat = t33_tilting.catalog
    mixed = t33_tilting.classification.mixed
    assert len(mixed) == 5
    for idx in mixed:
        m = cat[idx].rep
        cls = linrep.ext_class(t33_tilting.reps, m)
        assert not cls.is_split
        rebuilt = linrep.build_extension(cls.source, cls.target, cls.coordinates, cls.space)
        assert rebuilt.dim == m.dim
        assert linrep.is_isomorphic(rebuilt, m, cat.reps), cat[idx].label


def test_extension_of_tI3_sum_by_p1_is_the_q5_module(t33_tilting):
    cat = t33_tilting.catalog
    m = cat.identify(linrep.build_root_rep(cat.quiver, (1, 1, 1, 0, 0)))
    cls = linrep.ext_class(t33_tilting.reps, cat[m].rep)
    assert cls.target.dim == (1, 0, 0, 0, 0)
    assert cls.source.dim == (0, 1, 1, 0, 0)
    assert cls.space.dim == 2
    rebuilt = linrep.build_extension(cls.source, cls.target, cls.coordinates, cls.space)
    assert cat.identify(rebuilt) == m
