"""
Tilting modules over a catalog: detection, enumeration, the torsion pair
(F, G) with its mixed class M(T), the base change g and the form q_B.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Literal, Sequence

import networkx as nx
import numpy as np
import sympy

from src import linrep
from src.catalog import Catalog
from src.forms import UnitForm
from src.linrep import InconsistencyError, TorsionSplit
from src.logging_setup import log
from src.quiver import DimVector, euler_matrix

Tag = Literal["F", "G", "M"]


class NotDynkinError(ValueError):
    pass


class NotTiltingError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleClass:
    index: int
    tag: Tag
    hom: tuple[int, ...]
    ext: tuple[int, ...]

    @property
    def supp_g(self) -> tuple[int, ...]:
        return tuple(i for i, h in enumerate(self.hom) if h)

    @property
    def supp_f(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.ext) if e)


@dataclass(frozen=True, eq=False)
class TorsionClassification:
    rows: tuple[ModuleClass, ...]

    def members(self, tag: Tag) -> list[int]:
        return [r.index for r in self.rows if r.tag == tag]

    @property
    def torsion_free(self) -> list[int]:
        return self.members("F")

    @property
    def torsion(self) -> list[int]:
        return self.members("G")

    @property
    def mixed(self) -> list[int]:
        return self.members("M")

    def row(self, index: int) -> ModuleClass:
        return self.rows[index]


@dataclass(frozen=True, eq=False)
class GMap:
    """g(x) = (<t_i, x>)_i with its rational inverse."""

    matrix: np.ndarray
    inverse: sympy.Matrix

    def __call__(self, x: Sequence[int]) -> DimVector:
        return tuple(int(v) for v in self.matrix @ np.asarray(x, dtype=np.int64))

    def preimage(self, y: Sequence[int]) -> tuple[Fraction, ...]:
        image = self.inverse * sympy.Matrix(list(y))
        return tuple(Fraction(int(v.p), int(v.q)) for v in image)


@dataclass(frozen=True, eq=False)
class TorsionParts:
    split: TorsionSplit
    torsion: list[tuple[int, int]]
    quotient: list[tuple[int, int]]


class TiltingModule:
    """n pairwise non-isomorphic, ext-orthogonal catalog members, kept in the given order."""

    def __init__(self, catalog: Catalog, indices: Sequence[int]):
        self.catalog = catalog
        self.indices = tuple(int(i) for i in indices)
        self._splits: dict[int, TorsionSplit] = {}
        self._parts: dict[int, TorsionParts] = {}

    @property
    def quiver(self):
        return self.catalog.quiver

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def summands(self):
        return [self.catalog[i] for i in self.indices]

    @property
    def reps(self) -> list[linrep.Representation]:
        return [e.rep for e in self.summands]

    @property
    def dims(self) -> list[DimVector]:
        return [e.dim for e in self.summands]

    @property
    def labels(self) -> list[str]:
        return [e.label for e in self.summands]

    @property
    def preprojective(self) -> bool:
        return all(e.preprojective for e in self.summands)

    @property
    def preinjective(self) -> bool:
        return all(e.preinjective for e in self.summands)

    def __repr__(self) -> str:
        return f"TiltingModule({','.join(self.labels)})"

    def reordered(self, order: Sequence[int]) -> TiltingModule:
        return TiltingModule(self.catalog, [self.indices[k] for k in order])

    def check(self) -> None:
        problem = tilting_problem(self.catalog, self.indices)
        if problem:
            raise NotTiltingError(f"{','.join(self.labels)} is not a tilting module: {problem}")

    @cached_property
    def classification(self) -> TorsionClassification:
        return classify(self)

    @cached_property
    def g(self) -> GMap:
        return g_map(self)

    @cached_property
    def form(self) -> UnitForm:
        return pushforward_form(self)

    def split(self, index: int) -> TorsionSplit:
        if index not in self._splits:
            self._splits[index] = linrep.torsion_submodule(self.reps, self.catalog[index].rep)
        return self._splits[index]

    def parts(self, index: int) -> TorsionParts:
        """Torsion split of catalog member `index` with both parts decomposed."""
        if index not in self._parts:
            split = self.split(index)
            self._parts[index] = TorsionParts(
                split,
                self.catalog.decompose(split.torsion),
                self.catalog.decompose(split.quotient),
            )
        return self._parts[index]


def tilting_problem(catalog: Catalog, indices: Sequence[int]) -> str:
    """Empty string for a tilting module, else the first violated condition."""
    n = catalog.quiver.n
    if len(indices) != n:
        return f"{len(indices)} summands, expected {n}"
    if len(set(indices)) != n:
        return "repeated summand"
    for i in indices:
        for j in indices:
            if catalog.ext_dim(i, j):
                return f"Ext^1({catalog[i].label}, {catalog[j].label}) != 0"
    if sympy.Matrix([list(catalog[i].dim) for i in indices]).det() == 0:
        return "dimension vectors are not a basis"
    return ""


def is_tilting(catalog: Catalog, indices: Sequence[int]) -> bool:
    return not tilting_problem(catalog, indices)


def tilting_module(catalog: Catalog, spec: str | Sequence[str]) -> TiltingModule:
    t = TiltingModule(catalog, catalog.resolve(spec))
    t.check()
    return t


def _compatibility_graph(catalog: Catalog) -> nx.Graph:
    g = nx.Graph()
    rigid = [e.index for e in catalog if catalog.ext_dim(e.index, e.index) == 0]
    g.add_nodes_from(rigid)
    for a, i in enumerate(rigid):
        for j in rigid[a + 1 :]:
            if catalog.ext_dim(i, j) == 0 and catalog.ext_dim(j, i) == 0:
                g.add_edge(i, j)
    return g


def enumerate_bounded_tilting(catalog: Catalog) -> list[TiltingModule]:
    """Tilting modules whose summands all lie in the catalog, ordered by catalog index."""
    n = catalog.quiver.n
    found = []
    for clique in nx.find_cliques(_compatibility_graph(catalog)):
        if len(clique) == n and is_tilting(catalog, sorted(clique)):
            found.append(tuple(sorted(clique)))
    log.debug(f"{len(found)} tilting modules in the catalog of {catalog.quiver.display_name()}")
    return [TiltingModule(catalog, idx) for idx in sorted(found)]


def enumerate_tilting(catalog: Catalog) -> list[TiltingModule]:
    if not catalog.complete:
        raise NotDynkinError(
            f"{catalog.quiver.display_name()} is not of Dynkin type; tilting modules cannot be listed exhaustively"
        )
    return enumerate_bounded_tilting(catalog)


def classify(t: TiltingModule) -> TorsionClassification:
    rows = []
    for entry in t.catalog:
        hom = tuple(t.catalog.hom_dim(i, entry.index) for i in t.indices)
        ext = tuple(t.catalog.ext_dim(i, entry.index) for i in t.indices)
        if not any(hom) and not any(ext):
            raise InconsistencyError(f"{entry.label} has neither maps nor extensions from T")
        tag: Tag = "F" if not any(hom) else "G" if not any(ext) else "M"
        rows.append(ModuleClass(entry.index, tag, hom, ext))
    return TorsionClassification(tuple(rows))


def g_map(t: TiltingModule) -> GMap:
    e = euler_matrix(t.quiver)
    m = np.array(t.dims, dtype=np.int64) @ e
    sm = sympy.Matrix(m.tolist())
    if sm.det() == 0:
        raise NotTiltingError(f"{t!r}: g is singular")
    g = GMap(m, sm.inv())
    for j, idx in enumerate(t.indices):
        expected = tuple(t.catalog.hom_dim(i, idx) for i in t.indices)
        if g(t.dims[j]) != expected:
            raise InconsistencyError(f"g(dim {t.labels[j]}) = {g(t.dims[j])}, expected {expected}")
    return g


def pushforward_form(t: TiltingModule) -> UnitForm:
    """q_B with q_B(g x) = q_A(x); Gram matrix (g^-1)^T E g^-1."""
    inv = t.g.inverse
    gram = inv.T * sympy.Matrix(euler_matrix(t.quiver).tolist()) * inv
    if any(not v.is_integer for v in gram):
        raise InconsistencyError(f"{t!r}: pushed-forward form is not integral")
    return UnitForm(np.array(gram.tolist(), dtype=np.int64), labels=tuple(t.labels))
