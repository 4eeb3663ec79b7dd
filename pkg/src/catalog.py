"""
Catalog of indecomposable representations of a quiver.

Dynkin quivers get every indecomposable. Other quivers get bounded
preprojective and preinjective slices, and Euclidean quivers additionally
get exceptional regular modules of small dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from src import linrep
from src.artheory import ARComponent, NodeKey, defect, graph_type, knit_preprojective, null_root
from src.linrep import InconsistencyError, Representation
from src.logging_setup import log
from src.quiver import DimVector, Quiver, coxeter_matrix, euler_matrix, quadratic
from src.settings import settings


class UnknownLabelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    index: int
    label: str
    aliases: tuple[str, ...]
    rep: Representation
    preprojective: bool
    preinjective: bool
    node: NodeKey | None = None
    injective_node: NodeKey | None = None

    @property
    def dim(self) -> DimVector:
        return self.rep.dim

    @property
    def regular(self) -> bool:
        return not (self.preprojective or self.preinjective)


def _projective_label(q: Quiver, key: NodeKey) -> str:
    v, r = q.vertex_labels[key[0]], key[1]
    return f"P{v}" if r == 0 else f"t-{r}P{v}"


def _injective_label(q: Quiver, key: NodeKey) -> str:
    w, s = q.vertex_labels[key[0]], key[1]
    if s == 0:
        return f"I{w}"
    return f"tI{w}" if s == 1 else f"t{s}I{w}"


def _regular_label(dim: DimVector) -> str:
    return "R" + "_".join(str(v) for v in dim)


def _aliases(q: Quiver, node: NodeKey | None, inj: NodeKey | None) -> tuple[str, ...]:
    """Primary label first: the name with the smaller tau exponent, ties going to the injective name."""
    names: list[tuple[int, int, str]] = []
    if inj is not None:
        names.append((inj[1], 0, _injective_label(q, inj)))
    if node is not None:
        names.append((node[1], 1, _projective_label(q, node)))
    return tuple(name for _, _, name in sorted(names))


def fill_rep(q: Quiver, dim: DimVector, values: Sequence[int]) -> Representation:
    """Representation of dimension dim whose arrow matrices are read row by row from values."""
    grids, pos = [], 0
    for s, t in q.arrows:
        rows, cols = dim[t], dim[s]
        grids.append([list(values[pos + r * cols : pos + (r + 1) * cols]) for r in range(rows)])
        pos += rows * cols
    return linrep.representation(q, dim, grids)


def candidate_reps(
    q: Quiver, dim: DimVector, rng: np.random.Generator, attempts: int
) -> Iterator[Representation]:
    """All 0/1 fillings when there are at most 6 scalar entries, then random fillings from {-1, 0, 1, 2}."""
    size = sum(dim[t] * dim[s] for s, t in q.arrows)
    if size <= 6:
        for values in itertools.product((0, 1), repeat=size):
            yield fill_rep(q, dim, values)
    if size == 0:
        return
    for _ in range(attempts):
        yield fill_rep(q, dim, [int(v) for v in rng.choice([-1, 0, 1, 2], size=size)])


def exceptional_regular(q: Quiver, dim: DimVector, rng: np.random.Generator, attempts: int) -> Representation | None:
    for rep in candidate_reps(q, dim, rng, attempts):
        if linrep.end_dim(rep) == 1 and linrep.ext1_dim(rep, rep) == 0:
            return rep
    return None


class Catalog:
    """Indecomposables in a fixed order with cached Hom and Ext dimensions."""

    def __init__(
        self,
        quiver: Quiver,
        entries: Sequence[CatalogEntry],
        component: ARComponent,
        injective_component: ARComponent,
        complete: bool,
    ):
        self.quiver = quiver
        self.entries = tuple(entries)
        self.component = component
        self.injective_component = injective_component
        self.complete = complete
        self._by_label = {alias: e.index for e in self.entries for alias in e.aliases}
        self._hom: dict[tuple[int, int], int] = {}
        self._ext: dict[tuple[int, int], int] = {}

    @classmethod
    def build(cls, q: Quiver, depth: int | None = None) -> Catalog:
        kind = graph_type(q)
        if kind == "dynkin" and depth is not None:
            # Dynkin catalogs are always complete
            log.debug(f"Ignoring depth {depth} for Dynkin quiver {q.display_name()}")
            depth = None
        component = knit_preprojective(q, depth)
        injective_component = knit_preprojective(q.opposite(), depth)

        if kind == "dynkin":
            if not (component.complete and injective_component.complete):
                raise InconsistencyError(f"Knitting of {q.display_name()} did not reach every injective")
            inj_by_dim = {node.dim: node.key for node in injective_component.nodes.values()}
            if set(inj_by_dim) != {node.dim for node in component.nodes.values()}:
                raise InconsistencyError(
                    f"Preprojective and preinjective components of {q.display_name()} differ"
                )
            entries = []
            for node in component.ordered():
                inj = inj_by_dim[node.dim]
                entries.append(
                    CatalogEntry(
                        index=len(entries),
                        label="",
                        aliases=_aliases(q, node.key, inj),
                        rep=linrep.build_root_rep(q, node.dim),
                        preprojective=True,
                        preinjective=True,
                        node=node.key,
                        injective_node=inj,
                    )
                )
            cat = cls(q, [_with_label(e) for e in entries], component, injective_component, True)
            log.debug(f"Catalog of {q.display_name()}: {len(cat)} indecomposables")
            return cat

        entries = []
        for node in component.ordered():
            entries.append(
                CatalogEntry(
                    len(entries), "", _aliases(q, node.key, None),
                    linrep.build_root_rep(q, node.dim), True, False, node=node.key,
                )
            )
        if kind == "euclidean":
            entries.extend(_regular_entries(q, len(entries)))
        for node in injective_component.ordered():
            rep = linrep.dual(linrep.build_root_rep(q.opposite(), node.dim), q)
            entries.append(
                CatalogEntry(
                    len(entries), "", _aliases(q, None, node.key), rep, False, True,
                    injective_node=node.key,
                )
            )
        cat = cls(q, [_with_label(e) for e in entries], component, injective_component, False)
        log.debug(
            f"Catalog of {q.display_name()} ({kind}, depth {component.depth}): "
            f"{len(cat)} indecomposables, {sum(e.regular for e in cat.entries)} regular"
        )
        return cat

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index: int) -> CatalogEntry:
        return self.entries[index]

    @property
    def reps(self) -> list[Representation]:
        return [e.rep for e in self.entries]

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]

    def by_label(self, label: str) -> CatalogEntry:
        key = label.strip()
        if key not in self._by_label:
            raise UnknownLabelError(
                f"Unknown module label {key!r} for {self.quiver.display_name()}. "
                f"Available: {', '.join(self.labels()) or '(none)'}"
            )
        return self.entries[self._by_label[key]]

    def resolve(self, spec: str | Sequence[str]) -> list[int]:
        """Catalog indices for comma-separated labels such as "P1,P3,I3"."""
        parts = spec.split(",") if isinstance(spec, str) else list(spec)
        labels = [p.strip() for p in parts if p.strip()]
        if not labels:
            raise UnknownLabelError("Empty module list")
        return [self.by_label(label).index for label in labels]

    def find_by_dim(self, dim: Sequence[int]) -> list[CatalogEntry]:
        return [e for e in self.entries if e.dim == tuple(dim)]

    def projectives(self) -> list[int]:
        return [e.index for e in self.entries if e.node is not None and e.node[1] == 0]

    def hom_dim(self, i: int, j: int) -> int:
        if (i, j) not in self._hom:
            self._hom[(i, j)] = linrep.hom_dim(self.entries[i].rep, self.entries[j].rep)
        return self._hom[(i, j)]

    def ext_dim(self, i: int, j: int) -> int:
        if (i, j) not in self._ext:
            self._ext[(i, j)] = linrep.ext1_dim(self.entries[i].rep, self.entries[j].rep)
        return self._ext[(i, j)]

    def tau(self, i: int) -> int | None:
        """Catalog index of tau M_i, or None when M_i is projective or tau M_i is outside the catalog."""
        e = self.entries[i]
        if e.node is not None:
            if e.node[1] == 0:
                return None
            return self._index_of_node(e.node[0], e.node[1] - 1)
        if e.injective_node is not None:
            w, s = e.injective_node
            for other in self.entries:
                if other.injective_node == (w, s + 1):
                    return other.index
            return None
        phi = coxeter_matrix(euler_matrix(self.quiver))
        image = tuple(int(v) for v in phi @ np.array(e.dim))
        found = [x for x in self.find_by_dim(image) if x.regular]
        return found[0].index if found else None

    def _index_of_node(self, orbit: int, power: int) -> int | None:
        for e in self.entries:
            if e.node == (orbit, power):
                return e.index
        return None

    def decompose(self, rep: Representation) -> list[tuple[int, int]]:
        return linrep.decompose(rep, self.reps)

    def identify(self, rep: Representation) -> int | None:
        """Catalog index of an indecomposable rep, or None if it is not indecomposable."""
        parts = self.decompose(rep)
        if len(parts) == 1 and parts[0][1] == 1:
            return parts[0][0]
        return None

    def format_dims(self, items: Sequence[tuple[int, int]]) -> str:
        return " + ".join(
            (f"{m}*" if m > 1 else "") + self.entries[i].label for i, m in items
        ) or "0"


def _with_label(e: CatalogEntry) -> CatalogEntry:
    return CatalogEntry(
        e.index, e.aliases[0], e.aliases, e.rep, e.preprojective, e.preinjective,
        e.node, e.injective_node,
    )


def _regular_entries(q: Quiver, start: int) -> list[CatalogEntry]:
    """Exceptional regular modules: real roots of defect 0 with coordinates up to the regular bound."""
    bound = settings.regular_bound
    if bound <= 0:
        return []
    e = euler_matrix(q)
    delta = null_root(q)
    rng = np.random.default_rng(settings.seed)
    found: list[CatalogEntry] = []
    dims = sorted(
        (x for x in itertools.product(range(bound + 1), repeat=q.n) if any(x)),
        key=lambda x: (sum(x), x),
    )
    for x in dims:
        if quadratic(e, x) != 1 or defect(q, x, delta) != 0:
            continue
        rep = exceptional_regular(q, x, rng, settings.witness_attempts)
        if rep is None:
            log.debug(f"No exceptional regular module of dimension {x} found")
            continue
        label = _regular_label(x)
        found.append(CatalogEntry(start + len(found), label, (label,), rep, False, False))
    return found
