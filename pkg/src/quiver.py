"""
Quivers, their text format, and the Euler form of the path algebra.

Vertex order is declaration order; every vector and matrix in the workbench
uses it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import networkx as nx
import numpy as np
import sympy

from src.logging_setup import log

DimVector = tuple[int, ...]

_LABEL_RE = re.compile(r"^[^\s,#:]+$")
_ARROW_RE = re.compile(r"^([^\s,#:]+?)->([^\s,#:]+)$")


class QuiverError(ValueError):
    pass


class QuiverSyntaxError(QuiverError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateVertexError(QuiverError):
    pass


class UnknownVertexError(QuiverError):
    pass


class LoopError(QuiverError):
    pass


class CycleError(QuiverError):
    pass


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    """A finite acyclic quiver; arrows are (source_index, target_index) pairs."""

    vertex_labels: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertex_labels", tuple(self.vertex_labels))
        object.__setattr__(
            self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows)
        )
        seen: set[str] = set()
        for label in self.vertex_labels:
            if label in seen:
                raise DuplicateVertexError(f"Duplicate vertex label: {label!r}")
            seen.add(label)
        n = len(self.vertex_labels)
        for s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise UnknownVertexError(f"Arrow ({s}, {t}) refers to a missing vertex")
            if s == t:
                raise LoopError(f"Loop at vertex {self.vertex_labels[s]!r}")
        if not nx.is_directed_acyclic_graph(self.graph):
            cycle = nx.find_cycle(self.graph)
            names = " -> ".join(self.vertex_labels[e[0]] for e in cycle)
            raise CycleError(f"Oriented cycle: {names} -> {self.vertex_labels[cycle[0][0]]}")

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    @cached_property
    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(range(self.n))
        for a, (s, t) in enumerate(self.arrows):
            g.add_edge(s, t, key=a)
        return g

    def display_name(self) -> str:
        return self.name or "quiver"

    def index(self, label: str) -> int:
        try:
            return self.vertex_labels.index(label)
        except ValueError:
            raise UnknownVertexError(
                f"Unknown vertex {label!r}; available: {', '.join(self.vertex_labels)}"
            ) from None

    def arrow_count(self, i: int, j: int) -> int:
        return sum(1 for s, t in self.arrows if s == i and t == j)

    def arrows_into(self, k: int) -> list[int]:
        return [a for a, (_, t) in enumerate(self.arrows) if t == k]

    def arrows_out_of(self, k: int) -> list[int]:
        return [a for a, (s, _) in enumerate(self.arrows) if s == k]

    def sinks(self) -> list[int]:
        return [k for k in range(self.n) if not self.arrows_out_of(k)]

    def sources(self) -> list[int]:
        return [k for k in range(self.n) if not self.arrows_into(k)]

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_weakly_connected(self.graph)

    def admissible_order(self) -> list[int]:
        """Vertices ordered so each one is a sink once its predecessors in the list are reflected."""
        return list(nx.lexicographical_topological_sort(self.graph.reverse(copy=True)))

    def opposite(self) -> Quiver:
        return Quiver(
            self.vertex_labels,
            tuple((t, s) for s, t in self.arrows),
            name=f"{self.name}^op" if self.name else "",
        )

    def reflect(self, k: int) -> Quiver:
        """Reverse every arrow at k; k must be a sink or a source. Arrow indices are kept."""
        if self.arrows_into(k) and self.arrows_out_of(k):
            raise QuiverError(f"Vertex {self.vertex_labels[k]!r} is neither a sink nor a source")
        arrows = tuple((t, s) if k in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(self.vertex_labels, arrows, name=self.name)

    def paths(self, i: int, j: int) -> list[tuple[int, ...]]:
        """All paths i ~> j as tuples of arrow indices; the trivial path is ()."""
        found: list[tuple[int, ...]] = []

        def walk(v: int, prefix: tuple[int, ...]) -> None:
            if v == j:
                found.append(prefix)
            for a in self.arrows_out_of(v):
                walk(self.arrows[a][1], prefix + (a,))

        walk(i, ())
        return sorted(found)

    def path_counts_from(self, i: int) -> DimVector:
        return tuple(len(self.paths(i, j)) for j in range(self.n))

    def path_counts_to(self, j: int) -> DimVector:
        return tuple(len(self.paths(i, j)) for i in range(self.n))

    def format_vector(self, x: Sequence[int]) -> str:
        return "(" + ",".join(str(int(v)) for v in x) + ")"


def _tokens(line: str) -> Iterator[tuple[int, str]]:
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group(0)


def parse_quiver(text: str, *, name: str = "") -> Quiver:
    """
    Parse the line-oriented quiver format::

        quiver T33            # optional header
        vertices: 1 2 2' 3 3'
        arrows: 2->1 2'->1 3->2 3'->2'

    Labels may continue on following lines until the next keyword.
    """
    labels: list[tuple[str, int, int]] = []
    arrows: list[tuple[str, str, int, int]] = []
    header = name
    section: str | None = None
    saw_vertices = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = list(_tokens(line))
        if not tokens:
            continue
        col, first = tokens[0]
        if first == "quiver":
            if section is not None or saw_vertices:
                raise QuiverSyntaxError("'quiver' header must come first", lineno, col)
            if len(tokens) != 2:
                raise QuiverSyntaxError("expected 'quiver <name>'", lineno, col)
            header = tokens[1][1]
            continue
        if first in ("vertices:", "arrows:"):
            section = first[:-1]
            saw_vertices = saw_vertices or section == "vertices"
            tokens = tokens[1:]
        elif first.endswith(":"):
            raise QuiverSyntaxError(f"unknown keyword {first!r}", lineno, col)
        elif section is None:
            raise QuiverSyntaxError(f"unexpected token {first!r} before a section", lineno, col)

        for col, tok in tokens:
            if section == "vertices":
                if not _LABEL_RE.match(tok) or "->" in tok:
                    raise QuiverSyntaxError(f"invalid vertex label {tok!r}", lineno, col)
                labels.append((tok, lineno, col))
            else:
                m = _ARROW_RE.match(tok)
                if m is None:
                    raise QuiverSyntaxError(f"expected 'src->tgt', got {tok!r}", lineno, col)
                arrows.append((m.group(1), m.group(2), lineno, col))

    if not saw_vertices:
        raise QuiverSyntaxError("missing 'vertices:' section", 1, 1)

    index: dict[str, int] = {}
    for label, lineno, col in labels:
        if label in index:
            raise DuplicateVertexError(f"line {lineno}, column {col}: duplicate vertex {label!r}")
        index[label] = len(index)

    resolved: list[tuple[int, int]] = []
    for src, tgt, lineno, col in arrows:
        for end in (src, tgt):
            if end not in index:
                raise UnknownVertexError(f"line {lineno}, column {col}: unknown vertex {end!r}")
        if src == tgt:
            raise LoopError(f"line {lineno}, column {col}: loop at {src!r}")
        resolved.append((index[src], index[tgt]))

    q = Quiver(tuple(index), tuple(resolved), name=header)
    if q.n > 1 and not q.is_connected():
        log.warning(f"Quiver {q.display_name()!r} is not connected")
    return q


def load_quiver(path: str | Path) -> Quiver:
    p = Path(path)
    return parse_quiver(p.read_text(encoding="utf-8"), name=p.stem)


def dumps_quiver(q: Quiver) -> str:
    lines = []
    if q.name:
        lines.append(f"quiver {q.name}")
    lines.append("vertices: " + " ".join(q.vertex_labels))
    if q.arrows:
        lines.append(
            "arrows: "
            + " ".join(f"{q.vertex_labels[s]}->{q.vertex_labels[t]}" for s, t in q.arrows)
        )
    return "\n".join(lines) + "\n"


def quiver_from_edges(
    labels: Sequence[str], arrows: Sequence[tuple[str, str]], name: str = ""
) -> Quiver:
    index = {label: i for i, label in enumerate(labels)}
    return Quiver(tuple(labels), tuple((index[s], index[t]) for s, t in arrows), name=name)


def dynkin_quiver(kind: str, n: int) -> Quiver:
    """Linearly oriented A_n (i+1 -> i) or D_n (branch at n-2, all arrows towards 1)."""
    labels = [str(i) for i in range(1, n + 1)]
    kind = kind.upper()
    if kind == "A" and n >= 1:
        edges = [(str(i + 1), str(i)) for i in range(1, n)]
    elif kind == "D" and n >= 4:
        edges = [(str(i + 1), str(i)) for i in range(1, n - 1)]
        edges.append((str(n), str(n - 2)))
    else:
        raise QuiverError(f"Unsupported Dynkin type {kind}{n}")
    return quiver_from_edges(labels, edges, name=f"{kind}{n}")


def orientations(q: Quiver) -> list[Quiver]:
    """Every acyclic orientation of the underlying multigraph of q, in bitmask order."""
    result: list[Quiver] = []
    for mask in itertools.product((False, True), repeat=len(q.arrows)):
        arrows = tuple((t, s) if flip else (s, t) for (s, t), flip in zip(q.arrows, mask))
        number = sum(1 << i for i, flip in enumerate(mask) if flip)
        try:
            result.append(Quiver(q.vertex_labels, arrows, name=f"{q.display_name()}#{number}"))
        except CycleError:
            continue
    return result


def as_vector(x: Sequence[int] | np.ndarray, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=np.int64)
    if v.shape != (n,):
        raise DimensionMismatchError(f"Expected a vector of length {n}, got shape {v.shape}")
    return v


def euler_matrix(q: Quiver) -> np.ndarray:
    """E = I - A with A[i][j] the number of arrows i -> j; <x,y> = x^T E y."""
    e = np.eye(q.n, dtype=np.int64)
    for s, t in q.arrows:
        e[s, t] -= 1
    return e


def bilinear(e: np.ndarray, x: Sequence[int], y: Sequence[int]) -> int:
    n = e.shape[0]
    return int(as_vector(x, n) @ e @ as_vector(y, n))


def quadratic(e: np.ndarray, x: Sequence[int]) -> int:
    return bilinear(e, x, x)


def sym_pair(e: np.ndarray, x: Sequence[int], y: Sequence[int]) -> Fraction:
    return Fraction(bilinear(e, x, y) + bilinear(e, y, x), 2)


def _integral(m: sympy.Matrix, what: str) -> np.ndarray:
    if any(not v.is_integer for v in m):
        raise RuntimeError(f"{what} is not integral: {m.tolist()}")
    return np.array(m.tolist(), dtype=np.int64)


def coxeter_matrix(e: np.ndarray) -> np.ndarray:
    """Phi = -E^{-1} E^T, so that <x,y> = -<y, Phi x>."""
    m = sympy.Matrix(e.tolist())
    if m.det() == 0:
        raise RuntimeError("Euler matrix is singular")
    return _integral(-m.inv() * m.T, "Coxeter matrix")


def coxeter_inverse(e: np.ndarray) -> np.ndarray:
    m = sympy.Matrix(e.tolist())
    if m.det() == 0:
        raise RuntimeError("Euler matrix is singular")
    return _integral(-m.T.inv() * m, "Inverse Coxeter matrix")


def reflect_vector(q: Quiver, k: int, x: Sequence[int]) -> DimVector:
    """Simple reflection s_k: x_k becomes (sum over edges at k of the neighbour's entry) - x_k."""
    y = list(int(v) for v in x)
    total = 0
    for s, t in q.arrows:
        if s == k:
            total += y[t]
        elif t == k:
            total += y[s]
    y[k] = total - y[k]
    return tuple(y)
