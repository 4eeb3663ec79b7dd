"""
Preprojective Auslander-Reiten components by knitting, graph types, and
predecessor closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Literal

import networkx as nx
import numpy as np
import sympy

from src.forms import UnitForm, is_positive_definite
from src.logging_setup import log
from src.quiver import DimVector, Quiver, bilinear, coxeter_inverse, coxeter_matrix, euler_matrix
from src.reports import VerificationReport
from src.settings import settings

NodeKey = tuple[int, int]
GraphType = Literal["dynkin", "euclidean", "wild"]


class SeedError(ValueError):
    pass


class GraphTypeError(ValueError):
    pass


@dataclass(frozen=True)
class ARNode:
    """tau^-power P(orbit)."""

    orbit: int
    power: int
    dim: DimVector
    label: str
    injective: bool = False

    @property
    def key(self) -> NodeKey:
        return (self.orbit, self.power)

    @property
    def projective(self) -> bool:
        return self.power == 0


@dataclass(frozen=True, eq=False)
class ARComponent:
    quiver: Quiver
    nodes: dict[NodeKey, ARNode]
    arrows: tuple[tuple[NodeKey, NodeKey], ...]
    complete: bool
    depth: int = 0

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, key: object) -> bool:
        return key in self.nodes

    def ordered(self) -> list[ARNode]:
        return [self.nodes[k] for k in sorted(self.nodes, key=lambda k: (k[1], k[0]))]

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.arrows)
        return g

    def successors(self, key: NodeKey) -> list[NodeKey]:
        return [t for s, t in self.arrows if s == key]

    def predecessors(self, key: NodeKey) -> list[NodeKey]:
        return [s for s, t in self.arrows if t == key]

    def tau(self, key: NodeKey) -> NodeKey | None:
        i, r = key
        return (i, r - 1) if r > 0 else None

    def tau_inverse(self, key: NodeKey) -> NodeKey | None:
        nxt = (key[0], key[1] + 1)
        return nxt if nxt in self.nodes else None

    def check(self) -> VerificationReport:
        """Mesh additivity at every complete mesh and Phi dim M = dim tau M at every non-projective node."""
        report = VerificationReport(property="mesh", subject=self.quiver.display_name())
        phi = coxeter_matrix(euler_matrix(self.quiver))
        for key, node in self.nodes.items():
            report.checked += 1
            prev = self.tau(key)
            if prev is None:
                continue
            tau_dim = tuple(int(v) for v in phi @ np.array(node.dim))
            report.expect(
                tau_dim == self.nodes[prev].dim,
                "Coxeter image differs from tau",
                node=node.label,
                coxeter=list(tau_dim),
            )
            middle = np.zeros(self.quiver.n, dtype=np.int64)
            for s in self.successors(prev):
                middle += np.array(self.nodes[s].dim)
            expected = middle - np.array(self.nodes[prev].dim)
            report.expect(
                tuple(int(v) for v in expected) == node.dim,
                "mesh is not additive",
                node=node.label,
                middle=[int(v) for v in middle],
            )
        return report

    def to_dot(self, name: str = "AR") -> str:
        lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
        for node in self.ordered():
            text = f"{node.label}\\n{self.quiver.format_vector(node.dim)}"
            lines.append(f'  "{node.label}" [label="{text}"];')
        for s, t in self.arrows:
            lines.append(f'  "{self.nodes[s].label}" -> "{self.nodes[t].label}";')
        for key, node in sorted(self.nodes.items()):
            prev = self.tau(key)
            if prev is not None:
                lines.append(
                    f'  "{node.label}" -> "{self.nodes[prev].label}" '
                    "[style=dashed, arrowhead=none, constraint=false];"
                )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _node_label(q: Quiver, orbit: int, power: int) -> str:
    v = q.vertex_labels[orbit]
    return f"P{v}" if power == 0 else f"t-{power}P{v}"


def knit_preprojective(q: Quiver, depth: int | None = None) -> ARComponent:
    """
    Knit the preprojective component slice by slice with

        dim tau^-M = sum of dims of the successors of M - dim M.

    Without a depth, knitting runs until every orbit reaches an injective
    (only possible for Dynkin quivers; other quivers fall back to the
    configured depth).
    """
    dynkin = is_dynkin(q) is not None
    limit = depth if depth is not None else (None if dynkin else settings.knit_depth)
    order = q.admissible_order()
    phi_inv = coxeter_inverse(euler_matrix(q))

    dims: dict[NodeKey, DimVector] = {(i, 0): q.path_counts_from(i) for i in range(q.n)}
    injective_dims = {q.path_counts_to(v) for v in range(q.n)}
    alive = set(range(q.n))
    injective: set[NodeKey] = set()
    arrows: list[tuple[NodeKey, NodeKey]] = []
    for s, t in q.arrows:
        arrows.append(((t, 0), (s, 0)))

    r = 0
    # Dynkin components have at most (number of positive roots) slices
    hard_stop = limit if limit is not None else 4 * q.n * q.n + 4
    while alive and r < hard_stop:
        for i in order:
            if i not in alive:
                continue
            if dims[(i, r)] in injective_dims:
                alive.discard(i)
                injective.add((i, r))
                continue
            total = -np.array(dims[(i, r)], dtype=np.int64)
            for a in q.arrows_into(i):
                total += np.array(dims.get((q.arrows[a][0], r), (0,) * q.n))
            for a in q.arrows_out_of(i):
                total += np.array(dims.get((q.arrows[a][1], r + 1), (0,) * q.n))
            if np.any(total < 0) or not np.any(total):
                raise RuntimeError(f"Knitting produced a non-positive vector after {_node_label(q, i, r)}")
            nxt = tuple(int(v) for v in total)
            via_coxeter = tuple(int(v) for v in phi_inv @ np.array(dims[(i, r)]))
            if nxt != via_coxeter:
                raise RuntimeError(
                    f"Mesh and Coxeter disagree at {_node_label(q, i, r + 1)}: {nxt} vs {via_coxeter}"
                )
            dims[(i, r + 1)] = nxt
        for s, t in q.arrows:
            if (t, r + 1) in dims:
                if (s, r + 1) in dims:
                    arrows.append(((t, r + 1), (s, r + 1)))
                if (s, r) in dims:
                    arrows.append(((s, r), (t, r + 1)))
        r += 1

    complete = not alive
    if not complete and dynkin:
        log.warning(f"Knitting stopped at depth {r} before reaching every injective")
    nodes = {
        key: ARNode(key[0], key[1], dim, _node_label(q, *key), injective=key in injective)
        for key, dim in dims.items()
    }
    log.debug(f"Knitted {len(nodes)} preprojective nodes for {q.display_name()} (depth {r})")
    return ARComponent(q, nodes, tuple(arrows), complete, depth=r)


# --- Graph types ---------------------------------------------------------------


def _underlying(q: Quiver) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(q.n))
    g.add_edges_from(q.arrows)
    return g


def is_dynkin(q: Quiver) -> str | None:
    """Name of the ADE diagram underlying q (e.g. "A5", "D4", "E6"), or None."""
    if q.n == 0 or len(q.arrows) != q.n - 1:
        return None
    g = _underlying(q)
    if g.number_of_edges() != len(q.arrows) or not nx.is_tree(g):
        return None
    branches = [v for v, d in g.degree() if d >= 3]
    if not branches:
        return f"A{q.n}"
    if len(branches) > 1 or g.degree(branches[0]) != 3:
        return None
    center = branches[0]
    h = g.copy()
    h.remove_node(center)
    arms = sorted(len(c) for c in nx.connected_components(h))
    if arms[:2] == [1, 1]:
        return f"D{q.n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{q.n}"
    return None


def graph_type(q: Quiver) -> GraphType:
    form = UnitForm(euler_matrix(q))
    if is_positive_definite(form):
        return "dynkin"
    if q.is_connected() and form.symmetrized().is_positive_semidefinite:
        return "euclidean"
    return "wild"


def null_root(q: Quiver) -> DimVector:
    """The positive primitive generator of the radical of q_A (Euclidean quivers only)."""
    if graph_type(q) != "euclidean":
        raise GraphTypeError(f"{q.display_name()} is not a Euclidean quiver")
    (vec,) = UnitForm(euler_matrix(q)).symmetrized().nullspace()
    denom = lcm(*[int(sympy.fraction(v)[1]) for v in vec])
    ints = [int(v * denom) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if ints[0] < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def defect(q: Quiver, x: Iterable[int], delta: DimVector | None = None) -> int:
    """<delta, x>: negative on preprojectives, zero on regulars, positive on preinjectives."""
    delta = delta if delta is not None else null_root(q)
    return bilinear(euler_matrix(q), delta, tuple(x))


# --- Predecessors ----------------------------------------------------------------


@dataclass(frozen=True)
class PredecessorSet:
    component: ARComponent
    nodes: frozenset[NodeKey]

    def __contains__(self, key: object) -> bool:
        return key in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def labels(self) -> list[str]:
        return sorted(self.component.nodes[k].label for k in self.nodes)


def predecessor_closure(c: ARComponent, seeds: Iterable[NodeKey]) -> PredecessorSet:
    """Seeds together with everything that reaches them along irreducible maps."""
    closure: set[NodeKey] = set()
    for key in seeds:
        if key not in c.nodes:
            raise SeedError(f"Node {key} is not in the knitted component")
        closure.add(key)
        closure.update(nx.ancestors(c.graph, key))
    return PredecessorSet(c, frozenset(closure))
