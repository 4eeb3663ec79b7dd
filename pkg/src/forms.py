"""
Integral unit quadratic forms, their roots, and bigraph presentations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import sympy

from src.logging_setup import log
from src import quiver
from src.quiver import DimVector, DimensionMismatchError, as_vector
from src.reports import Counterexample, VerificationReport
from src.settings import settings


class FormError(ValueError):
    pass


class RootCapExceeded(ValueError):
    def __init__(self, cap: int, frontier: Sequence[DimVector]):
        sample = ", ".join(str(v) for v in list(frontier)[:5])
        super().__init__(
            f"Positive roots exceed coordinate cap {cap}; frontier has "
            f"{len(frontier)} vectors (e.g. {sample}). Raise --root-cap."
        )
        self.cap = cap
        self.frontier = tuple(frontier)


class IncompleteRootSetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class UnitForm:
    """q(x) = x^T M x for an integer matrix M with unit diagonal."""

    matrix: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise FormError(f"Form matrix must be square, got shape {m.shape}")
        if np.any(np.diag(m) != 1):
            raise FormError(f"Non-unit diagonal: {np.diag(m).tolist()}")
        if self.labels is not None and len(self.labels) != m.shape[0]:
            raise DimensionMismatchError("One label per coordinate is required")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x: Sequence[int]) -> int:
        v = as_vector(x, self.n)
        return int(v @ self.matrix @ v)

    def values(self, xs: np.ndarray) -> np.ndarray:
        """Vectorised q over the rows of xs."""
        return np.einsum("ij,jk,ik->i", xs, self.matrix, xs)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> int:
        return quiver.bilinear(self.matrix, x, y)

    def sym_pair(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """(x, y) with q(x + y) = q(x) + q(y) + 2 (x, y)."""
        return quiver.sym_pair(self.matrix, x, y)

    def cross(self, i: int, j: int) -> int:
        """c_ij = q(e_i + e_j) - 2."""
        return int(self.matrix[i, j] + self.matrix[j, i])

    def canonical(self) -> np.ndarray:
        upper = np.triu(self.matrix + self.matrix.T)
        np.fill_diagonal(upper, 1)
        return upper

    def symmetrized(self) -> sympy.Matrix:
        return sympy.Matrix(self.n, self.n, lambda i, j: sympy.Rational(self.cross(i, j), 2) if i != j else 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitForm):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.canonical(), other.canonical()))

    def __hash__(self) -> int:
        return hash(self.canonical().tobytes())


@dataclass(frozen=True)
class RootSet:
    """Roots of a form in lexicographic order; complete when nothing was cut off."""

    vectors: tuple[DimVector, ...]
    complete: bool = True

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, x: object) -> bool:
        return tuple(int(v) for v in x) in set(self.vectors)  # type: ignore[union-attr]

    def sign(self, x: DimVector) -> str:
        if all(v >= 0 for v in x):
            return "positive"
        if all(v <= 0 for v in x):
            return "negative"
        return "mixed"

    def mixed(self) -> list[DimVector]:
        return [x for x in self.vectors if self.sign(x) == "mixed"]

    def non_simple(self) -> list[DimVector]:
        return [x for x in self.vectors if sum(abs(v) for v in x) != 1]


def _sorted_roots(vectors: Iterable[Iterable[int]]) -> tuple[DimVector, ...]:
    return tuple(sorted({tuple(int(v) for v in x) for x in vectors}))


def is_positive_definite(f: UnitForm) -> bool:
    s = f.symmetrized()
    return all(s[:k, :k].det() > 0 for k in range(1, f.n + 1))


def enumerate_positive_roots(f: UnitForm, cap: int | None = None) -> RootSet:
    """
    Breadth-first search by height from the simple roots, adding one e_i per layer.

    Complete for weakly positive forms: every non-simple positive root x has
    some i with x - e_i a positive root. A root with a coordinate above the
    cap raises instead of being dropped. Without a cap, positive definite
    forms use their own root bounds and other forms the configured cap.
    """
    if cap is None:
        cap = max(root_bounds(f)) if is_positive_definite(f) else settings.root_cap
    n = f.n
    eye = np.eye(n, dtype=np.int64)
    found: set[DimVector] = {tuple(int(v) for v in row) for row in eye}
    layer = eye
    while layer.size:
        candidates = np.unique((layer[:, None, :] + eye[None, :, :]).reshape(-1, n), axis=0)
        candidates = candidates[f.values(candidates) == 1]
        over = candidates[candidates.max(axis=1) > cap]
        if len(over):
            raise RootCapExceeded(cap, [tuple(int(v) for v in row) for row in over])
        fresh = [tuple(int(v) for v in row) for row in candidates if tuple(int(v) for v in row) not in found]
        found.update(fresh)
        layer = np.array(fresh, dtype=np.int64).reshape(-1, n)
    log.debug(f"Enumerated {len(found)} positive roots (rank {n}, cap {cap})")
    return RootSet(_sorted_roots(found), complete=True)


def root_bounds(f: UnitForm) -> list[int]:
    """|x_i| <= floor(sqrt((S^-1)_ii)) for every x with q(x) = 1, S the symmetrized matrix."""
    if not is_positive_definite(f):
        raise FormError("Root bounds need a positive definite form")
    inv = f.symmetrized().inv()
    return [math.isqrt(int(sympy.floor(inv[i, i]))) for i in range(f.n)]


def enumerate_roots(f: UnitForm) -> RootSet:
    """All roots, of every sign pattern, of a positive definite unit form."""
    bounds = root_bounds(f)
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, f.n)
    roots = grid[f.values(grid) == 1]
    return RootSet(_sorted_roots(roots), complete=True)


def abs_vector(x: Sequence[int]) -> DimVector:
    return tuple(abs(int(v)) for v in x)


def apply_linear(g: np.ndarray, roots: RootSet) -> RootSet:
    g = np.asarray(g, dtype=np.int64)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {g.shape}")
    if sympy.Matrix(g.tolist()).det() == 0:
        raise FormError("Linear map is not invertible")
    if not roots.vectors:
        return RootSet((), roots.complete)
    xs = np.array(roots.vectors, dtype=np.int64)
    if xs.shape[1] != g.shape[1]:
        raise DimensionMismatchError(f"Roots of length {xs.shape[1]} under a {g.shape} map")
    return RootSet(_sorted_roots(xs @ g.T), roots.complete)


def abs_fiber_check(f: UnitForm, roots: RootSet, subject: str = "") -> VerificationReport:
    """If q(x) = 1 = q(x') and abs x = abs x', then x = +-x'."""
    if not roots.complete:
        raise IncompleteRootSetError("abs-fiber check needs a complete root set")
    fibers: dict[DimVector, list[DimVector]] = {}
    for x in roots:
        if f(x) != 1:
            raise FormError(f"{x} is not a root of the form")
        fibers.setdefault(abs_vector(x), []).append(x)
    report = VerificationReport(property="prop7", subject=subject or f"rank {f.n} form", checked=len(roots))
    for members in fibers.values():
        for x, y in itertools.combinations(members, 2):
            if y != tuple(-v for v in x):
                report.fail(Counterexample(detail="same abs, not opposite", data={"x": list(x), "y": list(y)}))
    return report


def random_positive_definite_form(n: int, rng: np.random.Generator, *, max_tries: int = 1000) -> UnitForm:
    """A random unit form with off-diagonal cross terms in {-1, 0, 1}, rejected until positive definite."""
    for _ in range(max_tries):
        m = np.eye(n, dtype=np.int64)
        for i, j in itertools.combinations(range(n), 2):
            m[i, j] = rng.integers(-1, 2)
        f = UnitForm(m)
        if is_positive_definite(f):
            return f
    raise FormError(f"No positive definite form of rank {n} found in {max_tries} draws")


@dataclass(frozen=True)
class BigraphForm:
    """
    A unit form drawn as a graph: -c solid edges when c < 0 (between the two
    sides only), c dotted edges when c > 0 (within a side).
    """

    labels: tuple[str, ...]
    sides: tuple[int, ...]
    solid: dict[tuple[int, int], int] = field(default_factory=dict)
    dotted: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.sides):
            raise DimensionMismatchError("One side per vertex is required")
        for (i, j), k in self.solid.items():
            if i >= j or k <= 0:
                raise FormError(f"Solid edge key must be i < j with positive count: {(i, j)}")
            if self.sides[i] == self.sides[j]:
                raise FormError(f"Solid edge within a side: {self.labels[i]} - {self.labels[j]}")
        for (i, j), k in self.dotted.items():
            if i >= j or k <= 0:
                raise FormError(f"Dotted edge key must be i < j with positive count: {(i, j)}")
            if self.sides[i] != self.sides[j]:
                raise FormError(f"Dotted edge across sides: {self.labels[i]} - {self.labels[j]}")

    @property
    def n(self) -> int:
        return len(self.labels)

    def solid_count(self) -> int:
        return sum(self.solid.values())

    def dotted_count(self) -> int:
        return sum(self.dotted.values())

    def non_isolated(self) -> list[int]:
        """Vertices incident to a solid edge."""
        return sorted({v for edge in self.solid for v in edge})

    def to_dot(self, *, elide_isolated: bool = True, name: str = "rE") -> str:
        keep = set(self.non_isolated()) if elide_isolated else set(range(self.n))
        lines = [f"graph {_dot_id(name)} {{"]
        for i in sorted(keep):
            lines.append(f"  {_dot_id(self.labels[i])} [label={_dot_id(self.labels[i])}, side={self.sides[i]}];")
        for style, edges in (("solid", self.solid), ("dashed", self.dotted)):
            for (i, j), k in sorted(edges.items()):
                if i in keep and j in keep:
                    for _ in range(k):
                        lines.append(f"  {_dot_id(self.labels[i])} -- {_dot_id(self.labels[j])} [style={style}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def bigraph_to_form(b: BigraphForm) -> UnitForm:
    m = np.eye(b.n, dtype=np.int64)
    for (i, j), k in b.solid.items():
        m[i, j] -= k
    for (i, j), k in b.dotted.items():
        m[i, j] += k
    return UnitForm(m, labels=b.labels)


def form_to_bigraph(f: UnitForm, labels: Sequence[str], sides: Sequence[int]) -> BigraphForm:
    if len(labels) != f.n or len(sides) != f.n:
        raise DimensionMismatchError("One label and one side per coordinate are required")
    solid: dict[tuple[int, int], int] = {}
    dotted: dict[tuple[int, int], int] = {}
    for i, j in itertools.combinations(range(f.n), 2):
        c = f.cross(i, j)
        if c < 0:
            solid[(i, j)] = -c
        elif c > 0:
            dotted[(i, j)] = c
    return BigraphForm(tuple(labels), tuple(sides), solid, dotted)
