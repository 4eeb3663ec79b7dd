"""
Explicit quiver representations over the rationals.

A representation stores one matrix per arrow, of shape dim[target] x dim[source].
Hom spaces are kernels of the intertwining system f_j M_a = M'_a f_i; Ext^1 is
the cokernel of the Ringel map; everything else (torsion parts, summands,
extensions, reflection functors) is built from those two.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from src import linalg as la
from src.linalg import Matrix
from src.quiver import DimVector, Quiver, bilinear, euler_matrix, quadratic, reflect_vector

Morphism = tuple[Matrix, ...]


class RepresentationError(ValueError):
    pass


class ExtDimensionError(ValueError):
    pass


class NotConstructibleError(ValueError):
    pass


class NonBrickSummandError(RuntimeError):
    pass


class InconsistencyError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    dim: DimVector
    maps: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dim", tuple(int(d) for d in self.dim))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.dim) != self.quiver.n or any(d < 0 for d in self.dim):
            raise RepresentationError(f"Bad dimension vector {self.dim} for rank {self.quiver.n}")
        if len(self.maps) != len(self.quiver.arrows):
            raise RepresentationError(
                f"Expected {len(self.quiver.arrows)} arrow matrices, got {len(self.maps)}"
            )
        for a, ((s, t), m) in enumerate(zip(self.quiver.arrows, self.maps)):
            if m.shape != (self.dim[t], self.dim[s]):
                raise RepresentationError(
                    f"Arrow {a} needs a {self.dim[t]}x{self.dim[s]} matrix, got {m.shape}"
                )

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self) -> str:
        return f"Representation(dim={self.quiver.format_vector(self.dim)})"


@dataclass(frozen=True, eq=False)
class HomBasis:
    source: Representation
    target: Representation
    morphisms: tuple[Morphism, ...]

    def __len__(self) -> int:
        return len(self.morphisms)

    def __iter__(self):
        return iter(self.morphisms)


def _check_same_quiver(r: Representation, s: Representation) -> None:
    if r.quiver != s.quiver:
        raise RepresentationError("Representations live on different quivers")


def representation(q: Quiver, dim: Sequence[int], maps: Sequence[Sequence[Sequence[int | Fraction]]]) -> Representation:
    """Convenience constructor from nested lists, one grid per arrow."""
    dim = tuple(dim)
    mats = tuple(
        la.qmat(grid, dim[t], dim[s]) for grid, (s, t) in zip(maps, q.arrows)
    )
    return Representation(q, dim, mats)


def simple_rep(q: Quiver, i: int) -> Representation:
    dim = tuple(1 if v == i else 0 for v in range(q.n))
    return Representation(q, dim, tuple(la.zeros(dim[t], dim[s]) for s, t in q.arrows))


def projective_rep(q: Quiver, i: int) -> Representation:
    """P(i): basis at j = paths i ~> j; an arrow appends itself to a path."""
    bases = [q.paths(i, j) for j in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        grid = [[0] * len(bases[s]) for _ in bases[t]]
        for c, p in enumerate(bases[s]):
            grid[bases[t].index(p + (a,))][c] = 1
        maps.append(la.qmat(grid, len(bases[t]), len(bases[s])))
    return Representation(q, tuple(len(b) for b in bases), tuple(maps))


def injective_rep(q: Quiver, i: int) -> Representation:
    """I(i): basis at j = duals of paths j ~> i; an arrow strips itself off the front."""
    bases = [q.paths(j, i) for j in range(q.n)]
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        grid = [[0] * len(bases[s]) for _ in bases[t]]
        for c, p in enumerate(bases[s]):
            if p and p[0] == a:
                grid[bases[t].index(p[1:])][c] = 1
        maps.append(la.qmat(grid, len(bases[t]), len(bases[s])))
    return Representation(q, tuple(len(b) for b in bases), tuple(maps))


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise RepresentationError("direct_sum needs at least one summand")
    q = reps[0].quiver
    for r in reps[1:]:
        _check_same_quiver(reps[0], r)
    dim = tuple(sum(r.dim[v] for r in reps) for v in range(q.n))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        grid = [
            [r.maps[a] if r is r2 else la.zeros(r.dim[t], r2.dim[s]) for r2 in reps]
            for r in reps
        ]
        maps.append(la.block(grid, [r.dim[t] for r in reps], [r.dim[s] for r in reps]))
    return Representation(q, dim, tuple(maps))


def dual(r: Representation, quiver: Quiver | None = None) -> Representation:
    """D r as a representation of the opposite quiver (transposed arrow matrices)."""
    target = quiver if quiver is not None else r.quiver.opposite()
    return Representation(target, r.dim, tuple(la.transpose(m) for m in r.maps))


# --- Hom -------------------------------------------------------------------


def _hom_layout(r: Representation, s: Representation) -> tuple[list[int], int]:
    offsets, total = [], 0
    for v in range(r.quiver.n):
        offsets.append(total)
        total += s.dim[v] * r.dim[v]
    return offsets, total


def _hom_system(r: Representation, s: Representation) -> tuple[Matrix, list[int], int]:
    offsets, total = _hom_layout(r, s)
    equations: list[list[Fraction]] = []
    for a, (i, j) in enumerate(r.quiver.arrows):
        ra, sa = la.rows(r.maps[a]), la.rows(s.maps[a])
        for row in range(s.dim[j]):
            for col in range(r.dim[i]):
                eq = [Fraction(0)] * total
                # (f_j M_a)[row, col]
                for k in range(r.dim[j]):
                    eq[offsets[j] + row * r.dim[j] + k] += ra[k][col]
                # -(M'_a f_i)[row, col]
                for k in range(s.dim[i]):
                    eq[offsets[i] + k * r.dim[i] + col] -= sa[row][k]
                equations.append(eq)
    return la.qmat(equations, len(equations), total), offsets, total


def hom_basis(r: Representation, s: Representation) -> HomBasis:
    _check_same_quiver(r, s)
    system, offsets, total = _hom_system(r, s)
    if total == 0:
        return HomBasis(r, s, ())
    kern = la.rows(la.kernel(system))
    morphisms = []
    for c in range(len(kern[0]) if kern else 0):
        column = [kern[i][c] for i in range(total)]
        morphisms.append(
            tuple(
                la.reshape(column[offsets[v] : offsets[v] + s.dim[v] * r.dim[v]], s.dim[v], r.dim[v])
                for v in range(r.quiver.n)
            )
        )
    return HomBasis(r, s, tuple(morphisms))


def hom_dim(r: Representation, s: Representation) -> int:
    _check_same_quiver(r, s)
    system, _, total = _hom_system(r, s)
    return total - la.rank(system)


def end_dim(r: Representation) -> int:
    return hom_dim(r, r)


def ext1_dim(r: Representation, s: Representation) -> int:
    """dim Ext^1(r, s) = dim Hom(r, s) - <dim r, dim s>."""
    value = hom_dim(r, s) - bilinear(euler_matrix(r.quiver), r.dim, s.dim)
    if value < 0:
        raise InconsistencyError(f"Negative Ext dimension between {r} and {s}")
    return value


def is_morphism(r: Representation, s: Representation, f: Morphism) -> bool:
    for a, (i, j) in enumerate(r.quiver.arrows):
        if not la.equal(la.mul(f[j], r.maps[a]), la.mul(s.maps[a], f[i])):
            return False
    return True


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    return tuple(la.mul(gv, fv) for gv, fv in zip(g, f))


# --- Sub and quotient representations -------------------------------------


@dataclass(frozen=True, eq=False)
class Splitting:
    """
    Per-vertex decomposition Q^d = span(B) + span(W), with coordinate
    projections lam (onto B) and pi (onto W).
    """

    inclusion: tuple[Matrix, ...]
    section: tuple[Matrix, ...]
    lam: tuple[Matrix, ...]
    pi: tuple[Matrix, ...]

    @classmethod
    def from_bases(cls, dims: Sequence[int], bases: Sequence[Matrix]) -> Splitting:
        inc, sec, lam, pi = [], [], [], []
        for d, b in zip(dims, bases):
            own, extra = la.complement(b)
            if len(own) != b.shape[1]:
                raise RepresentationError("Subspace basis is not linearly independent")
            w = la.select_cols(la.identity(d), extra)
            sinv = la.inverse(la.hstack([b, w], d))
            u = b.shape[1]
            inc.append(b)
            sec.append(w)
            lam.append(la.select_rows(sinv, range(u)))
            pi.append(la.select_rows(sinv, range(u, d)))
        return cls(tuple(inc), tuple(sec), tuple(lam), tuple(pi))


def _sub_and_quotient(m: Representation, split: Splitting) -> tuple[Representation, Representation]:
    q = m.quiver
    sub_maps, quo_maps = [], []
    for a, (i, j) in enumerate(q.arrows):
        image = la.mul(m.maps[a], split.inclusion[i])
        if not la.is_zero(la.mul(split.pi[j], image)):
            raise RepresentationError("Subspaces are not closed under the arrow maps")
        sub_maps.append(la.mul(split.lam[j], image))
        quo_maps.append(la.mul(split.pi[j], la.mul(m.maps[a], split.section[i])))
    sub = Representation(q, tuple(b.shape[1] for b in split.inclusion), tuple(sub_maps))
    quo = Representation(q, tuple(w.shape[1] for w in split.section), tuple(quo_maps))
    return sub, quo


def subrepresentation(m: Representation, bases: Sequence[Matrix]) -> tuple[Representation, Splitting]:
    split = Splitting.from_bases(m.dim, bases)
    return _sub_and_quotient(m, split)[0], split


def kernel_rep(r: Representation, g: Morphism) -> Representation:
    bases = [la.kernel(gv) if r.dim[v] else la.zeros(0, 0) for v, gv in enumerate(g)]
    return subrepresentation(r, bases)[0]


@dataclass(frozen=True, eq=False)
class TorsionSplit:
    """0 -> tM -> M -> M/tM -> 0 with explicit bases."""

    module: Representation
    torsion: Representation
    quotient: Representation
    splitting: Splitting


def trace_bases(summands: Sequence[Representation], m: Representation) -> list[Matrix]:
    """Per vertex, a basis of the sum of images of all maps from the summands into m."""
    columns: list[list[Matrix]] = [[] for _ in range(m.quiver.n)]
    for t in summands:
        for f in hom_basis(t, m):
            for v, fv in enumerate(f):
                if fv.shape[1]:
                    columns[v].append(fv)
    return [
        la.column_basis(la.hstack(cols, m.dim[v])) if cols else la.zeros(m.dim[v], 0)
        for v, cols in enumerate(columns)
    ]


def torsion_submodule(summands: Sequence[Representation], m: Representation) -> TorsionSplit:
    for t in summands:
        _check_same_quiver(t, m)
    split = Splitting.from_bases(m.dim, trace_bases(summands, m))
    torsion, quotient = _sub_and_quotient(m, split)
    return TorsionSplit(m, torsion, quotient, split)


# --- Decomposition ----------------------------------------------------------


def _split_off(x: Representation, r: Representation) -> Representation | None:
    """If the brick x is a summand of r, return a complement (the kernel of a split epi r -> x)."""
    into = hom_basis(x, r)
    if not len(into):
        return None
    out = hom_basis(r, x)
    v = next(v for v, d in enumerate(x.dim) if d)
    for g in out:
        for f in into:
            if la.entry(compose(g, f)[v], 0, 0) != 0:
                return kernel_rep(r, g)
    return None


def decompose(r: Representation, bricks: Sequence[Representation]) -> list[tuple[int, int]]:
    """
    Krull-Remak-Schmidt decomposition by brick peeling.

    Returns (brick index, multiplicity) pairs sorted by index. Every summand of
    r must be isomorphic to one of the bricks.
    """
    counts: Counter[int] = Counter()
    remaining = r
    while not remaining.is_zero:
        for idx, x in enumerate(bricks):
            if x.is_zero or any(a > b for a, b in zip(x.dim, remaining.dim)):
                continue
            rest = _split_off(x, remaining)
            if rest is not None:
                counts[idx] += 1
                remaining = rest
                break
        else:
            raise NonBrickSummandError(
                f"No brick splits off the remainder of dimension {remaining.dim}"
            )
    return sorted(counts.items())


def is_isomorphic(r: Representation, s: Representation, bricks: Sequence[Representation]) -> bool:
    if r.dim != s.dim:
        return False
    return decompose(r, bricks) == decompose(s, bricks)


# --- Ext^1 and extensions ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class ExtSpace:
    """
    Ext^1(X, Y) as the cokernel of
    delta: sum_v Hom(X_v, Y_v) -> sum_a Hom(X_s(a), Y_t(a)),
    delta(phi)_a = phi_t X_a - Y_a phi_s. The basis is the set of standard
    vectors completing the pivot columns of delta.
    """

    source: Representation
    target: Representation
    shapes: tuple[tuple[int, int], ...]
    basis_indices: tuple[int, ...]
    change: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis_indices)

    @property
    def size(self) -> int:
        return sum(r * c for r, c in self.shapes)

    def flatten(self, zeta: Sequence[Matrix]) -> list[Fraction]:
        values: list[Fraction] = []
        for m, shp in zip(zeta, self.shapes):
            if m.shape != shp:
                raise ExtDimensionError(f"Cocycle block has shape {m.shape}, expected {shp}")
            values.extend(la.flatten(m))
        return values

    def unflatten(self, values: Sequence[Fraction]) -> tuple[Matrix, ...]:
        out, pos = [], 0
        for r, c in self.shapes:
            out.append(la.reshape(values[pos : pos + r * c], r, c))
            pos += r * c
        return tuple(out)

    def coordinates(self, zeta: Sequence[Matrix]) -> tuple[Fraction, ...]:
        n = self.size
        if n == 0:
            return ()
        vec = la.qmat([[v] for v in self.flatten(zeta)], n, 1)
        full = [row[0] for row in la.rows(la.mul(self.change, vec))]
        return tuple(full[n - self.dim :])

    def element(self, coords: Sequence[Fraction | int]) -> tuple[Matrix, ...]:
        if len(coords) != self.dim:
            raise ExtDimensionError(f"Ext^1 has dimension {self.dim}, got {len(coords)} coordinates")
        values = [Fraction(0)] * self.size
        for idx, c in zip(self.basis_indices, coords):
            values[idx] += Fraction(c)
        return self.unflatten(values)


def ext_space(x: Representation, y: Representation) -> ExtSpace:
    _check_same_quiver(x, y)
    q = x.quiver
    shapes = tuple((y.dim[t], x.dim[s]) for s, t in q.arrows)
    offsets, pos = [], 0
    for r, c in shapes:
        offsets.append(pos)
        pos += r * c
    size = pos
    xa = [la.rows(m) for m in x.maps]
    ya = [la.rows(m) for m in y.maps]
    columns: list[list[Fraction]] = []
    for v in range(q.n):
        for r in range(y.dim[v]):
            for c in range(x.dim[v]):
                col = [Fraction(0)] * size
                for a, (s, t) in enumerate(q.arrows):
                    width = x.dim[s]
                    if t == v:
                        # E_rc X_a puts row c of X_a into row r
                        for k in range(width):
                            col[offsets[a] + r * width + k] += xa[a][c][k]
                    if s == v:
                        # -Y_a E_rc puts column r of Y_a into column c
                        for k in range(y.dim[t]):
                            col[offsets[a] + k * width + c] -= ya[a][k][r]
                columns.append(col)
    delta = la.qmat([[col[i] for col in columns] for i in range(size)], size, len(columns))
    own, extra = la.complement(delta)
    if size:
        basis = la.hstack([la.select_cols(delta, own), la.select_cols(la.identity(size), extra)], size)
        change = la.inverse(basis)
    else:
        change = la.zeros(0, 0)
    space = ExtSpace(x, y, shapes, tuple(extra), change)
    expected = ext1_dim(x, y)
    if space.dim != expected:
        raise InconsistencyError(f"Ext^1 cokernel has dimension {space.dim}, Euler form says {expected}")
    return space


@dataclass(frozen=True, eq=False)
class ExtClass:
    """The canonical sequence 0 -> tM -> M -> M/tM -> 0 as (source, target, coordinates)."""

    source: Representation
    target: Representation
    coordinates: tuple[Fraction, ...]
    space: ExtSpace

    @property
    def is_split(self) -> bool:
        return all(c == 0 for c in self.coordinates)


def ext_class(summands: Sequence[Representation], m: Representation) -> ExtClass:
    split = torsion_submodule(summands, m)
    s = split.splitting
    zeta = tuple(
        la.mul(s.lam[j], la.mul(m.maps[a], s.section[i]))
        for a, (i, j) in enumerate(m.quiver.arrows)
    )
    space = ext_space(split.quotient, split.torsion)
    return ExtClass(split.quotient, split.torsion, space.coordinates(zeta), space)


def build_extension(
    x: Representation,
    y: Representation,
    coords: Sequence[Fraction | int],
    space: ExtSpace | None = None,
) -> Representation:
    """Middle term E of 0 -> Y -> E -> X -> 0 with class coords; E_v = Y_v + X_v."""
    space = space if space is not None else ext_space(x, y)
    zeta = space.element(coords)
    q = x.quiver
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        maps.append(
            la.block(
                [[y.maps[a], zeta[a]], [la.zeros(x.dim[t], y.dim[s]), x.maps[a]]],
                [y.dim[t], x.dim[t]],
                [y.dim[s], x.dim[s]],
            )
        )
    return Representation(q, tuple(a + b for a, b in zip(y.dim, x.dim)), tuple(maps))


# --- Reflection functors -----------------------------------------------------


def reflect_at_sink(r: Representation, k: int) -> Representation:
    """S+_k: replace r_k by the kernel of sum_{a: s -> k} r_s -> r_k."""
    q = r.quiver
    into = q.arrows_into(k)
    if q.arrows_out_of(k):
        raise RepresentationError(f"Vertex {q.vertex_labels[k]!r} is not a sink")
    sizes = [r.dim[q.arrows[a][0]] for a in into]
    h = la.hstack([r.maps[a] for a in into], r.dim[k])
    kern = la.kernel(h) if sum(sizes) else la.zeros(0, 0)
    new_dim = list(r.dim)
    new_dim[k] = kern.shape[1]
    maps = list(r.maps)
    start = 0
    for a, size in zip(into, sizes):
        maps[a] = la.select_rows(kern, range(start, start + size))
        start += size
    return Representation(q.reflect(k), tuple(new_dim), tuple(maps))


def reflect_at_source(r: Representation, k: int) -> Representation:
    """S-_k: replace r_k by the cokernel of r_k -> sum_{a: k -> t} r_t."""
    q = r.quiver
    out = q.arrows_out_of(k)
    if q.arrows_into(k):
        raise RepresentationError(f"Vertex {q.vertex_labels[k]!r} is not a source")
    sizes = [r.dim[q.arrows[a][1]] for a in out]
    total = sum(sizes)
    h = la.vstack([r.maps[a] for a in out], r.dim[k])
    own, extra = la.complement(h)
    if total:
        sinv = la.inverse(
            la.hstack([la.select_cols(h, own), la.select_cols(la.identity(total), extra)], total)
        )
        pi = la.select_rows(sinv, range(len(own), total))
    else:
        pi = la.zeros(0, 0)
    new_dim = list(r.dim)
    new_dim[k] = len(extra)
    maps = list(r.maps)
    start = 0
    for a, size in zip(out, sizes):
        maps[a] = la.select_cols(pi, range(start, start + size))
        start += size
    return Representation(q.reflect(k), tuple(new_dim), tuple(maps))


def _sink_schedule(q: Quiver, x: DimVector) -> Representation | None:
    order = q.admissible_order()
    n = q.n
    y, cur = x, q
    steps: list[int] = []
    for step in range(n * (sum(x) + 2)):
        k = order[step % n]
        if y == tuple(1 if v == k else 0 for v in range(n)):
            rep = simple_rep(cur, k)
            for kk in reversed(steps):
                rep = reflect_at_source(rep, kk)
            return rep
        y2 = reflect_vector(cur, k, y)
        if any(v < 0 for v in y2):
            return None
        steps.append(k)
        cur, y = cur.reflect(k), y2
    return None


def build_root_rep(q: Quiver, x: Sequence[int]) -> Representation:
    """
    The indecomposable of dimension x, via sink reflections down to a simple
    and source reflections back up. Preinjective roots go through the
    opposite quiver and duality.
    """
    x = tuple(int(v) for v in x)
    if any(v < 0 for v in x) or quadratic(euler_matrix(q), x) != 1:
        raise NotConstructibleError(f"{x} is not a positive root")
    rep = _sink_schedule(q, x)
    if rep is None:
        op = _sink_schedule(q.opposite(), x)
        rep = dual(op, q) if op is not None else None
    if rep is None:
        raise NotConstructibleError(f"Root {x} is neither preprojective nor preinjective")
    if rep.dim != x or end_dim(rep) != 1:
        raise InconsistencyError(f"Reflection schedule produced {rep.dim} with a non-trivial End")
    return rep


# --- Text format -------------------------------------------------------------


def dumps(r: Representation) -> str:
    q = r.quiver
    lines = ["dim: " + " ".join(str(d) for d in r.dim)]
    for a, ((s, t), m) in enumerate(zip(q.arrows, r.maps)):
        body = la.format_matrix(m) if 0 not in m.shape else "-"
        lines.append(f"a{a} {q.vertex_labels[s]}->{q.vertex_labels[t]}: {body}")
    return "\n".join(lines) + "\n"


def loads(text: str, q: Quiver) -> Representation:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dim:"):
        raise RepresentationError("Representation text must start with 'dim:'")
    dim = tuple(int(v) for v in lines[0][4:].split())
    grids = []
    for ln, (s, t) in zip(lines[1:], q.arrows):
        body = ln.split(":", 1)[1].strip()
        if body == "-":
            grids.append([])
        else:
            grids.append([[Fraction(v) for v in row.split()] for row in body.split(";")])
    if len(grids) != len(q.arrows):
        raise RepresentationError(f"Expected {len(q.arrows)} arrow lines, got {len(grids)}")
    return representation(q, dim, grids)
