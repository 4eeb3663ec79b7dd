"""
The bimodule form r_E on F and G-meets-D, presented as a bigraph, and the
count of its positive non-simple roots against the mixed modules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from src.cluster.checks import subject_of, predecessor_indices, require_preprojective
from src.forms import BigraphForm, RootCapExceeded, RootSet, UnitForm, enumerate_positive_roots, form_to_bigraph
from src.logging_setup import log
from src.quiver import DimVector
from src.reports import VerificationReport
from src.tilting import TiltingModule


@dataclass(frozen=True, eq=False)
class REForm:
    tilting: TiltingModule
    vertices: tuple[int, ...]  # catalog indices, F side first
    sides: tuple[int, ...]  # 0 for F, 1 for G and D
    form: UnitForm
    bigraph: BigraphForm

    @property
    def labels(self) -> tuple[str, ...]:
        return self.bigraph.labels

    def decode(self, root: DimVector) -> tuple[dict[str, int], dict[str, int]]:
        """Root coordinates as (F-side multiset, G-side multiset) of labels."""
        f_side: dict[str, int] = {}
        g_side: dict[str, int] = {}
        for k, m in enumerate(root):
            if m:
                (f_side if self.sides[k] == 0 else g_side)[self.labels[k]] = int(m)
        return f_side, g_side

    def coordinates(self, index: int) -> DimVector | None:
        """Coordinate vector of mixed module `index` from the summands of M/tM and tM; None if one falls outside the bigraph."""
        parts = self.tilting.parts(index)
        position = {v: k for k, v in enumerate(self.vertices)}
        coords = [0] * len(self.vertices)
        for j, m in parts.quotient + parts.torsion:
            if j not in position:
                return None
            coords[position[j]] += m
        return tuple(coords)


def build_rE(t: TiltingModule) -> REForm:
    require_preprojective(t)
    cat = t.catalog
    d = predecessor_indices(t)
    f_side = list(t.classification.torsion_free)
    g_side = [i for i in t.classification.torsion if i in d]
    vertices = tuple(f_side + g_side)
    sides = tuple([0] * len(f_side) + [1] * len(g_side))
    m = np.eye(len(vertices), dtype=np.int64)
    for a, b in itertools.combinations(range(len(vertices)), 2):
        x, y = vertices[a], vertices[b]
        if sides[a] == sides[b]:
            m[a, b] = cat.hom_dim(x, y) + cat.hom_dim(y, x)
        else:
            m[a, b] = -cat.ext_dim(x, y)
    labels = tuple(cat[v].label for v in vertices)
    form = UnitForm(m, labels=labels)
    return REForm(t, vertices, sides, form, form_to_bigraph(form, labels, sides))


def positive_roots_with_retry(form: UnitForm, cap: int | None = None) -> RootSet:
    try:
        return enumerate_positive_roots(form, cap)
    except RootCapExceeded as e:
        log.warning(f"Root cap {e.cap} too small for r_E, retrying with {2 * e.cap}")
        return enumerate_positive_roots(form, 2 * e.cap)


def verify_prop4(t: TiltingModule, cap: int | None = None) -> VerificationReport:
    re = build_rE(t)
    report = VerificationReport(property="prop4", subject=subject_of(t))
    roots = positive_roots_with_retry(re.form, cap)
    non_simple = set(roots.non_simple())
    mixed = t.classification.mixed
    report.checked = len(mixed)
    report.expect(
        len(non_simple) == len(mixed),
        "number of positive non-simple roots of r_E differs from |M(T)|",
        roots=len(non_simple),
        mixed=len(mixed),
    )
    assigned: dict[DimVector, str] = {}
    for idx in mixed:
        label = t.catalog[idx].label
        coords = re.coordinates(idx)
        if coords is None:
            report.expect(False, "summand of tM or M/tM is not a vertex of the bigraph", module=label)
            continue
        report.expect(coords in non_simple, "coordinate vector is not a positive non-simple root", module=label, coords=list(coords))
        report.expect(
            coords not in assigned,
            "two mixed modules share a coordinate vector",
            first=assigned.get(coords, ""),
            second=label,
        )
        assigned.setdefault(coords, label)
    missed = sorted(non_simple - set(assigned))
    report.expect(not missed, "roots of r_E with no mixed module", roots=[list(x) for x in missed])
    return report
