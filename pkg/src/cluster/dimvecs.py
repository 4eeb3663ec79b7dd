from __future__ import annotations

from dataclasses import dataclass

from src.forms import abs_vector
from src.quiver import DimVector
from src.tilting import Tag, TiltingModule


class RouteDisagreementError(RuntimeError):
    pass


@dataclass(frozen=True)
class ClusterRecord:
    index: int
    label: str
    x: DimVector
    g: DimVector
    abs_g: DimVector
    tag: Tag
    q_b: int


@dataclass(frozen=True, eq=False)
class ClusterDimVectorSet:
    tilting: TiltingModule
    records: tuple[ClusterRecord, ...]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def vectors(self) -> list[DimVector]:
        return [r.abs_g for r in self.records]

    def values(self) -> dict[DimVector, int]:
        return {r.abs_g: r.q_b for r in self.records}

    def with_tag(self, tag: Tag) -> list[ClusterRecord]:
        return [r for r in self.records if r.tag == tag]


def cluster_dimvecs(t: TiltingModule, *, check_routes: bool = True) -> ClusterDimVectorSet:
    """
    One record per catalog module M: x = dim M, g(x), abs g(x), its tag and
    q_B(abs g(x)).

    With check_routes, abs g(x) is recomputed as g(dim tM) - g(dim M/tM)
    from the explicit torsion split of M.
    """
    g = t.g
    form = t.form
    records = []
    for row in t.classification.rows:
        entry = t.catalog[row.index]
        gx = g(entry.dim)
        ax = abs_vector(gx)
        if check_routes:
            split = t.split(row.index)
            g_sub, g_quo = g(split.torsion.dim), g(split.quotient.dim)
            homological = tuple(a - b for a, b in zip(g_sub, g_quo))
            if homological != ax:
                raise RouteDisagreementError(
                    f"{entry.label}: abs g(x) = {ax} but g(dim tM) - g(dim M/tM) = {homological}"
                )
        records.append(ClusterRecord(row.index, entry.label, entry.dim, gx, ax, row.tag, form(ax)))
    return ClusterDimVectorSet(t, tuple(records))
