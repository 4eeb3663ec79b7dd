"""
Bounded search for a regular module in M(T) when T has both preprojective
and preinjective summands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from src import linrep
from src.artheory import defect, graph_type, null_root
from src.catalog import candidate_reps
from src.cluster.checks import subject_of
from src.linrep import Representation
from src.logging_setup import log
from src.quiver import DimVector, euler_matrix, quadratic
from src.reports import VerificationReport
from src.settings import settings
from src.tilting import PreconditionError, TiltingModule


@dataclass(frozen=True, eq=False)
class Witness:
    rep: Representation
    hom: tuple[int, ...]
    ext: tuple[int, ...]
    source: str

    @property
    def dim(self) -> DimVector:
        return self.rep.dim


def _check_preconditions(t: TiltingModule) -> None:
    kind = graph_type(t.quiver)
    if kind != "euclidean":
        raise PreconditionError(f"{t.quiver.display_name()} is {kind}, not a Euclidean quiver")
    t.check()
    if t.preprojective or t.preinjective:
        raise PreconditionError(
            f"{','.join(t.labels)} is {'preprojective' if t.preprojective else 'preinjective'}; "
            "a regular mixed module needs summands of both kinds"
        )


def _candidates(t: TiltingModule, dim: DimVector, rng: np.random.Generator, attempts: int) -> Iterator[tuple[str, Representation]]:
    for entry in t.catalog.find_by_dim(dim):
        if entry.regular:
            yield "catalog", entry.rep
    size = sum(dim[tg] * dim[s] for s, tg in t.quiver.arrows)
    for k, rep in enumerate(candidate_reps(t.quiver, dim, rng, attempts)):
        yield ("exhaustive" if size <= 6 and k < 2**size else "random"), rep


def find_regular_mixed(
    t: TiltingModule,
    bound: int | None = None,
    *,
    attempts: int | None = None,
    seed: int | None = None,
) -> Witness | None:
    """
    A brick of defect 0 with Hom(T, M) != 0 and Ext^1(T, M) != 0, searching
    dimension vectors with coordinates up to `bound` by increasing total
    dimension. None means inconclusive, never that no witness exists.
    """
    _check_preconditions(t)
    bound = settings.witness_bound if bound is None else bound
    attempts = settings.witness_attempts if attempts is None else attempts
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    if bound <= 0:
        log.warning("Witness bound is 0; search is inconclusive")
        return None

    q = t.quiver
    e = euler_matrix(q)
    delta = null_root(q)
    dims = sorted(
        (x for x in itertools.product(range(bound + 1), repeat=q.n) if any(x)),
        key=lambda x: (sum(x), x),
    )
    for x in dims:
        if defect(q, x, delta) != 0 or quadratic(e, x) > 1:
            continue
        for source, rep in _candidates(t, x, rng, attempts):
            if linrep.end_dim(rep) != 1:
                continue
            hom = tuple(linrep.hom_dim(ti, rep) for ti in t.reps)
            if not any(hom):
                continue
            ext = tuple(linrep.ext1_dim(ti, rep) for ti in t.reps)
            if any(ext):
                log.debug(f"Regular witness of dimension {x} found ({source})")
                return Witness(rep, hom, ext, source)
    log.warning(f"No regular mixed module found up to bound {bound}; inconclusive")
    return None


def verify_regular_witness(t: TiltingModule, bound: int | None = None) -> VerificationReport:
    report = VerificationReport(property="regular-witness", subject=subject_of(t), checked=1)
    witness = find_regular_mixed(t, bound)
    if witness is None:
        report.notes.append("inconclusive: no witness within the bound")
    else:
        report.notes.append(
            f"witness {t.quiver.format_vector(witness.dim)} hom={list(witness.hom)} ext={list(witness.ext)} ({witness.source})"
        )
    return report