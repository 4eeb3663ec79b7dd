"""
Search over orientations and tilting modules for pushed-forward forms with a
prescribed set of value-3 cluster dimension vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from src.catalog import Catalog
from src.cluster.dimvecs import cluster_dimvecs
from src.logging_setup import log, progress
from src.quiver import DimVector, Quiver, orientations
from src.tilting import TiltingModule, enumerate_tilting

# Value-3 vectors of the two concealed algebras of type A4 in the worked example.
PATTERN_B: frozenset[DimVector] = frozenset({(1, 1, 0, 0)})
PATTERN_B_PRIME: frozenset[DimVector] = frozenset({(0, 1, 1, 0), (0, 1, 1, 1)})
DEFAULT_PATTERNS: dict[str, frozenset[DimVector]] = {"B": PATTERN_B, "B'": PATTERN_B_PRIME}


@dataclass(frozen=True, eq=False)
class SearchMatch:
    name: str
    quiver: Quiver
    tilting: TiltingModule  # summands reordered so the pattern holds verbatim
    values: dict[DimVector, int]


def _permute(v: DimVector, order: tuple[int, ...]) -> DimVector:
    return tuple(v[k] for k in order)


def search_value_patterns(
    q: Quiver,
    patterns: Mapping[str, frozenset[DimVector]] | None = None,
    depth: int | None = None,
) -> list[SearchMatch]:
    """
    First match per pattern over every orientation of q, every tilting module
    and every ordering of its summands. A match has q_B = 3 exactly on the
    pattern and q_B = 1 on every other cluster dimension vector.
    """
    patterns = dict(DEFAULT_PATTERNS if patterns is None else patterns)
    found: dict[str, SearchMatch] = {}
    quivers = orientations(q)
    with progress() as bar:
        task = bar.add_task(f"searching {q.display_name()}", total=len(quivers))
        for o in quivers:
            bar.advance(task)
            if len(found) == len(patterns):
                continue
            catalog = Catalog.build(o, depth)
            for t in enumerate_tilting(catalog):
                records = cluster_dimvecs(t, check_routes=False)
                if any(r.q_b not in (1, 3) for r in records):
                    continue
                threes = [r.abs_g for r in records if r.q_b == 3]
                for name, pattern in patterns.items():
                    if name in found or len(threes) != len(pattern):
                        continue
                    for order in itertools.permutations(range(t.n)):
                        if {_permute(v, order) for v in threes} == pattern:
                            t2 = t.reordered(order)
                            values = {_permute(r.abs_g, order): r.q_b for r in records}
                            found[name] = SearchMatch(name, o, t2, values)
                            log.info(f"Pattern {name} realised on {o.display_name()} by {','.join(t2.labels)}")
                            break
    for name in patterns:
        if name not in found:
            log.warning(f"Pattern {name} not realised by any tilting module")
    return [found[name] for name in patterns if name in found]


def parse_pattern(text: str) -> DimVector:
    return tuple(int(v) for v in text.replace(" ", "").split(","))
