from __future__ import annotations

import io

import pytest
from rich.console import Console

from src import render
from src.tilting import enumerate_tilting


@pytest.fixture
def recorded(monkeypatch) -> Console:
    con = Console(file=io.StringIO(), width=300, record=True)
    monkeypatch.setattr(render, "console", con)
    return con


def test_classification_table_carries_every_json_field(t33_tilting, recorded):
    render.render_classification(t33_tilting, "table")
    text = recorded.export_text()
    for col in ("supp G", "supp F", "Hom(T_i, -)", "Ext(T_i, -)"):
        assert col in text
    for row in render.classification_rows(t33_tilting):
        cells = (f"│ {row.label} ", render._vec(row.hom), render._vec(row.ext), ",".join(row.supp_g) or "-")
        assert any(all(c in line for c in cells) for line in text.splitlines()), row.label


def test_tilting_table_shows_preprojective_flag(a4_catalog, recorded):
    tiltings = enumerate_tilting(a4_catalog)
    render.render_tiltings(a4_catalog.quiver, tiltings, "table")
    text = recorded.export_text()
    assert "preprojective" in text
    rows = render.tilting_rows(tiltings)
    assert all(r.preprojective for r in rows)
    assert text.count(" yes ") >= len(rows)
