from __future__ import annotations

from pathlib import Path

import pytest

from src.catalog import Catalog
from src.quiver import Quiver, dynkin_quiver, load_quiver
from src.settings import settings
from src.tilting import TiltingModule, tilting_module

QUIVERS = Path(__file__).resolve().parents[1] / "quivers"
T33_SPEC = "P1,P3,P3',I3,I3'"


def quiver_path(name: str) -> Path:
    return QUIVERS / f"{name}.quiver"


@pytest.fixture(autouse=True)
def _restore_settings():
    saved = settings.model_dump()
    yield
    for key, value in saved.items():
        setattr(settings, key, value)


@pytest.fixture(scope="session")
def t33() -> Quiver:
    return load_quiver(quiver_path("t33"))


@pytest.fixture(scope="session")
def a2() -> Quiver:
    return dynkin_quiver("A", 2)


@pytest.fixture(scope="session")
def a4() -> Quiver:
    return dynkin_quiver("A", 4)


@pytest.fixture(scope="session")
def kronecker() -> Quiver:
    return load_quiver(quiver_path("kronecker"))


@pytest.fixture(scope="session")
def atilde2() -> Quiver:
    return load_quiver(quiver_path("atilde2"))


@pytest.fixture(scope="session")
def t33_catalog(t33) -> Catalog:
    return Catalog.build(t33)


@pytest.fixture(scope="session")
def a4_catalog(a4) -> Catalog:
    return Catalog.build(a4)


@pytest.fixture(scope="session")
def atilde2_catalog(atilde2) -> Catalog:
    return Catalog.build(atilde2, 3)


@pytest.fixture(scope="session")
def t33_tilting(t33_catalog) -> TiltingModule:
    return tilting_module(t33_catalog, T33_SPEC)
