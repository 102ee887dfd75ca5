from __future__ import annotations

from pathlib import Path

import pytest

from physlint import ingest, load_kb, load_registry
from physlint.model import ElementStore
from physlint.xmi import condense, extract_knowledge

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
DATA = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def registry():
    return load_registry()


@pytest.fixture(scope="session")
def kb():
    return load_kb()


@pytest.fixture(scope="session")
def corpus_store(registry):
    cache: dict[str, ElementStore] = {}

    def load(name: str) -> ElementStore:
        if name not in cache:
            cache[name] = ingest(CORPUS / name, registry)
        return cache[name]

    return load


@pytest.fixture
def build_store(registry):
    def build(builder) -> ElementStore:
        return extract_knowledge(condense(builder.to_xml()), registry)

    return build
