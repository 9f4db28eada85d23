from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import SMALL_CONFIG, write_sources

from mcvbench.corpus import generate_corpus
from mcvbench.grid import GridConfig


@pytest.fixture(scope="session")
def toy_corpus(tmp_path_factory):
    """Small 17-condition corpus: (source dir, out dir, manifest)."""
    base = tmp_path_factory.mktemp("toy_corpus")
    src = base / "src"
    write_sources(src, 4)
    out = base / "out"
    manifest = generate_corpus(src, out, SMALL_CONFIG, master_seed=7)
    return src, out, manifest


@pytest.fixture(scope="session")
def default_manifest(tmp_path_factory):
    """Full 69-condition corpus over two tiny images: (out dir, manifest)."""
    base = tmp_path_factory.mktemp("default_corpus")
    src = base / "src"
    write_sources(src, 2, size=8, seed=100)
    out = base / "out"
    manifest = generate_corpus(src, out, GridConfig(), master_seed=5, workers=4)
    return out, manifest
