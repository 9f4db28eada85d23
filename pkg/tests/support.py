"""Shared helpers for the benchmark test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from mcvbench.corpus import encode_png
from mcvbench.grid import GridConfig
from mcvbench.perturb import Image

SMALL_CONFIG = GridConfig(sp_levels=(0.0, 0.1), ga_levels=(0.0, 0.1), ro_levels=(-30.0, 0.0, 30.0))


def make_image(seed: int, size: int = 16) -> Image:
    rng = np.random.default_rng(seed)
    return Image(rng.integers(0, 256, (size, size, 3)).astype(np.uint8))


def gradient_image(size: int = 32) -> Image:
    """Smooth two-axis gradient, a stand-in for natural image content."""
    ramp = np.linspace(0, 255, size)
    r = np.tile(ramp, (size, 1))
    g = r.T
    b = (r + g) / 2.0
    return Image(np.stack([r, g, b], axis=-1).astype(np.uint8))


def write_sources(directory: Path, count: int, size: int = 16, seed: int = 0) -> list[str]:
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for i in range(count):
        name = f"img_{i:03d}.png"
        (directory / name).write_bytes(encode_png(make_image(seed + i, size)))
        names.append(name)
    return names
