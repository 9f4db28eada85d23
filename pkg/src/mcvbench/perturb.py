"""Pixel-level perturbation kernels: salt & pepper, Gaussian noise, rotation.

All kernels are pure functions of (input image, severity, stream state) and
never mutate their input. Noise kernels consume a fixed number of uniform
draws per pixel element so that outputs are byte-reproducible regardless of
scheduling or platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from mcvbench.rng import RandomStream


class PerturbationKind(str, Enum):
    SALT_PEPPER = "salt_pepper"
    GAUSSIAN = "gaussian"
    ROTATION = "rotation"


@dataclass(frozen=True, eq=False)
class Image:
    """8-bit RGB raster; kernels treat intensities as reals on [0, 1].

    `data` is a uint8 array of shape (height, width, 3) in row-major,
    channel-minor order (R, G, B within each pixel).
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.data, np.ndarray) or self.data.dtype != np.uint8:
            raise ValueError("image data must be a uint8 numpy array")
        if self.data.ndim != 3 or self.data.shape[2] != 3:
            raise ValueError(f"image data must have shape (height, width, 3), got {self.data.shape}")
        if self.data.shape[0] < 1 or self.data.shape[1] < 1:
            raise ValueError("image dimensions must be positive")

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return 3

    def same_bytes(self, other: "Image") -> bool:
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


_SEVERITY_RANGES = {
    PerturbationKind.SALT_PEPPER: (0.0, 1.0, "salt & pepper density"),
    PerturbationKind.GAUSSIAN: (0.0, math.inf, "gaussian variance"),
    PerturbationKind.ROTATION: (-360.0, 360.0, "rotation degrees"),
}


@dataclass(frozen=True)
class PerturbationSpec:
    """One atomic corruption: a kind plus its severity.

    Severity semantics per kind: salt & pepper density on [0, 1], Gaussian
    variance (>= 0) on the [0, 1] intensity scale, rotation degrees on
    [-360, 360] with negative = counterclockwise. Severity 0 is the identity.
    """

    kind: PerturbationKind
    severity: float

    def __post_init__(self) -> None:
        lo, hi, what = _SEVERITY_RANGES[self.kind]
        if not (lo <= self.severity <= hi):
            raise ValueError(f"{what} must be in [{lo}, {hi}], got {self.severity}")

    @property
    def is_identity(self) -> bool:
        return self.severity == 0.0


def _quantize(values: np.ndarray) -> np.ndarray:
    # round half up on the [0, 255] byte scale
    return np.floor(values + 0.5).astype(np.uint8)


def salt_pepper(img: Image, density: float, stream: RandomStream) -> Image:
    """Replace each channel element with 0 or 255 with probability `density`.

    Elements are visited in row-major, channel-minor order. Every element
    consumes two uniform draws in a fixed order: one Bernoulli draw deciding
    replacement, then one fair-coin draw picking pepper (0, coin < 0.5) or
    salt (255). Unreplaced elements keep their exact input bytes.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"salt & pepper density must be in [0, 1], got {density}")
    flat = img.data.reshape(-1).copy()
    draws = stream.uniform_block(2 * flat.size)
    replaced = draws[0::2] < density
    salt = draws[1::2] >= 0.5
    flat[replaced] = np.where(salt[replaced], 255, 0).astype(np.uint8)
    return Image(flat.reshape(img.data.shape))


def box_muller(u1: np.ndarray, u2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Standard-normal pairs from uniform pairs via the basic transform.

    z1 = sqrt(-2 ln u1) cos(2 pi u2), z2 = sqrt(-2 ln u1) sin(2 pi u2).
    A u1 of exactly 0 is lifted to the smallest positive draw (2^-53) so the
    logarithm stays finite.
    """
    u1 = np.where(u1 == 0.0, 2.0**-53, u1)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return radius * np.cos(angle), radius * np.sin(angle)


def gaussian_noise(img: Image, variance: float, stream: RandomStream) -> Image:
    """Add zero-mean Gaussian noise of `variance` on the [0, 1] scale, clamped.

    Normal deviates are produced pairwise by :func:`box_muller` and consumed
    in (z1, z2) order over the row-major, channel-minor traversal; an odd
    element count discards the final z2. Output intensities are clamped to
    [0, 1] before requantization.
    """
    if variance < 0.0:
        raise ValueError(f"gaussian variance must be >= 0, got {variance}")
    count = img.data.size
    pairs = (count + 1) // 2
    draws = stream.uniform_block(2 * pairs)
    z_cos, z_sin = box_muller(draws[0::2], draws[1::2])
    noise = np.empty(2 * pairs, dtype=np.float64)
    noise[0::2] = z_cos
    noise[1::2] = z_sin
    values = img.data.reshape(-1).astype(np.float64) / 255.0
    values += noise[:count] * math.sqrt(variance)
    np.clip(values, 0.0, 1.0, out=values)
    return Image(_quantize(values * 255.0).reshape(img.data.shape))


def rotate(img: Image, degrees: float) -> Image:
    """Rotate about the image center, cropped to the original frame.

    Positive degrees appear clockwise to a viewer (raster coordinates,
    y increasing downward); negative counterclockwise. Each output pixel is
    bilinearly sampled from the inverse-rotated source position about
    ((W-1)/2, (H-1)/2); source positions outside the input contribute black.
    Deterministic, consumes no random stream.
    """
    height, width = img.data.shape[:2]
    theta = math.radians(degrees)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    ys, xs = np.meshgrid(
        np.arange(height, dtype=np.float64),
        np.arange(width, dtype=np.float64),
        indexing="ij",
    )
    dx, dy = xs - cx, ys - cy
    # inverse map: the source position that lands on (x, y) after the turn
    src_x = cos_t * dx + sin_t * dy + cx
    src_y = -sin_t * dx + cos_t * dy + cy

    x0 = np.floor(src_x).astype(np.int64)
    y0 = np.floor(src_y).astype(np.int64)
    fx, fy = src_x - x0, src_y - y0

    out = np.zeros(img.data.shape, dtype=np.float64)
    corners = (
        (y0, x0, (1.0 - fx) * (1.0 - fy)),
        (y0, x0 + 1, fx * (1.0 - fy)),
        (y0 + 1, x0, (1.0 - fx) * fy),
        (y0 + 1, x0 + 1, fx * fy),
    )
    for yi, xi, weight in corners:
        inside = (xi >= 0) & (xi < width) & (yi >= 0) & (yi < height)
        vals = img.data[np.clip(yi, 0, height - 1), np.clip(xi, 0, width - 1), :]
        out += np.where(inside[..., None], vals.astype(np.float64) * weight[..., None], 0.0)
    return Image(_quantize(out))


def apply_sequence(img: Image, specs: Sequence[PerturbationSpec] | Iterable[PerturbationSpec], stream: RandomStream) -> Image:
    """Apply perturbations left to right, threading one stream through noise steps.

    An empty sequence is the identity; a single-element sequence equals
    calling that kernel directly with the same stream.
    """
    out = img
    for spec in specs:
        if spec.kind is PerturbationKind.SALT_PEPPER:
            out = salt_pepper(out, spec.severity, stream)
        elif spec.kind is PerturbationKind.GAUSSIAN:
            out = gaussian_noise(out, spec.severity, stream)
        else:
            out = rotate(out, spec.severity)
    return out
