"""Escape-time rendering of the parameter plane with located-point overlays.

The background is an illustrative double-precision escape-time image
(white far field shading to black near the boundary, flat gray interior);
overlay points come from the multiprecision solver and are rounded only at
rasterization.  Output is an uncompressed binary PPM by default, so byte
determinism is trivial to audit; PNG is available behind a flag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .roots import Hyperbolic, Misiurewicz, ParamPoint

INTERIOR_RGB = (160, 160, 160)
HYP_RGB = (0, 176, 0)
MIS_RGB = (208, 0, 0)
OTHER_RGB = (0, 64, 224)


def escape_time(c: complex, max_iter: int) -> int | None:
    """First 1-based iterate with |z| > 2, or None if the orbit stays bounded.

    The bailout is strictly greater than 2, so c = -2 (orbit 0, -2, 2, 2, ...)
    counts as bounded.
    """
    if max_iter < 1:
        raise ValueError("need max_iter >= 1")
    z = 0j
    c = complex(c)
    for i in range(1, max_iter + 1):
        z = z * z + c
        if abs(z) > 2.0:
            return i
    return None


@dataclass(frozen=True)
class PlotSpec:
    """Region, resolution, iteration bound, and overlay styling for one image."""

    center: complex = -0.75 + 0j
    width: float = 3.0
    pixels: tuple[int, int] = (800, 800)
    max_iter: int = 100
    overlay: tuple[ParamPoint, ...] = ()
    palette: str = "figure"

    def __post_init__(self):
        wpx, hpx = self.pixels
        if wpx < 1 or hpx < 1:
            raise ValueError("pixels must be positive")
        if self.max_iter < 1:
            raise ValueError("need max_iter >= 1")
        if not self.width > 0:
            raise ValueError("need width > 0")


def _escape_counts(spec: PlotSpec) -> np.ndarray:
    """Escape iteration per pixel (0 = bounded), rows top to bottom."""
    wpx, hpx = spec.pixels
    height = spec.width * hpx / wpx  # square pixels
    xs = spec.center.real - spec.width / 2 + (np.arange(wpx) + 0.5) * spec.width / wpx
    ys = spec.center.imag + height / 2 - (np.arange(hpx) + 0.5) * height / hpx
    c = xs[None, :] + 1j * ys[:, None]
    z = np.zeros_like(c)
    count = np.zeros(c.shape, dtype=np.int64)
    alive = np.ones(c.shape, dtype=bool)
    for i in range(1, spec.max_iter + 1):
        z[alive] = z[alive] ** 2 + c[alive]
        escaped = alive & (np.abs(z) > 2.0)
        count[escaped] = i
        alive &= ~escaped
    return count


def _overlay_color(kind) -> tuple[int, int, int]:
    if isinstance(kind, Hyperbolic):
        return HYP_RGB
    if isinstance(kind, Misiurewicz):
        return MIS_RGB
    return OTHER_RGB


def _stamp_disks(img: np.ndarray, spec: PlotSpec) -> None:
    wpx, hpx = spec.pixels
    height = spec.width * hpx / wpx
    x0 = spec.center.real - spec.width / 2
    y1 = spec.center.imag + height / 2
    radius = max(2, min(wpx, hpx) // 200)
    for point in spec.overlay:
        v = complex(point.value)
        col = (v.real - x0) / spec.width * wpx - 0.5
        row = (y1 - v.imag) / height * hpx - 0.5
        ci, ri = int(round(col)), int(round(row))
        if not (0 <= ci < wpx and 0 <= ri < hpx):
            continue  # outside the viewport
        color = _overlay_color(point.kind)
        for dr in range(-radius, radius + 1):
            for dc in range(-radius, radius + 1):
                if dr * dr + dc * dc > radius * radius:
                    continue
                r, c = ri + dr, ci + dc
                if 0 <= r < hpx and 0 <= c < wpx:
                    img[r, c] = color


def render(spec: PlotSpec, out_path: str, png: bool = False) -> str:
    """Write the image for spec to out_path; identical spec gives identical bytes."""
    wpx, hpx = spec.pixels
    count = _escape_counts(spec)
    img = np.zeros((hpx, wpx, 3), dtype=np.uint8)
    shade = np.maximum(0, 255 - (255 * count) // spec.max_iter).astype(np.uint8)
    escaped = count > 0
    for ch in range(3):
        img[..., ch] = np.where(escaped, shade, INTERIOR_RGB[ch])
    _stamp_disks(img, spec)
    if png:
        from PIL import Image

        Image.fromarray(img, "RGB").save(out_path, format="PNG")
    else:
        header = f"P6\n{wpx} {hpx}\n255\n".encode("ascii")
        with open(out_path, "wb") as fh:
            fh.write(header + img.tobytes())
    return out_path
