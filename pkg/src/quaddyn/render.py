"""Escape-time rasters: dynamical planes over z0 and parameter planes over A.

Pixels are classified independently (pure per-pixel fate), so the grid can be
partitioned across worker threads; every worker writes disjoint row bands of
preallocated arrays and the result is identical for any worker count.
"""
from __future__ import annotations

import cmath
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .extplane import INF, TINY, is_inf
from .operator_s import s_apply, strange_fixed_point_pair

CHUNK_ROWS = 32
BASIN_NONE = 2
BASIN_DEGENERATE = 255
DEGENERATE_TOL = 1e-9


class DegenerateCritical(ValueError):
    """No free critical point exists at this parameter (A = 1/2 or A = 1)."""


@dataclass(frozen=True)
class Window:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window bounds must satisfy min < max")
        if self.width < 1 or self.height < 1:
            raise ValueError("mesh must be at least 1x1")

    def re_centers(self) -> np.ndarray:
        return self._centers(self.re_min, self.re_max, self.width)

    def im_centers(self) -> np.ndarray:
        return self._centers(self.im_min, self.im_max, self.height)

    @staticmethod
    def _centers(lo: float, hi: float, n: int) -> np.ndarray:
        # anchored at the window midpoint with integer half-offsets so a
        # symmetric window yields exactly sign-symmetric sample points
        step = (hi - lo) / n
        mid = (lo + hi) / 2
        return mid + (2 * np.arange(n) + 1 - n) * (step / 2)


@dataclass(frozen=True)
class IterConfig:
    max_iter: int = 50
    tol: float = 1e-2

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")


@dataclass(frozen=True, eq=False)
class RasterGrid:
    """Per-pixel (basin, iterations); row index 0 is the bottom (im_min) row."""

    window: Window
    cfg: IterConfig
    basin: np.ndarray = field(repr=False)
    iters: np.ndarray = field(repr=False)

    @property
    def degenerate_pixels(self) -> int:
        return int(np.count_nonzero(self.basin == BASIN_DEGENERATE))


def _worker_count() -> int:
    raw = os.environ.get("QD_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            n = 0
        if n > 0:
            return n
    return min(4, os.cpu_count() or 1)


def classify_orbit(
    A: complex,
    z0: complex,
    cfg: IterConfig = IterConfig(),
    attractors: tuple[complex, ...] = (),
) -> tuple[int, int]:
    """(basin_id, iterations) for the orbit of z0 under S at parameter A.

    Checks run before each step: |z| < tol lands basin 0, |z| > 1/tol basin 1,
    proximity to the k-th supplied attractor basin 3+k; max_iter steps without
    a hit is basin 2.
    """
    z = complex(z0)
    escape = 1.0 / cfg.tol
    for n in range(cfg.max_iter + 1):
        mag = abs(z)
        if mag < cfg.tol:
            return 0, n
        if mag > escape:
            return 1, n
        for k, a in enumerate(attractors):
            if abs(z - a) < cfg.tol:
                return 3 + k, n
        if n == cfg.max_iter:
            break
        z = s_apply(A, z)
        if is_inf(z):
            z = INF
    return BASIN_NONE, cfg.max_iter


def _step_block(A, Z, alive):
    """One S step applied to the alive entries of Z in place.

    A is a scalar or an array matching Z.  Vanishing denominators fall back
    to the scalar evaluator, which resolves removable 0/0 points.
    """
    den = (2 * A - 1) * Z + (A - 1)
    tiny = alive & (np.abs(den) < TINY)
    with np.errstate(all="ignore"):
        Znew = Z * Z * Z * ((A - 1) * Z + (2 * A - 1)) / den
    bad = alive & ~np.isfinite(Znew)
    Znew[bad] = INF
    if tiny.any():
        a_at = (lambda idx: A) if np.isscalar(A) or np.ndim(A) == 0 else (lambda idx: A[idx])
        for idx in zip(*np.nonzero(tiny)):
            Znew[idx] = s_apply(complex(a_at(idx)), complex(Z[idx]))
    Z[alive] = Znew[alive]


def _classify_block(A, Z0, cfg, attractors, merge_escape):
    basin = np.full(Z0.shape, -1, np.int16)
    iters = np.full(Z0.shape, cfg.max_iter, np.int16)
    alive = np.ones(Z0.shape, bool)
    Z = Z0.astype(np.complex128, copy=True)
    escape = 1.0 / cfg.tol

    def mark(mask, code, n):
        basin[mask] = code
        iters[mask] = n

    for n in range(cfg.max_iter + 1):
        mag = np.abs(Z)
        mark(alive & (mag < cfg.tol), 0, n)
        alive &= basin == -1
        mark(alive & (mag > escape), 0 if merge_escape else 1, n)
        alive &= basin == -1
        for k, a in enumerate(attractors):
            mark(alive & (np.abs(Z - a) < cfg.tol), 3 + k, n)
            alive &= basin == -1
        if n == cfg.max_iter or not alive.any():
            break
        _step_block(A, Z, alive)
    basin[basin == -1] = BASIN_NONE
    return basin, iters, Z


def _run_chunked(height, worker):
    """Run worker(j0, j1) over row bands, threading when it helps."""
    bands = [(j0, min(j0 + CHUNK_ROWS, height)) for j0 in range(0, height, CHUNK_ROWS)]
    n = _worker_count()
    if n <= 1 or len(bands) <= 1:
        for j0, j1 in bands:
            worker(j0, j1)
        return
    with ThreadPoolExecutor(max_workers=n) as pool:
        list(pool.map(lambda b: worker(*b), bands))


def dyn_plane(
    A: complex,
    window: Window,
    cfg: IterConfig = IterConfig(),
    attractors: tuple[complex, ...] = (),
) -> RasterGrid:
    """classify_orbit at every pixel center of the z0 window."""
    res = window.re_centers()
    ims = window.im_centers()
    basin = np.empty((window.height, window.width), np.int16)
    iters = np.empty((window.height, window.width), np.int16)

    def worker(j0, j1):
        Z0 = res[None, :] + 1j * ims[j0:j1, None]
        b, it, _ = _classify_block(complex(A), Z0, cfg, tuple(attractors), False)
        basin[j0:j1] = b
        iters[j0:j1] = it

    _run_chunked(window.height, worker)
    return RasterGrid(window, cfg, basin, iters)


def free_critical_start(A: complex, critic_selector: str) -> complex:
    """The selected free critical point, as used by the parameter plane."""
    sel = critic_selector.lower()
    if sel not in ("zc1", "zc2"):
        raise ValueError("critic_selector must be Zc1 or Zc2")
    if abs(A - 0.5) < DEGENERATE_TOL or abs(A - 1.0) < DEGENERATE_TOL:
        raise DegenerateCritical(f"no free critical point at A={A}")
    sign = 1.0 if sel == "zc1" else -1.0
    d = 6 * A * A - 8 * A + 3
    sq = cmath.sqrt(12 * A ** 3 - 17 * A * A + 6 * A)
    return (d + sign * sq) / (3 * (3 * A - 1 - 2 * A * A))


def param_plane(
    window: Window,
    cfg: IterConfig = IterConfig(),
    critic_selector: str = "Zc1",
) -> RasterGrid:
    """Fate of the selected free critical orbit over a grid of A values.

    Basin 0 covers both roots (0 and infinity); pixels that never fire but
    whose final iterate sits within tol of a fixed point of S are re-labeled
    basin 3; parameters with no free critical point get the reserved 255.
    """
    sel = critic_selector.lower()
    if sel not in ("zc1", "zc2"):
        raise ValueError("critic_selector must be Zc1 or Zc2")
    sign = 1.0 if sel == "zc1" else -1.0
    res = window.re_centers()
    ims = window.im_centers()
    basin = np.empty((window.height, window.width), np.int16)
    iters = np.empty((window.height, window.width), np.int16)

    def worker(j0, j1):
        A = res[None, :] + 1j * ims[j0:j1, None]
        degenerate = (np.abs(A - 0.5) < DEGENERATE_TOL) | (np.abs(A - 1.0) < DEGENERATE_TOL)
        with np.errstate(all="ignore"):
            d = 6 * A * A - 8 * A + 3
            sq = np.sqrt((12 * A * A - 17 * A) * A + 6 * A)
            Z0 = (d + sign * sq) / (3 * (3 * A - 1 - 2 * A * A))
        Z0[degenerate] = 0j
        b, it, Zf = _classify_block(A, Z0, cfg, (), True)

        undecided = b == BASIN_NONE
        if undecided.any():
            with np.errstate(all="ignore"):
                sqf = np.sqrt(A * (5 * A - 4))
                half = 2 * (1 - A)
                z2 = (3 * A - 2 + sqf) / half
                z3 = (3 * A - 2 - sqf) / half
            near_fixed = (
                (np.abs(Zf - 1.0) < cfg.tol)
                | (np.abs(Zf - z2) < cfg.tol)
                | (np.abs(Zf - z3) < cfg.tol)
            )
            b[undecided & near_fixed] = 3
        b[degenerate] = BASIN_DEGENERATE
        it[degenerate] = 0
        basin[j0:j1] = b
        iters[j0:j1] = it

    _run_chunked(window.height, worker)
    return RasterGrid(window, cfg, basin, iters)


def _rgb_array(grid: RasterGrid, palette: dict[int, tuple[int, int, int]]) -> np.ndarray:
    present = set(int(v) for v in np.unique(grid.basin))
    missing = sorted(present - set(palette))
    if missing:
        raise ValueError(f"palette missing basin ids {missing}")
    lut = np.zeros((256, 3), np.float64)
    for bid, rgb in palette.items():
        lut[bid] = rgb
    rgb = lut[grid.basin.astype(np.intp)]
    scale = 1.0 - 0.6 * grid.iters.astype(np.float64) / grid.cfg.max_iter
    return np.floor(rgb * scale[..., None] + 0.5).astype(np.uint8)


def write_ppm(grid: RasterGrid, palette: dict[int, tuple[int, int, int]], path) -> None:
    """Binary P6 image, top row = im_max, channels dimmed by iteration count."""
    rgb = _rgb_array(grid, palette)
    header = f"P6\n{grid.window.width} {grid.window.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.flipud(rgb).tobytes())


def write_pgm(grid: RasterGrid, path) -> None:
    """Binary P5 label map of raw basin ids, no shading; for exact diffing."""
    header = f"P5\n{grid.window.width} {grid.window.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.flipud(grid.basin.astype(np.uint8)).tobytes())


def render_report(grid: RasterGrid) -> dict:
    ids, counts = np.unique(grid.basin, return_counts=True)
    return {
        "window": {
            "re_min": grid.window.re_min,
            "re_max": grid.window.re_max,
            "im_min": grid.window.im_min,
            "im_max": grid.window.im_max,
            "width": grid.window.width,
            "height": grid.window.height,
        },
        "cfg": {"max_iter": grid.cfg.max_iter, "tol": grid.cfg.tol},
        "basin_counts": {str(int(i)): int(c) for i, c in zip(ids, counts)},
        "degenerate_pixels": grid.degenerate_pixels,
    }
