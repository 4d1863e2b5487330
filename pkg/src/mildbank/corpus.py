"""Seeded test-function corpora and batteries.

Every collection is a deterministic function of (grid, seed); the layout is versioned
by ``BATTERY_VERSION`` so recorded gaps stay comparable across runs.
"""
from __future__ import annotations

import numpy as np

from .grid import Grid, SampledFunction, act, sample_named

BATTERY_VERSION = 1


def _center_range(grid: Grid) -> float:
    return min(3.0, min(n * h for n, h in zip(grid.count, grid.spacing)) / 8)


def random_mixture(grid: Grid, rng: np.random.Generator, terms: int = 3, real: bool = True) -> SampledFunction:
    """Gaussian mixture with centers in [-c, c], widths in [0.7, 1.5] and weights in [-1, 1]."""
    c = _center_range(grid)
    params = []
    for _ in range(terms):
        params.append(rng.uniform(-1.0, 1.0))
        params.extend(rng.uniform(-c, c, size=grid.dim))
        params.append(rng.uniform(0.7, 1.5))
    f = sample_named("gaussian_mixture", params, grid)
    if not real:
        w = rng.uniform(-1.0, 1.0, size=grid.dim)
        f = act("modulate", w, f)
    return SampledFunction(grid, f.values, "mixture", f.generator)


def random_tent(grid: Grid, rng: np.random.Generator) -> SampledFunction:
    c = _center_range(grid)
    # centers and widths on the grid lattice keep kinks at sample points
    h = grid.spacing[0]
    center = list(np.round(rng.uniform(-c, c, size=grid.dim) / h) * h)
    width = float(np.round(rng.uniform(0.5, 2.0) / h) * h)
    f = sample_named("tent", center + [width], grid)
    return SampledFunction(grid, f.values, "tent", f.generator)


def modulated_gaussian(grid: Grid, rng: np.random.Generator) -> SampledFunction:
    c = _center_range(grid)
    center = rng.uniform(-c, c, size=grid.dim)
    freq = rng.uniform(-2.0, 2.0, size=grid.dim)
    width = rng.uniform(0.8, 1.5)
    g = sample_named("gaussian_mixture", [1.0, *center, width], grid)
    f = act("modulate", freq, g)
    return SampledFunction(grid, f.values, "modulated", f.generator)


def mixture_pairs(grid: Grid, count: int = 20, seed: int = 0) -> list[tuple[SampledFunction, SampledFunction]]:
    rng = np.random.default_rng(seed)
    return [(random_mixture(grid, rng), random_mixture(grid, rng)) for _ in range(count)]


def measure_battery(grid: Grid, seed: int = 0) -> list[SampledFunction]:
    """32 test functions: 24 Gaussian mixtures and 8 tents."""
    rng = np.random.default_rng(seed)
    return [random_mixture(grid, rng) for _ in range(24)] + [random_tent(grid, rng) for _ in range(8)]


def mild_battery(grid: Grid, seed: int = 0) -> list[SampledFunction]:
    """48 test functions: 32 Gaussian mixtures, 8 tents and 8 modulated Gaussians."""
    rng = np.random.default_rng(seed)
    return (
        [random_mixture(grid, rng) for _ in range(32)]
        + [random_tent(grid, rng) for _ in range(8)]
        + [modulated_gaussian(grid, rng) for _ in range(8)]
    )


def battery_tents(grid: Grid, seed: int = 0) -> list[SampledFunction]:
    """The 8 tents of ``mild_battery(grid, seed)`` without sampling the other 40 functions."""
    from .grid import make_grid

    rng = np.random.default_rng(seed)
    small = make_grid(h=0.5, n=64, d=grid.dim)  # same center range, so the same draws
    for _ in range(32):
        random_mixture(small, rng)
    return [random_tent(grid, rng) for _ in range(8)]


def function_corpus(grid: Grid, count: int = 30, seed: int = 0) -> list[SampledFunction]:
    """Mixed corpus: real and modulated mixtures, tents and the standard Gaussian."""
    rng = np.random.default_rng(seed)
    out = [sample_named("gaussian", [], grid)]
    while len(out) < count:
        k = len(out) % 4
        if k == 0:
            out.append(random_tent(grid, rng))
        elif k == 1:
            out.append(modulated_gaussian(grid, rng))
        else:
            out.append(random_mixture(grid, rng, real=(k == 2)))
    return out


def smooth_corpus(grid: Grid, count: int = 30, seed: int = 0) -> list[SampledFunction]:
    """Corpus without kinks, for checks whose accuracy relies on fast spectral decay."""
    rng = np.random.default_rng(seed)
    out = [sample_named("gaussian", [], grid)]
    while len(out) < count:
        if len(out) % 3 == 0:
            out.append(modulated_gaussian(grid, rng))
        else:
            out.append(random_mixture(grid, rng, real=len(out) % 3 == 1))
    return out
