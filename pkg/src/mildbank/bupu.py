"""Bounded uniform partitions of unity, quasi-interpolation and local envelopes."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import BadDelta, BadParams, GridMismatch, NegativeWindow, NotAPartition
from .grid import Grid, SampledFunction, _near_integer, sample_named

PARTITION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Bupu:
    """Lattice translates psi_n(t) = psi_0(t - gamma n) of a compactly supported base."""

    grid: Grid
    gamma: float
    base: SampledFunction
    radius: float
    indices: tuple[tuple[int, int], ...]  # inclusive (lo, hi) per axis
    _offsets: np.ndarray = field(repr=False, default=None)
    _weights: np.ndarray = field(repr=False, default=None)
    _zero: tuple[int, ...] = field(repr=False, default=())

    def lattice(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(lo, hi + 1) for lo, hi in self.indices))

    def node(self, n) -> np.ndarray:
        return self.gamma * np.asarray(n, dtype=float)

    def cell(self, n) -> tuple[tuple[np.ndarray, ...], np.ndarray]:
        """Grid indices (inside the window) and weights where psi_n is nonzero."""
        step = np.rint(self.gamma / np.asarray(self.grid.spacing)).astype(int)
        centre = np.asarray(self._zero) + step * np.asarray(n)
        idx = self._offsets + centre
        ok = np.all((idx >= 0) & (idx < np.asarray(self.grid.shape)), axis=1)
        return tuple(idx[ok].T), self._weights[ok]

    def member(self, n) -> np.ndarray:
        out = np.zeros(self.grid.shape)
        idx, w = self.cell(n)
        out[idx] = w
        return out

    def partition_sum(self) -> np.ndarray:
        total = np.zeros(self.grid.shape)
        for n in self.lattice():
            idx, w = self.cell(n)
            np.add.at(total, idx, w)
        return total

    def evaluate(self, n, points) -> np.ndarray:
        """psi_n at arbitrary points (exact when the base carries a generator)."""
        pts = np.asarray(points, dtype=float).reshape(-1, self.grid.dim)
        return self.base.at(pts - self.node(n)).real


def interior_mask(grid: Grid, collar: float) -> np.ndarray:
    """True at grid points farther than ``collar`` from the window edge."""
    masks = []
    for k in range(grid.dim):
        t = grid.axis(k)
        lo, hi = grid.window[k]
        masks.append((t >= lo + collar) & (t <= hi - grid.spacing[k] - collar))
    out = masks[0]
    for m in masks[1:]:
        out = np.logical_and.outer(out, m)
    return out


def make_bupu(kind: str = "tent", base: SampledFunction | None = None, gamma: float | None = None,
              grid: Grid | None = None) -> Bupu:
    """Build a partition of unity on ``grid``.

    ``tent`` uses psi_0(t) = prod max(1 - |t_j|/gamma, 0), which for gamma = 1/2 is the
    standard tent and gives psi_n(t) = tent(t - n/2).  ``custom`` takes any nonnegative
    compactly supported ``base`` sampled on the grid.
    """
    if grid is None:
        grid = base.grid if base is not None else None
    if grid is None:
        raise BadParams("a grid is required")
    gamma = 0.5 if gamma is None else float(gamma)
    h = grid.spacing
    if len(set(h)) != 1 and kind == "custom":
        raise BadParams("custom partitions need equal spacing on all axes")
    for hk in h:
        if not _near_integer(gamma / hk):
            raise BadParams(f"gamma={gamma} is not a multiple of the grid spacing")
    if kind == "tent":
        base = sample_named("tent", [gamma], grid)
    elif kind == "custom":
        if base is None:
            raise BadParams("custom partition needs a base function")
        if base.grid != grid:
            raise GridMismatch("base lives on another grid")
    else:
        raise BadParams(f"unknown partition kind {kind!r}")

    vals = base.values
    if np.any(np.abs(vals.imag) > 0) or np.any(vals.real < 0):
        raise NegativeWindow("partition base must be real and nonnegative")
    zero = grid.index_of([0.0] * grid.dim)
    if zero is None or not grid.in_window(zero):
        raise BadParams("the origin must be a grid point")
    nz = np.argwhere(vals.real > 0)
    if len(nz) == 0:
        raise NotAPartition("base is identically zero")
    offsets = nz - np.asarray(zero)
    pts = offsets * np.asarray(h)
    radius = float(np.max(np.linalg.norm(pts, axis=1))) + max(h)
    if np.any(np.abs(offsets) >= np.asarray(grid.shape) // 2 - 1):
        raise NotAPartition("base is not compactly supported inside the window")

    indices = []
    for k in range(grid.dim):
        lo, hi = grid.window[k]
        # per-axis support half-width
        reach = float(np.max(np.abs(pts[:, k]))) + h[k]
        indices.append((math.floor((lo - reach) / gamma) + 1, math.ceil((hi + reach) / gamma) - 1))
    psi = Bupu(grid, gamma, base, radius, tuple(indices), offsets, vals.real[tuple(nz.T)].copy(), tuple(zero))

    total = psi.partition_sum()
    interior = interior_mask(grid, radius)
    dev = float(np.max(np.abs(total[interior] - 1.0))) if interior.any() else math.inf
    if dev > PARTITION_TOL:
        raise NotAPartition(f"translates sum to 1 only within {dev:.3g}")
    return psi


def quasi_interpolate(f: SampledFunction, psi: Bupu) -> SampledFunction:
    """Spline-type quasi-interpolant sum_n f(gamma n) psi_n."""
    if f.grid != psi.grid:
        raise GridMismatch("function and partition live on different grids")
    nodes = list(psi.lattice())
    fn = f.at(np.array([psi.node(n) for n in nodes]))
    out = np.zeros(f.grid.shape, dtype=complex)
    for n, c in zip(nodes, fn):
        if c != 0:
            idx, w = psi.cell(n)
            np.add.at(out, idx, c * w)
    return SampledFunction(f.grid, out, f"quasi({f.label})")


def _ball_offsets(grid: Grid, radius: float) -> np.ndarray:
    ranges = [range(-int(math.floor(radius / hk + 1e-9)), int(math.floor(radius / hk + 1e-9)) + 1) for hk in grid.spacing]
    offs = np.array(list(itertools.product(*ranges)), dtype=int)
    dist = np.linalg.norm(offs * np.asarray(grid.spacing), axis=1)
    return offs[dist <= radius * (1 + 1e-12)]


def _padded(values: np.ndarray, pad: int) -> np.ndarray:
    return np.pad(values, pad, mode="constant", constant_values=0)


def envelope(f: SampledFunction, kind: str = "osc", delta: float | None = None) -> SampledFunction:
    """Oscillation osc_delta(f)(x) = max_{|y|<=delta} |f(x) - f(x+y)|, or the local
    maximal function f#(x) = max_{|y|<=1} |f(x+y)|, both over grid offsets with f
    extended by zero outside the window."""
    g = f.grid
    if kind == "maxfn":
        from scipy.ndimage import maximum_filter

        offs = _ball_offsets(g, 1.0)
        pad = int(np.max(np.abs(offs)))
        fp = np.zeros((2 * pad + 1,) * g.dim, dtype=bool)
        fp[tuple((offs + pad).T)] = True
        out = maximum_filter(np.abs(f.values), footprint=fp, mode="constant", cval=0.0)
        return SampledFunction(g, out, f"max({f.label})")
    if kind != "osc":
        raise BadParams(f"unknown envelope kind {kind!r}")
    if delta is None or not delta > 0 or delta < min(g.spacing) * (1 - 1e-12):
        raise BadDelta(f"delta must be at least the grid spacing, got {delta}")
    offs = _ball_offsets(g, delta)
    pad = int(np.max(np.abs(offs)))
    fp = _padded(f.values, pad)
    out = np.zeros(g.shape)
    core = tuple(slice(pad, pad + n) for n in g.shape)
    for o in offs:
        shifted = fp[tuple(slice(pad + oi, pad + oi + n) for oi, n in zip(o, g.shape))]
        np.maximum(out, np.abs(fp[core] - shifted), out=out)
    return SampledFunction(g, out, f"osc({f.label})")
