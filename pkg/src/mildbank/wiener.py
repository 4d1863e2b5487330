"""Wiener algebra norm (partition and unit-box variants) and restriction to a hyperplane."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bupu import Bupu, make_bupu
from .errors import BadAxis, BadParams, GridMismatch
from .fourier import tail_mass
from .grid import Grid, SampledFunction, act


@dataclass(frozen=True)
class WienerReport:
    norm: float
    cell_sups: dict = field(repr=False)
    variant: str = "bupu"
    cell_argmax: dict = field(default_factory=dict, repr=False)
    tail: float = 0.0


_BUPU_CACHE: dict[Grid, Bupu] = {}


def default_bupu(grid: Grid) -> Bupu:
    """Tent partition with gamma = 1/2 on ``grid`` (memoized; Bupu values are immutable)."""
    psi = _BUPU_CACHE.get(grid)
    if psi is None:
        psi = make_bupu("tent", grid=grid)
        _BUPU_CACHE[grid] = psi
    return psi


def _box_cells(grid: Grid):
    """Unit cubes [n, n+1]^d meeting the window, as per-axis index arrays."""
    per_axis = []
    for k in range(grid.dim):
        t = grid.axis(k)
        lo, hi = grid.window[k]
        cells = []
        for n in range(math.floor(lo) - 1, math.ceil(hi) + 1):
            idx = np.nonzero((t >= n - 1e-12) & (t <= n + 1 + 1e-12))[0]
            if len(idx):
                cells.append((n, idx))
        per_axis.append(cells)
    return per_axis


def wiener_norm(f: SampledFunction, psi: Bupu | None = None, variant: str = "bupu") -> WienerReport:
    """||f||_W = sum_n sup |f psi_n| (bupu) or sum_n sup over [n, n+1]^d of |f| (box)."""
    a = np.abs(f.values)
    sups, where = {}, {}
    if variant == "bupu":
        psi = default_bupu(f.grid) if psi is None else psi
        if psi.grid != f.grid:
            raise GridMismatch("partition lives on another grid")
        for n in psi.lattice():
            idx, w = psi.cell(n)
            if len(w) == 0:
                continue
            v = a[idx] * w
            j = int(np.argmax(v))
            if v[j] > 0:
                sups[n] = float(v[j])
                where[n] = tuple(int(i[j]) for i in idx)
    elif variant == "box":
        per_axis = _box_cells(f.grid)
        for combo in itertools.product(*per_axis):
            n = tuple(c[0] for c in combo)
            block = a[np.ix_(*(c[1] for c in combo))]
            if block.size and block.max() > 0:
                j = np.unravel_index(int(np.argmax(block)), block.shape)
                sups[n] = float(block[j])
                where[n] = tuple(int(c[1][jj]) for c, jj in zip(combo, j))
    else:
        raise BadParams(f"variant must be bupu or box, got {variant!r}")
    total = math.fsum(sups[n] for n in sorted(sups))
    return WienerReport(total, sups, variant, where, tail_mass(f, 1.0))


def restrict(f: SampledFunction, keep: int = 1) -> SampledFunction:
    """R_1 f(x) = f(x, 0): slice of a 2D function along the first axis."""
    if f.grid.dim != 2 or keep != 1:
        raise BadAxis("restriction maps a 2D function to its first axis (keep=1)")
    g = f.grid
    j = g.index_of([0.0, 0.0])
    if j is None or not g.in_window(j):
        raise BadAxis("the second axis does not contain 0")
    g1 = Grid((g.origin[0],), (g.spacing[0],), (g.count[0],))
    gen = None
    if f.generator is not None:
        gen0 = f.generator
        gen = lambda x: gen0(x, np.zeros_like(x))  # noqa: E731
    return SampledFunction(g1, f.values[:, j[1]], f"R1({f.label})", gen)


def support_constant(grid: Grid, psi: Bupu | None = None, samples: int = 8) -> float:
    """Measured c_K = max ||f||_W / sup|f| over plateaus f = 1 on x + [0,1]^d, x on a grid of offsets."""
    psi = default_bupu(grid) if psi is None else psi
    h = grid.spacing[0]
    best = 0.0
    steps = max(1, int(round(0.5 / h)) // samples)
    for off in itertools.product(range(0, int(round(0.5 / h)), steps), repeat=grid.dim):
        x = np.asarray(off) * h
        mask = np.ones(grid.shape, dtype=bool)
        for k, m in enumerate(grid.mesh()):
            mask &= (m >= x[k]) & (m <= x[k] + 1)
        f = SampledFunction(grid, mask.astype(float))
        best = max(best, wiener_norm(f, psi).norm)
    return best


def translation_ratio(f: SampledFunction, x, psi: Bupu | None = None) -> float:
    base = wiener_norm(f, psi).norm
    return wiener_norm(act("translate", x, f), psi).norm / base if base else 0.0
