"""Short-time Fourier transform, the S0 norm, tensor products and structure maps."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadKind, BadParams, GridMismatch, TailTooFat
from .fourier import _dft_axis
from .grid import Grid, SampledFunction, act, integrate, sample_named
from .wiener import default_bupu, restrict, wiener_norm

TfPlaneFunction = SampledFunction

PLANE_TAIL_TOL = 1e-9


def plane_grid(grid: Grid, stride: int) -> Grid:
    """(x, w) grid: x on every ``stride``-th time node, w on the full frequency grid."""
    if stride < 1 or any(n % stride for n in grid.count):
        raise BadParams(f"stride must divide the sample count, got {stride}")
    fg = grid.dual()
    return Grid(
        grid.origin + fg.origin,
        tuple(h * stride for h in grid.spacing) + fg.spacing,
        tuple(n // stride for n in grid.count) + fg.count,
    )


def _shifted_window(g: SampledFunction, x: np.ndarray) -> np.ndarray:
    """Samples of T_x g on g's grid (exact with a generator, else a grid shift)."""
    if g.generator is not None:
        mesh = g.grid.mesh()
        return np.broadcast_to(g.generator(*(m - xi for m, xi in zip(mesh, x))), g.grid.shape)
    return act("translate", x, g).values


def stft(f: SampledFunction, g: SampledFunction | None = None, stride: int = 4) -> TfPlaneFunction:
    """V_g f(x, w) = F(f conj(T_x g))(w) on the plane grid."""
    grid = f.grid
    g = sample_named("gaussian", [], grid) if g is None else g
    if g.grid != grid:
        raise GridMismatch("window lives on another grid")
    pg = plane_grid(grid, stride)
    d = grid.dim
    xs = [pg.axis(k) for k in range(d)]
    fg = grid.dual()
    if d == 1:
        rows = np.array([np.conj(_shifted_window(g, [x])) for x in xs[0]]) * f.values[None, :]
        out = _dft_axis(rows, 1, grid.origin[0], grid.spacing[0], fg.origin[0], -1, grid.spacing[0])
        return SampledFunction(pg, out, f"V({f.label})")
    out = np.empty(pg.shape, dtype=complex)
    for i, x1 in enumerate(xs[0]):
        for j, x2 in enumerate(xs[1]):
            v = f.values * np.conj(_shifted_window(g, [x1, x2]))
            for k in range(2):
                v = _dft_axis(v, k, grid.origin[k], grid.spacing[k], fg.origin[k], -1, grid.spacing[k])
            out[i, j] = v
    return SampledFunction(pg, out, f"V({f.label})")


def _plane_tail(v: np.ndarray) -> float:
    a = np.abs(v)
    edge = 0.0
    for ax in range(a.ndim):
        edge = max(edge, float(np.take(a, 0, axis=ax).max()), float(np.take(a, -1, axis=ax).max()))
    return edge / max(float(a.max()), 1e-300)


def s0_norm(f: SampledFunction, variant: str = "l1", stride: int = 4) -> float:
    """||f||_S0 = int int |V_g0 f| (l1) or the Wiener norm of V_g0 f over the plane (wiener)."""
    if not np.any(f.values):
        return 0.0
    v = stft(f, None, stride)
    if _plane_tail(v.values) > PLANE_TAIL_TOL:
        raise TailTooFat(f"STFT does not decay inside the plane (edge ratio {_plane_tail(v.values):.3g})")
    if variant == "l1":
        return float(v.grid.cell * np.sum(np.abs(v.values)))
    if variant == "wiener":
        if f.grid.dim != 1:
            raise BadParams("the wiener variant is implemented for d = 1")
        return wiener_norm(v, default_bupu(v.grid)).norm
    raise BadParams(f"variant must be l1 or wiener, got {variant!r}")


def tensor(f1: SampledFunction, f2: SampledFunction) -> SampledFunction:
    """(f1 (x) f2)(x, y) = f1(x) f2(y)."""
    if f1.grid.dim != 1 or f2.grid.dim != 1:
        raise GridMismatch("tensor products take two 1D functions")
    g = Grid(f1.grid.origin + f2.grid.origin, f1.grid.spacing + f2.grid.spacing, f1.grid.count + f2.grid.count)
    gen = None
    if f1.generator is not None and f2.generator is not None:
        a, b = f1.generator, f2.generator
        gen = lambda x, y: a(x) * b(y)  # noqa: E731
    return SampledFunction(g, np.outer(f1.values, f2.values), f"{f1.label}(x){f2.label}", gen)


@dataclass(frozen=True)
class SampleResult:
    points: np.ndarray
    values: np.ndarray
    l1: float
    ratio: float  # l1 / ||f||_S0


@dataclass(frozen=True)
class PeriodizationResult:
    period: SampledFunction  # values on [0, 1)^d
    coefficients: np.ndarray  # Fourier coefficients c_n, n = -M/2 .. M/2 - 1 per axis
    a_norm: float  # sum |c_n|
    ratio: float  # a_norm / ||f||_S0


def _integer_points(grid: Grid) -> np.ndarray:
    import itertools

    axes = []
    for lo, hi in grid.window:
        axes.append(np.arange(np.ceil(lo), np.ceil(hi)))
    return np.array(list(itertools.product(*axes)), dtype=float)


def _s0_or_nan(f: SampledFunction) -> float:
    # ratios against ||f||_S0 are reported only when the STFT fits in the plane
    try:
        return s0_norm(f)
    except TailTooFat:
        return float("nan")


def structure_map(f: SampledFunction, kind: str):
    """sample_l1, periodize (period 1), partial_integral (d=2) or restrict (d=2)."""
    if kind == "sample_l1":
        pts = _integer_points(f.grid)
        vals = f.at(pts)
        l1 = float(np.sum(np.abs(vals)))
        s0 = _s0_or_nan(f)
        return SampleResult(pts, vals, l1, l1 / s0 if s0 else 0.0)
    if kind == "periodize":
        g = f.grid
        scale = max(float(np.abs(f.values).max()), 1e-300)
        from .fourier import tail_mass

        if any(hi - lo < 4 for lo, hi in g.window) or tail_mass(f, 0.5) > 1e-12 * scale:
            raise TailTooFat("periodization needs a window of several periods with a negligible tail")
        steps = [int(round(1 / h)) for h in g.spacing]
        if any(abs(s * h - 1) > 1e-12 for s, h in zip(steps, g.spacing)):
            raise BadParams("period 1 must be a multiple of the grid spacing")
        zero = g.index_of([0.0] * g.dim)
        # fold the window onto [0, 1)^d by grouping indices modulo the period
        acc = np.zeros(steps, dtype=complex)
        idx = [((np.arange(n) - z) % s) for n, z, s in zip(g.shape, zero, steps)]
        if g.dim == 1:
            np.add.at(acc, idx[0], f.values)
        else:
            np.add.at(acc, np.ix_(idx[0], idx[1]), f.values)
        pgrid = Grid(tuple([0.0] * g.dim), g.spacing, tuple(steps))
        period = SampledFunction(pgrid, acc, f"P({f.label})")
        coeffs = acc
        for k, s in enumerate(steps):
            # c_n = int_0^1 P f(x) e^{-2 pi i n x} dx, n = -s/2 .. s/2 - 1
            coeffs = np.fft.fftshift(np.fft.fft(coeffs, axis=k), axes=k) / s
        a_norm = float(np.sum(np.abs(coeffs)))
        s0 = _s0_or_nan(f)
        return PeriodizationResult(period, coeffs, a_norm, a_norm / s0 if s0 else 0.0)
    if kind == "partial_integral":
        if f.grid.dim != 2:
            raise BadKind("partial integration needs a 2D function")
        g = f.grid
        g1 = Grid((g.origin[0],), (g.spacing[0],), (g.count[0],))
        return SampledFunction(g1, g.spacing[1] * f.values.sum(axis=1), f"P1({f.label})")
    if kind == "restrict":
        if f.grid.dim != 2:
            raise BadKind("restriction needs a 2D function")
        return restrict(f, 1)
    raise BadKind(f"unknown structure map {kind!r}")


def stft_g0_closed_form(x, w) -> np.ndarray:
    """|V_g0 g0(x, w)| = 2^(-1/2) exp(-pi (x^2 + w^2) / 2)."""
    x, w = np.asarray(x), np.asarray(w)
    return 2 ** -0.5 * np.exp(-np.pi * (x**2 + w**2) / 2)


__all__ = [
    "TfPlaneFunction",
    "plane_grid",
    "stft",
    "s0_norm",
    "tensor",
    "structure_map",
    "SampleResult",
    "PeriodizationResult",
    "integrate",
]
