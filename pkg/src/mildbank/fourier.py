"""Continuous Fourier transform on uniform grids, its identities and Poisson summation.

The transform is f^(s) = int f(t) exp(-2 pi i s.t) dt.  On a grid with spacing h and
N points the FFT yields samples on the frequency grid s_k = -1/(2h) + k/(N h); the
origin phase is applied analytically.  For evaluation at arbitrary frequencies the
exact discrete-time Fourier sum is used and set to zero outside the Nyquist box
[-1/(2h), 1/(2h)), where the sampled data carry no information.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BadGrid, BadParams, GridMismatch, TailTooFat
from .grid import Grid, LatticeMatrix, SampledFunction, convolve, integrate, inner, sample_named

Spectrum = SampledFunction

TAIL_TOL = 1e-14


# ---------------------------------------------------------------------------
# discrete transforms

def _dft_axis(values: np.ndarray, axis: int, t0: float, h: float, s0: float, sign: int, weight: float) -> np.ndarray:
    """weight * sum_j v_j exp(sign 2 pi i (s0 + k D)(t0 + j h)) along one axis, D = 1/(N h)."""
    n = values.shape[axis]
    j = np.arange(n)
    shape = [1] * values.ndim
    shape[axis] = n
    pre = np.exp(sign * 2j * np.pi * s0 * j * h).reshape(shape)
    post = (np.exp(sign * 2j * np.pi * j / (n * h) * t0) * np.exp(sign * 2j * np.pi * s0 * t0)).reshape(shape)
    v = values * pre
    core = np.fft.fft(v, axis=axis) if sign < 0 else n * np.fft.ifft(v, axis=axis)
    return weight * core * post


def _check_grid(grid: Grid):
    if grid.dim not in (1, 2):
        raise BadGrid("Fourier transforms are implemented for d = 1, 2")


def ft(f: SampledFunction, direction: str = "forward", target: Grid | None = None) -> SampledFunction:
    """FFT-backed Fourier transform.

    forward: samples of f^ on ``f.grid.dual()``.
    inverse: the exact discrete inverse; the output lands on ``target`` (default: the
    symmetric grid dual to the input), so ``ft(ft(f), 'inverse', f.grid) == f``.
    Results carry a generator evaluating the exact discrete transform off the grid.
    """
    g = f.grid
    _check_grid(g)
    vals = f.values
    if direction == "forward":
        out_grid = g.dual()
        for k in range(g.dim):
            vals = _dft_axis(vals, k, g.origin[k], g.spacing[k], out_grid.origin[k], -1, g.spacing[k])
        gen = _dtft_generator(f, -1)
        return SampledFunction(out_grid, vals, f"ft({f.label})", gen)
    if direction == "inverse":
        out_grid = g.dual() if target is None else target
        if out_grid.count != g.count or any(
            abs(ht * hs * n - 1) > 1e-12 for ht, hs, n in zip(out_grid.spacing, g.spacing, g.count)
        ):
            raise BadGrid("target grid is not dual to the spectrum grid")
        for k in range(g.dim):
            # sum_k F_k exp(+2 pi i s_k t_j): roles of (t, s) swap relative to the forward sum
            vals = _dft_axis(vals, k, g.origin[k], g.spacing[k], out_grid.origin[k], +1, g.spacing[k])
        gen = _dtft_generator(f, +1)
        return SampledFunction(out_grid, vals, f"ift({f.label})", gen)
    raise BadParams(f"direction must be forward or inverse, got {direction!r}")


def ift(F: SampledFunction, target: Grid | None = None) -> SampledFunction:
    return ft(F, "inverse", target)


@lru_cache(maxsize=8)
def _dtft_matrix(t0: float, h: float, n: int, points: tuple, sign: int) -> np.ndarray:
    t = t0 + np.arange(n) * h
    s = np.asarray(points)
    m = np.exp(sign * 2j * np.pi * np.outer(s, t))
    m[(s < -0.5 / h) | (s >= 0.5 / h)] = 0.0
    m.flags.writeable = False
    return m


def _axis_matrix(g: Grid, k: int, s: np.ndarray, sign: int) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if s.size <= 2048:
        return _dtft_matrix(g.origin[k], g.spacing[k], g.count[k], tuple(s.tolist()), sign)
    t = g.axis(k)
    m = np.exp(sign * 2j * np.pi * np.outer(s, t))
    m[(s < -0.5 / g.spacing[k]) | (s >= 0.5 / g.spacing[k])] = 0.0
    return m


def dtft(f: SampledFunction, points, sign: int = -1) -> np.ndarray:
    """Exact discrete Fourier sum h^d sum_j f_j exp(sign 2 pi i s.t_j) at arbitrary points.

    Points outside the Nyquist box get 0.  Shape (M,) for d = 1, (M, d) otherwise.
    """
    g = f.grid
    pts = np.asarray(points, dtype=float)
    if g.dim == 1:
        pts = pts.reshape(-1)
        return g.cell * (_axis_matrix(g, 0, pts, sign) @ f.values)
    pts = pts.reshape(-1, g.dim)
    e1 = _axis_matrix(g, 0, pts[:, 0], sign)
    e2 = _axis_matrix(g, 1, pts[:, 1], sign)
    return g.cell * np.einsum("mj,jl,ml->m", e1, f.values, e2)


def _dtft_generator(f: SampledFunction, sign: int):
    def gen(*c):
        shape = np.broadcast(*c).shape
        pts = np.stack([np.broadcast_to(ci, shape).ravel() for ci in c], axis=-1)
        return dtft(f, pts, sign).reshape(shape)

    return gen


def ft_onto(f: SampledFunction, grid: Grid | None = None, direction: str = "forward") -> SampledFunction:
    """Samples of f^ (or the inverse transform) at the points of ``grid`` (default: f's own grid).

    Uses the FFT when ``grid`` is the natural output grid and the exact discrete sum
    otherwise; values outside the Nyquist box are zero.
    """
    grid = f.grid if grid is None else grid
    if grid.dim != f.grid.dim:
        raise GridMismatch("dimension mismatch")
    sign = -1 if direction == "forward" else +1
    if grid == f.grid.dual():
        return ft(f, direction, target=grid if direction == "inverse" else None)
    vals = f.values
    for k in range(grid.dim):
        m = _axis_matrix(f.grid, k, grid.axis(k), sign)
        vals = np.moveaxis(np.tensordot(m, vals, axes=([1], [k])), 0, k)
    vals = f.grid.cell * vals
    return SampledFunction(grid, vals, f"ft({f.label})", _dtft_generator(f, sign))


# ---------------------------------------------------------------------------
# identities

@dataclass(frozen=True)
class ResidualReport:
    fundamental: float
    convolution: float
    parseval: float
    inversion: float
    parseval_conjugated: float = 0.0

    def max(self) -> float:
        return max(self.fundamental, self.convolution, self.parseval, self.inversion)


def identity_residuals(f: SampledFunction, g: SampledFunction) -> ResidualReport:
    """Residuals of the fundamental identity, convolution theorem, Parseval and inversion.

    ``parseval`` uses the form <f^, g^> = int f g (exact for real g);
    ``parseval_conjugated`` the standard form <f^, g^> = <f, g>.
    """
    if f.grid != g.grid:
        raise GridMismatch("identity residuals need a common grid")
    fh, gh = ft(f), ft(g)
    fund = abs(integrate(f * ft_onto(g, f.grid)) - integrate(ft_onto(f, g.grid) * g))
    conv = float(np.max(np.abs(ft(convolve(f, g)).values - fh.values * gh.values)))
    pf = inner(fh, gh)
    pars = abs(pf - integrate(f * g))
    pars_c = abs(pf - inner(f, g))
    inv = float(np.max(np.abs(ift(fh, f.grid).values - f.values)))
    return ResidualReport(float(fund), conv, float(pars), inv, float(pars_c))


def tail_mass(f: SampledFunction, collar: float = 1.0) -> float:
    """Largest |f| within ``collar`` of the window edge."""
    g = f.grid
    mask = np.zeros(g.shape, dtype=bool)
    for k in range(g.dim):
        t = g.axis(k)
        lo, hi = g.window[k]
        edge = (t < lo + collar) | (t >= hi - collar)
        shape = [1] * g.dim
        shape[k] = -1
        mask |= np.broadcast_to(edge.reshape(shape), g.shape)
    return float(np.max(np.abs(f.values[mask]), initial=0.0))


# ---------------------------------------------------------------------------
# Poisson summation

@dataclass(frozen=True)
class PoissonResult:
    lhs: complex
    rhs: complex
    terms_lhs: int
    terms_rhs: int

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


def lattice_points(a: np.ndarray, box: Sequence[tuple[float, float]], shift=None) -> np.ndarray:
    """Points A k + shift inside the half-open box, k in Z^d."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    d = a.shape[0]
    shift = np.zeros(d) if shift is None else np.asarray(shift, dtype=float).reshape(d)
    corners = np.array(list(itertools.product(*box))) - shift
    kc = corners @ np.linalg.inv(a).T
    lo = np.floor(kc.min(axis=0)) - 1
    hi = np.ceil(kc.max(axis=0)) + 1
    ks = np.array(list(itertools.product(*(np.arange(l, u + 1) for l, u in zip(lo, hi)))), dtype=float)
    pts = ks @ a.T + shift
    inside = np.ones(len(pts), dtype=bool)
    for k, (l, u) in enumerate(box):
        inside &= (pts[:, k] >= l - 1e-12) & (pts[:, k] < u - 1e-12)
    return pts[inside]


def _check_tails(f: SampledFunction, a: LatticeMatrix):
    scale = max(1.0, float(np.max(np.abs(f.values))))
    reach_t = float(np.max(np.linalg.norm(a.entries, axis=0)))
    reach_s = float(np.max(np.linalg.norm(a.inv_transpose, axis=0)))
    if tail_mass(f, reach_t) > TAIL_TOL * scale:
        raise TailTooFat(f"function tail {tail_mass(f, reach_t):.3g} exceeds {TAIL_TOL:g} at the window edge")
    fh = ft(f)
    # FFT round-off sits near N * eps * l1(f); the spectrum check cannot go below it
    floor = max(TAIL_TOL * scale, f.grid.size * np.finfo(float).eps * f.grid.cell * float(np.sum(np.abs(f.values))))
    if tail_mass(fh, reach_s) > floor:
        raise TailTooFat(f"spectrum tail {tail_mass(fh, reach_s):.3g} exceeds {TAIL_TOL:g} at the Nyquist edge")


def poisson(f: SampledFunction, a: LatticeMatrix, m: int = 0, x=None, omega=None) -> PoissonResult:
    """Both sides of the Poisson summation formula.

    m = 0:  sum_k e^{2 pi i Ak.w} f(Ak - x)  vs  e^{2 pi i w.x}/|det A| sum_k e^{-2 pi i A'k.x} f^(A'k - w)
    m > 0:  int_{R^m} sum_{k in Z^(d-m)} f(A(y, k)) dy  vs  1/|det A| sum_k f^(A'(0, k))
    with A' the inverse transpose.  Sums run over lattice points inside the time window
    and the Nyquist box respectively; both tails are checked first.
    """
    g = f.grid
    d = g.dim
    if a.dim != d:
        raise BadParams("lattice dimension does not match the grid")
    if not 0 <= m <= d:
        raise BadParams("need 0 <= m <= d")
    x = np.zeros(d) if x is None else np.asarray(x, dtype=float).reshape(d)
    w = np.zeros(d) if omega is None else np.asarray(omega, dtype=float).reshape(d)
    _check_tails(f, a)
    nyq = [(-0.5 / h, 0.5 / h) for h in g.spacing]
    if m == 0:
        p = lattice_points(a.entries, g.window, shift=-x)
        lhs = np.sum(np.exp(2j * np.pi * ((p + x) @ w)) * f.at(p))
        q = lattice_points(a.inv_transpose, nyq, shift=-w)
        rhs = np.exp(2j * np.pi * (w @ x)) / a.abs_det * np.sum(np.exp(-2j * np.pi * ((q + w) @ x)) * dtft(f, q))
        return PoissonResult(complex(lhs), complex(rhs), len(p), len(q))
    if np.any(x) or np.any(w):
        raise BadParams("shifts are only supported for m = 0")
    # integrate the first m coordinates by the Riemann sum on the grid axes
    ys = [g.axis(k) for k in range(m)]
    hy = float(np.prod(g.spacing[:m]))
    inv = a.inverse
    corners = np.array(list(itertools.product(*g.window)))
    kc = corners @ inv.T
    ranges = [np.arange(math.floor(kc[:, j].min()) - 1, math.ceil(kc[:, j].max()) + 2) for j in range(m, d)]
    yy = np.array(list(itertools.product(*ys)))
    kk = np.array(list(itertools.product(*ranges)), dtype=float)
    coords = np.concatenate([np.repeat(yy, len(kk), axis=0), np.tile(kk, (len(yy), 1))], axis=1)
    pts = coords @ a.entries.T
    if f.generator is None and not np.allclose(a.entries, np.diag(np.diag(a.entries))):
        raise BadParams("non-diagonal lattices with m > 0 need a function with a generator")
    lhs = hy * np.sum(f.at(pts))
    # k such that A'(0, k) lies in the Nyquist box
    cand = np.array(list(itertools.product(*(np.arange(-4 * g.count[j], 4 * g.count[j] + 1) for j in range(m, d)))),
                    dtype=float) if d - m <= 1 else None
    if cand is None:
        raise BadParams("partial Poisson implemented for d - m <= 1")
    full = np.concatenate([np.zeros((len(cand), m)), cand], axis=1)
    q = full @ a.inv_transpose.T
    ok = np.all((q >= np.array([b[0] for b in nyq])) & (q < np.array([b[1] for b in nyq])), axis=1)
    rhs = np.sum(dtft(f, q[ok])) / a.abs_det
    return PoissonResult(complex(lhs), complex(rhs), int(len(pts)), int(ok.sum()))


def theta(a: float, x: float = 0.0, omega: float = 0.0, kmax: int = 40) -> complex:
    """sum_k exp(2 pi i k w) exp(-pi a (k - x)^2), the lattice sum for a scaled Gaussian on Z."""
    k = np.arange(-kmax, kmax + 1)
    return complex(np.sum(np.exp(2j * np.pi * k * omega) * np.exp(-np.pi * a * (k - x) ** 2)))


def poisson_gauss(a: LatticeMatrix, x=None, omega=None, kmax: int = 12) -> PoissonResult:
    """Both theta series of the Gaussian shifted Poisson identity evaluated directly:

    sum_k exp(-pi(|Ak|^2 - 2 Ak.(x + i w)))
      = exp(pi (x + i w).(x + i w)) / |det A| * sum_k exp(-pi(|A'k|^2 - 2 A'k.(w - i x)))
    """
    d = a.dim
    x = np.zeros(d) if x is None else np.asarray(x, dtype=float).reshape(d)
    w = np.zeros(d) if omega is None else np.asarray(omega, dtype=float).reshape(d)
    ks = np.array(list(itertools.product(range(-kmax, kmax + 1), repeat=d)), dtype=float)
    p = ks @ a.entries.T
    q = ks @ a.inv_transpose.T
    z = x + 1j * w
    lhs = np.sum(np.exp(-np.pi * (np.sum(p * p, axis=1) - 2 * p @ z)))
    pref = np.exp(np.pi * (z @ z)) / a.abs_det
    rhs = pref * np.sum(np.exp(-np.pi * (np.sum(q * q, axis=1) - 2 * q @ (w - 1j * x))))
    return PoissonResult(complex(lhs), complex(rhs), len(ks), len(ks))


# ---------------------------------------------------------------------------
# Dirac approximation and Fourier-side scores

def dirac_gaps(f: SampledFunction, rhos: Sequence[float] = (0.5, 0.25, 0.125)) -> list[float]:
    """sup |(S_rho g0 * f) - f| for each rho; tends to 0 as rho -> 0."""
    g0 = sample_named("gaussian", [], f.grid)
    from .grid import act

    return [float(np.max(np.abs(convolve(act("stretch", [r], g0), f).values - f.values))) for r in rhos]
