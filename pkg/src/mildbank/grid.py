"""Uniform grids on R^d (d = 1, 2), sampled functions and the elementary operators.

Functions live on a finite window ``[t0, t0 + N h)`` per axis and integrals are
Riemann sums ``h^d * sum(values)``.  A sampled function may carry a closed-form
``generator`` so that operators which move sample points off the grid
(dilations, evaluation at arbitrary points) can re-evaluate exactly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadCount,
    BadParams,
    GridMismatch,
    NonCommensurateShift,
    NonCommensurateSpacing,
    SingularMatrix,
    UnknownGenerator,
)

Generator = Callable[..., np.ndarray]

_COMMENSURATE_TOL = 1e-9


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _near_integer(x: float, tol: float = _COMMENSURATE_TOL) -> bool:
    return abs(x - round(x)) <= tol * max(1.0, abs(x))


@dataclass(frozen=True)
class Grid:
    """Tensor grid with per-axis origin, spacing and count."""

    origin: tuple[float, ...]
    spacing: tuple[float, ...]
    count: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.origin) == len(self.spacing) == len(self.count)):
            raise BadCount("origin, spacing and count must have one entry per axis")
        if len(self.count) not in (1, 2, 4):
            # 4 axes only occur for time-frequency planes of 2D functions
            raise BadCount(f"unsupported dimension {len(self.count)}")
        for h, n, t0 in zip(self.spacing, self.count, self.origin):
            if not (h > 0 and math.isfinite(h) and math.isfinite(t0)):
                raise BadCount(f"spacing must be positive and finite, got {h}")
            if not (isinstance(n, (int, np.integer)) and n >= 8 and _is_power_of_two(int(n))):
                raise BadCount(f"count must be a power of two >= 8, got {n}")

    @property
    def dim(self) -> int:
        return len(self.count)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(int(n) for n in self.count)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def cell(self) -> float:
        """Quadrature weight h^d."""
        return float(np.prod(self.spacing))

    def axis(self, k: int) -> np.ndarray:
        return self.origin[k] + np.arange(self.count[k]) * self.spacing[k]

    def axes(self) -> list[np.ndarray]:
        return [self.axis(k) for k in range(self.dim)]

    def mesh(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.axes(), indexing="ij"))

    def points(self) -> np.ndarray:
        """All grid points, shape (size, d), row-major."""
        return np.stack([m.ravel() for m in self.mesh()], axis=-1)

    @property
    def window(self) -> tuple[tuple[float, float], ...]:
        return tuple((t0, t0 + n * h) for t0, h, n in zip(self.origin, self.spacing, self.count))

    @property
    def radius(self) -> float:
        """Largest |t| over the window, per-axis maximum."""
        return max(max(abs(a), abs(b)) for a, b in self.window)

    @property
    def is_symmetric(self) -> bool:
        return all(
            abs(t0 + n * h / 2) <= 1e-12 * max(1.0, n * h)
            for t0, h, n in zip(self.origin, self.spacing, self.count)
        )

    def dual(self) -> "Grid":
        """Frequency grid: spacing 1/(N h), symmetric window [-1/(2h), 1/(2h))."""
        return Grid(
            origin=tuple(-0.5 / h for h in self.spacing),
            spacing=tuple(1.0 / (n * h) for h, n in zip(self.spacing, self.count)),
            count=self.count,
        )

    def is_self_dual(self) -> bool:
        return self == self.dual() or all(
            abs(a - b) <= 1e-14 for a, b in zip(self.origin + self.spacing, self.dual().origin + self.dual().spacing)
        )

    def offset_index(self, x: Sequence[float], axes: Sequence[int] | None = None) -> tuple[int, ...]:
        """Integer index offset for a shift x; raises if x is not commensurate."""
        axes = range(self.dim) if axes is None else axes
        out = []
        for xi, k in zip(x, axes):
            q = xi / self.spacing[k]
            if not _near_integer(q):
                raise NonCommensurateShift(f"shift {xi} is not a multiple of h={self.spacing[k]}")
            out.append(int(round(q)))
        return tuple(out)

    def index_of(self, p: Sequence[float]) -> tuple[int, ...] | None:
        """Index of grid point p (None when p is off-grid); may lie outside the window."""
        out = []
        for k, pk in enumerate(p):
            q = (pk - self.origin[k]) / self.spacing[k]
            if not _near_integer(q):
                return None
            out.append(int(round(q)))
        return tuple(out)

    def in_window(self, idx: Sequence[int]) -> bool:
        return all(0 <= i < n for i, n in zip(idx, self.count))

    def subgrid_stride(self, stride: int) -> "Grid":
        return Grid(self.origin, tuple(h * stride for h in self.spacing), tuple(n // stride for n in self.count))


def make_grid(t0: float | Sequence[float] | None = None, h: float = 1 / 16, n: int = 1024, d: int = 1) -> Grid:
    """Build a d-dimensional grid with N = n points per axis and spacing h.

    The default origin ``-n*h/2`` gives a window symmetric about zero.
    """
    if d not in (1, 2):
        raise BadCount(f"dimension must be 1 or 2, got {d}")
    if not (h > 0 and math.isfinite(h)):
        raise BadCount(f"spacing must be positive, got {h}")
    if not _near_integer(1.0 / (2.0 * h)):
        raise NonCommensurateSpacing(f"1/(2h) = {1 / (2 * h)} is not an integer")
    if not (isinstance(n, (int, np.integer)) and n >= 8 and _is_power_of_two(int(n))):
        raise BadCount(f"count must be a power of two >= 8, got {n}")
    if t0 is None:
        origin = tuple([-n * h / 2] * d)
    elif np.ndim(t0) == 0:
        origin = tuple([float(t0)] * d)
    else:
        origin = tuple(float(v) for v in t0)
        if len(origin) != d:
            raise BadCount("origin must have one entry per axis")
    return Grid(origin=origin, spacing=tuple([float(h)] * d), count=tuple([int(n)] * d))


@dataclass(frozen=True, eq=False)
class LatticeMatrix:
    """Invertible d x d matrix A together with det, inverse and inverse transpose."""

    entries: np.ndarray
    det: float
    inverse: np.ndarray
    inv_transpose: np.ndarray

    @classmethod
    def of(cls, a) -> "LatticeMatrix":
        m = np.atleast_2d(np.asarray(a, dtype=float))
        if m.shape[0] != m.shape[1] or m.shape[0] not in (1, 2):
            raise BadParams(f"lattice matrix must be 1x1 or 2x2, got shape {m.shape}")
        det = float(np.linalg.det(m))
        if not math.isfinite(det) or abs(det) < 1e-14:
            raise SingularMatrix(f"matrix is singular (det={det})")
        inv = np.linalg.inv(m)
        for arr in (m, inv):
            arr.flags.writeable = False
        invt = inv.T.copy()
        invt.flags.writeable = False
        return cls(entries=m, det=det, inverse=inv, inv_transpose=invt)

    @classmethod
    def identity(cls, d: int = 1) -> "LatticeMatrix":
        return cls.of(np.eye(d))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def abs_det(self) -> float:
        return abs(self.det)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex samples of a function on a grid, with an optional closed-form generator.

    ``generator(*coords)`` evaluates the underlying function at broadcastable
    coordinate arrays, one per axis.
    """

    grid: Grid
    values: np.ndarray
    label: str = ""
    generator: Generator | None = field(default=None, repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.size != self.grid.size:
            raise BadParams(f"{vals.size} values for a grid of size {self.grid.size}")
        vals = vals.reshape(self.grid.shape)
        if not np.all(np.isfinite(vals)):
            raise BadParams("sampled values must be finite")
        object.__setattr__(self, "values", _freeze(vals))

    @classmethod
    def from_generator(cls, grid: Grid, gen: Generator, label: str = "") -> "SampledFunction":
        vals = np.broadcast_to(gen(*grid.mesh()), grid.shape)
        return cls(grid, vals, label, gen)

    @classmethod
    def zeros(cls, grid: Grid, label: str = "zero") -> "SampledFunction":
        return cls(grid, np.zeros(grid.shape), label, lambda *c: np.zeros(np.broadcast(*c).shape))

    @property
    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def with_values(self, values: np.ndarray, label: str | None = None) -> "SampledFunction":
        return SampledFunction(self.grid, values, self.label if label is None else label)

    def at(self, points) -> np.ndarray:
        """Evaluate at arbitrary points, shape (M,) for d=1 or (M, d).

        Uses the generator when present, otherwise grid lookup with zero extension
        outside the window; off-grid points fall back to the nearest node with a warning.
        """
        pts = np.asarray(points, dtype=float)
        if self.grid.dim == 1 and pts.ndim <= 1:
            pts = pts.reshape(-1, 1)
        pts = pts.reshape(-1, self.grid.dim)
        if self.generator is not None:
            return np.asarray(self.generator(*pts.T), dtype=complex).reshape(len(pts))
        g = self.grid
        q = (pts - np.asarray(g.origin)) / np.asarray(g.spacing)
        idx = np.rint(q).astype(np.int64)
        if np.any(np.abs(q - idx) > _COMMENSURATE_TOL * np.maximum(1.0, np.abs(q))):
            warnings.warn("evaluation off the grid: using nearest node", stacklevel=2)
        inside = np.all((idx >= 0) & (idx < np.asarray(g.shape)), axis=1)
        out = np.zeros(len(pts), dtype=complex)
        if np.any(inside):
            out[inside] = self.values[tuple(idx[inside].T)]
        return out

    def _combine(self, other, op, name):
        if isinstance(other, SampledFunction):
            if other.grid != self.grid:
                raise GridMismatch("functions live on different grids")
            gen = None
            if self.generator is not None and other.generator is not None:
                ga, gb = self.generator, other.generator
                gen = lambda *c: op(ga(*c), gb(*c))  # noqa: E731
            return SampledFunction(self.grid, op(self.values, other.values), name, gen)
        c = complex(other)
        gen = None
        if self.generator is not None:
            ga = self.generator
            gen = lambda *p: op(ga(*p), c)  # noqa: E731
        return SampledFunction(self.grid, op(self.values, c), name, gen)

    def __add__(self, other):
        return self._combine(other, np.add, self.label)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract, self.label)

    def __mul__(self, other):
        return self._combine(other, np.multiply, self.label)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __truediv__(self, c):
        return self * (1.0 / complex(c))


# ---------------------------------------------------------------------------
# closed-form generators

def _tent1(t, center, halfwidth):
    return np.maximum(1.0 - np.abs(t - center) / halfwidth, 0.0)


def raised_cosine_profile(s, b: float, beta: float):
    """1 on |s| <= b, half-cosine roll-off to 0 at |s| = beta/2."""
    s = np.abs(np.asarray(s, dtype=float))
    width = beta / 2 - b
    u = np.clip((s - b) / width, 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(np.pi * u))


def _gen_tent(d, p):
    if len(p) == 0:
        center, w = [0.0] * d, 0.5
    elif len(p) == 1:
        center, w = [0.0] * d, p[0]
    elif len(p) == d + 1:
        center, w = list(p[:d]), p[d]
    else:
        raise BadParams("tent takes [], [halfwidth] or [center..., halfwidth]")
    if w <= 0:
        raise BadParams("tent half-width must be positive")

    def gen(*c):
        out = 1.0
        for k in range(d):
            out = out * _tent1(c[k], center[k], w)
        return out + 0j

    return gen


def _gen_gaussian(d, p):
    if len(p) == 0:
        a, center = 1.0, [0.0] * d
    elif len(p) == 1:
        a, center = p[0], [0.0] * d
    elif len(p) == d + 1:
        a, center = p[0], list(p[1:])
    else:
        raise BadParams("gaussian takes [], [a] or [a, center...]")
    if a <= 0:
        raise BadParams("gaussian rate must be positive")
    return lambda *c: np.exp(-np.pi * a * sum((c[k] - center[k]) ** 2 for k in range(d))) + 0j


def _gen_sinc(d, p):
    if p:
        raise BadParams("sinc takes no parameters")

    def gen(*c):
        out = 1.0
        for k in range(d):
            out = out * np.sinc(c[k])
        return out + 0j

    return gen


def _gen_box(d, p):
    w = p[0] if p else 0.5
    if len(p) > 1 or w <= 0:
        raise BadParams("box takes [width] with width > 0")

    def gen(*c):
        out = 1.0
        for k in range(d):
            # half-open so that aligned boxes tile the grid without double counting
            out = out * ((c[k] >= -w / 2) & (c[k] < w / 2))
        return out + 0j

    return gen


def _gen_chirp(d, p):
    if len(p) > 1:
        raise BadParams("chirp takes [alpha]")
    alpha = p[0] if p else 1.0
    return lambda *c: np.exp(1j * np.pi * alpha * sum(c[k] ** 2 for k in range(d)))


def _gen_pure_frequency(d, p):
    if len(p) != d:
        raise BadParams("pure_frequency takes one frequency per axis")
    return lambda *c: np.exp(2j * np.pi * sum(p[k] * c[k] for k in range(d)))


def _gen_raised_cosine(d, p):
    if d != 1 or len(p) != 2:
        raise BadParams("raised_cosine_spectrum takes [b, beta] in d=1")
    b, beta = p
    if not (0 < b < beta / 2):
        raise BadParams("need 0 < b < beta/2")
    return lambda s: raised_cosine_profile(s, b, beta) + 0j


def _gen_mixture(d, p):
    k = d + 2
    if len(p) == 0 or len(p) % k:
        raise BadParams(f"gaussian_mixture takes groups of {k} numbers: weight, center..., width")
    groups = np.asarray(p, dtype=float).reshape(-1, k)
    if np.any(groups[:, -1] <= 0):
        raise BadParams("mixture widths must be positive")

    def gen(*c):
        out = 0j
        for row in groups:
            w, cen, sig = row[0], row[1:-1], row[-1]
            r2 = sum((c[j] - cen[j]) ** 2 for j in range(d))
            out = out + w * np.exp(-np.pi * r2 / sig**2)
        return out

    return gen


_GENERATORS = {
    "tent": _gen_tent,
    "gaussian": _gen_gaussian,
    "sinc": _gen_sinc,
    "box": _gen_box,
    "chirp": _gen_chirp,
    "pure_frequency": _gen_pure_frequency,
    "raised_cosine_spectrum": _gen_raised_cosine,
    "gaussian_mixture": _gen_mixture,
}


def sample_named(name: str, params: Sequence[float] = (), grid: Grid | None = None) -> SampledFunction:
    """Sample a named closed-form function on ``grid``.

    Parameters by name (d = grid dimension):
      tent [halfwidth] or [center..., halfwidth]; default is the standard tent of half-width 1/2
      gaussian [a] or [a, center...]: exp(-pi a |t - center|^2)
      sinc; box [width]; chirp [alpha]; pure_frequency [x...]
      raised_cosine_spectrum [b, beta]
      gaussian_mixture [weight, center..., width] * K: sum of w exp(-pi |t-c|^2 / width^2)
    """
    if grid is None:
        raise BadParams("a grid is required")
    try:
        factory = _GENERATORS[name]
    except KeyError:
        raise UnknownGenerator(name) from None
    params = [float(v) for v in params]
    if not all(math.isfinite(v) for v in params):
        raise BadParams("parameters must be finite")
    gen = factory(grid.dim, params)
    return SampledFunction.from_generator(grid, gen, label=name)


# ---------------------------------------------------------------------------
# quadrature

class Norms(NamedTuple):
    sup: float
    l1: float
    l2: float


def integrate(f: SampledFunction) -> complex:
    """Riemann sum h^d * sum(values)."""
    return complex(f.grid.cell * np.sum(f.values))


def inner(f: SampledFunction, g: SampledFunction) -> complex:
    """Riemann-sum inner product h^d * sum(f * conj(g))."""
    if f.grid != g.grid:
        raise GridMismatch("inner product of functions on different grids")
    return complex(f.grid.cell * np.vdot(g.values.ravel(), f.values.ravel()))


def norms(f: SampledFunction) -> Norms:
    a = np.abs(f.values)
    return Norms(float(a.max(initial=0.0)), float(f.grid.cell * a.sum()), float(math.sqrt(f.grid.cell * np.sum(a * a))))


def pointwise(f: SampledFunction, g: SampledFunction, kind: str = "mul") -> SampledFunction:
    ops = {"mul": np.multiply, "add": np.add, "sub": np.subtract}
    if kind not in ops:
        raise BadParams(f"pointwise kind must be one of {sorted(ops)}")
    return f._combine(g, ops[kind], f"{kind}({f.label},{g.label})")


# ---------------------------------------------------------------------------
# operators

def _shift_values(values: np.ndarray, offsets: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Shift samples by integer offsets (new[j] = old[j - k]); returns values and coverage mask."""
    out = np.zeros_like(values)
    mask = np.zeros(values.shape, dtype=bool)
    dst, src = [], []
    for k, n in zip(offsets, values.shape):
        if abs(k) >= n:
            return out, mask
        if k >= 0:
            dst.append(slice(k, n))
            src.append(slice(0, n - k))
        else:
            dst.append(slice(0, n + k))
            src.append(slice(-k, n))
    out[tuple(dst)] = values[tuple(src)]
    mask[tuple(dst)] = True
    return out, mask


def _interpolate(f: SampledFunction, coords: Sequence[np.ndarray]) -> np.ndarray:
    """Linear interpolation of grid samples at coordinate arrays, zero outside the window."""
    g = f.grid
    if g.dim == 1:
        x = g.axis(0)
        re = np.interp(coords[0], x, f.values.real, left=0.0, right=0.0)
        im = np.interp(coords[0], x, f.values.imag, left=0.0, right=0.0)
        return re + 1j * im
    from scipy.interpolate import RegularGridInterpolator

    interp = RegularGridInterpolator(g.axes(), f.values, bounds_error=False, fill_value=0.0)
    pts = np.stack([np.broadcast_to(c, np.broadcast(*coords).shape) for c in coords], axis=-1)
    return interp(pts)


def _resample(f: SampledFunction, coord_map, factor: complex, label: str) -> SampledFunction:
    """Values factor * f(coord_map(t)), exact when f has a generator."""
    g = f.grid
    new_coords = coord_map(*g.mesh())
    if f.generator is not None:
        gen0 = f.generator
        gen = lambda *c: factor * gen0(*coord_map(*c))  # noqa: E731
        return SampledFunction.from_generator(g, gen, label)
    return SampledFunction(g, factor * _interpolate(f, new_coords), label)


def _as_vector(params, d: int, what: str) -> np.ndarray:
    v = np.asarray(params, dtype=float).ravel()
    if v.size != d:
        raise BadParams(f"{what} needs {d} component(s), got {v.size}")
    return v


def _as_lattice(params, d: int) -> LatticeMatrix:
    if isinstance(params, LatticeMatrix):
        a = params
    elif len(params) == 1 and isinstance(params[0], LatticeMatrix):
        a = params[0]
    else:
        a = LatticeMatrix.of(np.asarray(params, dtype=float).reshape(d, d))
    if a.dim != d:
        raise BadParams("matrix dimension does not match the grid")
    return a


def act(kind: str, params, f: SampledFunction) -> SampledFunction:
    """Apply an elementary operator to a sampled function.

    kinds: translate [x...], modulate [w...], flip, conjugate, stretch [rho]
    (S_rho f(t) = rho^-d f(t/rho)), value_dilate [rho] (D_rho f(t) = f(rho t)),
    matrix_dilate [A] (|det A|^(1/2) f(A t)).
    """
    g = f.grid
    d = g.dim
    params = [] if params is None else params
    if kind == "translate":
        x = _as_vector(params, d, "translate")
        k = g.offset_index(x)
        vals, covered = _shift_values(f.values, k)
        gen = None
        if f.generator is not None:
            gen0 = f.generator
            gen = lambda *c: gen0(*(c[j] - x[j] for j in range(d)))  # noqa: E731
            if not covered.all():
                exposed = gen(*(m[~covered] for m in g.mesh()))
                vals[~covered] = exposed
        return SampledFunction(g, vals, f.label, gen)
    if kind == "modulate":
        w = _as_vector(params, d, "modulate")
        phase = np.exp(2j * np.pi * sum(w[j] * m for j, m in enumerate(g.mesh())))
        gen = None
        if f.generator is not None:
            gen0 = f.generator
            gen = lambda *c: np.exp(2j * np.pi * sum(w[j] * c[j] for j in range(d))) * gen0(*c)  # noqa: E731
        return SampledFunction(g, phase * f.values, f.label, gen)
    if kind == "conjugate":
        gen = None
        if f.generator is not None:
            gen0 = f.generator
            gen = lambda *c: np.conj(gen0(*c))  # noqa: E731
        return SampledFunction(g, np.conj(f.values), f.label, gen)
    if kind == "flip":
        # -t_j = t_{m - j} with m = -2 t0 / h
        ms = []
        for k in range(d):
            q = -2 * g.origin[k] / g.spacing[k]
            if not _near_integer(q):
                raise NonCommensurateShift("flip needs a window with -2 t0 / h integral")
            ms.append(int(round(q)))
        # unpaired edge samples wrap periodically so that flip is an exact involution
        idx = [(m - np.arange(n)) % n for m, n in zip(ms, g.shape)]
        vals = f.values[np.ix_(*idx)].copy()
        inside = [(m - np.arange(n) >= 0) & (m - np.arange(n) < n) for m, n in zip(ms, g.shape)]
        covered = inside[0] if d == 1 else np.logical_and.outer(inside[0], inside[1])
        gen = None
        if f.generator is not None:
            gen0 = f.generator
            gen = lambda *c: gen0(*(-ci for ci in c))  # noqa: E731
            if not covered.all():
                vals[~covered] = gen(*(mm[~covered] for mm in g.mesh()))
        return SampledFunction(g, vals, f.label, gen)
    if kind == "stretch":
        rho = float(np.ravel(params)[0]) if len(params) else 0.0
        if rho <= 0:
            raise BadParams("stretch needs rho > 0")
        return _resample(f, lambda *c: tuple(ci / rho for ci in c), rho ** (-d), f.label)
    if kind == "value_dilate":
        rho = float(np.ravel(params)[0]) if len(params) else 0.0
        if rho == 0:
            raise BadParams("value_dilate needs rho != 0")
        return _resample(f, lambda *c: tuple(ci * rho for ci in c), 1.0, f.label)
    if kind == "matrix_dilate":
        a = _as_lattice(params, d)
        m = a.entries

        def cmap(*c):
            return tuple(sum(m[i, j] * c[j] for j in range(d)) for i in range(d))

        return _resample(f, cmap, math.sqrt(a.abs_det), f.label)
    raise BadParams(f"unknown operator kind {kind!r}")


def convolve(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """Riemann-sum convolution (f*g)(x_i) = h^d sum_j f(t_j) g(x_i - t_j), g zero outside the window.

    One-dimensional inputs use direct summation; two-dimensional inputs use the
    same linear convolution evaluated with zero-padded FFTs.
    """
    if f.grid != g.grid:
        raise GridMismatch("convolution of functions on different grids")
    grid = f.grid
    m0 = []
    for t0, h in zip(grid.origin, grid.spacing):
        q = -t0 / h
        if not _near_integer(q):
            raise NonCommensurateShift("convolution needs the origin on the lattice hZ")
        m0.append(int(round(q)))
    if grid.dim == 1:
        full = np.convolve(f.values, g.values)
    else:
        from scipy.signal import fftconvolve

        full = fftconvolve(f.values, g.values)
    # x_i - t_j = t0 + (i - j + m0) h, so entry i of the result sits at i + m0 of the full sum
    out = np.zeros(grid.shape, dtype=complex)
    src, dst = [], []
    for (m, n, L) in zip(m0, grid.shape, full.shape):
        lo, hi = m, m + n  # wanted indices of the full array
        a, b = max(lo, 0), min(hi, L)
        if a >= b:
            return SampledFunction(grid, out, f"{f.label}*{g.label}")
        src.append(slice(a, b))
        dst.append(slice(a - lo, b - lo))
    out[tuple(dst)] = full[tuple(src)]
    return SampledFunction(grid, grid.cell * out, f"{f.label}*{g.label}")
