"""Mild distributions: finite sums of symbolic components acting on sampled test functions.

A component is evaluated against a ``SampledFunction`` f:

    Atom(x, c)                 c f(x)
    Comb(A, y, w, c)           c sum_k e^{2 pi i w.(Ak+y)} f(Ak+y), lattice points in f's window
    PureFrequency(x, c)        c f^(-x) = c int f(t) e^{2 pi i x.t} dt
    Chirp(Q, z, eta, c)        c int e^{i pi (t-z).Q(t-z)} e^{2 pi i eta.t} f(t) dt
    Regular(g)                 int g f
    FourierImage(s)            s(f^)
    Multiplied(s, h)           s(h f)

Fourier transforms of test functions are taken onto the test function's own grid
(``ft_onto``), so on self-dual grids every rewrite below is an exact discrete identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import BadParams, EmptyBattery, GridMismatch, PhaseResolution, TailTooFat
from .fourier import dtft, ft_onto, lattice_points, tail_mass
from .grid import LatticeMatrix, SampledFunction, _as_lattice, _shift_values, act, convolve, integrate, make_grid, sample_named

TAIL_TOL = 1e-14
# self-dual (N h^2 = 1) grid for the distribution calculus; window [-32, 32)
MILD_GRID = make_grid(h=1 / 64, n=4096)
# dilation pairings on kinked test functions are Riemann-limited at O(h^2); this grid
# (h = 2^-15, window [-16, 16)) pushes them below 1e-9
DILATION_GRID = make_grid(h=2**-15, n=2**20)


def _vec(x, d: int | None = None) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if d is not None and v.size != d:
        raise BadParams(f"expected {d} coordinates, got {v.size}")
    return v


@dataclass(frozen=True, eq=False)
class Atom:
    x: np.ndarray
    c: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "x", _vec(self.x))
        object.__setattr__(self, "c", complex(self.c))


@dataclass(frozen=True, eq=False)
class PureFrequency:
    x: np.ndarray
    c: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "x", _vec(self.x))
        object.__setattr__(self, "c", complex(self.c))


@dataclass(frozen=True, eq=False)
class Comb:
    a: LatticeMatrix
    y: np.ndarray
    omega: np.ndarray
    c: complex = 1.0
    kmax: int | None = None  # keep only |k|_inf <= kmax (truncated combs)

    def __post_init__(self):
        a = self.a if isinstance(self.a, LatticeMatrix) else LatticeMatrix.of(self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "y", _vec(self.y, a.dim))
        object.__setattr__(self, "omega", _vec(self.omega, a.dim))
        object.__setattr__(self, "c", complex(self.c))


@dataclass(frozen=True, eq=False)
class Chirp:
    q: np.ndarray  # symmetric d x d matrix; alpha I for the standard chirp
    z: np.ndarray
    eta: np.ndarray
    c: complex = 1.0

    def __post_init__(self):
        q = np.atleast_2d(np.asarray(self.q, dtype=float))
        if q.shape[0] != q.shape[1] or not np.allclose(q, q.T):
            raise BadParams("chirp quadratic form must be a symmetric matrix")
        d = q.shape[0]
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "z", _vec(self.z, d))
        object.__setattr__(self, "eta", _vec(self.eta, d))
        object.__setattr__(self, "c", complex(self.c))

    @property
    def alpha(self) -> float:
        return float(np.linalg.norm(self.q, 2))

    def kernel(self, *coords) -> np.ndarray:
        d = len(coords)
        u = [coords[i] - self.z[i] for i in range(d)]
        quad = sum(self.q[i, j] * u[i] * u[j] for i in range(d) for j in range(d))
        lin = sum(self.eta[i] * coords[i] for i in range(d))
        return self.c * np.exp(1j * np.pi * quad + 2j * np.pi * lin)


@dataclass(frozen=True, eq=False)
class Regular:
    g: SampledFunction


@dataclass(frozen=True, eq=False)
class FourierImage:
    inner: "Component"


@dataclass(frozen=True, eq=False)
class Multiplied:
    inner: "Component"
    h: SampledFunction


Component = Union[Atom, PureFrequency, Comb, Chirp, Regular, FourierImage, Multiplied]


@dataclass(frozen=True, eq=False)
class MildDistribution:
    components: tuple = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __add__(self, other: "MildDistribution") -> "MildDistribution":
        return MildDistribution(self.components + other.components, self.label)

    def __mul__(self, a) -> "MildDistribution":
        return MildDistribution(tuple(_scale(p, complex(a)) for p in self.components), self.label)

    __rmul__ = __mul__

    def __sub__(self, other: "MildDistribution") -> "MildDistribution":
        return self + other * -1.0


def _scale(p: Component, a: complex) -> Component:
    if isinstance(p, (Atom, PureFrequency, Comb, Chirp)):
        return replace(p, c=p.c * a)
    if isinstance(p, Regular):
        return Regular(p.g * a)
    if isinstance(p, FourierImage):
        return FourierImage(_scale(p.inner, a))
    return Multiplied(_scale(p.inner, a), p.h)


# ---------------------------------------------------------------------------
# constructors

def delta(x, c: complex = 1.0) -> MildDistribution:
    return MildDistribution((Atom(x, c),), "delta")


def shah(a, y=None, omega=None, c: complex = 1.0, kmax: int | None = None) -> MildDistribution:
    a = a if isinstance(a, LatticeMatrix) else LatticeMatrix.of(np.atleast_2d(np.asarray(a, dtype=float)))
    d = a.dim
    y = np.zeros(d) if y is None else y
    omega = np.zeros(d) if omega is None else omega
    return MildDistribution((Comb(a, y, omega, c, kmax),), "shah")


def pure_frequency(x, c: complex = 1.0) -> MildDistribution:
    return MildDistribution((PureFrequency(x, c),), "pure_frequency")


def chirp(alpha: float = 1.0, d: int = 1, c: complex = 1.0) -> MildDistribution:
    return MildDistribution((Chirp(alpha * np.eye(d), np.zeros(d), np.zeros(d), c),), "chirp")


def regular(g: SampledFunction) -> MildDistribution:
    return MildDistribution((Regular(g),), g.label)


def from_measure(mu) -> MildDistribution:
    """Lift a bounded measure (atoms plus density) to the distribution it defines."""
    parts: list = [Atom(p, c) for p, c in zip(mu.positions, mu.weights)]
    if mu.density is not None:
        parts.append(Regular(mu.density))
    return MildDistribution(tuple(parts), "measure")


# ---------------------------------------------------------------------------
# evaluation

def _edge_floor(f: SampledFunction) -> float:
    scale = max(1.0, float(np.max(np.abs(f.values))))
    # samples produced by an FFT carry round-off near N eps l1(f) everywhere
    noise = f.grid.size * np.finfo(float).eps * f.grid.cell * float(np.sum(np.abs(f.values)))
    return max(TAIL_TOL * scale, noise)


def _require_decay(f: SampledFunction, collar: float, what: str):
    edge = tail_mass(f, collar)
    if edge > _edge_floor(f):
        raise TailTooFat(f"{what}: test function reaches {edge:.3g} at the window edge")


def _comb_points(p: Comb, box) -> np.ndarray:
    pts = lattice_points(p.a.entries, box, p.y)
    if p.kmax is not None and len(pts):
        k = (pts - p.y) @ p.a.inverse.T
        pts = pts[np.max(np.abs(k), axis=1) <= p.kmax + 1e-9]
    return pts


def _check_phase(p: Chirp, f: SampledFunction):
    g = f.grid
    rule = p.alpha * max(g.spacing) * g.radius
    if rule > 0.25:
        raise PhaseResolution(
            f"chirp phase not resolved: alpha*h*R = {rule:.3g} > 1/4 (alpha={p.alpha:g}, h={max(g.spacing):g}, R={g.radius:g})"
        )


def _apply(p: Component, f: SampledFunction) -> complex:
    d = f.grid.dim
    if isinstance(p, Atom):
        return p.c * complex(f.at(p.x.reshape(1, d))[0])
    if isinstance(p, PureFrequency):
        return p.c * complex(dtft(f, (-p.x).reshape(1, d) if d > 1 else -p.x)[0])
    if isinstance(p, Comb):
        if p.kmax is None:
            reach = float(np.max(np.linalg.norm(p.a.entries, axis=0)))
            _require_decay(f, reach, "comb")
        pts = _comb_points(p, f.grid.window)
        if not len(pts):
            return 0j
        vals = f.at(pts) * np.exp(2j * np.pi * (pts @ p.omega))
        return p.c * complex(np.sum(vals))
    if isinstance(p, Chirp):
        _check_phase(p, f)
        _require_decay(f, 1.0, "chirp")
        return complex(f.grid.cell * np.sum(p.kernel(*f.grid.mesh()) * f.values))
    if isinstance(p, Regular):
        if p.g.grid != f.grid:
            raise GridMismatch("regular component and test function live on different grids")
        return integrate(p.g * f)
    if isinstance(p, FourierImage):
        return _apply(p.inner, ft_onto(f, f.grid))
    if isinstance(p, Multiplied):
        if p.h.grid != f.grid:
            raise GridMismatch("multiplier and test function live on different grids")
        return _apply(p.inner, p.h * f)
    raise BadParams(f"unknown component {type(p).__name__}")


def dist_apply(sigma: MildDistribution, f: SampledFunction) -> complex:
    """sigma(f), the sum of the component actions."""
    return complex(sum((_apply(p, f) for p in sigma.components), 0j))


def wstar_gap(sigma1: MildDistribution, sigma2: MildDistribution, battery: Sequence[SampledFunction]) -> float:
    """max over the battery of |sigma1(f) - sigma2(f)|."""
    if not len(battery):
        raise EmptyBattery("weak-* gaps need at least one test function")
    return max(abs(dist_apply(sigma1, f) - dist_apply(sigma2, f)) for f in battery)


def action_bound(sigma: MildDistribution, battery: Iterable[SampledFunction]) -> float:
    """Battery lower bound for the functional norm: max |sigma(f)| / ||f||_S0.

    Test functions whose STFT leaves the time-frequency plane are skipped.
    """
    from .feichtinger import s0_norm

    best = 0.0
    for f in battery:
        try:
            n = s0_norm(f)
        except TailTooFat:
            continue
        if n > 0:
            best = max(best, abs(dist_apply(sigma, f)) / n)
    return best


# ---------------------------------------------------------------------------
# Fourier transform and elementary operators

def _ft(p: Component) -> Component:
    if isinstance(p, Atom):
        return PureFrequency(-p.x, p.c)
    if isinstance(p, PureFrequency):
        return Atom(p.x, p.c)
    if isinstance(p, Comb):
        if p.kmax is not None:
            return FourierImage(p)
        a = p.a
        c = p.c * np.exp(2j * np.pi * float(p.y @ p.omega)) / a.abs_det
        return Comb(LatticeMatrix.of(a.inv_transpose), p.omega, -p.y, c)
    if isinstance(p, Regular):
        return Regular(ft_onto(p.g, p.g.grid))
    if isinstance(p, FourierImage):
        return _act("flip", None, p.inner)
    # chirps and products keep the transform as a wrapper acting through f^
    return FourierImage(p)


def dist_ft(sigma: MildDistribution) -> MildDistribution:
    """The extended Fourier transform, (F sigma)(f) = sigma(f^)."""
    return MildDistribution(tuple(_ft(p) for p in sigma.components), f"ft({sigma.label})")


def _act(kind: str, params, p: Component) -> Component:
    if isinstance(p, Regular):
        return Regular(act(kind, params, p.g))
    if isinstance(p, FourierImage):
        inner = p.inner
        if kind == "translate":
            return FourierImage(_act("modulate", params, inner))
        if kind == "modulate":
            return FourierImage(_act("translate", -_vec(params), inner))
        if kind == "flip":
            return FourierImage(_act("flip", None, inner))
        if kind == "conjugate":
            return FourierImage(_act("flip", None, _act("conjugate", None, inner)))
        if kind == "matrix_dilate":
            b = _lattice_of(params, inner)
            return FourierImage(_act("matrix_dilate", LatticeMatrix.of(b.inv_transpose), inner))
    if isinstance(p, Multiplied):
        h = p.h
        if kind == "translate":
            return Multiplied(_act(kind, params, p.inner), act("translate", params, h))
        if kind == "modulate":
            return Multiplied(_act(kind, params, p.inner), h)
        if kind in ("flip", "conjugate"):
            return Multiplied(_act(kind, None, p.inner), act(kind, None, h))
        if kind == "matrix_dilate":
            b = _as_lattice(params, h.grid.dim)
            return Multiplied(_act(kind, b, p.inner), act(kind, b, h) * b.abs_det ** -0.5)
    if isinstance(p, Atom):
        if kind == "translate":
            return Atom(p.x + _vec(params, p.x.size), p.c)
        if kind == "modulate":
            return Atom(p.x, p.c * np.exp(2j * np.pi * float(_vec(params, p.x.size) @ p.x)))
        if kind == "flip":
            return Atom(-p.x, p.c)
        if kind == "conjugate":
            return Atom(p.x, np.conj(p.c))
        if kind == "matrix_dilate":
            b = _as_lattice(params, p.x.size)
            return Atom(b.inverse @ p.x, p.c * b.abs_det ** -0.5)
    if isinstance(p, PureFrequency):
        if kind == "translate":
            return PureFrequency(p.x, p.c * np.exp(-2j * np.pi * float(p.x @ _vec(params, p.x.size))))
        if kind == "modulate":
            return PureFrequency(p.x + _vec(params, p.x.size), p.c)
        if kind == "flip":
            return PureFrequency(-p.x, p.c)
        if kind == "conjugate":
            return PureFrequency(-p.x, np.conj(p.c))
        if kind == "matrix_dilate":
            b = _as_lattice(params, p.x.size)
            return PureFrequency(b.entries.T @ p.x, p.c * b.abs_det**0.5)
    if isinstance(p, Comb):
        d = p.a.dim
        if kind == "translate":
            z = _vec(params, d)
            return Comb(p.a, p.y + z, p.omega, p.c * np.exp(-2j * np.pi * float(p.omega @ z)), p.kmax)
        if kind == "modulate":
            return Comb(p.a, p.y, p.omega + _vec(params, d), p.c, p.kmax)
        if kind == "flip":
            return Comb(p.a, -p.y, -p.omega, p.c, p.kmax)
        if kind == "conjugate":
            return Comb(p.a, p.y, -p.omega, np.conj(p.c), p.kmax)
        if kind == "matrix_dilate":
            b = _as_lattice(params, d)
            a = LatticeMatrix.of(b.inverse @ p.a.entries)
            return Comb(a, b.inverse @ p.y, b.entries.T @ p.omega, p.c * b.abs_det ** -0.5, p.kmax)
    if isinstance(p, Chirp):
        d = p.z.size
        if kind == "translate":
            y = _vec(params, d)
            return Chirp(p.q, p.z + y, p.eta, p.c * np.exp(-2j * np.pi * float(p.eta @ y)))
        if kind == "modulate":
            return Chirp(p.q, p.z, p.eta + _vec(params, d), p.c)
        if kind == "flip":
            return Chirp(p.q, -p.z, -p.eta, p.c)
        if kind == "conjugate":
            return Chirp(-p.q, p.z, -p.eta, np.conj(p.c))
        if kind == "matrix_dilate":
            b = _as_lattice(params, d)
            m = b.entries
            return Chirp(m.T @ p.q @ m, b.inverse @ p.z, m.T @ p.eta, p.c * b.abs_det**0.5)
    raise BadParams(f"unknown operator kind {kind!r}")


def _lattice_of(params, p: Component) -> LatticeMatrix:
    return _as_lattice(params, _dim(p))


def _dim(p: Component) -> int:
    if isinstance(p, (Atom, PureFrequency)):
        return p.x.size
    if isinstance(p, Comb):
        return p.a.dim
    if isinstance(p, Chirp):
        return p.z.size
    if isinstance(p, Regular):
        return p.g.grid.dim
    return _dim(p.inner)


def dist_act(kind: str, params, sigma: MildDistribution) -> MildDistribution:
    """Extended operators: translate [y], modulate [w], matrix_dilate [B], flip, conjugate.

    Defined by duality: (T_y s)(f) = s(T_-y f), (E_w s)(f) = s(E_w f), (flip s)(f) = s(f(-.)),
    (conj s)(f) = conj(s(conj f)), (dilate_B s)(f) = s(dilate_{B^-1} f).
    """
    if kind not in ("translate", "modulate", "matrix_dilate", "flip", "conjugate"):
        raise BadParams(f"unknown operator kind {kind!r}")
    return MildDistribution(tuple(_act(kind, params, p) for p in sigma.components), sigma.label)


def adjoint_apply(kind: str, params, sigma: MildDistribution, f: SampledFunction) -> complex:
    """Evaluate the transformed distribution from its defining duality formula."""
    if kind == "fourier":
        return dist_apply(sigma, ft_onto(f, f.grid))
    if kind == "translate":
        return dist_apply(sigma, act("translate", -_vec(params), f))
    if kind == "modulate":
        return dist_apply(sigma, act("modulate", params, f))
    if kind == "flip":
        return dist_apply(sigma, act("flip", None, f))
    if kind == "conjugate":
        return np.conj(dist_apply(sigma, act("conjugate", None, f)))
    if kind == "matrix_dilate":
        b = _as_lattice(params, f.grid.dim)
        return dist_apply(sigma, act("matrix_dilate", LatticeMatrix.of(b.inverse), f))
    raise BadParams(f"unknown operator kind {kind!r}")


def pairing_residual(kind: str, params, sigma: MildDistribution, f: SampledFunction) -> float:
    """|symbolic transform applied to f - duality formula| for one test function."""
    rewritten = dist_ft(sigma) if kind == "fourier" else dist_act(kind, params, sigma)
    return abs(dist_apply(rewritten, f) - adjoint_apply(kind, params, sigma, f))


# ---------------------------------------------------------------------------
# convolution and products with test functions

def _reflected_shifts(g: SampledFunction):
    """t -> samples u -> g(t - u), via the generator when present."""
    if g.generator is not None:
        gen = g.generator

        def at(t):
            return lambda *u: gen(*(t[k] - u[k] for k in range(len(u))))

        return at
    raise BadParams("pointwise convolution needs a test function with a generator")


def _conv_direct(p: Component, g: SampledFunction, pts: np.ndarray) -> np.ndarray:
    """(s * g)(t) = s(T_t g(-.)) evaluated point by point."""
    shifted = _reflected_shifts(g)
    out = np.empty(len(pts), dtype=complex)
    for i, t in enumerate(pts):
        out[i] = _apply(p, SampledFunction.from_generator(g.grid, shifted(t)))
    return out


def _conv(p: Component, g: SampledFunction) -> np.ndarray:
    grid = g.grid
    d = grid.dim
    if isinstance(p, Atom):
        if g.generator is not None:
            return p.c * g.generator(*(m - p.x[k] for k, m in enumerate(grid.mesh())))
        return p.c * act("translate", p.x, g).values
    if isinstance(p, Regular):
        return convolve(p.g, g).values
    if isinstance(p, PureFrequency):
        ghat = complex(dtft(g, p.x.reshape(1, d) if d > 1 else p.x)[0])
        phase = np.exp(2j * np.pi * sum(p.x[k] * m for k, m in enumerate(grid.mesh())))
        return p.c * ghat * phase
    if isinstance(p, Comb):
        _require_decay(g, float(np.max(np.linalg.norm(p.a.entries, axis=0))), "comb")
        # every lattice point whose translate of g can reach the window
        box = [(lo - hi, hi - lo) for lo, hi in grid.window]
        pts = _comb_points(p, box)
        mesh = None
        out = np.zeros(grid.shape, dtype=complex)
        for q in pts:
            w = np.exp(2j * np.pi * float(q @ p.omega))
            k = [(qk - t0) / h - (0 - t0) / h for qk, t0, h in zip(q, grid.origin, grid.spacing)]
            if all(abs(kk - round(kk)) < 1e-9 for kk in k):
                out += w * _shift_values(g.values, [int(round(kk)) for kk in k])[0]
            elif g.generator is not None:
                mesh = grid.mesh() if mesh is None else mesh
                out += w * g.generator(*(m - q[j] for j, m in enumerate(mesh)))
            else:
                raise BadParams("comb points off the grid need a test function with a generator")
        return p.c * out
    if isinstance(p, Chirp):
        _check_phase(p, g)
        _require_decay(g, 1.0, "chirp")
        k = SampledFunction.from_generator(grid, p.kernel)
        return convolve(k, g).values
    if isinstance(p, FourierImage) and isinstance(p.inner, Chirp):
        # (F ch * g)(t) = ch(E_-t F(g(-.))): a discrete Fourier sum of ch . F(g(-.))
        ch = p.inner
        G = ft_onto(act("flip", None, g), grid)
        _check_phase(ch, G)
        _require_decay(G, 1.0, "chirp")
        kg = SampledFunction(grid, ch.kernel(*grid.mesh()) * G.values)
        return ft_onto(kg, grid).values
    return _conv_direct(p, g, grid.points()).reshape(grid.shape)


def _mul(p: Component, g: SampledFunction) -> tuple:
    d = g.grid.dim
    if isinstance(p, Atom):
        return (Atom(p.x, p.c * complex(g.at(p.x.reshape(1, d))[0])),)
    if isinstance(p, Regular):
        return (Regular(p.g * g),)
    if isinstance(p, PureFrequency):
        e = np.exp(2j * np.pi * sum(p.x[k] * m for k, m in enumerate(g.grid.mesh())))
        return (Regular(SampledFunction(g.grid, p.c * e * g.values)),)
    if isinstance(p, Comb):
        pts = _comb_points(p, g.grid.window)
        w = p.c * np.exp(2j * np.pi * (pts @ p.omega)) * g.at(pts) if len(pts) else []
        return tuple(Atom(q, c) for q, c in zip(pts, w))
    if isinstance(p, Chirp):
        _check_phase(p, g)
        return (Regular(SampledFunction(g.grid, p.kernel(*g.grid.mesh()) * g.values)),)
    return (Multiplied(p, g),)


def dist_combine(sigma: MildDistribution, g: SampledFunction, kind: str = "conv"):
    """conv: the function (sigma * g)(t) = sigma(T_t g(-.)) on g's grid.
    mul: the distribution (sigma . g)(f) = sigma(g f).
    """
    if kind == "conv":
        out = np.zeros(g.grid.shape, dtype=complex)
        for p in sigma.components:
            out = out + _conv(p, g)
        return SampledFunction(g.grid, out, f"{sigma.label}*{g.label}")
    if kind == "mul":
        parts: tuple = ()
        for p in sigma.components:
            parts += _mul(p, g)
        return MildDistribution(parts, f"{sigma.label}.{g.label}")
    raise BadParams(f"kind must be conv or mul, got {kind!r}")


def conv_direct(sigma: MildDistribution, g: SampledFunction, points=None) -> np.ndarray:
    """Point-by-point sigma(T_t g(-.)), default on the central half-window; slow, an independent check."""
    if points is None:
        pts = g.grid.points()
        keep = np.all([np.abs(pts[:, k]) <= g.grid.radius / 2 for k in range(g.grid.dim)], axis=0)
        points = pts[keep]
    pts = np.asarray(points, dtype=float).reshape(-1, g.grid.dim)
    return sum((_conv_direct(p, g, pts) for p in sigma.components), np.zeros(len(pts), dtype=complex))


def exchange_residuals(sigma: MildDistribution, g: SampledFunction, battery: Sequence[SampledFunction]) -> tuple[float, float]:
    """Battery gaps of F(s * g) = F(s) . g^ and F(s . g) = F(s) * g^."""
    ghat = ft_onto(g, g.grid)
    lhs1 = regular(ft_onto(dist_combine(sigma, g, "conv"), g.grid))
    rhs1 = dist_combine(dist_ft(sigma), ghat, "mul")
    lhs2 = dist_ft(dist_combine(sigma, g, "mul"))
    rhs2 = regular(dist_combine(dist_ft(sigma), ghat, "conv"))
    return wstar_gap(lhs1, rhs1, battery), wstar_gap(lhs2, rhs2, battery)


PAIRING_KINDS = (
    ("translate", [0.5]),
    ("modulate", [0.25]),
    ("flip", None),
    ("conjugate", None),
    ("matrix_dilate", [[2.0]]),
    ("fourier", None),
)


def standard_components(grid) -> dict[str, MildDistribution]:
    """One distribution per component type (1D), sized for the phase rule on ``grid``."""
    g = sample_named("gaussian_mixture", [1.0, 0.5, 1.2, -0.5, -1.0, 0.8], grid)
    # alpha = 1/8 keeps the chirp resolved after dilation by 2 on MILD_GRID
    ch = MildDistribution((Chirp([[0.125]], [0.25], [0.1], 0.7 - 0.2j),), "chirp")
    return {
        "atom": delta([0.75], 1.5 - 0.5j),
        "pure_frequency": pure_frequency([0.25], 0.5 + 1j),
        "comb": shah([[1.0]], y=[0.25], omega=[0.125], c=0.8),
        "comb_2": shah([[2.0]]),
        "chirp": ch,
        "chirp_ft": dist_ft(ch),
        "regular": regular(g),
        "product": dist_combine(delta([0.5]) + regular(g), sample_named("gaussian", [0.5], grid), "mul"),
    }


def pairing_sweep(components: dict, battery: Sequence[SampledFunction], kinds=PAIRING_KINDS):
    """Pairing residuals of every operator on every component over the battery.

    Returns {(component, kind): max residual} and the (component, kind, index) cases
    whose test function fails a decay precondition (TailTooFat) and is skipped.
    """
    table, skipped = {}, []
    for name, sigma in components.items():
        for kind, params in kinds:
            worst = 0.0
            for i, f in enumerate(battery):
                try:
                    worst = max(worst, pairing_residual(kind, params, sigma, f))
                except TailTooFat:
                    skipped.append((name, kind, i))
            table[(name, kind)] = worst
    return table, skipped


WSTAR_SEQUENCES = ("dilated_gaussian", "shifted_delta", "truncated_comb")


def wstar_sequence(name: str, grid, steps: int = 4) -> tuple[list[MildDistribution], MildDistribution]:
    """Designated weak-* convergent sequences and their limits.

    dilated_gaussian: rho^-d g0(./rho), rho = 2^-1 .. 2^-steps, towards delta_0.
    shifted_delta: delta_{1/n}, n = 1, 2, 4, ..., towards delta_0.
    truncated_comb: Shah_I keeping |k| <= n, n = 0 .. steps-1, towards Shah_I.
    """
    d = grid.dim
    zero = np.zeros(d)
    if name == "dilated_gaussian":
        g0 = sample_named("gaussian", [], grid)
        seq = [regular(act("stretch", [2.0**-j], g0)) for j in range(1, steps + 1)]
        return seq, delta(zero)
    if name == "shifted_delta":
        return [delta(np.full(d, 2.0**-j)) for j in range(steps)], delta(zero)
    if name == "truncated_comb":
        return [shah(np.eye(d), kmax=j) for j in range(steps)], shah(np.eye(d))
    raise BadParams(f"unknown sequence {name!r}")


def wstar_gaps(name: str, battery: Sequence[SampledFunction], steps: int = 4) -> list[float]:
    """Battery gaps between each member of a designated sequence and its limit."""
    seq, limit = wstar_sequence(name, battery[0].grid, steps)
    return [wstar_gap(s, limit, battery) for s in seq]


__all__ = [
    "MILD_GRID",
    "DILATION_GRID",
    "PAIRING_KINDS",
    "standard_components",
    "pairing_sweep",
    "wstar_sequence",
    "wstar_gaps",
    "Atom",
    "Comb",
    "PureFrequency",
    "Chirp",
    "Regular",
    "FourierImage",
    "Multiplied",
    "MildDistribution",
    "delta",
    "shah",
    "pure_frequency",
    "chirp",
    "regular",
    "from_measure",
    "dist_apply",
    "dist_ft",
    "dist_act",
    "dist_combine",
    "adjoint_apply",
    "pairing_residual",
    "conv_direct",
    "exchange_residuals",
    "wstar_gap",
    "action_bound",
]
