"""Translation-invariant systems (impulse response vs transfer function) and kernel operators."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadKind, BadParams, GridMismatch, PathDisagreement, TailTooFat
from .feichtinger import s0_norm, tensor
from .fourier import dtft, ft, ift, lattice_points
from .grid import Grid, SampledFunction, act, convolve, make_grid, sample_named
from .mild import (
    Atom,
    Chirp,
    Comb,
    FourierImage,
    MildDistribution,
    PureFrequency,
    Regular,
    _comb_points,
    _require_decay,
    chirp,
    dist_apply,
    dist_combine,
    dist_ft,
)

PATH_TOL = 1e-8
CHIRP_PATH_TOL = 1e-6
CHIRP_GRID = make_grid(h=1 / 64, n=1024)


@dataclass(frozen=True, eq=False)
class Tils:
    """The system f -> sigma * f, with its transfer function computed once."""

    impulse: MildDistribution
    _transfer: list = field(default_factory=list, repr=False)

    @property
    def transfer(self) -> MildDistribution:
        if not self._transfer:
            self._transfer.append(dist_ft(self.impulse))
        return self._transfer[0]

    @property
    def has_chirp(self) -> bool:
        return any(isinstance(p, Chirp) for p in self.impulse.components)


def _smooth_step(u):
    # C-infinity transition from 1 (u <= 0) to 0 (u >= 1)
    u = np.clip(u, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(u < 1, np.exp(-1.0 / np.maximum(1 - u, 1e-300)), 0.0)
        b = np.where(u > 0, np.exp(-1.0 / np.maximum(u, 1e-300)), 0.0)
    return a / (a + b)


def chirp_transfer(ch: Chirp, s: np.ndarray, plateau: float, roll: float = 8.0) -> np.ndarray:
    """Measured spectrum of a 1D chirp at frequencies ``s``.

    The chirp is multiplied by a smooth plateau (1 on |t - z| <= plateau, 0 beyond
    plateau + roll) and transformed by a resolved Riemann sum. Accurate where the
    stationary point (s - eta)/alpha sits well inside the plateau.
    """
    if ch.z.size != 1:
        raise BadParams("chirp transfer is measured in one dimension")
    alpha = ch.alpha
    reach = plateau + roll
    top = max(alpha * reach + abs(float(ch.eta[0])), float(np.max(np.abs(s))))
    h = 1.0 / (4.0 * top)
    n = 2 * int(np.ceil(reach / h))
    t = float(ch.z[0]) + (np.arange(n) - n // 2) * h
    w = _smooth_step((np.abs(t - ch.z[0]) - plateau) / roll)
    vals = ch.kernel(t) * w
    # h sum_j v_j exp(-2 pi i s t_j), in blocks to bound memory
    s = np.asarray(s, dtype=float).ravel()
    out = np.empty(s.size, dtype=complex)
    for i in range(0, s.size, 256):
        blk = s[i : i + 256]
        out[i : i + 256] = h * (np.exp(-2j * np.pi * np.outer(blk, t)) @ vals)
    return out


def _spectral_reach(F: SampledFunction) -> float:
    a = np.abs(F.values)
    big = np.nonzero(a > 1e-16 * max(float(a.max()), 1e-300))[0]
    s = F.grid.axis(0)
    return float(np.max(np.abs(s[big]))) if len(big) else 0.0


def _freq_path(sys: Tils, f: SampledFunction) -> SampledFunction:
    grid = f.grid
    d = grid.dim
    F = ft(f)
    mult = np.zeros(F.grid.shape, dtype=complex)
    lines = np.zeros(grid.shape, dtype=complex)
    smesh, tmesh = F.grid.mesh(), grid.mesh()
    for p in sys.transfer.components:
        if isinstance(p, Regular):
            if p.g.generator is None:
                raise BadParams("regular transfer needs an off-grid evaluator")
            mult = mult + p.g.generator(*smesh)
        elif isinstance(p, PureFrequency):
            mult = mult + p.c * np.exp(2j * np.pi * sum(p.x[k] * smesh[k] for k in range(d)))
        elif isinstance(p, (Atom, Comb)):
            # sigma^ . f^ is a sum of point masses, whose inverse transforms are pure frequencies
            if isinstance(p, Atom):
                pts, wts = p.x.reshape(1, d), np.array([p.c])
            else:
                _require_decay(F, float(np.max(np.linalg.norm(p.a.entries, axis=0))), "comb transfer")
                pts = _comb_points(p, F.grid.window)
                wts = p.c * np.exp(2j * np.pi * (pts @ p.omega)) if len(pts) else np.zeros(0)
            for q, c in zip(pts, wts):
                fq = complex(dtft(f, q.reshape(1, d) if d > 1 else q)[0])
                lines = lines + c * fq * np.exp(2j * np.pi * sum(q[k] * tmesh[k] for k in range(d)))
        elif isinstance(p, FourierImage) and isinstance(p.inner, Chirp):
            # F(ch) acts as the function ch^(s); its samples are measured, not asserted
            ch = p.inner
            plateau = (_spectral_reach(F) + abs(float(ch.eta[0]))) / ch.alpha + 4.0
            mult = mult + chirp_transfer(ch, F.grid.axis(0), plateau).reshape(F.grid.shape)
        else:
            raise BadKind(f"no transfer-side rule for {type(p).__name__}")
    out = ift(F.with_values(mult * F.values), grid).values + lines
    return SampledFunction(grid, out, f"T({f.label})")


def _central(grid: Grid) -> np.ndarray:
    m = np.ones(grid.shape, dtype=bool)
    for k, x in enumerate(grid.mesh()):
        m &= np.abs(x) <= grid.radius / 2
    return m


def tils_apply(sys: Tils, f: SampledFunction, path: str = "time", tol: float | None = None) -> SampledFunction:
    """T f by the impulse response (time), the transfer function (freq) or both (checked).

    ``checked`` raises PathDisagreement when the paths differ by more than ``tol`` on
    the central half-window (default 1e-8, 1e-6 for chirp systems).
    """
    if path == "time":
        return dist_combine(sys.impulse, f, "conv")
    if path == "freq":
        return _freq_path(sys, f)
    if path == "checked":
        a, b = dist_combine(sys.impulse, f, "conv"), _freq_path(sys, f)
        tol = (CHIRP_PATH_TOL if sys.has_chirp else PATH_TOL) if tol is None else tol
        r = path_residual(a, b)
        if r > tol:
            raise PathDisagreement(f"time and frequency paths differ by {r:.3g} > {tol:g}", r)
        return a
    raise BadParams(f"path must be time, freq or checked, got {path!r}")


def path_residual(a: SampledFunction, b: SampledFunction) -> float:
    m = _central(a.grid)
    return float(np.max(np.abs(a.values[m] - b.values[m])))


def commutation_residuals(sys: Tils, f: SampledFunction, x, g: SampledFunction) -> tuple[float, float]:
    """Central-window gaps of T(T_x f) = T_x T f and T(g * f) = g * T f (time path)."""
    tf = tils_apply(sys, f)
    r1 = path_residual(tils_apply(sys, act("translate", x, f)), act("translate", x, tf))
    r2 = path_residual(tils_apply(sys, convolve(g, f)), convolve(g, tf))
    return r1, r2


def norm_witness(sys: Tils, corpus) -> float:
    """max over the corpus of sup |T f| / ||f||_S0 (functions outside the plane skipped)."""
    best = 0.0
    for f in corpus:
        try:
            n = s0_norm(f)
        except TailTooFat:
            continue
        best = max(best, float(np.max(np.abs(tils_apply(sys, f).values))) / n)
    return best


def regularized_chirp_limit(f: SampledFunction, widths=(1.0, 2.0, 3.0, 4.0), alpha: float = 1.0):
    """Chirp convolution of a non-decaying f through S0 approximants.

    Step 1: f_r = f . g0(./r). Step 2: ch * f_r on the grid. Step 3: successive
    central-window differences, which shrink as r grows when the limit exists.
    """
    g0 = sample_named("gaussian", [], f.grid)
    sys = Tils(chirp(alpha))
    outs = [tils_apply(sys, f * act("stretch", [r], g0) * r) for r in widths]
    m = _central(f.grid)
    diffs = [float(np.max(np.abs(b.values[m] - a.values[m]))) for a, b in zip(outs, outs[1:])]
    return outs, diffs


# ---------------------------------------------------------------------------
# kernel operators


@dataclass(frozen=True, eq=False)
class KernelOperator:
    """K(x, y) on grid x grid; T u(x) = int K(x, y) u(y) dy."""

    K: SampledFunction
    grid: Grid
    label: str = ""

    def __post_init__(self):
        g = self.grid
        if g.dim != 1 or self.K.grid != Grid(g.origin * 2, g.spacing * 2, g.count * 2):
            raise GridMismatch("kernel grid must be the square of a 1D grid")

    def row(self, i: int) -> SampledFunction:
        gen = None
        if self.K.generator is not None:
            x = self.grid.axis(0)[i]
            gk = self.K.generator
            gen = lambda y: gk(np.full(np.shape(y), x), y)  # noqa: E731
        return SampledFunction(self.grid, self.K.values[i], "row", gen)


def _square(grid: Grid) -> Grid:
    return Grid(grid.origin * 2, grid.spacing * 2, grid.count * 2)


def kernel_build(kind: str, grid: Grid, f: SampledFunction | None = None, h: SampledFunction | None = None) -> KernelOperator:
    """rank_one (K = f(x) h(y)), ft_kernel (e^{-2 pi i x y}), ift_kernel (e^{2 pi i x y}) or zero."""
    if grid.dim != 1:
        raise BadParams("kernels are built over a 1D grid")
    sq = _square(grid)
    if kind == "rank_one":
        if f is None or h is None:
            raise BadParams("rank_one needs f and h")
        if f.grid != grid or h.grid != grid:
            raise GridMismatch("rank_one factors live on another grid")
        return KernelOperator(tensor(f, h), grid, "rank_one")
    if kind in ("ft_kernel", "ift_kernel"):
        sign = -1 if kind == "ft_kernel" else 1
        gen = lambda x, y: np.exp(sign * 2j * np.pi * x * y)  # noqa: E731
        return KernelOperator(SampledFunction.from_generator(sq, gen, kind), grid, kind)
    if kind == "zero":
        return KernelOperator(SampledFunction.zeros(sq), grid, "zero")
    raise BadKind(f"unknown kernel kind {kind!r}")


def kernel_apply(op: KernelOperator, u) -> SampledFunction:
    """Function: h sum_y K(x, y) u(y). Distribution: x -> sigma(K(x, .))."""
    if isinstance(u, SampledFunction):
        if u.grid != op.grid:
            raise GridMismatch("function and kernel live on different grids")
        return SampledFunction(op.grid, op.grid.cell * (op.K.values @ u.values), f"K({u.label})")
    if isinstance(u, MildDistribution):
        out = np.array([dist_apply(u, op.row(i)) for i in range(op.grid.count[0])])
        return SampledFunction(op.grid, out, f"K({u.label})")
    raise BadParams("kernel_apply takes a sampled function or a mild distribution")


def kernel_compose(k2: KernelOperator, k1: KernelOperator) -> KernelOperator:
    """K(x, z) = int K2(x, y) K1(y, z) dy."""
    if k2.grid != k1.grid:
        raise GridMismatch("kernels live on different grids")
    vals = k2.grid.cell * (k2.K.values @ k1.K.values)
    return KernelOperator(SampledFunction(k1.K.grid, vals, f"{k2.label}o{k1.label}"), k1.grid, f"{k2.label}o{k1.label}")


def wstar_to_norm(op: KernelOperator, name: str, steps: int = 3) -> list[float]:
    """sup |T sigma_n - T sigma| along a designated weak-* convergent sequence.

    A spot check of the regularizing property on one sequence, not a certificate.
    """
    from .mild import wstar_sequence

    seq, limit = wstar_sequence(name, op.grid, steps)
    target = kernel_apply(op, limit).values
    return [float(np.max(np.abs(kernel_apply(op, s).values - target))) for s in seq]


def diagonal_delta(F: SampledFunction) -> complex:
    """delta_diag(F) = int F(x, x) dx on a square grid."""
    g = F.grid
    if g.dim != 2 or g.count[0] != g.count[1] or g.spacing[0] != g.spacing[1] or g.origin[0] != g.origin[1]:
        raise GridMismatch("the diagonal needs a square grid")
    return complex(g.spacing[0] * np.trace(F.values))


__all__ = [
    "Tils",
    "tils_apply",
    "path_residual",
    "commutation_residuals",
    "norm_witness",
    "chirp_transfer",
    "regularized_chirp_limit",
    "KernelOperator",
    "kernel_build",
    "kernel_apply",
    "kernel_compose",
    "diagonal_delta",
    "wstar_to_norm",
    "CHIRP_GRID",
]
