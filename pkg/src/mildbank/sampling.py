"""Band-limited functions, reconstruction windows and sampling series in one dimension."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadGrid, BadParams, NoTransitionRoom, NyquistViolation, TailTooFat
from .fourier import ft, ift
from .grid import Grid, SampledFunction, make_grid

NYQUIST_TOL = 1e-10


@dataclass(frozen=True)
class BandSpec:
    """Passband [-b, b] and sampling rate beta (sample spacing alpha = 1/beta)."""

    b: float
    beta: float = 1.0

    def __post_init__(self):
        if self.b <= 0 or self.beta <= 0:
            raise BadParams("band edge and sampling rate must be positive")
        if self.b > self.beta / 2 + 1e-15:
            raise BadParams(f"passband [-{self.b}, {self.b}] does not fit below beta/2 = {self.beta / 2}")

    @property
    def alpha(self) -> float:
        return 1.0 / self.beta


def _check_1d(grid: Grid):
    if grid.dim != 1:
        raise BadGrid("sampling is one-dimensional")


def bandlimit(f: SampledFunction, spec: BandSpec) -> SampledFunction:
    """Inverse transform of ft(f) restricted to [-b, b]."""
    _check_1d(f.grid)
    F = ft(f)
    s = F.grid.axis(0)
    if spec.b > -F.grid.origin[0]:
        raise BadGrid("passband exceeds the Nyquist band of the grid")
    kept = np.where(np.abs(s) <= spec.b + 1e-12, F.values, 0.0)
    return SampledFunction(f.grid, ift(F.with_values(kept), f.grid).values, f"B({f.label})")


def smoothstep(u, r: int):
    """S_r(u) = u^r sum_{k<r} C(r-1+k, k) (1-u)^k: 0 at u=0, 1 at u=1, r-1 matching derivatives."""
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    return u**r * sum(math.comb(r - 1 + k, k) * (1 - u) ** k for k in range(r))


def transition_profile(s, spec: BandSpec, profile: str = "raised_cosine", order: int = 2) -> np.ndarray:
    """1 on |s| <= b, smooth roll-off to 0 at |s| = beta/2, 0 beyond."""
    u = (np.abs(np.asarray(s, dtype=float)) - spec.b) / (spec.beta / 2 - spec.b)
    if profile == "raised_cosine":
        out = 0.5 * (1 + np.cos(np.pi * np.clip(u, 0.0, 1.0)))
    elif profile == "smoothstep":
        if order < 1:
            raise BadParams("smoothstep order must be >= 1")
        out = 1.0 - smoothstep(u, order)
    else:
        raise BadParams(f"unknown transition profile {profile!r}")
    return np.where(u <= 0, 1.0, np.where(u >= 1, 0.0, out))


@dataclass(frozen=True)
class ReconWindow:
    g: SampledFunction
    spectrum: SampledFunction
    spec: BandSpec
    profile: str
    order: int
    decay_constant: float  # max |g(t)| (1 + |t|)^order over the inner half-window
    decay_exponent: float  # least-squares slope of log envelope against log |t|


def _decay_fit(g: SampledFunction, order: int) -> tuple[float, float]:
    t = g.grid.axis(0)
    a = np.abs(g.values)
    inner = np.abs(t) <= g.grid.radius / 2
    const = float(np.max(a[inner] * (1 + np.abs(t[inner])) ** order))
    # envelope: max of |g| over unit cells, fitted for R/8 <= |t| <= R/2
    cells = np.arange(max(2, int(g.grid.radius / 8)), int(g.grid.radius / 2))
    env = []
    for c in cells:
        m = (np.abs(t) >= c) & (np.abs(t) < c + 1)
        env.append(a[m].max())
    env = np.asarray(env)
    ok = env > 1e-300
    if ok.sum() < 2:
        return const, float("inf")
    slope = np.polyfit(np.log(cells[ok] + 0.5), np.log(env[ok]), 1)[0]
    return const, float(-slope)


def design_window(spec: BandSpec, profile: str = "raised_cosine", order: int = 2, grid: Grid | None = None) -> ReconWindow:
    """g with g^ = 1 on the passband, a smooth transition and 0 from beta/2 on."""
    if spec.b >= spec.beta / 2:
        raise NoTransitionRoom(f"b = {spec.b} leaves no transition band below beta/2 = {spec.beta / 2}")
    grid = make_grid() if grid is None else grid
    _check_1d(grid)
    fg = grid.dual()
    if spec.beta / 2 > -fg.origin[0]:
        raise BadGrid("beta/2 exceeds the Nyquist band of the grid")
    spec_vals = transition_profile(fg.axis(0), spec, profile, order)
    spectrum = SampledFunction(fg, spec_vals, f"{profile} window spectrum")
    g = ift(spectrum, grid)
    # real and even by construction; drop round-off imaginary parts
    g = SampledFunction(grid, g.values.real, f"{profile} window")
    c, e = _decay_fit(g, order)
    return ReconWindow(g, spectrum, spec, profile, order, c, e)


def out_of_band_mass(f: SampledFunction, spec: BandSpec) -> float:
    """Riemann L1 mass of ft(f) outside the open band (-beta/2, beta/2)."""
    F = ft(f)
    s = F.grid.axis(0)
    outside = np.abs(s) >= spec.beta / 2 - 1e-12
    return float(F.grid.cell * np.sum(np.abs(F.values[outside])))


def take_samples(f: SampledFunction, alpha: float, spec: BandSpec | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Samples (alpha k, f(alpha k)) at the lattice nodes inside the window.

    With ``spec`` given, spectra reaching beyond beta/2 raise NyquistViolation.
    """
    _check_1d(f.grid)
    if spec is not None:
        mass = out_of_band_mass(f, spec)
        if mass > NYQUIST_TOL:
            raise NyquistViolation(f"spectrum mass {mass:.3g} outside (-beta/2, beta/2) with beta = {spec.beta:g}")
    h = f.grid.spacing[0]
    step = alpha / h
    if abs(step - round(step)) > 1e-9:
        raise BadParams("sample spacing alpha must be a multiple of the grid spacing")
    lo, hi = f.grid.window[0]
    t = alpha * np.arange(math.ceil(lo / alpha - 1e-9), math.ceil(hi / alpha - 1e-9))
    return t, f.at(t)


def reconstruct(samples, alpha: float, kernel="sinc", eval_grid: Grid | None = None, radius: float | None = None) -> SampledFunction:
    """alpha sum_k f(alpha k) K(t - alpha k) on ``eval_grid``.

    kernel="sinc" (requires alpha = 1) uses the closed form sinc; a ReconWindow uses its
    sampled g. With ``radius`` only samples with |alpha k| <= radius enter the sum. The
    full sum treats g as the N-periodic function its inverse DFT defines.
    """
    t_k, v = (np.asarray(x) for x in samples)
    if radius is not None:
        keep = np.abs(t_k) <= radius + 1e-12
        t_k, v = t_k[keep], v[keep]
    if kernel == "sinc":
        if abs(alpha - 1.0) > 1e-12:
            raise BadParams("the sinc series needs alpha = 1")
        if eval_grid is None:
            raise BadParams("sinc reconstruction needs an evaluation grid")
        _check_1d(eval_grid)
        t = eval_grid.axis(0)
        out = np.sinc(t[:, None] - t_k[None, :]) @ v
        return SampledFunction(eval_grid, alpha * out, "sinc series")
    if not isinstance(kernel, ReconWindow):
        raise BadParams("kernel must be 'sinc' or a ReconWindow")
    if alpha * kernel.spec.beta > 1 + 1e-12:
        raise NyquistViolation(f"sample spacing {alpha:g} is coarser than 1/beta = {1 / kernel.spec.beta:g}")
    g = kernel.g
    grid = g.grid if eval_grid is None else eval_grid
    if grid != g.grid:
        raise BadGrid("windowed reconstruction evaluates on the window's grid")
    h, t0, n = grid.spacing[0], grid.origin[0], grid.count[0]
    j = np.arange(n)
    q = (t_k - t0) / h
    if np.any(np.abs(q - np.rint(q)) > 1e-9):
        raise BadParams("sample positions must be grid nodes")
    zero = int(round(-t0 / h))
    # g(t_j - t_k) sits at index j - k_idx + zero, read periodically
    idx = (j[:, None] - np.rint(q).astype(int)[None, :] + zero) % n
    out = g.values[idx] @ v
    return SampledFunction(grid, alpha * out, "windowed series")


def central_error(recon: SampledFunction, ref: SampledFunction) -> float:
    """max |recon - ref| over the central half-window."""
    t = recon.grid.axis(0)
    m = np.abs(t) <= recon.grid.radius / 2
    return float(np.max(np.abs(recon.values[m] - ref.values[m])))


def alias_residual(f: SampledFunction, window: ReconWindow) -> float:
    """max |(sum_m f^(. - m beta)) g^ - f^| on the frequency grid."""
    F = ft(f)
    if F.grid != window.spectrum.grid:
        raise BadGrid("function and window live on different grids")
    ds = F.grid.spacing[0]
    shift = window.spec.beta / ds
    if abs(shift - round(shift)) > 1e-9:
        raise BadParams("beta must be a multiple of the frequency spacing")
    shift = int(round(shift))
    n = F.grid.count[0]
    if n % shift:
        raise BadParams("beta must divide the frequency window")
    # samples of f^ are n-periodic, so one sweep of n / shift copies is the whole comb
    per = sum(np.roll(F.values, m * shift) for m in range(n // shift))
    return float(np.max(np.abs(per * window.spectrum.values - F.values)))


@dataclass(frozen=True)
class BandMembership:
    by_support: bool
    by_s0: bool


def band_membership(f: SampledFunction, spec: BandSpec, tol: float = 1e-12) -> BandMembership:
    """Membership in the band class via spectral support, and via S0 plus support."""
    from .feichtinger import s0_norm

    F = ft(f)
    s = F.grid.axis(0)
    scale = max(float(np.max(np.abs(F.values))), 1e-300)
    support_ok = bool(np.max(np.abs(F.values[np.abs(s) > spec.b + 1e-12]), initial=0.0) <= tol * scale)
    try:
        s0_norm(f)
        in_s0 = True
    except TailTooFat:
        in_s0 = False
    return BandMembership(support_ok, in_s0 and support_ok)


def bump_spectrum_function(grid: Grid, b: float, center: float = 0.0) -> SampledFunction:
    """f with f^(s) = exp(-1/(1 - (s/b)^2)) on |s| < b: smooth, band-limited, fast decaying."""
    fg = grid.dual()
    s = fg.axis(0) / b
    with np.errstate(divide="ignore", over="ignore"):
        spec = np.where(np.abs(s) < 1, np.exp(-1.0 / np.maximum(1 - s**2, 1e-300)), 0.0)
    f = ift(SampledFunction(fg, spec), grid)
    if center:
        from .grid import act

        f = act("translate", [center], f)
    return SampledFunction(grid, f.values, "bump")


__all__ = [
    "BandSpec",
    "ReconWindow",
    "bandlimit",
    "design_window",
    "transition_profile",
    "smoothstep",
    "take_samples",
    "reconstruct",
    "central_error",
    "alias_residual",
    "out_of_band_mass",
    "band_membership",
    "BandMembership",
    "bump_spectrum_function",
]
