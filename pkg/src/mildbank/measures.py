"""Bounded measures represented as finitely many atoms plus an optional density."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bupu import Bupu
from .errors import BadParams, GridMismatch
from .grid import Grid, LatticeMatrix, SampledFunction, _as_lattice, act, convolve, integrate, norms

_MERGE_DIGITS = 12


@dataclass(frozen=True, eq=False)
class BoundedMeasure:
    """mu(f) = sum_k c_k f(x_k) + int g f, atoms at pairwise distinct positions."""

    positions: np.ndarray  # (K, d)
    weights: np.ndarray  # (K,)
    density: SampledFunction | None = None
    dim: int = 1
    label: str = field(default="", compare=False)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).reshape(-1, self.dim)
        w = np.asarray(self.weights, dtype=complex).reshape(-1)
        if len(pos) != len(w):
            raise BadParams("one weight per atom")
        if self.density is not None and self.density.grid.dim != self.dim:
            raise BadParams("density dimension does not match")
        # merge coincident atoms, dropping exact zeros
        keys: dict[tuple, int] = {}
        mp, mw = [], []
        for p, c in zip(pos, w):
            key = tuple(np.round(p, _MERGE_DIGITS) + 0.0)
            if key in keys:
                mw[keys[key]] += c
            else:
                keys[key] = len(mp)
                mp.append(p)
                mw.append(c)
        keep = [i for i, c in enumerate(mw) if c != 0]
        mp = np.array([mp[i] for i in keep], dtype=float).reshape(-1, self.dim)
        mw = np.array([mw[i] for i in keep], dtype=complex)
        mp.flags.writeable = False
        mw.flags.writeable = False
        object.__setattr__(self, "positions", mp)
        object.__setattr__(self, "weights", mw)

    @property
    def atoms(self) -> list[tuple[np.ndarray, complex]]:
        return list(zip(self.positions, self.weights))

    def __add__(self, other: "BoundedMeasure") -> "BoundedMeasure":
        if other.dim != self.dim:
            raise BadParams("dimension mismatch")
        dens = self.density
        if other.density is not None:
            dens = other.density if dens is None else dens + other.density
        return BoundedMeasure(
            np.concatenate([self.positions, other.positions]),
            np.concatenate([self.weights, other.weights]),
            dens,
            self.dim,
        )

    def __mul__(self, c) -> "BoundedMeasure":
        c = complex(c)
        return BoundedMeasure(self.positions, self.weights * c, None if self.density is None else self.density * c, self.dim)

    __rmul__ = __mul__


def dirac(x, c: complex = 1.0) -> BoundedMeasure:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return BoundedMeasure(x.reshape(1, -1), [c], None, dim=x.size)


def atoms(points: Sequence, weights: Sequence, density: SampledFunction | None = None) -> BoundedMeasure:
    pts = np.asarray(points, dtype=float)
    d = density.grid.dim if density is not None else (1 if pts.ndim <= 1 else pts.shape[1])
    return BoundedMeasure(pts.reshape(-1, d), weights, density, d)


def embed(g: SampledFunction) -> BoundedMeasure:
    """The measure mu_g: f -> int f g."""
    return BoundedMeasure(np.zeros((0, g.grid.dim)), [], g, g.grid.dim)


def measure_apply(mu: BoundedMeasure, f: SampledFunction) -> complex:
    """sum_k c_k f(x_k) + int g f."""
    total = 0j
    if len(mu.weights):
        total += complex(np.sum(mu.weights * f.at(mu.positions)))
    if mu.density is not None:
        if mu.density.grid != f.grid:
            raise GridMismatch("density and test function live on different grids")
        total += integrate(mu.density * f)
    return total


def measure_norm(mu: BoundedMeasure) -> float:
    """sum |c_k| + ||g||_1, the functional norm for atoms plus a continuous density."""
    out = float(np.sum(np.abs(mu.weights)))
    if mu.density is not None:
        out += norms(mu.density).l1
    return out


def measure_act(kind: str, params, mu: BoundedMeasure) -> BoundedMeasure:
    """conjugate, flip, translate [y], modulate [w], matrix_dilate [A], mul_by [h]."""
    d = mu.dim
    pos, w, dens = mu.positions, mu.weights, mu.density
    if kind == "conjugate":
        new = (pos, np.conj(w))
    elif kind == "flip":
        new = (-pos, w)
    elif kind == "translate":
        y = np.asarray(params, dtype=float).reshape(d)
        new = (pos + y, w)
    elif kind == "modulate":
        om = np.asarray(params, dtype=float).reshape(d)
        new = (pos, w * np.exp(2j * np.pi * (pos @ om)))
    elif kind == "matrix_dilate":
        # (alpha_A mu)(f) = mu(alpha_{A^-1} f): atoms move to A^-1 x with weight |det A|^(-1/2)
        a = _as_lattice(params, d)
        new = (pos @ a.inverse.T, w * abs(a.det) ** -0.5)
    elif kind == "mul_by":
        h = params[0] if isinstance(params, (list, tuple)) else params
        if not isinstance(h, SampledFunction):
            raise BadParams("mul_by needs a sampled function")
        new = (pos, w * h.at(pos) if len(w) else w)
        if dens is not None:
            if h.grid != dens.grid:
                raise GridMismatch("multiplier and density live on different grids")
            dens = dens * h
        return BoundedMeasure(new[0], new[1], dens, d)
    else:
        raise BadParams(f"unknown measure action {kind!r}")
    if dens is not None:
        dens = act(kind, params, dens)
    return BoundedMeasure(new[0], new[1], dens, d)


def measure_convolve(mu: BoundedMeasure, f: SampledFunction) -> SampledFunction:
    """(mu * f)(x) = mu(T_x f^flip) = sum_k c_k f(x - x_k) + (g * f)(x) at every grid node."""
    out = np.zeros(f.grid.shape, dtype=complex)
    for x, c in zip(mu.positions, mu.weights):
        out = out + c * act("translate", x, f).values
    if mu.density is not None:
        if mu.density.grid != f.grid:
            raise GridMismatch("density and function live on different grids")
        out = out + convolve(mu.density, f).values
    return SampledFunction(f.grid, out, f"mu*{f.label}")


def measure_bupu_decompose(mu: BoundedMeasure, psi: Bupu) -> list[tuple[tuple[int, ...], BoundedMeasure]]:
    """Nonzero pieces mu * psi_n, keyed by lattice index n."""
    if mu.density is not None and mu.density.grid != psi.grid:
        raise GridMismatch("density and partition live on different grids")
    pieces = []
    for n in psi.lattice():
        w = mu.weights * psi.evaluate(n, mu.positions) if len(mu.weights) else mu.weights
        dens = None
        if mu.density is not None:
            m = psi.member(n)
            if np.any(m * np.abs(mu.density.values) > 0):
                dens = mu.density * SampledFunction(psi.grid, m)
        if dens is None and not np.any(w != 0):
            continue
        pieces.append((n, BoundedMeasure(mu.positions, w, dens, mu.dim)))
    return pieces


def random_measure(grid: Grid, rng: np.random.Generator, atoms_count: int = 3) -> BoundedMeasure:
    """Seeded atom-plus-density measure with grid-commensurate atoms."""
    from .corpus import random_mixture

    h = grid.spacing[0]
    pos = np.round(rng.uniform(-4, 4, size=(atoms_count, grid.dim)) / h) * h
    w = rng.normal(size=atoms_count) + 1j * rng.normal(size=atoms_count)
    return BoundedMeasure(pos, w, random_mixture(grid, rng), grid.dim)
