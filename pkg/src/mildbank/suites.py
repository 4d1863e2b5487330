"""Named verification batteries: each returns a list of Check records."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import corpus
from .bupu import envelope
from .errors import TailTooFat
from .feichtinger import s0_norm, stft, tensor
from .fourier import ft, ft_onto, identity_residuals, poisson
from .grid import Grid, LatticeMatrix, SampledFunction, act, make_grid, norms, sample_named
from .measures import dirac, measure_bupu_decompose, measure_convolve, measure_norm, random_measure
from .wiener import default_bupu, wiener_norm

EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float
    anchor: str  # the identity or bound being verified

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "passed": self.passed,
            "anchor": self.anchor,
        }


@dataclass(frozen=True)
class SuiteConfig:
    grid: Grid
    seed: int = 0


def _over(x: float) -> float:
    # amount by which an inequality "x <= 0" is violated
    return max(0.0, float(x))


# ---------------------------------------------------------------------------


def suite_wiener(cfg: SuiteConfig) -> list[Check]:
    g = cfg.grid
    psi = default_bupu(g)
    fs = corpus.function_corpus(g, 30, cfg.seed)
    W = lambda f: wiener_norm(f, psi).norm  # noqa: E731
    wn = [W(f) for f in fs]
    solid = ideal = alg = mod = trans = sand = 0.0
    d = g.dim
    h = g.spacing[0]
    for i, f in enumerate(fs):
        v = f.values
        for part in (np.abs(v), v.real, v.imag, np.maximum(v.real, 0), np.maximum(-v.real, 0)):
            solid = max(solid, _over(W(f.with_values(part)) - wn[i]))
        k = fs[(i + 1) % len(fs)]
        hk = f * k
        ideal = max(ideal, _over(W(hk) - norms(k).sup * wn[i]))
        alg = max(alg, _over(W(hk) - W(k) * wn[i]))
        mod = max(mod, abs(W(act("modulate", [0.37] * d, f)) - wn[i]))
        x = [round(1.3 / h) * h] * d
        trans = max(trans, _over(W(act("translate", x, f)) / wn[i] - 4.0**d))
        fm = W(envelope(f, "maxfn"))
        sand = max(sand, _over(wn[i] - fm), _over(fm - 8.0**d * wn[i]))
    tent = abs(W(sample_named("tent", [], g)) - 1.5) if d == 1 else 0.0
    return [
        Check("tent_norm", tent, 1e-9, "Wiener norm of the tent is 3/2"),
        Check("solidity", solid, 1e-12, "|h| <= |f| implies ||h||_W <= ||f||_W"),
        Check("ideal_bound", ideal, 1e-12, "||h f||_W <= sup|h| ||f||_W"),
        Check("algebra_bound", alg, 1e-12, "||h f||_W <= ||h||_W ||f||_W"),
        Check("modulation_isometry", mod, 1e-12, "modulation leaves the Wiener norm invariant"),
        Check("translation_ratio", trans, 1e-12, "||T_x f||_W <= 4^d ||f||_W"),
        Check("maximal_sandwich", sand, 1e-12, "||f||_W <= ||f#||_W <= 8^d ||f||_W"),
    ]


def suite_measures(cfg: SuiteConfig) -> list[Check]:
    g = cfg.grid
    psi = default_bupu(g)
    rng = np.random.default_rng(cfg.seed)
    dec = 0.0
    for _ in range(10):
        mu = random_measure(g, rng)
        pieces = measure_bupu_decompose(mu, psi)
        dec = max(dec, abs(math.fsum(measure_norm(p) for _, p in pieces) - measure_norm(mu)))
    shift = 0.0
    h = g.spacing[0]
    for f in corpus.measure_battery(g, cfg.seed)[:8]:
        x = [17 * h] * g.dim
        a = measure_convolve(dirac(x), f).values
        shift = max(shift, float(np.max(np.abs(a - act("translate", x, f).values))))
    return [
        Check("bupu_decomposition_norm", dec, 1e-12, "||mu|| = sum_n ||mu psi_n||"),
        Check("dirac_convolution_shift", shift, EPS, "delta_x * f = T_x f"),
    ]


def suite_fourier(cfg: SuiteConfig) -> list[Check]:
    g = cfg.grid
    g0 = sample_named("gaussian", [], g)
    inv = float(np.max(np.abs(ft(g0).values - sample_named("gaussian", [], g.dual()).values)))
    worst = {"fundamental": 0.0, "convolution": 0.0, "parseval": 0.0, "inversion": 0.0}
    for f, k in corpus.mixture_pairs(g, 20, cfg.seed):
        r = identity_residuals(f, k)
        for key in worst:
            worst[key] = max(worst[key], getattr(r, key))
    anchors = {
        "fundamental": "int f k^ = int f^ k",
        "convolution": "(f * k)^ = f^ k^",
        "parseval": "<f^, conj k^> = int f k",
        "inversion": "inverse transform of f^ is f",
    }
    return [Check("gaussian_invariance", inv, 1e-9, "g0^ = g0")] + [
        Check(f"{k}_identity", v, 1e-8, anchors[k]) for k, v in worst.items()
    ]


def suite_poisson(cfg: SuiteConfig) -> list[Check]:
    g = cfg.grid
    eye = LatticeMatrix.identity(1)
    theta = max(poisson(sample_named("gaussian", [a], g), eye).residual for a in (0.5, 2.0, 3.0))
    rng = np.random.default_rng(cfg.seed)
    g0 = sample_named("gaussian", [], g)
    h, ds = g.spacing[0], 1.0 / (g.count[0] * g.spacing[0])
    shifted = 0.0
    for _ in range(5):
        x = rng.integers(-16, 17) * h
        w = rng.integers(-16, 17) * ds
        shifted = max(shifted, poisson(g0, eye, x=[x], omega=[w]).residual)
    g2 = make_grid(h=1 / 16, n=256)
    gg = tensor(sample_named("gaussian", [], g2), sample_named("gaussian", [], g2))
    partial = poisson(gg, LatticeMatrix.identity(2), m=1).residual
    return [
        Check("theta_identity", theta, 1e-12, "sum_k f(k) = sum_k f^(k) for e^{-pi a t^2}"),
        Check("shifted_poisson", shifted, 1e-10, "Poisson summation for E_w T_x g0"),
        Check("partial_poisson", partial, 1e-10, "int sum_k f(y, k) dy = sum_k f^(0, k)"),
    ]


# self-dual (N h^2 = 1): the sampled f and f^ share one lattice, so the Fourier isometry is exact
ISOMETRY_GRID = make_grid(h=1 / 16, n=256)


def suite_feichtinger(cfg: SuiteConfig, count: int = 6) -> list[Check]:
    g = ISOMETRY_GRID
    g0 = sample_named("gaussian", [], g)
    s0g = abs(s0_norm(g0) - math.sqrt(2))
    v = stft(g0, None, 4)
    v00 = abs(v.at([[0.0, 0.0]])[0] - 2**-0.5)
    tf = four = 0.0
    h = g.spacing[0]
    for f in corpus.smooth_corpus(g, count, cfg.seed):
        n = s0_norm(f, stride=1)
        shifted = act("modulate", [0.5], act("translate", [8 * h], f))
        tf = max(tf, abs(s0_norm(shifted, stride=1) - n) / n)
        four = max(four, abs(s0_norm(ft_onto(f, g), stride=1) - n) / n)
    return [
        Check("g0_s0_norm", s0g, 1e-6, "||g0||_S0 = sqrt(2)"),
        Check("stft_origin", v00, 1e-9, "V_g0 g0(0, 0) = 2^(-1/2)"),
        Check("tf_shift_isometry", tf, 1e-6, "||E_w T_x f||_S0 = ||f||_S0"),
        Check("fourier_isometry", four, 1e-6, "||f^||_S0 = ||f||_S0"),
    ]


def suite_mild(cfg: SuiteConfig, fine_tents: int = 2) -> list[Check]:
    from .mild import (
        DILATION_GRID,
        MILD_GRID,
        PAIRING_KINDS,
        dist_apply,
        exchange_residuals,
        pairing_sweep,
        regular,
        shah,
        standard_components,
        delta,
    )

    battery = corpus.mild_battery(MILD_GRID, cfg.seed)
    tents = set(range(32, 40))
    smooth = [f for i, f in enumerate(battery) if i not in tents]
    comps = standard_components(MILD_GRID)
    table, skipped = pairing_sweep(comps, smooth)
    kinks = [f for i, f in enumerate(battery) if i in tents]
    no_dil = [k for k in PAIRING_KINDS if k[0] != "matrix_dilate"]
    t2, skipped_t = pairing_sweep(comps, kinks, no_dil)
    pairing = max(list(table.values()) + list(t2.values()))
    fine = standard_components(DILATION_GRID)
    fine.pop("chirp_ft")  # its action needs a decaying spectrum, which tents lack
    t3, _ = pairing_sweep(fine, corpus.battery_tents(DILATION_GRID, cfg.seed)[:fine_tents], [("matrix_dilate", [[2.0]])])
    dil = max(t3.values())
    s2, half = shah([[2.0]]), shah([[0.5]]) * 0.5
    comb = max(abs(dist_apply(s2, ft_onto(f, f.grid)) - dist_apply(half, f)) for f in smooth)
    g = sample_named("gaussian_mixture", [1.0, 0.25, 1.0, 0.5, -0.5, 0.9], MILD_GRID)
    ex = 0.0
    for sigma in (delta([0.5]), shah([[1.0]]), regular(sample_named("gaussian", [2.0], MILD_GRID))):
        ex = max(ex, *exchange_residuals(sigma, g, smooth[:8]))
    return [
        Check("pairing_consistency", pairing, 1e-9, "operator on a distribution agrees with its dual pairing"),
        Check("pairing_dilation_kinked", dil, 1e-9, "dilation pairing on tents (fine grid)"),
        Check("precondition_skips", float(len(skipped)), 0.0, "no decaying test function is skipped"),
        Check("shah_fourier", comb, 1e-10, "F(Shah_2) = (1/2) Shah_(1/2)"),
        Check("exchange_identities", ex, 1e-9, "F(s * g) = F(s) g^ and F(s g) = F(s) * g^"),
    ]


def suite_sampling(cfg: SuiteConfig) -> list[Check]:
    from .sampling import BandSpec, alias_residual, bandlimit, central_error, design_window, reconstruct, take_samples

    g = cfg.grid
    spec = BandSpec(0.4, 1.0)
    win = design_window(spec, "raised_cosine", grid=g)
    f = bandlimit(sample_named("gaussian", [], g), spec)
    rec = reconstruct(take_samples(f, spec.alpha), spec.alpha, win)
    sinc = sample_named("sinc", [], g)
    srec = reconstruct(take_samples(sinc, 1.0), 1.0, "sinc", g)
    return [
        Check("windowed_reconstruction", central_error(rec, f), 1e-8, "f = alpha sum_k f(alpha k) g(t - alpha k)"),
        Check("sinc_reconstruction", central_error(srec, sinc), 1e-3, "f = sum_k f(k) sinc(t - k)"),
        Check("alias_identity", alias_residual(f, win), 1e-10, "(Shah_beta * f^) g^ = f^"),
    ]


KERNEL_GRID = make_grid(h=1 / 16, n=256)


def suite_systems(cfg: SuiteConfig) -> list[Check]:
    from .mild import delta, regular, chirp
    from .systems import CHIRP_GRID, Tils, kernel_apply, kernel_build, kernel_compose, path_residual, tils_apply, diagonal_delta

    g = cfg.grid
    fs = corpus.function_corpus(g, 10, cfg.seed)
    h = g.spacing[0]
    paths = 0.0
    for sys in (Tils(delta([8 * h])), Tils(regular(sample_named("gaussian", [], g)))):
        for f in fs:
            paths = max(paths, path_residual(tils_apply(sys, f), tils_apply(sys, f, "freq")))
    cg0 = sample_named("gaussian", [], CHIRP_GRID)
    csys = Tils(chirp(1.0))
    cpath = path_residual(tils_apply(csys, cg0), tils_apply(csys, cg0, "freq"))
    kg = KERNEL_GRID
    rng = np.random.default_rng(cfg.seed)
    mix = lambda: corpus.random_mixture(kg, rng)  # noqa: E731
    comp = 0.0
    for _ in range(3):
        k1, k2, k3 = (kernel_build("rank_one", kg, mix(), mix()) for _ in range(3))
        u = mix()
        seq = kernel_apply(k3, kernel_apply(k2, kernel_apply(k1, u)))
        comp = max(comp, float(np.max(np.abs(kernel_apply(kernel_compose(k3, kernel_compose(k2, k1)), u).values - seq.values))))
    ident = kernel_compose(kernel_build("ift_kernel", kg), kernel_build("ft_kernel", kg))
    tests = [sample_named("gaussian", [], kg), sample_named("tent", [], kg)] + [mix() for _ in range(5)]
    idres = max(float(np.max(np.abs(kernel_apply(ident, u).values - u.values))) for u in tests)
    a, b = tests[2], tests[3]
    diag = abs(diagonal_delta(tensor(a, b)) - complex(kg.cell * np.sum(a.values * b.values)))
    return [
        Check("tils_paths", paths, 1e-8, "sigma * f = inverse transform of sigma^ f^"),
        Check("chirp_paths", cpath, 1e-6, "chirp convolution by impulse response and by transfer function"),
        Check("kernel_composition", comp, 1e-10, "K(x, z) = int K2(x, y) K1(y, z) dy"),
        Check("kernel_identity", idres, 1e-8, "inverse Fourier kernel after Fourier kernel is the identity"),
        Check("diagonal_delta", diag, 1e-10, "delta_diag(f (x) g) = int f g"),
    ]


SUITES: dict[str, Callable[[SuiteConfig], list[Check]]] = {
    "feichtinger": suite_feichtinger,
    "fourier": suite_fourier,
    "measures": suite_measures,
    "mild": suite_mild,
    "poisson": suite_poisson,
    "sampling": suite_sampling,
    "systems": suite_systems,
    "wiener": suite_wiener,
}
