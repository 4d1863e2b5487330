"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line with its worst residual."""
import math

import numpy as np
import pytest

from mildbank import corpus
from mildbank.bupu import envelope, make_bupu
from mildbank.cli import RunConfig, report_json, run_verify, strip_timing
from mildbank.feichtinger import s0_norm, stft
from mildbank.fourier import ft, ft_onto, identity_residuals, poisson, theta
from mildbank.grid import LatticeMatrix, act, make_grid, norms, sample_named
from mildbank.measures import dirac, measure_bupu_decompose, measure_convolve, measure_norm, random_measure
from mildbank.mild import (
    DILATION_GRID,
    MILD_GRID,
    PAIRING_KINDS,
    WSTAR_SEQUENCES,
    chirp,
    delta,
    dist_apply,
    exchange_residuals,
    pairing_sweep,
    regular,
    shah,
    standard_components,
    wstar_gaps,
)
from mildbank.sampling import BandSpec, alias_residual, bandlimit, central_error, design_window, reconstruct, take_samples
from mildbank.suites import ISOMETRY_GRID, KERNEL_GRID
from mildbank.systems import CHIRP_GRID, Tils, kernel_apply, kernel_build, kernel_compose, path_residual, tils_apply
from mildbank.wiener import translation_ratio, wiener_norm

G = make_grid()  # h = 1/16, N = 1024, window [-32, 32)
I1 = LatticeMatrix.identity(1)


@pytest.fixture
def report(capsys):
    def _report(n: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        assert ok, f"criterion {n} ({title}): {detail}"

    return _report


def test_criterion_01_gaussian_fourier_invariance(report):
    F = ft(sample_named("gaussian", [], G))
    err = float(np.max(np.abs(F.values - np.exp(-np.pi * F.grid.axis(0) ** 2))))
    report(1, "gaussian fourier invariance", err <= 1e-9, f"sup error {err:.2e} (tol 1e-9)")


def test_criterion_02_identity_residuals(report):
    worst = max(identity_residuals(f, g).max() for f, g in corpus.mixture_pairs(G, 20, seed=0))
    report(2, "fourier identities on 20 mixture pairs", worst <= 1e-8, f"worst {worst:.2e} (tol 1e-8)")


def test_criterion_03_poisson(report):
    k = np.arange(-20, 21)
    theta_err = 0.0
    for a in (0.5, 2.0, 3.0):
        # independent oracle: the two truncated theta series
        lhs = np.sum(np.exp(-np.pi * a * k**2))
        rhs = a**-0.5 * np.sum(np.exp(-np.pi * k**2 / a))
        r = poisson(sample_named("gaussian", [a], G), I1)
        theta_err = max(theta_err, abs(r.lhs - r.rhs), abs(r.lhs - lhs), abs(r.rhs - rhs))
    rng = np.random.default_rng(0)
    g0 = sample_named("gaussian", [], G)
    shifted = max(
        poisson(g0, I1, x=[rng.integers(-16, 16) / 16], omega=[rng.integers(-32, 32) / 64]).residual for _ in range(5)
    )
    g2 = make_grid(h=1 / 16, n=256, d=2)
    part = poisson(sample_named("gaussian", [], g2), LatticeMatrix.identity(2), m=1)
    partial = max(part.residual, abs(part.lhs - theta(1.0)))
    ok = theta_err <= 1e-12 and shifted <= 1e-10 and partial <= 1e-10
    report(3, "poisson summation", ok, f"theta {theta_err:.2e} (1e-12), shifted {shifted:.2e} (1e-10), partial {partial:.2e} (1e-10)")


def test_criterion_04_wiener_inequalities(report):
    fs = corpus.function_corpus(G, 30, seed=0)
    rng = np.random.default_rng(0)
    W = lambda f: wiener_norm(f).norm  # noqa: E731
    excess = 0.0  # worst violation of the exact inequalities, and modulation drift
    trans, sand_lo, sand_hi = 0.0, math.inf, 0.0
    for f in fs:
        wf = W(f)
        for part in (np.abs(f.values), f.values.real, f.values.imag):
            excess = max(excess, W(f.with_values(part)) - wf)
        h = corpus.random_mixture(G, rng, real=False)
        excess = max(excess, W(h * f) - norms(h).sup * wf, W(h * f) - W(h) * wf)
        excess = max(excess, abs(W(act("modulate", [rng.uniform(-5, 5)], f)) - wf))
        trans = max(trans, translation_ratio(f, [rng.integers(-64, 64) / 16]))
        r = W(envelope(f, "maxfn")) / wf
        sand_lo, sand_hi = min(sand_lo, r), max(sand_hi, r)
    tent = W(sample_named("tent", [], G))
    ok = excess <= 1e-12 and trans <= 4 and 1 <= sand_lo and sand_hi <= 8 and abs(tent - 1.5) <= 1e-9
    detail = f"excess {excess:.2e} (1e-12), translation {trans:.3f} (<= 4), maxfn [{sand_lo:.3f}, {sand_hi:.3f}] in [1, 8], tent {tent!r}"
    report(4, "wiener norm inequalities on 30 functions", ok, detail)


def test_criterion_05_measures(report):
    psi = make_bupu("tent", grid=G)
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(10):
        mu = random_measure(G, rng)
        pieces = measure_bupu_decompose(mu, psi)
        worst = max(worst, abs(math.fsum(measure_norm(p) for _, p in pieces) - measure_norm(mu)))
    f = corpus.random_mixture(G, rng, real=False)
    exact = all(
        np.array_equal(measure_convolve(dirac(x), f).values, act("translate", [x], f).values)
        for x in (0.0, 0.0625, -1.5, 3.25, 7.0)
    )
    report(5, "measure decomposition and dirac convolution", worst <= 1e-12 and exact, f"norm sum {worst:.2e} (1e-12), bit-exact {exact}")


def test_criterion_06_s0_isometries(report):
    rng = np.random.default_rng(0)
    tf = 0.0
    # full-resolution plane: a subsampled plane is only invariant under shifts on its own lattice
    for f in corpus.smooth_corpus(G, 10, seed=0):
        n = s0_norm(f, stride=1)
        moved = act("modulate", [rng.integers(-32, 32) / 16], act("translate", [rng.integers(-64, 64) / 16], f))
        tf = max(tf, abs(s0_norm(moved, stride=1) - n) / n)
    four = 0.0
    # Fourier invariance compares samples of f and f^ on one self-dual grid (N h^2 = 1)
    for f in corpus.smooth_corpus(ISOMETRY_GRID, 10, seed=0):
        n = s0_norm(f, stride=1)
        four = max(four, abs(s0_norm(ft_onto(f, ISOMETRY_GRID), stride=1) - n) / n)
    g0 = sample_named("gaussian", [], G)
    norm_err = abs(s0_norm(g0) - math.sqrt(2))
    v00 = abs(stft(g0, None, 1).at([[0.0, 0.0]])[0] - 2**-0.5)
    ok = tf <= 1e-6 and four <= 1e-6 and norm_err <= 1e-6 and v00 <= 1e-9
    report(6, "S0 isometries", ok, f"tf-shift {tf:.2e}, fourier {four:.2e} (1e-6 rel), ||g0|| {norm_err:.2e} (1e-6), V(0,0) {v00:.2e} (1e-9)")


# Tents have spectra decaying like s^-2, which the spectrum-dependent actions below refuse
# with TailTooFat; these are the only skips allowed in the pairing sweep.
SPECTRAL_PAIRS = {("chirp", "fourier"), ("comb", "fourier"), ("comb_2", "fourier")} | {
    ("chirp_ft", kind) for kind, _ in PAIRING_KINDS
}


def test_criterion_07_mild_calculus(report):
    battery = corpus.mild_battery(MILD_GRID, 0)
    tent_idx = set(range(32, 40))
    smooth = [f for i, f in enumerate(battery) if i not in tent_idx]
    tents = [battery[i] for i in sorted(tent_idx)]
    comps = standard_components(MILD_GRID)
    table, skipped = pairing_sweep(comps, smooth)
    no_dil = [k for k in PAIRING_KINDS if k[0] != "matrix_dilate"]
    t_table, t_skipped = pairing_sweep(comps, tents, no_dil)
    # dilation of a kinked tent needs the finer grid to resolve the kink at 1e-9
    fine = standard_components(DILATION_GRID)
    fine.pop("chirp_ft")
    d_table, d_skipped = pairing_sweep(fine, corpus.battery_tents(DILATION_GRID, 0), [("matrix_dilate", [[2.0]])])
    pairing = max(list(table.values()) + list(t_table.values()) + list(d_table.values()))
    bad_skips = skipped + d_skipped + [s for s in t_skipped if (s[0], s[1]) not in SPECTRAL_PAIRS]
    comb = max(abs(dist_apply(shah([[2.0]]), ft_onto(f, MILD_GRID)) - 0.5 * dist_apply(shah([[0.5]]), f)) for f in smooth)
    g = sample_named("gaussian_mixture", [1.0, 0.25, 1.0, 0.5, -0.5, 0.9], MILD_GRID)
    ex = 0.0
    for sigma in (delta([0.5]), shah([[1.0]]), regular(sample_named("gaussian", [2.0], MILD_GRID))):
        ex = max(ex, *exchange_residuals(sigma, g, smooth[:8]))
    ok = pairing <= 1e-9 and not bad_skips and comb <= 1e-10 and ex <= 1e-9
    detail = f"pairing {pairing:.2e} (1e-9), unexpected skips {len(bad_skips)}, shah {comb:.2e} (1e-10), exchange {ex:.2e} (1e-9)"
    report(7, "mild distribution calculus", ok, detail)


def test_criterion_08_shannon(report):
    spec = BandSpec(0.4, 1.0)
    win = design_window(spec, "raised_cosine", grid=G)
    f = bandlimit(sample_named("gaussian", [], G), spec)
    windowed = central_error(reconstruct(take_samples(f, spec.alpha, spec), spec.alpha, win), f)
    sinc = sample_named("sinc", [], G)
    sinc_err = central_error(reconstruct(take_samples(sinc, 1.0), 1.0, "sinc", G), sinc)
    alias = alias_residual(f, win)
    ok = windowed <= 1e-8 and sinc_err <= 1e-3 and alias <= 1e-10
    report(8, "shannon sampling", ok, f"windowed {windowed:.2e} (1e-8), sinc {sinc_err:.2e} (1e-3), alias {alias:.2e} (1e-10)")


def test_criterion_09_systems_and_kernels(report):
    fs = corpus.function_corpus(G, 10, 0)
    paths = 0.0
    for sys in (Tils(delta([0.5])), Tils(regular(sample_named("gaussian", [], G)))):
        for f in fs:
            paths = max(paths, path_residual(tils_apply(sys, f), tils_apply(sys, f, "freq")))
    cg0 = sample_named("gaussian", [], CHIRP_GRID)
    csys = Tils(chirp(1.0))
    cpath = path_residual(tils_apply(csys, cg0), tils_apply(csys, cg0, "freq"))
    rng = np.random.default_rng(0)
    mix = lambda: corpus.random_mixture(KERNEL_GRID, rng)  # noqa: E731
    comp = 0.0
    for _ in range(5):
        k1, k2, k3 = (kernel_build("rank_one", KERNEL_GRID, mix(), mix()) for _ in range(3))
        u = mix()
        seq = kernel_apply(k3, kernel_apply(k2, kernel_apply(k1, u)))
        one = kernel_apply(kernel_compose(k3, kernel_compose(k2, k1)), u)
        comp = max(comp, float(np.max(np.abs(one.values - seq.values))))
    ident = kernel_compose(kernel_build("ift_kernel", KERNEL_GRID), kernel_build("ft_kernel", KERNEL_GRID))
    tests = corpus.function_corpus(KERNEL_GRID, 7, 1)
    idres = max(float(np.max(np.abs(kernel_apply(ident, u).values - u.values))) for u in tests)
    ok = paths <= 1e-8 and cpath <= 1e-6 and comp <= 1e-10 and idres <= 1e-8
    detail = f"paths {paths:.2e} (1e-8), chirp {cpath:.2e} (1e-6), composition {comp:.2e} (1e-10), ift o ft {idres:.2e} (1e-8)"
    report(9, "systems and kernels", ok, detail)


def test_criterion_10_weak_star_sequences(report):
    battery = corpus.mild_battery(MILD_GRID, 0)
    gaps = {name: wstar_gaps(name, battery, steps=4) for name in WSTAR_SEQUENCES}
    ok = all(len(v) == 4 and all(b < a for a, b in zip(v, v[1:])) for v in gaps.values())
    detail = ", ".join(f"{k} " + " > ".join(f"{x:.1e}" for x in v) for k, v in gaps.items())
    report(10, "weak-* sequences decrease", ok, detail)


def test_criterion_11_determinism(report):
    cfg = RunConfig()
    a, b = run_verify("all", cfg), run_verify("all", cfg)
    same = report_json(strip_timing(a)) == report_json(strip_timing(b))
    report(11, "verify all is deterministic", same and a["passed"], f"identical {same}, all checks passed {a['passed']}")
