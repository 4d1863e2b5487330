import math

import numpy as np
import pytest

from mildbank.corpus import function_corpus, random_mixture
from mildbank.errors import BadKind, GridMismatch, PathDisagreement
from mildbank.feichtinger import tensor
from mildbank.grid import act, convolve, make_grid, sample_named
from mildbank.mild import chirp, delta, regular, shah
from mildbank.suites import KERNEL_GRID
from mildbank.systems import (
    CHIRP_GRID,
    KernelOperator,
    Tils,
    commutation_residuals,
    diagonal_delta,
    kernel_apply,
    kernel_build,
    kernel_compose,
    norm_witness,
    path_residual,
    regularized_chirp_limit,
    tils_apply,
    wstar_to_norm,
)

G = make_grid()  # h = 1/16, N = 1024
CORPUS = function_corpus(G, 10, 0)
K = KERNEL_GRID  # h = 1/16, N = 256
K0 = sample_named("gaussian", [], K)


def test_delta_system_is_translation():
    sys = Tils(delta([0.5]))
    for f in CORPUS[:4]:
        assert np.array_equal(tils_apply(sys, f).values, act("translate", [0.5], f).values)
        assert path_residual(tils_apply(sys, f), tils_apply(sys, f, "freq")) <= 1e-12


def test_gaussian_system_paths_agree():
    sys = Tils(regular(sample_named("gaussian", [], G)))
    worst = max(path_residual(tils_apply(sys, f), tils_apply(sys, f, "freq")) for f in CORPUS)
    assert worst <= 1e-9


def test_chirp_system_paths_agree():
    sys = Tils(chirp(1.0))
    g0 = sample_named("gaussian", [], CHIRP_GRID)
    assert path_residual(tils_apply(sys, g0), tils_apply(sys, g0, "freq")) <= 1e-6
    assert sys.has_chirp and not Tils(delta([0.0])).has_chirp


def test_checked_path_flags_disagreement():
    sys = Tils(regular(sample_named("gaussian", [], G)))
    f = CORPUS[0]
    assert np.array_equal(tils_apply(sys, f, "checked").values, tils_apply(sys, f).values)
    with pytest.raises(PathDisagreement):
        tils_apply(sys, f, "checked", tol=1e-20)


def test_commutation():
    g0 = sample_named("gaussian", [], G)
    for sys in (Tils(delta([0.25])), Tils(regular(g0))):
        for f in CORPUS[:3]:
            r1, r2 = commutation_residuals(sys, f, [0.75], g0)
            assert r1 <= 1e-12 and r2 <= 1e-12


def test_comb_system_periodizes():
    g0 = sample_named("gaussian", [], G)
    out = tils_apply(Tils(shah([[1.0]])), g0)
    theta1 = sum(math.exp(-math.pi * k * k) for k in range(-10, 11))
    assert abs(out.at([0.0])[0] - theta1) < 1e-14


def test_norm_witness():
    g0 = sample_named("gaussian", [], G)
    # sup |g0 * f| <= ||g0||_inf ||f||_1 <= ||f||_S0
    assert 0 < norm_witness(Tils(regular(g0)), CORPUS) <= 1
    assert norm_witness(Tils(delta([0.0])), CORPUS) <= 1


def test_regularized_chirp_limit_settles():
    g = make_grid(h=1 / 64, n=2048)  # alpha * h * R = 1/4
    wave = sample_named("gaussian", [], g).with_values(np.cos(0.2 * np.pi * g.axis(0)))
    outs, diffs = regularized_chirp_limit(wave)
    assert len(outs) == 4
    assert all(b < a for a, b in zip(diffs, diffs[1:]))


def test_kernel_examples():
    zero = kernel_build("zero", K)
    assert not np.any(kernel_apply(zero, K0).values)
    ftk = kernel_build("ft_kernel", K)
    assert np.max(np.abs(kernel_apply(ftk, K0).values - K0.values)) <= 1e-8
    # a point mass picks out the kernel column e^{-2 pi i x y}
    col = kernel_apply(ftk, delta([0.5])).values
    assert np.max(np.abs(col - np.exp(-1j * np.pi * K.axis(0)))) < 1e-15
    with pytest.raises(BadKind):
        kernel_build("heat", K)
    with pytest.raises(GridMismatch):
        kernel_build("rank_one", K, K0, sample_named("gaussian", [], G))


def test_rank_one_composition():
    r = kernel_build("rank_one", K, K0, K0)
    # K2 o K1 = <g0, g0> (g0 (x) g0)
    rr = kernel_compose(r, r)
    assert np.max(np.abs(rr.K.values - 2**-0.5 * r.K.values)) < 1e-15
    assert kernel_apply(r, K0).at([0.0])[0] == pytest.approx(2**-0.5, abs=1e-15)
    assert not np.any(kernel_compose(kernel_build("zero", K), r).K.values)


def test_composition_matches_sequential_application():
    rng = np.random.default_rng(7)
    mix = lambda: random_mixture(K, rng)  # noqa: E731
    for _ in range(3):
        k1, k2, k3 = (kernel_build("rank_one", K, mix(), mix()) for _ in range(3))
        u = mix()
        seq = kernel_apply(k3, kernel_apply(k2, kernel_apply(k1, u)))
        left = kernel_apply(kernel_compose(kernel_compose(k3, k2), k1), u)
        right = kernel_apply(kernel_compose(k3, kernel_compose(k2, k1)), u)
        assert np.max(np.abs(left.values - seq.values)) <= 1e-10
        assert np.max(np.abs(right.values - left.values)) <= 1e-12


def test_inverse_after_forward_kernel_is_identity():
    ident = kernel_compose(kernel_build("ift_kernel", K), kernel_build("ft_kernel", K))
    rng = np.random.default_rng(8)
    tests = [K0, sample_named("tent", [], K)] + [random_mixture(K, rng) for _ in range(5)]
    for u in tests:
        assert np.max(np.abs(kernel_apply(ident, u).values - u.values)) <= 1e-8


def test_diagonal_delta():
    rng = np.random.default_rng(9)
    a, b = random_mixture(K, rng), random_mixture(K, rng)
    assert abs(diagonal_delta(tensor(a, b)) - K.cell * np.sum(a.values * b.values)) < 1e-12
    assert diagonal_delta(tensor(K0, K0)) == pytest.approx(2**-0.5, abs=1e-12)
    with pytest.raises(GridMismatch):
        diagonal_delta(K0)


def test_weak_star_to_norm_for_smooth_rank_one():
    r = kernel_build("rank_one", K, sample_named("gaussian_mixture", [1.0, 0.4, 0.7], K), K0)
    for name in ("dilated_gaussian", "shifted_delta", "truncated_comb"):
        gaps = wstar_to_norm(r, name)
        assert all(b < a for a, b in zip(gaps, gaps[1:])), name
    # the Fourier kernel is not regularizing: delta_{1/n} stays at sup-distance 2
    assert wstar_to_norm(kernel_build("ft_kernel", K), "shifted_delta") == [2.0, 2.0, 2.0]


def test_convolution_kernel_agrees_with_system():
    # K(x, y) = g0(x - y) built by hand reproduces the regular system
    x = K.axis(0)
    vals = np.exp(-np.pi * (x[:, None] - x[None, :]) ** 2)
    k = KernelOperator(kernel_build("zero", K).K.with_values(vals), K)
    f = random_mixture(K, np.random.default_rng(10))
    assert np.max(np.abs(kernel_apply(k, f).values - convolve(K0, f).values)) < 1e-12
