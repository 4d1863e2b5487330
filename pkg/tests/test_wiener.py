import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar

from mildbank.bupu import envelope
from mildbank.corpus import function_corpus, random_mixture
from mildbank.errors import BadAxis
from mildbank.grid import act, convolve, make_grid, norms, sample_named
from mildbank.measures import measure_convolve, measure_norm, random_measure
from mildbank.wiener import restrict, support_constant, translation_ratio, wiener_norm

G = make_grid(h=1 / 16, n=512)
G2 = make_grid(h=1 / 16, n=128, d=2)
CORPUS = function_corpus(G, 12, seed=3)


def W(f, variant="bupu"):
    return wiener_norm(f, variant=variant).norm


def _continuous_gaussian_norm() -> float:
    # sum over n of the true sup of g0(t) tent(t - n/2), by bounded maximization on each linear piece
    total = 0.0
    for n in range(-12, 13):
        c = n / 2
        best = math.exp(-math.pi * c * c)
        for a, b in ((c - 0.5, c), (c, c + 0.5)):
            r = minimize_scalar(
                lambda t: -math.exp(-math.pi * t * t) * max(1 - 2 * abs(t - c), 0),
                bounds=(a, b),
                method="bounded",
                options={"xatol": 1e-12},
            )
            best = max(best, -r.fun)
        total += best
    return total


def test_zero_and_tent():
    assert W(sample_named("tent", [], G) * 0.0) == 0
    rep = wiener_norm(sample_named("tent", [], G))
    assert rep.norm == pytest.approx(1.5, abs=1e-9)
    assert rep.cell_sups[(0,)] == 1.0 and rep.cell_sups[(1,)] == 0.25 and rep.cell_sups[(-1,)] == 0.25
    assert rep.norm == pytest.approx(math.fsum(rep.cell_sups.values()), abs=1e-12)


def test_gaussian_norm_refines_toward_continuous_value():
    exact = _continuous_gaussian_norm()
    for h in (1 / 16, 1 / 32, 1 / 64, 1 / 128):
        g = make_grid(h=h, n=int(32 / h))
        gap = exact - W(sample_named("gaussian", [], g))
        assert 0 <= gap <= 2 * h**2


def test_norm_dominates_sup():
    for f in CORPUS:
        assert W(f) >= norms(f).sup - 1e-15


def test_variants_are_equivalent():
    ratios = [W(f, "box") / W(f) for f in CORPUS]
    assert all(4**-1 <= r <= 4 for r in ratios)


def test_restriction():
    g00 = sample_named("gaussian", [], G2)
    r = restrict(g00)
    assert np.array_equal(r.values, sample_named("gaussian", [], make_grid(h=1 / 16, n=128)).values)
    assert np.all(restrict(g00 * 0.0).values == 0)
    with pytest.raises(BadAxis):
        restrict(sample_named("gaussian", [], G))


def test_restriction_norm_inequality():
    rng = np.random.default_rng(0)
    g1 = make_grid(h=1 / 16, n=128)
    for _ in range(20):
        a = random_mixture(g1, rng, real=False)
        b = random_mixture(g1, rng, real=False)
        prod = sample_named("gaussian", [], G2).with_values(np.outer(a.values, b.values))
        assert W(restrict(prod)) <= W(prod) + 1e-12


def test_solidity_ideal_algebra():
    rng = np.random.default_rng(1)
    for f in CORPUS:
        wf = W(f)
        for part in (np.abs(f.values), f.values.real, f.values.imag, np.maximum(f.values.real, 0), np.minimum(f.values.real, 0)):
            assert W(f.with_values(part)) <= wf + 1e-12
        h = random_mixture(G, rng, real=False)
        assert W(h * f) <= norms(h).sup * wf + 1e-12
        assert W(h * f) <= W(h) * wf + 1e-12


@settings(max_examples=20, deadline=None)
@given(i=st.integers(0, 11), k=st.integers(-40, 40), w=st.floats(-5, 5))
def test_translation_and_modulation(i, k, w):
    f = CORPUS[i]
    assert translation_ratio(f, [k / 16]) <= 4
    assert abs(W(act("modulate", [w], f)) - W(f)) <= 1e-12 * W(f)


def test_maximal_function_sandwich():
    for f in CORPUS:
        r = W(envelope(f, "maxfn")) / W(f)
        assert 1 - 1e-12 <= r <= 8


def test_oscillation_norm_decreases():
    g0 = sample_named("gaussian", [], G)
    vals = [W(envelope(g0, "osc", d)) for d in (1 / 2, 1 / 4, 1 / 8, 1 / 16)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_convolution_bounds():
    for f, k in zip(CORPUS[:6], CORPUS[6:]):
        kf = convolve(k, f)
        assert W(kf) <= 4 * W(k) * W(f)
        assert norms(kf).l1 <= norms(k).l1 * norms(f).l1 + 1e-12


def test_measure_convolution_bound():
    c_k = support_constant(G)
    assert c_k <= 3
    rng = np.random.default_rng(4)
    for f in CORPUS[:5]:
        mu = random_measure(G, rng)
        assert W(measure_convolve(mu, f)) <= c_k * measure_norm(mu) * W(f) + 1e-12


def test_support_constant_2d():
    assert support_constant(make_grid(h=1 / 8, n=64, d=2), samples=2) <= 9
