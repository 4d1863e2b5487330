import numpy as np
import pytest

from mildbank.errors import BadParams, NoTransitionRoom, NyquistViolation
from mildbank.fourier import ft
from mildbank.grid import act, integrate, make_grid, sample_named
from mildbank.sampling import (
    BandSpec,
    alias_residual,
    band_membership,
    bandlimit,
    bump_spectrum_function,
    central_error,
    design_window,
    out_of_band_mass,
    reconstruct,
    smoothstep,
    take_samples,
    transition_profile,
)

G = make_grid()  # h = 1/16, N = 1024
SPEC = BandSpec(0.4, 1.0)
WINDOW = design_window(SPEC, "raised_cosine", grid=G)
F = bandlimit(sample_named("gaussian", [], G), SPEC)


def test_bandlimit_cuts_the_spectrum():
    half = bandlimit(sample_named("gaussian", [], G), BandSpec(0.5, 1.0))
    S = ft(half)
    s = S.grid.axis(0)
    assert np.max(np.abs(S.values[np.abs(s) > 0.5 + 1e-12])) < 1e-13
    assert np.max(np.abs(bandlimit(F, SPEC).values - F.values)) <= 1e-10


def test_bandlimited_sinc_is_close_to_sinc():
    sinc = sample_named("sinc", [], G)
    assert central_error(bandlimit(sinc, BandSpec(0.5, 1.0)), sinc) <= 1e-2


def test_bandspec_rejects_wide_passbands():
    with pytest.raises(BadParams):
        BandSpec(0.6, 1.0)
    assert BandSpec(0.25, 2.0).alpha == 0.5


def test_window_basics():
    g = WINDOW.g
    assert abs(integrate(g) - 1) < 1e-12
    assert np.max(np.abs(g.values.imag)) < 1e-14
    assert np.max(np.abs(g.values - act("flip", [], g).values)) < 1e-12
    S = WINDOW.spectrum
    s = S.grid.axis(0)
    assert np.max(np.abs(S.values[np.abs(s) <= 0.4] - 1)) < 1e-15
    assert not np.any(S.values[np.abs(s) >= 0.5])


def test_window_needs_transition_room():
    with pytest.raises(NoTransitionRoom):
        design_window(BandSpec(0.5, 1.0), grid=G)


def test_window_decay_grows_with_smoothness():
    fits = [design_window(BandSpec(0.25, 1.0), "smoothstep", r, grid=G) for r in (2, 3, 4)]
    exps = [w.decay_exponent for w in fits]
    assert all(b > a for a, b in zip(exps, exps[1:]))
    # an r-times smooth transition band buys roughly |t|^-(r+1)
    for r, e in zip((2, 3, 4), exps):
        assert r + 0.5 <= e <= r + 1.5
    assert all(w.decay_constant > 0 for w in fits)


def test_smoothstep_profile():
    u = np.linspace(0, 1, 101)
    for r in (1, 2, 3):
        v = smoothstep(u, r)
        assert v[0] == 0 and v[-1] == pytest.approx(1.0, abs=1e-15)
        assert np.all(np.diff(v) >= 0)
        # symmetric about the midpoint
        assert np.max(np.abs(v + v[::-1] - 1)) < 1e-14
    p = transition_profile([0.0, 0.4, 0.45, 0.5, 0.7], SPEC)
    assert list(p) == [1.0, 1.0, pytest.approx(0.5), 0.0, 0.0]


def test_windowed_reconstruction():
    samples = take_samples(F, SPEC.alpha, SPEC)
    assert central_error(reconstruct(samples, SPEC.alpha, WINDOW), F) <= 1e-8


def test_sinc_series():
    sinc = sample_named("sinc", [], G)
    recon = reconstruct(take_samples(sinc, 1.0), 1.0, "sinc", G)
    assert central_error(recon, sinc) <= 1e-3


def test_oversampling_rates():
    f = bump_spectrum_function(G, 0.2)
    for beta in (1.0, 2.0, 4.0):
        sp = BandSpec(0.2, beta)
        w = design_window(sp, grid=G)
        assert central_error(reconstruct(take_samples(f, sp.alpha), sp.alpha, w), f) <= 1e-12


def test_truncated_window_series_converges():
    samples = take_samples(F, 1.0)
    m = np.abs(G.axis(0)) <= 4
    errs = [np.max(np.abs(reconstruct(samples, 1.0, WINDOW, radius=r).values - F.values)[m]) for r in (4, 8, 16)]
    assert all(b < a / 4 for a, b in zip(errs, errs[1:]))


def test_nyquist_violations():
    g0 = sample_named("gaussian", [], G)
    assert out_of_band_mass(g0, SPEC) > 1e-10
    with pytest.raises(NyquistViolation):
        take_samples(g0, 1.0, SPEC)
    with pytest.raises(NyquistViolation):
        reconstruct(take_samples(F, 2.0), 2.0, WINDOW)


def test_alias_residual():
    assert alias_residual(F, WINDOW) <= 1e-10
    # g0 reaches past beta/2, so its aliases leak into the passband
    assert alias_residual(sample_named("gaussian", [], G), WINDOW) > 1e-3


def test_band_membership():
    bump = bump_spectrum_function(G, 0.2)
    assert band_membership(bump, BandSpec(0.2, 1.0)).by_support
    assert not band_membership(bump, BandSpec(0.1, 1.0)).by_support
    m = band_membership(sample_named("gaussian", [], G), BandSpec(0.2, 1.0))
    assert not m.by_support and not m.by_s0
    sinc = band_membership(bandlimit(sample_named("sinc", [], G), BandSpec(0.5, 1.0)), BandSpec(0.5, 1.0))
    # the sinc is band-limited but its slow decay keeps it out of S0
    assert sinc.by_support and not sinc.by_s0
