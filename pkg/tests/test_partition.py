"""Heat trace values, truncation certification, oscillation fits, and the
tail/asymptotic certificates. Frozen numbers come from closed forms or the
exact scaling identity, never from the code under test."""

import math

import numpy as np
import pytest

import fraczeta as fz
from fraczeta.errors import ConfigError
from fraczeta.partition import fit_oscillation, fit_tower_profiles


@pytest.fixture(scope="module")
def interval():
    return fz.load_preset("interval")


@pytest.fixture(scope="module")
def interval_batch(interval):
    return fz.spectrum.default_batch(interval)


@pytest.fixture(scope="module")
def toy():
    return fz.load_preset("toy")


@pytest.fixture(scope="module")
def toy_batch(toy):
    return fz.spectrum.default_batch(toy)


def _single_eig():
    return fz.SpectrumBatch(None, np.array([1.0]), np.array([1.0]), 1.0, 1.0, 0.0, 0.0)


# -------------------------------------------------------------- heat values


def test_single_eigenvalue_trace():
    s = fz.partition_value(_single_eig(), 1.0)
    assert s.value == pytest.approx(math.exp(-1.0), rel=1e-15)
    assert s.truncation_error == 0.0
    assert s.accepted


def test_interval_trace_frozen_value(interval_batch):
    # theta-function value, frozen from the M -> infinity closed form
    s = fz.partition_value(interval_batch, 0.01)
    assert s.value == pytest.approx(2.3209479177387813, rel=1e-12)
    assert s.accepted


def test_interval_trace_near_exponential_floor(interval_batch):
    s = fz.partition_value(interval_batch, 1.0)
    # Z(1) = e^(-pi^2)*(1 + e^(-3 pi^2) + ...)
    assert s.value == pytest.approx(math.exp(-math.pi**2), rel=1e-12)


def test_nonpositive_time_rejected(interval_batch):
    with pytest.raises(ConfigError):
        fz.partition_value(interval_batch, 0.0)


def test_partition_grid_matches_pointwise(interval_batch):
    ts = np.exp(np.linspace(math.log(1e-3), math.log(2.0), 17))
    grid = fz.partition_grid(interval_batch, ts)
    for t, sample in zip(ts, grid):
        assert sample.value == pytest.approx(fz.partition_value(interval_batch, float(t)).value, rel=1e-14)


def test_truncation_bound_is_honest():
    # drop the tail of a long spectrum and check the declared bound covers it
    full = fz.interval_spectrum(40000)
    short = fz.interval_spectrum(2000)
    for t in (2e-3, 5e-3, 2e-2):
        dropped = fz.partition_value(full, t).value - fz.partition_value(short, t).value
        assert 0 <= dropped <= fz.partition_value(short, t).truncation_error


# --------------------------------------------------------------- Weyl ratio


def test_interval_weyl_frozen_value(interval_batch):
    w = fz.weyl_ratio(interval_batch, 1e-4)
    assert w == pytest.approx(0.2770947917738782, rel=1e-12)


def test_interval_weyl_is_periodic_limit(interval_batch, interval):
    # the interval profile is constant, so W barely moves between t and t/4;
    # the drift is the boundary term, about sqrt(t)/4
    tau = interval.model.tau
    for t in (1e-6, 1e-5):
        drift = abs(fz.weyl_ratio(interval_batch, t) - fz.weyl_ratio(interval_batch, t / tau))
        assert drift < math.sqrt(t)


def test_weyl_requires_model():
    with pytest.raises(ConfigError):
        fz.weyl_ratio(_single_eig(), 0.5)


def test_toy_exact_scaling_identity(toy_batch, toy):
    # Z(t/tau) = N*Z(t) + e^(-t/tau) - N^(K+1) e^(-tau^K t), exact in floats
    m = toy.model
    K = len(toy_batch) - 1
    for t in (1e-3, 7e-3, 0.11):
        lhs = fz.partition_value(toy_batch, t / m.tau).value
        rhs = (
            m.N * fz.partition_value(toy_batch, t).value
            + math.exp(-t / m.tau)
            - float(m.N) ** (K + 1) * math.exp(-m.tau**K * t)
        )
        assert lhs == pytest.approx(rhs, rel=1e-12)


# -------------------------------------------------------- oscillation fits


def test_interval_leading_fit(interval, interval_batch):
    # a single-tower fit carries boundary-tower contamination of order
    # sqrt(t) over the window, so only expect ~3e-4 here; the subtracted
    # multi-tower fit below recovers far more digits
    m = interval.model
    prof = fit_oscillation(interval_batch, m, 0, 3, (1e-7, 4e-7))
    assert prof.coefficients[0].real == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), abs=5e-4)
    for n in (1, 2, 3):
        assert abs(prof.coefficients[n]) < 1e-4
        assert prof.coefficients[-n] == prof.coefficients[n].conjugate()


def test_interval_boundary_tower_fit(interval, interval_batch):
    m = interval.model
    profs = fit_tower_profiles(interval_batch, m, [1e-7, 2e-3], [2, 2])
    assert profs[1].coefficients[0].real == pytest.approx(-0.5, abs=1e-6)
    assert profs[0].coefficients[0].real == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), abs=1e-10)


def test_window_must_span_one_period(interval, interval_batch):
    with pytest.raises(ConfigError, match="period"):
        fit_oscillation(interval_batch, interval.model, 0, 2, (1e-7, 3e-7))


def test_fit_refuses_uncertified_window(interval):
    short = fz.interval_spectrum(50, interval.model)
    with pytest.raises(ConfigError, match="eigenvalues"):
        fit_oscillation(short, interval.model, 0, 2, (1e-7, 4e-7))


def test_toy_coefficients_match_gamma_closed_form(toy, toy_batch):
    # for the exactly self-similar spectrum the leading-tower coefficients
    # are Gamma(alpha + i omega_n)/log tau
    from fraczeta.gammafn import gamma as cgamma

    m = toy.model
    windows = [float(w) for w in toy.continuation_params["windows"]]
    n_maxes = [int(n) for n in toy.continuation_params["n_maxes"]]
    prof = fit_tower_profiles(toy_batch, m, windows, n_maxes)[0]
    log_tau = math.log(m.tau)
    for n in range(0, 4):
        expected = cgamma(complex(m.d_S / 2.0, 2.0 * math.pi * n / log_tau)) / log_tau
        got = prof.coefficients[n]
        if n == 0:
            got = complex(got.real, 0.0)
            expected = complex(expected.real, 0.0)
        assert got == pytest.approx(expected, abs=1e-7), n


def test_profile_reconstruction_consistency(toy, toy_batch):
    prof = fit_oscillation(toy_batch, toy.model, 0, 2, (5e-8, 2.5e-7))
    ts = np.array([6e-8, 1.1e-7, 2.0e-7])
    z = np.array([fz.partition_value(toy_batch, float(t)).value for t in ts])
    recon = prof.term(ts)
    # the leading tower dominates at these times to ~1e-4 relative
    assert np.max(np.abs(recon - z) / z) < 1e-3


# ------------------------------------------------------------ certificates


def test_tail_certificate_single_eigenvalue():
    cert = fz.tail_certificate(_single_eig())
    assert cert.c4 == 1.0
    assert cert.c3 == pytest.approx(1.0, rel=1e-9)
    assert cert.verified


def test_tail_certificate_interval(interval_batch):
    cert = fz.tail_certificate(interval_batch)
    assert cert.c4 == interval_batch.lambda_min
    assert 1.0 <= cert.c3 < 1.1
    assert cert.verified
    assert cert.c5 == cert.c3 and cert.c6 == cert.c4


def test_asymptotic_certificate_interval(interval, interval_batch):
    m = interval.model
    prof = fit_tower_profiles(interval_batch, m, [1e-7, 2e-3], [2, 2])[0]
    cert = fz.asymptotic_certificate(interval_batch, m, (1e-5, 4e-5), prof)
    # deviation tends to -zeta(0) = 1/2 for the interval
    assert cert.c1 == pytest.approx(0.5, abs=1e-2)
    assert cert.c2 == pytest.approx(0.5, abs=1e-2)
    assert not cert.sign_violation
    assert cert.constant_deviation


def test_asymptotic_certificate_toy_constant(toy, toy_batch):
    m = toy.model
    windows = [float(w) for w in toy.continuation_params["windows"]]
    n_maxes = [int(n) for n in toy.continuation_params["n_maxes"]]
    prof = fit_tower_profiles(toy_batch, m, windows, n_maxes)[0]
    cert = fz.asymptotic_certificate(toy_batch, m, (1e-6, 5e-6), prof)
    # -zeta(0) = 1/(N-1) = 1/2 for N = 3
    assert cert.c1 == pytest.approx(0.5, abs=2e-2)
    assert cert.c2 == pytest.approx(0.5, abs=2e-2)
    assert not cert.sign_violation


def test_asymptotic_certificate_gasket_positive():
    bundle = fz.load_preset("gasket")
    batch = fz.spectrum.default_batch(bundle)
    prof = fit_tower_profiles(
        batch,
        bundle.model,
        [float(w) for w in bundle.continuation_params["windows"]],
        [int(n) for n in bundle.continuation_params["n_maxes"]],
    )[0]
    cert = fz.asymptotic_certificate(batch, bundle.model, (5.0**-9, 5.0**-8), prof)
    assert cert.c1 > 0
    assert not cert.sign_violation
