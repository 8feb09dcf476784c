"""Direct series, Mellin split, meromorphic continuation, pole lattice,
residues, and the functional-equation audit. Oracles: pi^-s zeta_R(s) for
the interval, the geometric closed form 1/(1 - N tau^(-s/2)) for the toy
model, and one-term closed forms for single-eigenvalue batches."""

import math

import numpy as np
import pytest

import fraczeta as fz
from fraczeta.errors import ConfigError, ConvergenceError, DomainError
from fraczeta.zeta import _exp_moment, build_context, mellin_split_numeric
from fraczeta.zetaref import riemann_zeta

LOG5 = math.log(5.0)


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


def _single_eig(lam=1.0):
    return fz.SpectrumBatch(None, np.array([lam]), np.array([1.0]), lam, lam, 0.0, 0.0)


def _toy_closed(s, gamma=0.0):
    if gamma == 0.0:
        return 1.0 / (1.0 - 3.0 * 5.0 ** (-s / 2.0))
    total = 0j
    for k in range(260):
        total += 3.0**k * (5.0**k + gamma) ** (-s / 2.0)
    return total


def _interval_oracle(s):
    return math.pi ** (-s) * riemann_zeta(s) if not isinstance(s, complex) else None


# ------------------------------------------------------------- direct series


def test_direct_single_eigenvalue():
    z = fz.zeta_direct(_single_eig(4.0), 2.0)
    assert z.value == pytest.approx(0.25, rel=1e-15)
    assert z.method == "direct"


def test_direct_single_eigenvalue_with_gamma():
    z = fz.zeta_direct(_single_eig(), 3.0, gamma=0.5)
    assert z.value == pytest.approx(1.5 ** (-1.5), rel=1e-14)


def test_direct_interval_matches_riemann(interval_batch):
    z = fz.zeta_direct(interval_batch, 4.0)
    oracle = math.pi ** (-4.0) * riemann_zeta(4.0).real
    assert abs(z.value - oracle) <= z.error_bound
    assert abs(z.value - oracle) < 1e-10


def test_direct_bound_covers_truncation(interval):
    short = fz.interval_spectrum(2000, interval.model)
    long = fz.interval_spectrum(40000, interval.model)
    for s in (2.5, 3.0 + 1.0j, 4.0 - 2.0j):
        a = fz.zeta_direct(short, s)
        b = fz.zeta_direct(long, s)
        assert abs(a.value - b.value) <= a.error_bound


def test_direct_refuses_abscissa(interval_batch, toy_batch):
    with pytest.raises(DomainError):
        fz.zeta_direct(interval_batch, 1.0)
    with pytest.raises(DomainError):
        fz.zeta_direct(toy_batch, toy_batch.model.d_S + 1e-9)


def test_direct_refuses_nonpositive_shift():
    with pytest.raises(ConfigError):
        fz.zeta_direct(_single_eig(), 3.0, gamma=-2.0)


# -------------------------------------------------------------- exp moments


def test_exp_moment_gamma_zero_is_reciprocal():
    for z in (0.7, 1.3 - 2.0j, -0.4 + 0.1j):
        assert _exp_moment(complex(z), 0.0) == 1.0 / complex(z)


def test_exp_moment_matches_incomplete_gamma():
    # E(z, gamma) = integral_0^1 t^(z-1) e^(-gamma t) dt
    #             = gamma^(-z) * int_0^gamma x^(z-1) e^(-x) dx   for Re z > 0
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    for z, gamma in ((1.7 - 0.8j, 0.9), (0.4 + 2.0j, 1.7), (2.3, 0.2)):
        zc = complex(z)
        oracle = complex(mp.gammainc(mp.mpc(zc), 0, gamma) * mp.mpc(gamma) ** (-zc))
        assert _exp_moment(zc, gamma) == pytest.approx(oracle, abs=1e-13)


def test_exp_moment_pole_raises():
    with pytest.raises(DomainError):
        _exp_moment(complex(-5.0, 0.0), 1.0)


# ------------------------------------------------------------- Mellin split


def test_split_reconstructs_interval(interval_batch, interval):
    sp = mellin_split_numeric(interval_batch, interval.model, 1.5)
    oracle = math.pi ** (-3.0) * riemann_zeta(3.0).real
    assert abs(sp.reconstruct() - oracle) < 1e-6
    assert abs(sp.reconstruct().imag) < 1e-12


def test_split_reconstructs_toy(toy_batch, toy):
    sp = mellin_split_numeric(toy_batch, toy.model, 1.0)
    assert abs(sp.reconstruct() - 2.5) < 1e-6


def test_split_numeric_mode_agrees(interval_batch, interval):
    a = mellin_split_numeric(interval_batch, interval.model, 1.2, i1_mode="closed")
    b = mellin_split_numeric(interval_batch, interval.model, 1.2, i1_mode="numeric")
    assert a.i1_mode == "closed" and b.i1_mode == "numeric"
    assert abs(a.I1 - b.I1) < 1e-8
    assert abs(a.reconstruct() - b.reconstruct()) < 1e-8


def test_split_numeric_mode_needs_convergent_tower(interval_batch, interval):
    # below alpha_0 the u-integral diverges; the closed form keeps going
    with pytest.raises(DomainError):
        mellin_split_numeric(interval_batch, interval.model, 0.3, i1_mode="numeric")
    sp = mellin_split_numeric(interval_batch, interval.model, 1.2, i1_mode="closed")
    oracle = math.pi ** (-2.4) * riemann_zeta(2.4).real
    assert abs(sp.reconstruct() - oracle) < 1e-8
    # left of alpha_0 the unsubtracted boundary tower below t_lo dominates
    # (~t_lo^sigma/sigma); the split must say so in its own bound
    for s_half in (0.45, 0.3):
        sp = mellin_split_numeric(interval_batch, interval.model, s_half, i1_mode="closed")
        oracle = math.pi ** (-2 * s_half) * riemann_zeta(2 * s_half).real
        assert abs(sp.reconstruct() - oracle) <= sp.error_bound
        assert sp.error_bound < 1e-2


def test_split_rejects_bad_mode(interval_batch, interval):
    with pytest.raises(ConfigError):
        mellin_split_numeric(interval_batch, interval.model, 1.5, i1_mode="magic")


# ------------------------------------------------------------- continuation


def test_continued_interval_left_of_abscissa(interval_batch, interval):
    for s, tol in ((0.5, 1e-10), (-1.0, 1e-7), (0.25 + 3.0j, 1e-8)):
        z = fz.zeta_continued(interval_batch, interval.model, s)
        if isinstance(s, complex):
            oracle = math.pi ** (-s) * riemann_zeta(s)
        else:
            oracle = math.pi ** (-s) * riemann_zeta(s).real
        assert abs(z.value - oracle) <= max(z.error_bound, 1e-12)
        assert abs(z.value - oracle) < tol
        assert z.method == "continued-expbounds"


def test_continued_overlaps_direct(interval_batch, interval, toy_batch, toy):
    for batch, bundle, s in (
        (interval_batch, interval, 2.5),
        (interval_batch, interval, 3.0 + 2.0j),
        (toy_batch, toy, 2.2 - 1.0j),
    ):
        zc = fz.zeta_continued(batch, bundle.model, s)
        zd = fz.zeta_direct(batch, s)
        assert abs(zc.value - zd.value) <= zc.error_bound + zd.error_bound
        assert abs(zc.value - zd.value) < 1e-4


def test_continued_toy_matches_closed_form(toy_batch, toy):
    d_S = toy.model.d_S
    z = fz.zeta_continued(toy_batch, toy.model, d_S - 0.5 + 2.0j)
    assert abs(z.value - _toy_closed(d_S - 0.5 + 2.0j)) < 1e-6
    # away from the fitted band (far left, high |Im|) the boundary-tower fit
    # error is amplified; the declared bound must still cover the truth
    for s in (d_S - 1.0, 0.4 + 5.0j):
        z = fz.zeta_continued(toy_batch, toy.model, s)
        err = abs(z.value - _toy_closed(s))
        assert err <= z.error_bound, s
        assert err < 2e-4, s


def test_continued_with_gamma(interval_batch, interval):
    z = fz.zeta_continued(interval_batch, interval.model, 3.0, gamma=1.0)
    d = fz.zeta_direct(interval_batch, 3.0, gamma=1.0)
    assert abs(z.value - d.value) <= z.error_bound + d.error_bound


def test_continued_conjugate_symmetry(toy_batch, toy):
    s = toy.model.d_S - 0.3 + 1.3j
    a = fz.zeta_continued(toy_batch, toy.model, s)
    b = fz.zeta_continued(toy_batch, toy.model, s.conjugate())
    assert b.value == pytest.approx(a.value.conjugate(), rel=1e-12)


def test_lemma_mode_half_plane_guard(interval_batch, interval):
    # interval d_boundary = 0, so lemma mode stops at Re s = 0
    with pytest.raises(DomainError, match="lemma"):
        fz.zeta_continued(interval_batch, interval.model, -0.5, mode="lemma")
    z = fz.zeta_continued(interval_batch, interval.model, 0.5, mode="lemma")
    oracle = math.pi ** (-0.5) * riemann_zeta(0.5).real
    assert abs(z.value - oracle) < 1e-9
    assert z.method == "continued-lemma"


def test_pole_proximity_guard(interval_batch, interval, toy_batch, toy):
    with pytest.raises(DomainError, match="pole"):
        fz.zeta_continued(interval_batch, interval.model, 1.0 + 1e-7j)
    with pytest.raises(DomainError, match="pole"):
        fz.zeta_continued(toy_batch, toy.model, complex(toy.model.d_S, 0.0))


def test_continued_shift_guards(interval_batch, interval):
    with pytest.raises(ConfigError):
        fz.zeta_continued(interval_batch, interval.model, 2.0, gamma=25.0)
    with pytest.raises(ConfigError):
        fz.zeta_continued(interval_batch, interval.model, 2.0, gamma=-math.pi**2)


def test_continued_rejects_certificate_free_batch():
    with pytest.raises(ConfigError):
        fz.zeta_continued(_single_eig(), None, 0.5)


def test_context_is_batch_bound(interval_batch, interval, toy_batch, toy):
    ctx = build_context(interval_batch, interval.model)
    z = fz.zeta_continued(interval_batch, interval.model, 0.5, context=ctx)
    assert abs(z.value - math.pi ** (-0.5) * riemann_zeta(0.5).real) < 1e-9
    with pytest.raises(ConfigError, match="different batch"):
        fz.zeta_continued(toy_batch, toy.model, 2.0, context=ctx)


# ------------------------------------------------------------- pole lattice


def test_predicted_interval_band(interval):
    # 4 pi / log 4 > 5, so only s = 1 survives in this band
    poles = fz.predicted_poles(interval.model, (0.2, 2.0, -5.0, 5.0))
    assert [p.position for p in poles] == [1.0 + 0.0j]
    assert poles[0].k_index == 0 and poles[0].m == 0 and poles[0].n == 0


def test_predicted_gasket_triple():
    m = fz.load_preset("gasket").model
    poles = fz.predicted_poles(m, (0.2, 2.0, -8.0, 8.0))
    spacing = 4.0 * math.pi / LOG5
    assert len(poles) == 3
    assert sorted(p.n for p in poles) == [-1, 0, 1]
    for p in poles:
        assert p.position.real == pytest.approx(m.d_S, rel=1e-12)
        assert p.position.imag == pytest.approx(p.n * spacing, abs=1e-12)


def test_predicted_gamma_translates_lemma_mode():
    m = fz.load_preset("gasket").model
    poles = fz.predicted_poles(m, (-3.0, 2.0, 0.0, 0.0), gamma=0.5, mode="lemma")
    want = [m.d_S, m.d_S - 2.0, m.d_S - 4.0]
    assert [p.position.real for p in poles] == pytest.approx(want, rel=1e-12)
    assert [p.m for p in poles] == [0, 1, 2]


def test_predicted_expbounds_superset():
    m = fz.load_preset("gasket").model
    lemma = {p.position for p in fz.predicted_poles(m, (-3.0, 2.0, 0.0, 0.0), 0.5, "lemma")}
    expb = {p.position for p in fz.predicted_poles(m, (-3.0, 2.0, 0.0, 0.0), 0.5, "expbounds")}
    assert lemma <= expb
    assert complex(0.0, 0.0) in expb  # the boundary tower's own head


def test_predicted_sorted_and_deduped(toy):
    poles = fz.predicted_poles(toy.model, (-4.0, 2.0, -9.0, 9.0), gamma=1.0)
    keys = [(-p.position.real, p.position.imag) for p in poles]
    assert keys == sorted(keys)
    assert len({(round(p.position.real, 9), round(p.position.imag, 9)) for p in poles}) == len(poles)


def test_predicted_rejects_empty_region(toy):
    with pytest.raises(ConfigError):
        fz.predicted_poles(toy.model, (2.0, 1.0, 0.0, 0.0))


# ----------------------------------------------------------------- residues


def test_residue_interval_head(interval_batch, interval):
    ctx = build_context(interval_batch, interval.model)
    est = fz.residue_from_oscillation(ctx.profiles[0], interval.model, 0)
    assert est.residue is not None
    assert est.residue.real == pytest.approx(1.0 / math.pi, abs=1e-6)
    assert est.position == pytest.approx(1.0 + 0.0j, abs=1e-12)
    assert est.source == "predicted"


def test_residue_interval_n1_below_floor(interval_batch, interval):
    ctx = build_context(interval_batch, interval.model)
    est = fz.residue_from_oscillation(ctx.profiles[0], interval.model, 1)
    assert est.residue is None
    assert est.note == "indistinguishable-from-zero"


def test_residue_toy_lattice(toy_batch, toy):
    ctx = build_context(toy_batch, toy.model)
    for n in (0, 1):
        est = fz.residue_from_oscillation(ctx.profiles[0], toy.model, n)
        assert est.residue == pytest.approx(2.0 / LOG5, abs=1e-6), n


def test_residue_requires_known_coefficient(toy_batch, toy):
    ctx = build_context(toy_batch, toy.model)
    with pytest.raises(ConfigError):
        fz.residue_from_oscillation(ctx.profiles[0], toy.model, 99)
    with pytest.raises(ConfigError):
        fz.residue_from_oscillation(ctx.profiles[1], toy.model, 0)


def test_locate_interval_pole(interval_batch, interval):
    poles = fz.locate_poles(interval_batch, interval.model, (0.5, 1.5, -2.0, 2.0))
    assert len(poles) == 1
    p = poles[0]
    assert abs(p.position - 1.0) < 1e-3
    assert abs(p.residue - 1.0 / math.pi) < 1e-3
    assert p.source == "located"
    assert p.order == 1
    assert p.match_distance < 1e-3


def test_locate_toy_triple(toy_batch, toy):
    d_S = toy.model.d_S
    spacing = 4.0 * math.pi / LOG5
    poles = fz.locate_poles(toy_batch, toy.model, (d_S - 0.5, d_S + 0.5, -10.0, 10.0))
    assert len(poles) == 3
    for p in poles:
        assert abs(p.position - complex(d_S, p.n * spacing)) < 1e-3
        assert abs(p.residue - 2.0 / LOG5) < 1e-3


def test_locate_empty_region(interval_batch, interval):
    assert fz.locate_poles(interval_batch, interval.model, (1.5, 1.8, 2.0, 3.0)) == []


# -------------------------------------------------------- functional equation


def test_functional_eq_single_eigenvalue():
    res = fz.functional_eq_residual(_single_eig(), 3.0, 0.5)
    assert res.direct_form < 1e-8
    assert res.paper_form == pytest.approx(1.5 ** (-2.5), abs=1e-9)
    assert res.derivative.real == pytest.approx(-1.5 * 1.5 ** (-2.5), abs=1e-9)


def test_functional_eq_interval(interval_batch):
    res = fz.functional_eq_residual(interval_batch, 3.0, 1.0)
    assert res.direct_form < 1e-6
    assert res.fd_uncertainty < 1e-8


def test_functional_eq_complex_point(toy_batch, toy):
    s = toy.model.d_S + 0.7 + 1.2j
    res = fz.functional_eq_residual(toy_batch, s, 0.25)
    assert res.direct_form < 1e-6


def test_functional_eq_uncertainty_gate(interval_batch):
    with pytest.raises(ConvergenceError):
        fz.functional_eq_residual(interval_batch, 3.0, 1.0, tol=1e-16)
