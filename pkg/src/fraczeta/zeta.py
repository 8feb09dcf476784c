"""Spectral zeta functions: the direct eigenvalue series, a Mellin-split
evaluator, meromorphic continuation past the abscissa, pole prediction and
contour-based location, and the gamma-derivative identity check.

Continuation strategy: write Gamma(s/2)*zeta(s,gamma) as the Mellin
transform of the heat trace damped by e^(-gamma*t), split the integral at
t = 1, and replace the short-time part by the fitted log-periodic towers.
The tower integrals over [0,1] have the closed form E(z,gamma) below; the
residual (trace minus towers) is integrated numerically on [t_floor, 1]
only, where it is tame. The split is exact for whatever tower profile was
fitted, so fit errors enter only through the discarded (0, t_floor] sliver
and are reported in the error bound, amplified by |1/Gamma(s/2)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ConfigError, ConvergenceError, DomainError
from .gammafn import rgamma
from .partition import (
    OscillationProfile,
    TailCertificate,
    _truncation_bound,
    fit_tower_profiles,
    partition_value,
    tail_certificate,
)
from .spectrum import FractalModel, SpectrumBatch

_MODES = ("lemma", "expbounds")
_POLE_TOL = 1e-6
_GAMMA_CAP = 20.0


@dataclass(frozen=True)
class ZetaPoint:
    s: complex
    gamma: float
    value: complex
    method: str
    error_bound: float


@dataclass(frozen=True)
class PoleEstimate:
    position: complex
    m: int
    n: int
    k_index: int
    residue: complex | None = None
    source: str = "predicted"
    match_distance: float | None = None
    order: int | None = None
    note: str | None = None


def _check_mode(mode: str) -> None:
    if mode not in _MODES:
        raise ConfigError(f"mode must be one of {_MODES}, got {mode!r}")


# ---------------------------------------------------------------- direct sum


def zeta_direct(batch: SpectrumBatch, s: complex, gamma: float = 0.0) -> ZetaPoint:
    """sum mult*(lambda+gamma)^(-s/2) over the batch, with tail bound.

    Truncated batches are refused at or below the convergence abscissa
    (Re s <= d_S); complete finite spectra evaluate anywhere."""
    if len(batch) == 0:
        raise ConfigError("empty batch")
    s = complex(s)
    gamma = float(gamma)
    if batch.lambda_min + gamma <= 0:
        raise ConfigError(f"gamma={gamma} makes lambda_min+gamma nonpositive")
    sigma = 0.5 * s.real
    p = batch.tail_exponent
    bound = 0.0
    if batch.tail_constant > 0.0:
        threshold = batch.model.d_S if batch.model is not None else 2.0 * p
        if s.real <= threshold + 1e-6:
            raise DomainError(
                f"direct series certified only for Re s > {threshold:.8g}; use zeta_continued"
            )
        lam = batch.cutoff
        # N(x) <= C*x^p gives tail <= C*sigma/(sigma-p)*cutoff^(p-sigma),
        # with a (1+gamma/cutoff) factor when gamma < 0
        factor = max(1.0, (1.0 + gamma / lam) ** (-sigma - 1.0))
        bound = batch.tail_constant * sigma / (sigma - p) * lam ** (p - sigma) * factor
    value = _kernels.power_sum(batch.values, batch.mults, 0.5 * s, gamma)
    bound += 1e-15 * abs(value) * math.log(max(len(batch), 2))
    return ZetaPoint(s=s, gamma=gamma, value=value, method="direct", error_bound=float(bound))


# -------------------------------------------------- exponential Mellin moment


def _exp_moment(z: complex, gamma: float, j_cap: int = 130) -> complex:
    """E(z, gamma) = integral_0^1 t^(z-1) e^(-gamma t) dt
                   = sum_j (-gamma)^j / (j! * (z+j)).

    Entire continuation in z apart from simple poles at z = 0, -1, -2, ...
    whose residues carry the (-gamma)^j/j! factor. Converges fast for
    |gamma| <= 20 (terms peak near j = |gamma|)."""
    total = 0j
    coef = 1.0
    for j in range(j_cap + 1):
        den = z + j
        if den == 0:
            raise DomainError(f"Mellin moment evaluated at its pole z={-j}")
        total += coef / den
        coef *= -gamma / (j + 1)
        if abs(coef) < 1e-17 * max(1.0, abs(total)):
            return total
    raise ConvergenceError(f"moment series not settled after {j_cap} terms (gamma={gamma})")


# ---------------------------------------------------------------- quadrature


def _gl_log_nodes(a: float, b: float, n_panels: int, deg: int):
    """Composite Gauss-Legendre nodes/weights for integral_a^b f(t) dt,
    panels log-spaced and mapped through t = e^u (weights absorb dt = t du)."""
    x, w = np.polynomial.legendre.leggauss(deg)
    edges = np.linspace(math.log(a), math.log(b), n_panels + 1)
    ts, ws = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        u = mid + half * x
        t = np.exp(u)
        ts.append(t)
        ws.append(w * half * t)
    return np.concatenate(ts), np.concatenate(ws)


# ------------------------------------------------------------------- context


@dataclass
class ContinuationContext:
    """Frozen numerical setup for continuation on one batch: fitted tower
    profiles, residual values on the quadrature grids, truncation bounds at
    the nodes, and the long-time tail certificate. Everything here is
    independent of (s, gamma), so one context serves a whole grid."""

    batch: SpectrumBatch
    model: FractalModel
    profiles: list[OscillationProfile]
    t_floor: float
    q3_t_max: float
    tail: TailCertificate
    fit_eps: tuple[float, ...]
    params: dict
    q2_fine: tuple
    q2_coarse: tuple
    q3_fine: tuple
    q3_coarse: tuple


_CTX_CACHE: dict[int, ContinuationContext] = {}


def _default_params(batch: SpectrumBatch, model: FractalModel) -> dict:
    """Heuristic continuation parameters when a config supplies none."""
    tau = model.tau
    t = 1.0 / tau
    t_acc = None
    while t > 1e-200:
        smp = partition_value(batch, t)
        if smp.truncation_error >= 1e-8 * smp.value:
            break
        t_acc = t
        t /= tau
    if t_acc is None:
        raise ConfigError("spectrum too short for continuation; no certified window")
    n_towers = len(model.alpha_exponents)
    w_last = max(min(3e-4, 0.25 / tau), t_acc)
    if n_towers == 1:
        windows = [t_acc]
    else:
        ratio = (w_last / t_acc) ** (1.0 / (n_towers - 1))
        windows = [t_acc * ratio**k for k in range(n_towers)]
    return {
        "windows": windows,
        "n_maxes": [3] + [2] * (n_towers - 1),
        "t_floor": max(w_last / 20.0, t_acc),
        "q2_panels": 28,
        "q3_t_max": min(max(6.0, 1.0 + 44.0 / batch.lambda_min), 60.0),
        "q3_panels": 12,
        "samples": 512,
    }


def build_context(
    batch: SpectrumBatch, model: FractalModel, params: dict | None = None
) -> ContinuationContext:
    if model is None:
        raise ConfigError("continuation needs a model")
    if len(batch) == 0:
        raise ConfigError("empty batch")
    if batch.tail_constant == 0.0:
        raise ConfigError(
            "complete finite spectra have entire zeta functions; "
            "continuation applies to tail-certified batches"
        )
    merged = _default_params(batch, model)
    if params:
        merged.update(params)
    windows = [float(w) for w in merged["windows"]]
    n_maxes = [int(n) for n in merged["n_maxes"]]
    t_floor = float(merged["t_floor"])
    q3_t_max = float(merged["q3_t_max"])
    if not 0.0 < t_floor < 1.0:
        raise ConfigError(f"t_floor must lie in (0, 1), got {t_floor}")
    if q3_t_max <= 1.0:
        raise ConfigError(f"q3_t_max must exceed 1, got {q3_t_max}")

    profiles = fit_tower_profiles(
        batch, model, windows, n_maxes, samples=int(merged.get("samples", 512))
    )
    tail = tail_certificate(batch, t_max=max(20.0, q3_t_max))

    def grid(a, b, panels, deg, subtract_towers):
        t, w = _gl_log_nodes(a, b, panels, deg)
        f = _kernels.heat_sum_grid(batch.values, batch.mults, t).astype(complex)
        if subtract_towers:
            for prof in profiles:
                f = f - prof.term(t)
        tb = np.array([_truncation_bound(batch, float(x)) for x in t])
        return (t, w, np.log(t), f, tb)

    q2p = int(merged["q2_panels"])
    q3p = int(merged["q3_panels"])
    return ContinuationContext(
        batch=batch,
        model=model,
        profiles=profiles,
        t_floor=t_floor,
        q3_t_max=q3_t_max,
        tail=tail,
        fit_eps=tuple(max(p.fit_residual, 1e-12) for p in profiles),
        params=dict(merged),
        q2_fine=grid(t_floor, 1.0, q2p, 16, True),
        q2_coarse=grid(t_floor, 1.0, q2p, 8, True),
        q3_fine=grid(1.0, q3_t_max, q3p, 16, False),
        q3_coarse=grid(1.0, q3_t_max, q3p, 8, False),
    )


def _resolve_context(
    batch: SpectrumBatch, model: FractalModel, context: ContinuationContext | None
) -> ContinuationContext:
    if context is not None:
        if context.batch is not batch:
            raise ConfigError("context was built for a different batch")
        return context
    cached = _CTX_CACHE.get(id(batch))
    if cached is not None and cached.batch is batch and cached.model == model:
        return cached
    ctx = build_context(batch, model)
    _CTX_CACHE[id(batch)] = ctx
    return ctx


# -------------------------------------------------------------- continuation


def _closed_sum(profiles, sigma: complex, gamma: float):
    """Tower integrals over [0,1] in closed form, plus per-tower sums of
    |E| for propagating coefficient uncertainty."""
    total = 0j
    abs_sums = []
    for prof in profiles:
        omega = 2.0 * math.pi / prof.period
        acc = 0j
        absacc = 0.0
        for n, g in sorted(prof.coefficients.items()):
            e = _exp_moment(sigma - prof.exponent - 1j * omega * n, gamma)
            acc += g * e
            absacc += abs(e)
        total += acc
        abs_sums.append(absacc)
    return total, abs_sums


def _quad_piece(nodes, sigma: complex, gamma: float):
    """sum w * t^(sigma-1) * f * e^(-gamma t) and the matching truncation
    integral from the per-node tail bounds."""
    t, w, logt, f, tb = nodes
    kernel = np.exp((sigma - 1.0) * logt - gamma * t)
    val = complex(np.sum(w * f * kernel))
    trunc = float(np.sum(w * tb * np.abs(kernel)))
    return val, trunc


def _window_factor(c: float, t_floor: float) -> float:
    # integral_{t_floor}^1 t^(c-1) dt, stable through c = 0
    if abs(c) < 1e-12:
        return math.log(1.0 / t_floor)
    return (1.0 - t_floor**c) / c


def _tail_term(tail: TailCertificate, sigma_re: float, gamma: float, t_max: float) -> float:
    """Bound on the discarded integral beyond t_max using Z <= c3*e^(-c4 t)
    (valid for all t >= 1 because Z*e^(c4 t) is decreasing)."""
    b = tail.c4 + gamma - max(0.0, sigma_re - 1.0) / t_max
    if b <= 0.0:
        raise ConfigError("q3_t_max too small for this gamma; raise it in the config")
    return tail.c3 * t_max ** (sigma_re - 1.0) * math.exp(-(tail.c4 + gamma) * t_max) / b


def _guard_pole_proximity(model: FractalModel, s: complex, gamma: float, mode: str) -> None:
    spacing = model.lattice_spacing
    ks = [0] if mode == "lemma" else range(len(model.alpha_exponents))
    n0 = round(s.imag / spacing)
    for k in ks:
        beta = 2.0 * model.alpha_exponents[k]
        if gamma == 0.0:
            ms = (0,)
        else:
            ms = range(0, max(1, math.ceil((beta - s.real) / 2.0) + 2))
        for m in ms:
            for n in (n0 - 1, n0, n0 + 1):
                pole = complex(beta - 2.0 * m, n * spacing)
                if abs(s - pole) < _POLE_TOL:
                    raise DomainError(f"s={s} is within {_POLE_TOL:g} of the pole at {pole}")


def zeta_continued(
    batch: SpectrumBatch,
    model: FractalModel,
    s: complex,
    gamma: float = 0.0,
    mode: str = "expbounds",
    context: ContinuationContext | None = None,
) -> ZetaPoint:
    """Meromorphic continuation of the spectral zeta via the Mellin split.

    lemma mode models the trace expansion with a power-law remainder and
    stops at Re s = 2*d_boundary/d_w; expbounds mode assumes the remainder
    beyond the listed towers is exponentially small and continues across
    the whole plane. Both evaluate the same bracket; they differ in the
    admissible domain and in which towers are credited with poles."""
    _check_mode(mode)
    if model is None:
        raise ConfigError("continuation needs a model")
    if len(batch) == 0:
        raise ConfigError("empty batch")
    s = complex(s)
    gamma = float(gamma)
    if abs(gamma) > _GAMMA_CAP:
        raise ConfigError(f"|gamma| is capped at {_GAMMA_CAP:g}")
    if batch.lambda_min + gamma <= 1e-12:
        raise ConfigError(f"gamma={gamma} must exceed -lambda_min={-batch.lambda_min}")
    if mode == "lemma" and s.real <= 2.0 * model.d_boundary / model.d_w + 1e-9:
        raise DomainError(
            f"lemma mode is certified only for Re s > {2.0 * model.d_boundary / model.d_w:.6g}"
        )
    _guard_pole_proximity(model, s, gamma, mode)
    ctx = _resolve_context(batch, model, context)

    sigma = 0.5 * s
    closed, abs_sums = _closed_sum(ctx.profiles, sigma, gamma)
    q2f, q2_trunc = _quad_piece(ctx.q2_fine, sigma, gamma)
    q2c, _ = _quad_piece(ctx.q2_coarse, sigma, gamma)
    q3f, q3_trunc = _quad_piece(ctx.q3_fine, sigma, gamma)
    q3c, _ = _quad_piece(ctx.q3_coarse, sigma, gamma)
    rg = rgamma(sigma)
    value = rg * (closed + q2f + q3f)

    sig_re = sigma.real
    eps_part = 0.0
    for k, prof in enumerate(ctx.profiles):
        c = sig_re - prof.exponent
        eps_part += ctx.fit_eps[k] * (abs_sums[k] + _window_factor(c, ctx.t_floor))
    bound = abs(rg) * (
        eps_part
        + abs(q2f - q2c)
        + abs(q3f - q3c)
        + q2_trunc
        + q3_trunc
        + _tail_term(ctx.tail, sig_re, gamma, ctx.q3_t_max)
    )
    bound += 1e-14 * abs(value)
    return ZetaPoint(
        s=s, gamma=gamma, value=value, method=f"continued-{mode}", error_bound=float(bound)
    )


# -------------------------------------------------------------- Mellin split


@dataclass(frozen=True)
class MellinSplit:
    """The three Mellin pieces, each already divided by Gamma(s/2):
    I1 = leading tower over [0,1], I2 = residual over [t_lo,1],
    I3 = full trace over [1,t_max]. reconstruct() approximates zeta."""

    s_half: complex
    gamma: float
    I1: complex
    I2: complex
    I3: complex
    i1_mode: str
    error_bound: float

    def reconstruct(self) -> complex:
        return self.I1 + self.I2 + self.I3


def mellin_split_numeric(
    batch: SpectrumBatch,
    model: FractalModel,
    s_half: complex,
    gamma: float = 0.0,
    profile: OscillationProfile | None = None,
    i1_mode: str = "closed",
) -> MellinSplit:
    """Single-tower Mellin split of Gamma(s/2)*zeta(s,gamma).

    With i1_mode="closed" the tower piece uses E(z,gamma) and is valid on
    the continued domain; "numeric" integrates it in u = log(1/t) and only
    converges for Re(s_half) > alpha_0, which is the point of the contrast."""
    if len(batch) == 0:
        raise ConfigError("empty batch")
    s_half = complex(s_half)
    gamma = float(gamma)
    if batch.lambda_min + gamma <= 0:
        raise ConfigError(f"gamma={gamma} makes lambda_min+gamma nonpositive")
    if i1_mode not in ("closed", "numeric"):
        raise ConfigError(f"i1_mode must be 'closed' or 'numeric', got {i1_mode!r}")
    if profile is None:
        profile = _resolve_context(batch, model, None).profiles[0]
    if profile.k_index != 0:
        raise ConfigError("the split subtracts the leading tower; pass its profile")
    alpha0 = profile.exponent
    omega = 2.0 * math.pi / profile.period
    rg = rgamma(s_half)

    if i1_mode == "closed":
        i1 = 0j
        for n, g in sorted(profile.coefficients.items()):
            i1 += g * _exp_moment(s_half - alpha0 - 1j * omega * n, gamma)
        i1_drop = 0.0
    else:
        c = s_half.real - alpha0
        if c < 0.05:
            raise DomainError(
                "numeric tower integral diverges: it needs Re(s_half) - alpha_0 >= 0.05"
            )
        u_max = 42.0 / c
        x, wgl = np.polynomial.legendre.leggauss(16)
        edges = u_max * np.linspace(0.0, 1.0, 25) ** 2
        i1 = 0j
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            u = 0.5 * (hi + lo) + half * x
            integrand = np.zeros_like(u, dtype=complex)
            for n, g in sorted(profile.coefficients.items()):
                integrand += g * np.exp(-u * (s_half - alpha0 - 1j * omega * n))
            integrand *= np.exp(-gamma * np.exp(-u))
            i1 += half * complex(np.sum(wgl * integrand))
        amp = sum(abs(g) for g in profile.coefficients.values())
        i1_drop = amp * math.exp(-42.0) / c

    t_lo = max(40.0 / batch.cutoff, 1e-9)
    if t_lo >= 1.0:
        raise ConfigError("spectrum too short: the certified region does not reach t = 1")
    tail = tail_certificate(batch)
    t_max = min(1.0 + 41.0 / (batch.lambda_min + gamma), 400.0)

    def residual_piece(panels, deg):
        t, w = _gl_log_nodes(t_lo, 1.0, panels, deg)
        f = _kernels.heat_sum_grid(batch.values, batch.mults, t) - profile.term(t)
        kernel = np.exp((s_half - 1.0) * np.log(t) - gamma * t)
        tb = np.array([_truncation_bound(batch, float(x)) for x in t])
        return complex(np.sum(w * f * kernel)), float(np.sum(w * tb * np.abs(kernel)))

    def tail_piece(panels, deg):
        t, w = _gl_log_nodes(1.0, t_max, panels, deg)
        f = _kernels.heat_sum_grid(batch.values, batch.mults, t)
        kernel = np.exp((s_half - 1.0) * np.log(t) - gamma * t)
        tb = np.array([_truncation_bound(batch, float(x)) for x in t])
        return complex(np.sum(w * f * kernel)), float(np.sum(w * tb * np.abs(kernel)))

    i2, i2_trunc = residual_piece(24, 16)
    i2c, _ = residual_piece(24, 8)
    i3, i3_trunc = tail_piece(12, 16)
    i3c, _ = tail_piece(12, 8)

    # the discarded residual over (0, t_lo]: the next tower is O(t^0), so
    # scale its observed size near t_lo by integral_0^{t_lo} t^(Re s_half - 1)
    probe = np.exp(np.linspace(math.log(t_lo), math.log(t_lo) + 1.0, 16))
    amp_rem = float(
        np.max(
            np.abs(_kernels.heat_sum_grid(batch.values, batch.mults, probe) - profile.term(probe))
        )
    )
    c2 = s_half.real
    # 1.1 keeps the bound strictly above the dropped integral even when the
    # residual is exactly flat below t_lo and the two computations would tie
    drop = 1.1 * amp_rem * t_lo**c2 / c2 if c2 > 0 else math.inf
    beyond = _tail_term(tail, s_half.real, gamma, t_max)

    err = abs(rg) * (
        i1_drop + drop + abs(i2 - i2c) + abs(i3 - i3c) + i2_trunc + i3_trunc + beyond
    )
    split = MellinSplit(
        s_half=s_half,
        gamma=gamma,
        I1=rg * i1,
        I2=rg * i2,
        I3=rg * i3,
        i1_mode=i1_mode,
        error_bound=float(err + 1e-15 * abs(rg * (i1 + i2 + i3))),
    )
    return split


# --------------------------------------------------------------------- poles


def predicted_poles(
    model: FractalModel,
    region: Sequence[float],
    gamma: float = 0.0,
    mode: str = "expbounds",
) -> list[PoleEstimate]:
    """Lattice of predicted poles inside region = (re_lo, re_hi, im_lo, im_hi).

    Tower k contributes s = 2*alpha_k - 2m + i*n*(4*pi/log tau); the m > 0
    translates appear only when gamma != 0 (they ride the e^(-gamma t)
    expansion). lemma mode credits only the leading tower with poles."""
    _check_mode(mode)
    re_lo, re_hi, im_lo, im_hi = (float(x) for x in region)
    if re_lo > re_hi or im_lo > im_hi:
        raise ConfigError(f"empty region {region}")
    spacing = model.lattice_spacing
    ks = [0] if mode == "lemma" else list(range(len(model.alpha_exponents)))
    out = []
    seen = set()
    for k in ks:
        beta = 2.0 * model.alpha_exponents[k]
        if gamma == 0.0:
            ms = [0]
        else:
            ms = range(0, max(0, math.ceil((beta - re_lo) / 2.0)) + 1)
        for m in ms:
            re = beta - 2.0 * m
            if not (re_lo - 1e-9 <= re <= re_hi + 1e-9):
                continue
            n_lo = math.ceil((im_lo - 1e-9) / spacing)
            n_hi = math.floor((im_hi + 1e-9) / spacing)
            for n in range(n_lo, n_hi + 1):
                pos = complex(re, n * spacing)
                key = (round(pos.real * 1e9), round(pos.imag * 1e9))
                if key in seen:
                    continue
                seen.add(key)
                out.append(PoleEstimate(position=pos, m=m, n=n, k_index=k))
    out.sort(key=lambda p: (-p.position.real, p.position.imag))
    return out


def residue_from_oscillation(
    profile: OscillationProfile,
    model: FractalModel,
    n: int,
    floor_rel: float = 1e-8,
) -> PoleEstimate:
    """Residue at s = d_S + i*n*(4*pi/log tau) from the fitted g_n:
    residue = 2*g_n / Gamma(d_S/2 + 2*pi*i*n/log tau).

    When |g_n| sits below floor_rel*|g_0| the fit cannot distinguish the
    coefficient from its own noise floor; the estimate then carries
    residue=None and says so in its note."""
    if profile.k_index != 0:
        raise ConfigError("oscillation residues apply to the leading tower only")
    if n not in profile.coefficients:
        raise ConfigError(f"profile carries no coefficient for n={n}")
    g = profile.coefficients[n]
    g0 = abs(profile.coefficients[0])
    omega = 2.0 * math.pi * n / profile.period
    pos = complex(2.0 * profile.exponent, 2.0 * omega)
    if abs(g) < floor_rel * max(g0, 1e-300):
        return PoleEstimate(
            position=pos,
            m=0,
            n=n,
            k_index=profile.k_index,
            residue=None,
            source="predicted",
            note="indistinguishable-from-zero",
        )
    return PoleEstimate(
        position=pos,
        m=0,
        n=n,
        k_index=profile.k_index,
        residue=2.0 * g * rgamma(complex(profile.exponent, omega)),
        source="predicted",
    )


def locate_poles(
    batch: SpectrumBatch,
    model: FractalModel,
    region: Sequence[float],
    gamma: float = 0.0,
    mode: str = "expbounds",
    context: ContinuationContext | None = None,
    n_points: int = 64,
) -> list[PoleEstimate]:
    """Confirm predicted poles by contour moments of the continuation.

    Around each candidate, zeta is sampled on a circle (midpoint rule);
    M0 = residue, M1/M0 = pole position, and the winding number of the
    values audits the pole order. Candidates whose M0 is below 1e-9 are
    dropped as undetected."""
    candidates = predicted_poles(model, region, gamma, mode)
    ctx = _resolve_context(batch, model, context)
    all_pos = [c.position for c in candidates]
    located = []
    for cand in candidates:
        others = [p for p in all_pos if p != cand.position]
        r = 0.4
        if others:
            r = min(r, 0.45 * min(abs(cand.position - p) for p in others))
        r = max(r, 2e-5)
        est = _contour_probe(batch, model, cand, r, all_pos, gamma, mode, ctx, n_points)
        if est is not None:
            located.append(est)
    return located


def _contour_probe(batch, model, cand, r0, all_pos, gamma, mode, ctx, n_points):
    theta = 2.0 * math.pi * (np.arange(n_points) + 0.5) / n_points
    ring = np.exp(1j * theta)
    r = r0
    for _ in range(3):
        zs = cand.position + r * ring
        near = min(abs(z - p) for z in zs for p in all_pos)
        if near < 1e-4:
            r *= 1.15
            continue
        try:
            vals = np.array(
                [
                    zeta_continued(batch, model, z, gamma=gamma, mode=mode, context=ctx).value
                    for z in zs
                ]
            )
        except DomainError:
            r *= 1.15
            continue
        m0 = complex(np.mean(vals * (zs - cand.position)))
        if abs(m0) < 1e-9:
            return None
        m1 = complex(np.mean(vals * zs * (zs - cand.position)))
        pos = m1 / m0
        angles = np.angle(vals)
        steps = np.diff(np.concatenate([angles, angles[:1]]))
        steps = (steps + math.pi) % (2.0 * math.pi) - math.pi
        order = int(round(-float(np.sum(steps)) / (2.0 * math.pi)))
        return PoleEstimate(
            position=pos,
            m=cand.m,
            n=cand.n,
            k_index=cand.k_index,
            residue=m0,
            source="located",
            match_distance=abs(pos - cand.position),
            order=order,
            note=f"contour radius {r:.6g}",
        )
    raise ConvergenceError(f"no admissible contour around {cand.position} after 3 inflations")


# ------------------------------------------------------- functional equation


@dataclass(frozen=True)
class FunctionalEqResult:
    s: complex
    gamma: float
    derivative: complex
    fd_uncertainty: float
    paper_form: float
    direct_form: float


def functional_eq_residual(
    batch: SpectrumBatch,
    s: complex,
    gamma: float,
    h: float = 1e-4,
    tol: float = 1e-5,
) -> FunctionalEqResult:
    """Check d/dgamma zeta(s,gamma) = -(s/2) zeta(s+2,gamma) by Richardson-
    extrapolated central differences of the direct series.

    direct_form is |D + (s/2) zeta(s+2,gamma)|, the residual of term-by-term
    differentiation; paper_form uses gamma as the prefactor instead. Both are
    always reported so the two candidate prefactors can be contrasted."""
    s = complex(s)
    gamma = float(gamma)
    z2 = zeta_direct(batch, s + 2.0, gamma)

    def diff(step):
        hi = zeta_direct(batch, s, gamma + step)
        lo = zeta_direct(batch, s, gamma - step)
        # truncation cancels term-by-term in the difference; what survives
        # is float cancellation noise of order ulp(|zeta|)/step
        noise = 1e-16 * (abs(hi.value) + abs(lo.value)) / (2.0 * step)
        return (hi.value - lo.value) / (2.0 * step), noise

    d_h, b_h = diff(h)
    d_h2, b_h2 = diff(0.5 * h)
    d = (4.0 * d_h2 - d_h) / 3.0
    unc = abs(d - d_h2) + b_h + b_h2
    if unc > tol * max(1.0, abs(d)):
        raise ConvergenceError(
            f"finite-difference derivative uncertain: {unc:.3e} > {tol:g}*max(1,|D|)"
        )
    return FunctionalEqResult(
        s=s,
        gamma=gamma,
        derivative=d,
        fd_uncertainty=float(unc),
        paper_form=float(abs(d + gamma * z2.value)),
        direct_form=float(abs(d + 0.5 * s * z2.value)),
    )
