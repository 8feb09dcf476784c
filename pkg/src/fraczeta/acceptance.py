"""The executable acceptance suite.

Each criterion is a function taking a shared Workspace and returning a
CheckResult (pass/fail, a one-line detail, and artifact bytes). The CLI
`check` command and the pytest suite both drive these, so "the suite
passed" means the same thing everywhere.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import artifacts as art
from .errors import ConfigError
from .partition import (
    fit_tower_profiles,
    partition_grid,
    partition_value,
    tail_certificate,
    weyl_ratio,
)
from .spectrum import (
    SpectrumBatch,
    decimation_graph_spectrum,
    default_batch,
    dense_graph_spectrum,
    load_preset,
)
from .zeta import (
    build_context,
    functional_eq_residual,
    locate_poles,
    predicted_poles,
    zeta_continued,
    zeta_direct,
)
from .zetaref import riemann_zeta

_SEED = 20260815
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    artifacts: dict[str, bytes] = field(default_factory=dict)

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CRITERION {self.number}: {status} - {self.name}: {self.detail}"


class Workspace:
    """Lazily built shared state so one `check` run builds each spectrum
    and continuation context once."""

    def __init__(self):
        self._bundles = {}
        self._batches = {}
        self._contexts = {}

    def bundle(self, name: str):
        if name not in self._bundles:
            self._bundles[name] = load_preset(name)
        return self._bundles[name]

    def batch(self, name: str) -> SpectrumBatch:
        if name not in self._batches:
            self._batches[name] = default_batch(self.bundle(name))
        return self._batches[name]

    def context(self, name: str):
        if name not in self._contexts:
            bundle = self.bundle(name)
            self._contexts[name] = build_context(
                self.batch(name), bundle.model, bundle.continuation_params
            )
        return self._contexts[name]


# --------------------------------------------------------------- criterion 1


def criterion_1(ws: Workspace) -> CheckResult:
    """Interval continuation vs pi^(-s) * zeta_R(s) on the standard grid."""
    t0 = time.time()
    bundle = ws.bundle("interval")
    batch = ws.batch("interval")
    ctx = ws.context("interval")
    worst = 0.0
    rows = []
    count = 0
    for j in range(29):
        re = (j + 2) / 10.0
        for k in range(41):
            im = (k - 20) / 2.0
            s = complex(re, im)
            if abs(s - 1.0) < 0.05:
                continue
            zc = zeta_continued(batch, bundle.model, s, context=ctx)
            ref = complex(math.pi) ** (-s) * riemann_zeta(s)
            err = abs(zc.value - ref)
            worst = max(worst, err)
            count += 1
            rows.append(
                (
                    art.fnum(re),
                    art.fnum(im),
                    art.fnum(zc.value.real),
                    art.fnum(zc.value.imag),
                    art.fnum(ref.real),
                    art.fnum(ref.imag),
                    art.fnum(err),
                    art.fnum(zc.error_bound),
                )
            )
    elapsed = time.time() - t0
    passed = worst <= 1e-4 and elapsed < 120.0
    detail = f"worst |zeta - pi^-s zeta_R| = {worst:.3e} over {count} grid points (tol 1e-4), {elapsed:.1f}s"
    csv = art.csv_bytes(
        "Re_s,Im_s,Re_zeta,Im_zeta,Re_ref,Im_ref,abs_err,error_bound", rows
    )
    return CheckResult(1, "interval-riemann oracle grid", passed, detail, {"acc1_interval_grid.csv": csv})


# --------------------------------------------------------------- criterion 2


def criterion_2(ws: Workspace) -> CheckResult:
    """Exactly one interval pole in the window, at 1 with residue 1/pi."""
    bundle = ws.bundle("interval")
    batch = ws.batch("interval")
    region = (0.5, 1.5, -2.0, 2.0)
    located = locate_poles(batch, bundle.model, region, context=ws.context("interval"))
    ok = len(located) == 1
    detail = f"{len(located)} pole(s) located in Re(0.5,1.5) x |Im|<=2"
    if ok:
        p = located[0]
        pos_err = abs(p.position - 1.0)
        res_err = abs(p.residue - 1.0 / math.pi)
        ok = pos_err <= 1e-3 and res_err <= 1e-3
        detail = (
            f"pole at {p.position.real:.9f}{p.position.imag:+.2e}i "
            f"(|pos-1|={pos_err:.2e}), residue err vs 1/pi = {res_err:.2e} (tol 1e-3)"
        )
    blob = art.poles_json(
        predicted_poles(bundle.model, region), located, region, 0.0, "expbounds"
    )
    return CheckResult(2, "interval pole and residue", ok, detail, {"acc2_interval_poles.json": blob})


# --------------------------------------------------------------- criterion 3


def toy_sample_points(model) -> list[complex]:
    """50 deterministic off-lattice points, including Re(s) < d_S.

    Low-Re points stay at moderate |Im| and high-|Im| points stay right of
    d_S, because the reciprocal-gamma factor amplifies bracket error as Re
    falls; any point near the pole lattice is nudged right."""
    pts = []
    for j in range(35):
        re = model.d_S - 0.35 + 1.85 * ((j * _GOLDEN) % 1.0)
        im = -6.0 + 12.0 * ((j * 0.381966) % 1.0)
        pts.append(complex(re, im))
    for j in range(15):
        re = model.d_S + 0.1 + 1.4 * ((j * _GOLDEN) % 1.0)
        im = (6.0 + 3.0 * ((j * 0.381966) % 1.0)) * (1.0 if j % 2 == 0 else -1.0)
        pts.append(complex(re, im))
    spacing = model.lattice_spacing
    out = []
    for s in pts:
        for n in (-1, 0, 1):
            if abs(s - complex(model.d_S, n * spacing)) < 0.35:
                s += 0.4
                break
        out.append(s)
    return out


def criterion_3(ws: Workspace) -> CheckResult:
    """Toy lattice: pole positions/residues and 50-point closed-form match."""
    bundle = ws.bundle("toy")
    batch = ws.batch("toy")
    m = bundle.model
    ctx = ws.context("toy")
    region = (m.d_S - 0.5, m.d_S + 0.5, -9.0, 9.0)
    located = locate_poles(batch, m, region, context=ctx)
    expected_res = 2.0 / math.log(5.0)
    ok = len(located) == 3
    pos_err = res_err = math.inf
    if ok:
        pos_err = max(
            abs(p.position - complex(m.d_S, 7.808556 * p.n)) for p in located
        )
        res_err = max(abs(p.residue - expected_res) for p in located)
        ok = pos_err <= 1e-3 and res_err <= 1e-3
    worst = 0.0
    rows = []
    for s in toy_sample_points(m):
        zc = zeta_continued(batch, m, s, context=ctx)
        ref = 1.0 / (1.0 - 3.0 * complex(5.0) ** (-0.5 * s))
        err = abs(zc.value - ref)
        worst = max(worst, err)
        rows.append(
            (
                art.fnum(s.real),
                art.fnum(s.imag),
                art.fnum(zc.value.real),
                art.fnum(zc.value.imag),
                art.fnum(err),
                art.fnum(zc.error_bound),
            )
        )
    ok = ok and worst <= 1e-6
    detail = (
        f"{len(located)} poles (pos err {pos_err:.2e}, residue err {res_err:.2e}, tol 1e-3); "
        f"worst off-lattice err {worst:.3e} over 50 points (tol 1e-6)"
    )
    blobs = {
        "acc3_toy_poles.json": art.poles_json(
            predicted_poles(m, region), located, region, 0.0, "expbounds"
        ),
        "acc3_toy_offlattice.csv": art.csv_bytes(
            "Re_s,Im_s,Re_zeta,Im_zeta,abs_err,error_bound", rows
        ),
    }
    return CheckResult(3, "toy-model pole lattice", ok, detail, blobs)


# --------------------------------------------------------------- criterion 4


def criterion_4(ws: Workspace) -> CheckResult:
    """Decimation-generated gasket spectra equal the dense eigensolver's."""
    bundle = ws.bundle("gasket")
    worst = 0.0
    ok = True
    details = []
    blobs = {}
    for level in range(1, 5):
        dense = dense_graph_spectrum(level, model=bundle.model)
        decim = decimation_graph_spectrum(level, bundle.decimation, model=bundle.model)
        if len(dense) != len(decim) or dense.count != decim.count:
            ok = False
            details.append(f"L{level}: count mismatch")
            continue
        verr = float(np.max(np.abs(dense.values - decim.values)))
        mism = int(np.sum(dense.mults != decim.mults))
        worst = max(worst, verr)
        if verr > 1e-9 or mism:
            ok = False
        details.append(f"L{level}: {len(dense)} eigenvalues, err {verr:.1e}")
        if level == 4:
            blobs["acc4_gasket_dense_L4.csv"] = art.spectrum_csv(dense)
            blobs["acc4_gasket_decimation_L4.csv"] = art.spectrum_csv(decim)
    detail = "; ".join(details) + f" (tol 1e-9, multiplicities exact)"
    return CheckResult(4, "decimation vs dense oracle", ok, detail, blobs)


# --------------------------------------------------------------- criterion 5


def criterion_5(ws: Workspace) -> CheckResult:
    """Gasket Weyl-ratio periodicity and |g1|/g0 window stability."""
    bundle = ws.bundle("gasket")
    batch = ws.batch("gasket")
    m = bundle.model
    ts = np.exp(np.linspace(math.log(5.0**-8), math.log(5.0**-7), 100))
    samples = [partition_value(batch, float(t)) for t in ts]
    if not all(s.accepted for s in samples):
        return CheckResult(5, "gasket Weyl periodicity", False, "truncation not certified on window", {})
    w1 = np.array([weyl_ratio(batch, float(t)) for t in ts])
    w2 = np.array([weyl_ratio(batch, float(5.0 * t)) for t in ts])
    sup_w = float(np.max(np.abs(w1)))
    sup_diff = float(np.max(np.abs(w1 - w2)))
    ctx = ws.context("gasket")
    p0 = ctx.profiles[0]
    windows = [float(w) for w in bundle.continuation_params["windows"]]
    n_maxes = [int(n) for n in bundle.continuation_params["n_maxes"]]
    shifted = fit_tower_profiles(batch, m, [windows[0] * 5.0] + windows[1:], n_maxes)
    r_a = abs(p0.coefficients[1]) / p0.coefficients[0].real
    r_b = abs(shifted[0].coefficients[1]) / shifted[0].coefficients[0].real
    drift = abs(r_a - r_b) / max(r_a, r_b)
    ok = sup_diff <= 1e-2 * sup_w and drift <= 0.10
    detail = (
        f"sup|W(t)-W(5t)| = {sup_diff:.3e} vs 1e-2*supW = {1e-2 * sup_w:.3e}; "
        f"|g1|/g0 = {r_a:.6f} / {r_b:.6f} (drift {100 * drift:.2f}%, tol 10%)"
    )
    truncs = np.array([s.truncation_error for s in samples])
    blob = art.weyl_json(m.name, ts, w1, truncs, ctx.profiles)
    return CheckResult(5, "gasket Weyl periodicity", ok, detail, {"acc5_gasket_weyl.json": blob})


# --------------------------------------------------------------- criterion 6


def criterion_6(ws: Workspace) -> CheckResult:
    """gamma-derivative identity: direct_form < 1e-6 at 20 points, plus the
    single-eigenvalue paper_form value."""
    cases = []
    interval_s = [3.0, 3.5 + 1.5j, 4.0 - 2.0j, 2.5 + 0.8j, 5.0, 2.2 - 4.0j, 3.8 + 0.3j, 4.6 + 2.2j, 2.9 - 1.1j, 3.3 + 4.4j]
    toy_s = [2.0, 2.4 + 1.0j, 3.0 - 2.0j, 2.6 + 0.5j, 4.0, 2.1 - 3.0j, 3.4 + 1.7j, 2.8 + 2.5j, 3.9 - 0.9j, 2.3 + 3.6j]
    gammas = [0.25, 0.5, 1.0]
    worst = 0.0
    records = []
    for name, s_list in (("interval", interval_s), ("toy", toy_s)):
        batch = ws.batch(name)
        for i, s in enumerate(s_list):
            gamma = gammas[i % 3]
            res = functional_eq_residual(batch, s, gamma)
            worst = max(worst, res.direct_form)
            cases.append(res.direct_form)
            records.append(
                {
                    "model": name,
                    "s": {"re": s.real if isinstance(s, complex) else float(s), "im": s.imag if isinstance(s, complex) else 0.0},
                    "gamma": gamma,
                    "direct_form": res.direct_form,
                    "paper_form": res.paper_form,
                    "fd_uncertainty": res.fd_uncertainty,
                }
            )
    single = SpectrumBatch(
        model=None,
        values=np.array([1.0]),
        mults=np.array([1.0]),
        lambda_min=1.0,
        cutoff=1.0,
        tail_exponent=0.0,
        tail_constant=0.0,
    )
    res1 = functional_eq_residual(single, 3.0, 0.5)
    target = 1.5**-2.5
    single_err = abs(res1.paper_form - target)
    records.append(
        {
            "model": "single-eigenvalue",
            "s": {"re": 3.0, "im": 0.0},
            "gamma": 0.5,
            "direct_form": res1.direct_form,
            "paper_form": res1.paper_form,
            "paper_form_expected": target,
        }
    )
    ok = len(cases) == 20 and worst < 1e-6 and single_err <= 1e-6
    detail = (
        f"worst direct_form = {worst:.3e} over 20 points (tol 1e-6); "
        f"single-eigenvalue paper_form = {res1.paper_form:.9f} vs (1.5)^-2.5 (err {single_err:.2e})"
    )
    return CheckResult(6, "functional-equation residuals", ok, detail, {"acc6_functional_eq.json": art.json_bytes({"cases": records})})


# --------------------------------------------------------------- criterion 7


def criterion_7(ws: Workspace) -> CheckResult:
    """Exponential tail certificates verify on the audit grid for
    interval and gasket."""
    objs = []
    ok = True
    details = []
    for name in ("interval", "gasket"):
        batch = ws.batch(name)
        cert = tail_certificate(batch, t_max=20.0, audit_points=100)
        good = cert.verified and cert.c4 == batch.lambda_min
        ok = ok and good
        objs.append(art.tail_certificate_obj(name, cert))
        details.append(f"{name}: c3={cert.c3:.6g}, c4={cert.c4:.6g}, verified={cert.verified}")
    return CheckResult(
        7,
        "tail certificates",
        ok,
        "; ".join(details),
        {"acc7_tail_certificates.json": art.json_bytes({"certificates": objs})},
    )


# --------------------------------------------------------------- criterion 8


def criterion_8(ws: Workspace) -> CheckResult:
    """Continued and direct evaluations agree within declared bounds at 100
    seeded random points across the three spectrum models."""
    rng = np.random.default_rng(_SEED)
    counts = {"interval": 34, "toy": 33, "gasket": 33}
    violations = 0
    worst_margin = 0.0
    rows = []
    for name, n_pts in counts.items():
        bundle = ws.bundle(name)
        batch = ws.batch(name)
        ctx = ws.context(name)
        d_s = bundle.model.d_S
        for _ in range(n_pts):
            s = complex(d_s + 0.5 + 2.5 * rng.random(), -8.0 + 16.0 * rng.random())
            zc = zeta_continued(batch, bundle.model, s, context=ctx)
            zd = zeta_direct(batch, s)
            gap = abs(zc.value - zd.value)
            budget = zc.error_bound + zd.error_bound
            if gap > budget:
                violations += 1
            worst_margin = max(worst_margin, gap / budget if budget > 0 else math.inf)
            rows.append(
                (
                    name,
                    art.fnum(s.real),
                    art.fnum(s.imag),
                    art.fnum(gap),
                    art.fnum(budget),
                )
            )
    ok = violations == 0 and len(rows) == 100
    detail = f"{violations} violations over 100 points; worst gap/bound ratio {worst_margin:.3f}"
    return CheckResult(
        8,
        "overlap consistency",
        ok,
        detail,
        {"acc8_overlap.csv": art.csv_bytes("model,Re_s,Im_s,abs_gap,combined_bound", rows)},
    )


# --------------------------------------------------------------- criterion 9


def _representative_artifacts() -> dict[str, bytes]:
    """A fresh end-to-end computation of one artifact per kind, built from
    scratch (fresh batches, fits, contexts) so a byte-compare between two
    invocations exercises the whole pipeline."""
    blobs: dict[str, bytes] = {}

    toy = load_preset("toy")
    toy_batch = default_batch(toy)
    toy_ctx = build_context(toy_batch, toy.model, toy.continuation_params)
    region = (toy.model.d_S - 0.5, toy.model.d_S + 0.5, -1.0, 1.0)
    located = locate_poles(toy_batch, toy.model, region, context=toy_ctx)
    blobs["det_toy_poles.json"] = art.poles_json(
        predicted_poles(toy.model, region), located, region, 0.0, "expbounds"
    )
    pts = []
    for j in range(5):
        for k in range(5):
            s = complex(toy.model.d_S + 0.6 + 0.3 * j, -2.0 + k)
            pts.append(zeta_continued(toy_batch, toy.model, s, context=toy_ctx))
    blobs["det_toy_zeta.csv"] = art.zeta_csv(pts)

    gasket = load_preset("gasket")
    decim = decimation_graph_spectrum(6, gasket.decimation, model=gasket.model)
    blobs["det_gasket_spectrum.csv"] = art.spectrum_csv(decim)
    gasket_batch = default_batch(gasket)
    profiles = fit_tower_profiles(
        gasket_batch,
        gasket.model,
        [float(w) for w in gasket.continuation_params["windows"]],
        [int(n) for n in gasket.continuation_params["n_maxes"]],
    )
    ts = np.exp(np.linspace(math.log(5.0**-8), math.log(5.0**-7), 24))
    ws_vals = np.array([weyl_ratio(gasket_batch, float(t)) for t in ts])
    truncs = np.array([partition_value(gasket_batch, float(t)).truncation_error for t in ts])
    blobs["det_gasket_weyl.json"] = art.weyl_json(gasket.model.name, ts, ws_vals, truncs, profiles)

    interval = load_preset("interval")
    interval_batch = default_batch(interval)
    grid = np.exp(np.linspace(math.log(1e-4), math.log(10.0), 50))
    blobs["det_interval_partition.csv"] = art.partition_csv(partition_grid(interval_batch, grid))
    return blobs


def criterion_9(ws: Workspace) -> CheckResult:
    """Two independent in-process passes produce byte-identical artifacts."""
    first = _representative_artifacts()
    second = _representative_artifacts()
    diffs = [name for name in first if first[name] != second.get(name)]
    ok = not diffs and set(first) == set(second)
    detail = (
        f"{len(first)} artifacts byte-identical across two passes"
        if ok
        else f"byte differences in: {', '.join(diffs)}"
    )
    blobs = dict(first)
    blobs["acc9_determinism.json"] = art.json_bytes(
        {"artifacts": sorted(first), "byte_identical": ok}
    )
    return CheckResult(9, "artifact determinism", ok, detail, blobs)


# ----------------------------------------------------------------- the suite


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}

# `check --config X` runs the criteria that exercise model X; criterion 8
# spans all three models and runs only in the full suite.
SUBSETS = {
    "interval": (1, 2, 6, 7, 9),
    "gasket": (4, 5, 7, 9),
    "toy": (3, 6, 9),
}


def run(numbers=None, out_dir=None, on_result=None) -> list[CheckResult]:
    """Run the requested criteria (all nine by default); optionally write
    each criterion's artifacts under out_dir and report results as they
    finish."""
    if numbers is None:
        numbers = sorted(CRITERIA)
    else:
        numbers = sorted(set(int(n) for n in numbers))
        unknown = [n for n in numbers if n not in CRITERIA]
        if unknown:
            raise ConfigError(f"unknown criteria: {unknown}")
    ws = Workspace()
    results = []
    for n in numbers:
        result = CRITERIA[n](ws)
        if out_dir is not None:
            for name, data in result.artifacts.items():
                art.write_artifact(out_dir, name, data)
        results.append(result)
        if on_result is not None:
            on_result(result)
    return results


def subset_for(config_name: str):
    if config_name in SUBSETS:
        return SUBSETS[config_name]
    raise ConfigError(
        f"no acceptance subset for {config_name!r}; subsets exist for "
        f"{', '.join(sorted(SUBSETS))} (bare `check` runs everything)"
    )
