"""Fractal model parameter bundles and eigenvalue spectrum generators.

Spectra come from four sources: the unit-interval closed form, an exactly
self-similar geometric model, spectral decimation (preimages of a quadratic
map with multiplicity bookkeeping), and a dense graph-Laplacian eigensolve
that serves as the independent oracle for the decimation rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import tomli

from .errors import ConfigError, ConvergenceError

_CLUSTER_TOL = 1e-9
_DENSE_LEVEL_CAP = 6


@dataclass(frozen=True)
class FractalModel:
    """Parameter bundle for one self-similar Laplacian."""

    name: str
    N: int
    rho_F: float
    tau: float
    d_S: float
    d_f: float
    d_w: float
    d_boundary: float
    d_k_list: tuple[float, ...]

    @property
    def lattice_spacing(self) -> float:
        """Vertical spacing 4*pi/log(tau) of the predicted pole lattice."""
        return 4.0 * math.pi / math.log(self.tau)

    @property
    def alpha_exponents(self) -> tuple[float, ...]:
        """Heat-trace tower exponents d_k/d_w."""
        return tuple(dk / self.d_w for dk in self.d_k_list)


def make_model(
    N: int,
    rho_F,
    d_w: float,
    d_boundary: float = 0.0,
    d_k_list: Sequence[float] | None = None,
    name: str = "model",
) -> FractalModel:
    """Build a validated FractalModel; tau, d_S, d_f are derived.

    rho_F may be a float, Fraction, or exact-rational string like "5/3".
    """
    if not isinstance(N, int) or N < 2:
        raise ConfigError(f"cell count N must be an integer >= 2, got {N!r}")
    rho = Fraction(rho_F) if isinstance(rho_F, (str, Fraction)) else Fraction(rho_F).limit_denominator(10**15)
    if rho <= 0:
        raise ConfigError(f"rho_F must be positive, got {rho_F!r}")
    tau = float(N * rho)
    if tau <= 1.0:
        raise ConfigError(f"tau = N*rho_F = {tau} must exceed 1")
    if d_w <= 0:
        raise ConfigError(f"d_w must be positive, got {d_w}")
    d_S = 2.0 * math.log(N) / math.log(tau)
    d_f = d_S * d_w / 2.0
    if d_boundary < 0:
        raise ConfigError(f"d_boundary must be nonnegative, got {d_boundary}")
    if d_boundary >= d_f:
        raise ConfigError(f"d_boundary = {d_boundary} must be < d_f = {d_f}")
    if d_k_list is None:
        d_k_list = (d_f, d_boundary)
    d_k_list = tuple(float(d) for d in d_k_list)
    if abs(d_k_list[0] - d_f) > 1e-9 * max(1.0, d_f):
        raise ConfigError(f"d_k_list[0] = {d_k_list[0]} must equal d_f = {d_f}")
    if any(b >= a for a, b in zip(d_k_list, d_k_list[1:])):
        raise ConfigError("d_k_list must be strictly decreasing")
    if d_k_list[-1] < 0:
        raise ConfigError("d_k_list entries must be nonnegative")
    return FractalModel(
        name=name,
        N=N,
        rho_F=float(rho),
        tau=tau,
        d_S=d_S,
        d_f=d_f,
        d_w=float(d_w),
        d_boundary=float(d_boundary),
        d_k_list=d_k_list,
    )


@dataclass(frozen=True)
class SpectrumBatch:
    """Sorted eigenvalue/multiplicity pairs with a certified tail descriptor.

    tail_exponent/tail_constant bound the counting function beyond `cutoff`
    by C*lambda^p; tail_constant 0 declares the batch complete/exact.
    certificates, when present, hold one (iterations, delta) tuple per
    eigenvalue from the decimation-limit convergence test.
    """

    model: FractalModel | None
    values: np.ndarray
    mults: np.ndarray
    lambda_min: float
    cutoff: float
    tail_exponent: float
    tail_constant: float
    certificates: tuple = ()

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        mults = np.ascontiguousarray(self.mults, dtype=np.float64)
        if values.shape != mults.shape:
            raise ConfigError("values and multiplicities must align")
        if len(values):
            if values[0] <= 0.0:
                raise ConfigError("eigenvalues must be positive (zero mode excluded)")
            if np.any(np.diff(values) <= 0):
                raise ConfigError("eigenvalues must be strictly increasing")
            if np.any(mults < 1):
                raise ConfigError("multiplicities must be positive")
        values.setflags(write=False)
        mults.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mults", mults)

    @property
    def pairs(self) -> list[tuple[float, int]]:
        return [(float(v), int(m)) for v, m in zip(self.values, self.mults)]

    @property
    def count(self) -> int:
        return int(round(float(np.sum(self.mults))))

    def __len__(self) -> int:
        return len(self.values)


def _merge_pairs(pairs: Iterable[tuple[float, float]], tol: float = _CLUSTER_TOL) -> list[tuple[float, float]]:
    """Sort and merge near-equal eigenvalues (tolerance relative above 1)."""
    out: list[list[float]] = []
    for v, m in sorted(pairs):
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            prev_v, prev_m = out[-1]
            out[-1] = [(prev_v * prev_m + v * m) / (prev_m + m), prev_m + m]
        else:
            out.append([v, m])
    return [(v, m) for v, m in out]


def interval_spectrum(M: int, model: FractalModel | None = None) -> SpectrumBatch:
    """Dirichlet spectrum of the unit interval: (pi*n)^2, n = 1..M.

    Counting function is floor(sqrt(lambda)/pi), so the tail descriptor
    C = 1/pi, p = 1/2 is exact.
    """
    if M < 1:
        raise ConfigError(f"M must be >= 1, got {M}")
    n = np.arange(1, M + 1, dtype=np.float64)
    values = (math.pi * n) ** 2
    return SpectrumBatch(
        model=model,
        values=values,
        mults=np.ones(M),
        lambda_min=float(values[0]),
        cutoff=float(values[-1]),
        tail_exponent=0.5,
        tail_constant=1.0 / math.pi,
    )


def toy_geometric_spectrum(model: FractalModel, K: int) -> SpectrumBatch:
    """Exactly self-similar spectrum: tau^k with multiplicity N^k, k = 0..K."""
    if K < 0:
        raise ConfigError(f"K must be >= 0, got {K}")
    if K * math.log(model.N) > 62 * math.log(2):
        raise ConfigError(f"N^K overflows exact integer multiplicities at K={K}")
    k = np.arange(K + 1, dtype=np.float64)
    values = model.tau**k
    mults = np.array([float(model.N**int(i)) for i in range(K + 1)])
    return SpectrumBatch(
        model=model,
        values=values,
        mults=mults,
        lambda_min=float(values[0]),
        cutoff=float(values[-1]),
        tail_exponent=model.d_S / 2.0,
        tail_constant=model.N / (model.N - 1.0),
    )


# ---------------------------------------------------------------------------
# dense graph-Laplacian oracle


def _gasket_graph(level: int):
    """Level-m gasket graph: vertices in integer lattice coords, edge set,
    and the three boundary corner indices."""
    side = 2**level
    tris = [((0, 0), (side, 0), (0, side))]
    for _ in range(level):
        nxt = []
        for a, b, c in tris:
            ab = ((a[0] + b[0]) // 2, (a[1] + b[1]) // 2)
            ac = ((a[0] + c[0]) // 2, (a[1] + c[1]) // 2)
            bc = ((b[0] + c[0]) // 2, (b[1] + c[1]) // 2)
            nxt += [(a, ab, ac), (ab, b, bc), (ac, bc, c)]
        tris = nxt
    index: dict[tuple[int, int], int] = {}
    edges: set[tuple[int, int]] = set()
    for tri in tris:
        for p in tri:
            if p not in index:
                index[p] = len(index)
        for i in range(3):
            for j in range(i + 1, 3):
                u, v = index[tri[i]], index[tri[j]]
                edges.add((min(u, v), max(u, v)))
    corners = [index[(0, 0)], index[(side, 0)], index[(0, side)]]
    return index, edges, corners


def cluster_eigenvalues(w: np.ndarray, tol: float = _CLUSTER_TOL) -> list[tuple[float, int]]:
    """Group a sorted eigenvalue array into (value, multiplicity) clusters."""
    out: list[tuple[float, int]] = []
    for x in np.sort(np.asarray(w, dtype=np.float64)):
        if out and abs(x - out[-1][0]) < tol * max(1.0, abs(x)):
            v, m = out[-1]
            out[-1] = ((v * m + x) / (m + 1), m + 1)
        else:
            out.append((float(x), 1))
    return out


def graph_laplacian_spectrum(laplacian: np.ndarray, tol: float = _CLUSTER_TOL) -> list[tuple[float, int]]:
    """Clustered spectrum of a symmetric (Dirichlet-reduced) graph Laplacian."""
    mat = np.asarray(laplacian, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ConfigError("Laplacian must be a square matrix")
    if mat.size and not np.allclose(mat, mat.T):
        raise ConfigError("Laplacian must be symmetric")
    return cluster_eigenvalues(np.linalg.eigvalsh(mat)) if mat.size else []


def dense_graph_spectrum(
    level: int, model: FractalModel | None = None, cap: int = _DENSE_LEVEL_CAP
) -> SpectrumBatch:
    """Exact eigensolve of the level-m Dirichlet gasket graph Laplacian.

    Combinatorial normalization (degree on the diagonal), rows/columns at
    the three corners removed. This is the oracle the decimation rule is
    validated against; the matrix side grows like 3^level, so levels above
    `cap` are refused.
    """
    if level < 0:
        raise ConfigError(f"level must be >= 0, got {level}")
    if level > cap:
        raise ConfigError(f"dense oracle capped at level {cap} (3^{level}-scale eigensolve refused)")
    if model is not None and model.name != "gasket":
        raise ConfigError(f"dense oracle only builds gasket graphs, not {model.name!r}")
    if level == 0:
        # no interior vertices under the Dirichlet condition
        return SpectrumBatch(
            model=model,
            values=np.empty(0),
            mults=np.empty(0),
            lambda_min=math.inf,
            cutoff=0.0,
            tail_exponent=0.0,
            tail_constant=0.0,
        )
    index, edges, corners = _gasket_graph(level)
    n = len(index)
    lap = np.zeros((n, n))
    for u, v in edges:
        lap[u, v] -= 1.0
        lap[v, u] -= 1.0
        lap[u, u] += 1.0
        lap[v, v] += 1.0
    keep = np.array([i for i in range(n) if i not in set(corners)])
    pairs = graph_laplacian_spectrum(lap[np.ix_(keep, keep)])
    values = np.array([v for v, _ in pairs])
    mults = np.array([m for _, m in pairs], dtype=np.float64)
    return SpectrumBatch(
        model=model,
        values=values,
        mults=mults,
        lambda_min=float(values[0]),
        cutoff=float(values[-1]),
        tail_exponent=0.0,
        tail_constant=0.0,  # finite graph: the batch is complete
    )


# ---------------------------------------------------------------------------
# spectral decimation


@dataclass(frozen=True)
class NewbornRule:
    """Multiplicity of an eigenvalue born at each level m >= start_level:
    (a*base^(m+b) + c) / d, required to divide exactly."""

    value: float
    a: int
    b: int
    c: int
    d: int
    start_level: int = 2

    def multiplicity(self, base: int, level: int) -> int:
        num = self.a * base ** (level + self.b) + self.c
        if num % self.d:
            raise ConfigError(
                f"newborn multiplicity ({self.a}*{base}^({level}{self.b:+d})+{self.c})/{self.d} "
                f"is not an integer at level {level}"
            )
        mult = num // self.d
        if mult < 0:
            raise ConfigError(f"negative newborn multiplicity at level {level}")
        return mult


@dataclass(frozen=True)
class DecimationConfig:
    """Data driving spectral decimation for a quadratic map R(z) = c1*z + c2*z^2.

    branch_rule names the preimage branch tending to 0 ("descending").
    exceptional_set lists values never inherited as preimages; when the
    descending preimage of a value lands in the exceptional set, the limit
    detours through the other preimage once. Descendants inherit the
    ancestor multiplicity on both branches; newborn rules inject the rest.
    """

    linear_coeff: float
    quad_coeff: float
    renorm_factor: float
    branch_rule: str
    exceptional_set: tuple[float, ...]
    initial_level: int
    initial_pairs: tuple[tuple[float, int], ...]
    newborns: tuple[NewbornRule, ...]
    mult_base: int

    def __post_init__(self):
        if self.quad_coeff == 0:
            raise ConfigError("decimation map must be genuinely quadratic")
        if abs(self.linear_coeff - self.renorm_factor) > 1e-12 * abs(self.renorm_factor):
            raise ConfigError(
                f"R'(0) = {self.linear_coeff} must equal renorm_factor = {self.renorm_factor}"
            )
        if self.branch_rule != "descending":
            raise ConfigError(f"unknown branch rule {self.branch_rule!r}")
        if self.initial_level < 0 or not self.initial_pairs:
            raise ConfigError("initial spectrum must be a nonempty level >= 0 batch")

    def map_value(self, z: float) -> float:
        return self.linear_coeff * z + self.quad_coeff * z * z

    def preimages(self, w: float) -> tuple[float, float]:
        """(descending, other) real preimages of w, cancellation-free."""
        disc = self.linear_coeff * self.linear_coeff + 4.0 * self.quad_coeff * w
        if disc < 0:
            raise ConfigError(f"preimage of {w} leaves the real domain (disc={disc})")
        q = -0.5 * (self.linear_coeff + math.copysign(math.sqrt(disc), self.linear_coeff))
        return -w / q, q / self.quad_coeff

    def is_exceptional(self, z: float) -> bool:
        return any(abs(z - e) <= _CLUSTER_TOL * max(1.0, abs(e)) for e in self.exceptional_set)


def validate_decimation(config: DecimationConfig, model: FractalModel) -> None:
    if abs(config.renorm_factor - model.tau) > 1e-12 * model.tau:
        raise ConfigError(
            f"renorm_factor = {config.renorm_factor} must equal model tau = {model.tau}"
        )


def decimation_graph_spectrum(
    level: int, config: DecimationConfig, model: FractalModel | None = None
) -> SpectrumBatch:
    """Level-m graph spectrum generated by preimages of the decimation map."""
    if level < config.initial_level:
        raise ConfigError(f"level must be >= initial level {config.initial_level}")
    if model is not None:
        validate_decimation(config, model)
    pairs: list[tuple[float, float]] = [(float(v), float(m)) for v, m in config.initial_pairs]
    for m_level in range(config.initial_level + 1, level + 1):
        nxt: list[tuple[float, float]] = []
        for w, mult in pairs:
            for z in config.preimages(w):
                if config.is_exceptional(z):
                    continue  # forbidden descendant value
                nxt.append((z, mult))
        for rule in config.newborns:
            if m_level >= rule.start_level:
                nxt.append((rule.value, float(rule.multiplicity(config.mult_base, m_level))))
        merged = _merge_pairs(nxt)
        if len(merged) < len(nxt):
            # collisions are merged, never dropped; keep the count visible
            pass
        pairs = merged
    values = np.array([v for v, _ in pairs])
    mults = np.array([m for _, m in pairs])
    return SpectrumBatch(
        model=model,
        values=values,
        mults=mults,
        lambda_min=float(values[0]),
        cutoff=float(values[-1]),
        tail_exponent=0.0,
        tail_constant=0.0,
    )


def _renormalized_limit(
    z: float, start_level: int, config: DecimationConfig, tol: float, max_iter: int
) -> tuple[float, int, float]:
    """lim_j tau^(start_level+j) * R_desc^(-j)(z) with its convergence certificate.

    When the descending preimage is exceptional the limit detours through
    the other branch for that one step.
    """
    tau = config.renorm_factor
    cur = z
    scale = tau**start_level
    prev = cur * scale
    for j in range(1, max_iter + 1):
        desc, other = config.preimages(cur)
        cur = other if config.is_exceptional(desc) else desc
        scale *= tau
        est = cur * scale
        delta = abs(est - prev)
        if delta <= tol * max(1.0, abs(est)):
            return est, j, delta
        prev = est
    raise ConvergenceError(
        f"renormalized limit for eigenvalue {z} did not converge in {max_iter} iterations"
    )


def fractal_spectrum(
    levels: int,
    M: int,
    config: DecimationConfig,
    model: FractalModel | None = None,
    tol: float = 1e-13,
    max_iter: int = 300,
) -> SpectrumBatch:
    """First M renormalized-limit eigenvalues from the level-`levels` graph.

    M = 0 keeps every generated eigenvalue. Each limit carries a
    (iterations, delta) certificate; non-convergence names the offender.
    """
    if M < 0:
        raise ConfigError(f"M must be >= 0, got {M}")
    graph = decimation_graph_spectrum(levels, config, model)
    limits: list[tuple[float, float, int, float]] = []
    for idx, (z, mult) in enumerate(zip(graph.values, graph.mults)):
        try:
            est, iters, delta = _renormalized_limit(float(z), levels, config, tol, max_iter)
        except ConvergenceError as exc:
            raise ConvergenceError(f"eigenvalue index {idx} (z={z}): {exc}") from exc
        limits.append((est, float(mult), iters, delta))
    limits.sort()
    merged: list[list] = []
    for est, mult, iters, delta in limits:
        if merged and abs(est - merged[-1][0]) <= _CLUSTER_TOL * max(1.0, abs(est)):
            prev = merged[-1]
            total = prev[1] + mult
            merged[-1] = [(prev[0] * prev[1] + est * mult) / total, total, max(prev[2], iters), max(prev[3], delta)]
        else:
            merged.append([est, mult, iters, delta])

    values_all = np.array([e[0] for e in merged])
    mults_all = np.array([e[1] for e in merged])
    # fitted Weyl-order tail constant over the full generated range
    if model is not None:
        p = model.d_S / 2.0
        counting = np.cumsum(mults_all)
        tail_constant = 1.25 * float(np.max(counting / values_all**p))
        tail_exponent = p
    else:
        p, tail_constant, tail_exponent = 0.0, 0.0, 0.0
    keep = len(merged) if M == 0 else min(M, len(merged))
    certs = tuple((e[2], e[3]) for e in merged[:keep])
    values = values_all[:keep]
    mults = mults_all[:keep]
    return SpectrumBatch(
        model=model,
        values=values,
        mults=mults,
        lambda_min=float(values[0]),
        cutoff=float(values[-1]),
        tail_exponent=tail_exponent,
        tail_constant=tail_constant,
        certificates=certs,
    )


def counting_bounds(batch: SpectrumBatch, exponent: float | None = None) -> tuple[float, float]:
    """Fitted (C1, C2) with C1*lambda^p <= counting(lambda) <= C2*lambda^p
    over the generated range."""
    if len(batch) == 0:
        raise ConfigError("empty batch")
    p = batch.tail_exponent if exponent is None else exponent
    if p <= 0:
        raise ConfigError("need a positive counting exponent")
    ratio = np.cumsum(batch.mults) / batch.values**p
    return float(np.min(ratio)), float(np.max(ratio))


# ---------------------------------------------------------------------------
# configuration loading


@dataclass(frozen=True)
class ModelBundle:
    """A loaded configuration: model, optional decimation data, and the
    spectrum/continuation parameter blocks used by the CLI."""

    model: FractalModel
    decimation: DecimationConfig | None
    spectrum_params: dict = field(default_factory=dict)
    continuation_params: dict = field(default_factory=dict)


def _as_float(x, where: str) -> float:
    """Exact-rational strings, ints, and floats all become float."""
    if isinstance(x, str):
        try:
            return float(Fraction(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{where}: bad rational literal {x!r}") from exc
    if isinstance(x, (int, float)):
        return float(x)
    raise ConfigError(f"{where}: expected a number, got {type(x).__name__}")


def _parse_decimation(block: dict, where: str) -> DecimationConfig:
    try:
        coeffs = [_as_float(c, f"{where}.map") for c in block["map"]]
        if len(coeffs) != 3:
            raise ConfigError(f"{where}.map needs [c0, c1, c2] quadratic coefficients")
        if coeffs[0] != 0.0:
            raise ConfigError(f"{where}.map: constant term must be 0 (the branch fixes 0)")
        newborns = tuple(
            NewbornRule(
                value=_as_float(nb["value"], f"{where}.newborn"),
                a=int(nb["a"]),
                b=int(nb["b"]),
                c=int(nb["c"]),
                d=int(nb["d"]),
                start_level=int(nb.get("start_level", 2)),
            )
            for nb in block.get("newborn", ())
        )
        return DecimationConfig(
            linear_coeff=coeffs[1],
            quad_coeff=coeffs[2],
            renorm_factor=_as_float(block["renorm_factor"], f"{where}.renorm_factor"),
            branch_rule=block.get("branch", "descending"),
            exceptional_set=tuple(_as_float(e, f"{where}.exceptional") for e in block.get("exceptional", ())),
            initial_level=int(block["initial_level"]),
            initial_pairs=tuple(
                (_as_float(v, f"{where}.initial_pairs"), int(m)) for v, m in block["initial_pairs"]
            ),
            newborns=newborns,
            mult_base=int(block["mult_base"]),
        )
    except KeyError as exc:
        raise ConfigError(f"{where}: missing field {exc.args[0]!r}") from exc


def _bundle_from_dict(doc: dict, where: str) -> ModelBundle:
    if "model" not in doc:
        raise ConfigError(f"{where}: missing [model] block")
    mb = doc["model"]
    try:
        model = make_model(
            N=int(mb["N"]),
            rho_F=mb["rho_F"] if isinstance(mb["rho_F"], str) else _as_float(mb["rho_F"], f"{where}.model.rho_F"),
            d_w=_as_float(mb["d_w"], f"{where}.model.d_w"),
            d_boundary=_as_float(mb.get("d_boundary", 0.0), f"{where}.model.d_boundary"),
            d_k_list=[_as_float(d, f"{where}.model.d_k_list") for d in mb["d_k_list"]] if "d_k_list" in mb else None,
            name=str(mb.get("name", "model")),
        )
    except KeyError as exc:
        raise ConfigError(f"{where}.model: missing field {exc.args[0]!r}") from exc
    decim = _parse_decimation(doc["decimation"], f"{where}.decimation") if "decimation" in doc else None
    if decim is not None:
        validate_decimation(decim, model)
    return ModelBundle(
        model=model,
        decimation=decim,
        spectrum_params=dict(doc.get("spectrum", {})),
        continuation_params=dict(doc.get("continuation", {})),
    )


def load_model_config(path) -> ModelBundle:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "rb") as fp:
            doc = tomli.load(fp)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return _bundle_from_dict(doc, str(path))


def preset_names() -> tuple[str, ...]:
    root = resources.files("fraczeta").joinpath("presets")
    return tuple(sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".toml")))


def load_preset(name: str) -> ModelBundle:
    """Load a shipped preset by name, or any TOML file by path."""
    root = resources.files("fraczeta").joinpath("presets")
    candidate = root.joinpath(f"{name}.toml")
    if candidate.is_file():
        doc = tomli.loads(candidate.read_text(encoding="utf-8"))
        return _bundle_from_dict(doc, f"preset {name!r}")
    if Path(name).is_file():
        return load_model_config(name)
    raise ConfigError(f"unknown preset or config path {name!r}; presets: {', '.join(preset_names())}")


def default_batch(bundle: ModelBundle) -> SpectrumBatch:
    """Build the spectrum named by the bundle's [spectrum] block."""
    params = bundle.spectrum_params
    source = params.get("source")
    if source is None:
        raise ConfigError(f"model {bundle.model.name!r} declares no spectrum source")
    if source == "interval":
        return interval_spectrum(int(params.get("terms", 10000)), bundle.model)
    if source == "geometric":
        return toy_geometric_spectrum(bundle.model, int(params.get("k_levels", 12)))
    if source == "decimation":
        if bundle.decimation is None:
            raise ConfigError("spectrum source 'decimation' requires a [decimation] block")
        return fractal_spectrum(
            int(params.get("levels", 8)),
            int(params.get("terms", 0)),
            bundle.decimation,
            bundle.model,
        )
    raise ConfigError(f"unknown spectrum source {source!r}")
