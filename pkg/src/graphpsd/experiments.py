"""End-to-end experiment pipeline and reproducibility plumbing.

Wires the full chain (graph -> shift -> basis -> filter -> covariance ->
sampler design -> subsampled model -> least-squares estimate), reproduces
the reference experiments at desk scale, and writes deterministic CSV/JSON
results plus gnuplot-ready plot data.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import design as design_mod
from . import graphs as graphs_mod
from . import sampling as sampling_mod
from . import spectral as spectral_mod
from .errors import ConfigError

SPECTRUM_CSV = "spectrum.csv"
PATTERN_JSON = "pattern.json"
METRICS_JSON = "metrics.json"
TRACE_JSON = "trace.json"
FAILURE_JSON = "failure.json"

# files whose bytes are reproducible given an identical config
DETERMINISTIC_OUTPUTS = (
    SPECTRUM_CSV,
    PATTERN_JSON,
    METRICS_JSON,
    TRACE_JSON,
    "spectrum_true.dat",
    "spectrum_estimate.dat",
    "nodes.dat",
)


def _fmt(x):
    return f"{float(x):.17g}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    return obj


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass(frozen=True)
class GraphSpec:
    """Where the pipeline's graph comes from: a generator or a file."""

    n: int = 100
    k_neighbors: int = 6
    seed: int = 1
    path: str | None = None

    def build(self):
        if self.path is not None:
            return graphs_mod.load_graph(self.path)
        return graphs_mod.random_sensor_graph(self.n, self.k_neighbors, self.seed)


@dataclass(frozen=True)
class FilterSpec:
    """Filter coefficients, either explicit or a named lowpass profile."""

    profile: str | None = "lowpass_exp"
    rate: float = 3.0
    length: int = 7
    coefficients: tuple | None = None

    def build(self, basis):
        if self.coefficients is not None:
            return spectral_mod.GraphFilter(coefficients=np.asarray(self.coefficients))
        if self.profile == "lowpass_exp":
            return spectral_mod.fit_lowpass_filter(basis, length=self.length, rate=self.rate)
        raise ConfigError(f"unknown filter profile {self.profile!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to run one deterministic end-to-end experiment.

    ``seed`` drives snapshot synthesis and the random sampler; the graph
    generator has its own seed inside ``graph``.
    """

    graph: GraphSpec = field(default_factory=GraphSpec)
    shift_kind: str = graphs_mod.LAPLACIAN
    filter: FilterSpec = field(default_factory=FilterSpec)
    n_snapshots: int = 1000
    domain: str = sampling_mod.SPECTRAL
    k: int = 50
    q: int | None = None
    sampler: str = "greedy"
    pattern_path: str | None = None
    objective_kind: str = design_mod.LOGDET_EPS
    epsilon: float | None = None
    use_population_covariance: bool = False
    seed: int = 0
    output_dir: str | None = None

    def validate(self):
        if self.domain not in (sampling_mod.SPECTRAL, sampling_mod.VERTEX):
            raise ConfigError(f"unknown domain {self.domain!r}")
        if self.sampler not in ("greedy", "random", "file"):
            raise ConfigError(f"unknown sampler {self.sampler!r}")
        if self.sampler == "file" and not self.pattern_path:
            raise ConfigError("sampler 'file' needs pattern_path")
        if self.n_snapshots < 1:
            raise ConfigError("n_snapshots must be positive")
        if self.k < 1:
            raise ConfigError("k must be positive")
        if self.q is not None and self.q < 1:
            raise ConfigError("q must be positive")
        if self.graph.path is None:
            if self.graph.n < 2:
                raise ConfigError("graph.n must be >= 2")
            # with a file pattern the budget comes from the file, not from k
            if self.sampler != "file" and self.k > self.graph.n:
                raise ConfigError("k cannot exceed the number of vertices")
            if self.q is not None and self.q > self.graph.n:
                raise ConfigError("q cannot exceed the number of vertices")
        if self.objective_kind not in (design_mod.LOGDET_EPS, design_mod.FRAME_POTENTIAL):
            raise ConfigError(f"unknown objective kind {self.objective_kind!r}")
        return self

    def to_dict(self):
        return {
            "graph": {
                "n": self.graph.n,
                "k_neighbors": self.graph.k_neighbors,
                "seed": self.graph.seed,
                "path": self.graph.path,
            },
            "shift_kind": self.shift_kind,
            "filter": {
                "profile": self.filter.profile,
                "rate": self.filter.rate,
                "length": self.filter.length,
                "coefficients": list(self.filter.coefficients)
                if self.filter.coefficients is not None
                else None,
            },
            "n_snapshots": self.n_snapshots,
            "domain": self.domain,
            "k": self.k,
            "q": self.q,
            "sampler": self.sampler,
            "pattern_path": self.pattern_path,
            "objective_kind": self.objective_kind,
            "epsilon": self.epsilon,
            "use_population_covariance": self.use_population_covariance,
            "seed": self.seed,
            "output_dir": self.output_dir,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            graph = GraphSpec(**data.get("graph", {}))
            filt = data.get("filter", {})
            filt = FilterSpec(
                profile=filt.get("profile", "lowpass_exp" if "coefficients" not in filt else None),
                rate=filt.get("rate", 3.0),
                length=filt.get("length", 7),
                coefficients=tuple(filt["coefficients"]) if filt.get("coefficients") else None,
            )
            known = {
                k: data[k]
                for k in (
                    "shift_kind",
                    "n_snapshots",
                    "domain",
                    "k",
                    "q",
                    "sampler",
                    "pattern_path",
                    "objective_kind",
                    "epsilon",
                    "use_population_covariance",
                    "seed",
                    "output_dir",
                )
                if k in data
            }
            unknown = set(data) - set(known) - {"graph", "filter"}
            if unknown:
                raise ConfigError(f"unknown config keys: {sorted(unknown)}")
            return cls(graph=graph, filter=filt, **known).validate()
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path):
    """Read an :class:`ExperimentConfig` from a JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    return ExperimentConfig.from_dict(data)


def save_pattern(pattern, path):
    _write_json(path, {"n_vertices": pattern.n_vertices, "selected": list(pattern.selected)})


def load_pattern(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return sampling_mod.SamplingPattern(
            n_vertices=int(data["n_vertices"]), selected=tuple(data["selected"])
        )
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load pattern {path}: {exc}") from exc


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of one pipeline run, with enough context to plot it."""

    graph: graphs_mod.Graph
    pattern: sampling_mod.SamplingPattern
    p_true: np.ndarray
    p_hat: np.ndarray
    estimate: sampling_mod.SpectrumEstimate
    nmse: float
    trace: design_mod.GreedyTrace | None
    objective_epsilon: float | None
    eigenvalues: np.ndarray
    config: ExperimentConfig
    runtimes: dict


class _StageTimer:
    def __init__(self):
        self.runtimes = {}
        self.current = None

    def stage(self, name):
        self.current = name
        self._t0 = time.perf_counter()
        return self

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.runtimes[self.current] = time.perf_counter() - self._t0
        return False


def _build_objective(cfg, basis, shift, q):
    if cfg.domain == sampling_mod.SPECTRAL:
        return design_mod.DesignObjective.spectral(
            basis, kind=cfg.objective_kind, epsilon=cfg.epsilon
        )
    return design_mod.DesignObjective.vertex(
        shift, q, kind=cfg.objective_kind, epsilon=cfg.epsilon
    )


def _design_pattern(cfg, basis, shift, q):
    if cfg.sampler == "greedy":
        objective = _build_objective(cfg, basis, shift, q)
        pattern, trace = design_mod.greedy_design(objective, cfg.k)
        return pattern, trace, objective.epsilon
    if cfg.sampler == "random":
        return design_mod.random_design(shift.n, cfg.k, seed=cfg.seed), None, None
    return load_pattern(cfg.pattern_path), None, None


def run_experiment(cfg):
    """Run the full pipeline for one configuration.

    Deterministic given the config (all randomness is seeded).  When
    ``cfg.output_dir`` is set, writes ``spectrum.csv``, ``pattern.json``,
    ``metrics.json``, ``trace.json`` (greedy only), and gnuplot ``.dat``
    files there; on error a ``failure.json`` naming the failed stage is
    left behind instead.  Stage wall times are returned on the result, not
    written, so outputs stay byte-reproducible.
    """
    cfg.validate()
    timer = _StageTimer()
    out = None
    if cfg.output_dir is not None:
        import os

        os.makedirs(cfg.output_dir, exist_ok=True)
        out = cfg.output_dir
    try:
        with timer.stage("graph"):
            graph = cfg.graph.build()
        with timer.stage("basis"):
            shift = graphs_mod.build_shift_operator(graph, cfg.shift_kind)
            basis = spectral_mod.eigendecompose(shift)
        with timer.stage("filter"):
            filt = cfg.filter.build(basis)
            p_true = spectral_mod.true_power_spectrum(filt, basis)
        q = cfg.q
        if q is None and cfg.domain == sampling_mod.VERTEX:
            q = sampling_mod.required_q(filt.length, graph.n_vertices)
        with timer.stage("covariance"):
            if cfg.use_population_covariance:
                cov = spectral_mod.true_covariance(filt, basis)
            else:
                snapshots = spectral_mod.synthesize(filt, basis, cfg.n_snapshots, seed=cfg.seed)
                cov = spectral_mod.sample_covariance(snapshots)
        with timer.stage("design"):
            pattern, trace, epsilon = _design_pattern(cfg, basis, shift, q)
        with timer.stage("model"):
            cov_sub = sampling_mod.subsampled_covariance(cov, pattern)
            if cfg.domain == sampling_mod.SPECTRAL:
                model = sampling_mod.build_spectral_model(basis, pattern)
            else:
                model = sampling_mod.build_vertex_model(shift, pattern, q)
        with timer.stage("estimate"):
            if cfg.domain == sampling_mod.SPECTRAL:
                estimate = sampling_mod.estimate_spectrum_spectral(cov_sub, model)
            else:
                estimate = sampling_mod.estimate_spectrum_vertex(cov_sub, model, basis)
        nmse = float(
            np.sum((estimate.p_hat - p_true) ** 2) / np.sum(p_true**2)
        )
        result = ExperimentResult(
            graph=graph,
            pattern=pattern,
            p_true=p_true,
            p_hat=estimate.p_hat,
            estimate=estimate,
            nmse=nmse,
            trace=trace,
            objective_epsilon=epsilon,
            eigenvalues=basis.eigenvalues,
            config=cfg,
            runtimes=timer.runtimes,
        )
    except Exception as exc:
        if out is not None:
            _write_json(
                f"{out}/{FAILURE_JSON}",
                {"stage": timer.current, "error": f"{type(exc).__name__}: {exc}"},
            )
        raise
    if out is not None:
        with timer.stage("write"):
            _write_result(result, out)
    return result


def _write_result(result, out_dir):
    cfg = result.config
    with open(f"{out_dir}/{SPECTRUM_CSV}", "w", encoding="utf-8") as fh:
        fh.write("index,eigenvalue,p_true,p_hat\n")
        for i, (lam, pt, ph) in enumerate(
            zip(result.eigenvalues, result.p_true, result.p_hat)
        ):
            fh.write(f"{i},{_fmt(lam)},{_fmt(pt)},{_fmt(ph)}\n")
    save_pattern(result.pattern, f"{out_dir}/{PATTERN_JSON}")
    est = result.estimate
    _write_json(
        f"{out_dir}/{METRICS_JSON}",
        {
            "n_vertices": result.graph.n_vertices,
            "domain": cfg.domain,
            "sampler": cfg.sampler,
            "k": result.pattern.k,
            "q": est.alpha_hat.shape[0] if est.alpha_hat is not None else None,
            "n_snapshots": 0 if cfg.use_population_covariance else cfg.n_snapshots,
            "use_population_covariance": cfg.use_population_covariance,
            "seed": cfg.seed,
            "objective_kind": cfg.objective_kind,
            "epsilon": result.objective_epsilon,
            "rank": est.rank,
            "rank_ok": est.rank_ok,
            "rank_tolerance": est.rank_tolerance,
            "residual_norm": est.residual_norm,
            "nmse": result.nmse,
        },
    )
    if result.trace is not None:
        _write_json(
            f"{out_dir}/{TRACE_JSON}",
            {
                "chosen": list(result.trace.chosen),
                "gains": list(result.trace.gains),
                "final_value": result.trace.final_value,
                "epsilon": result.objective_epsilon,
                "objective_kind": cfg.objective_kind,
            },
        )
    emit_plot_data(result, out_dir)


def emit_plot_data(result, out_dir):
    """Write gnuplot-ready two-column spectrum files and a node-selection file.

    ``spectrum_true.dat`` and ``spectrum_estimate.dat`` hold
    ``eigenvalue-index  value`` rows; ``nodes.dat`` holds
    ``x  y  selected`` rows when the graph carries coordinates.
    """
    with open(f"{out_dir}/spectrum_true.dat", "w", encoding="utf-8") as fh:
        for i, p in enumerate(result.p_true):
            fh.write(f"{i} {_fmt(p)}\n")
    with open(f"{out_dir}/spectrum_estimate.dat", "w", encoding="utf-8") as fh:
        for i, p in enumerate(result.p_hat):
            fh.write(f"{i} {_fmt(p)}\n")
    if result.graph.coordinates is not None:
        mask = result.pattern.mask
        with open(f"{out_dir}/nodes.dat", "w", encoding="utf-8") as fh:
            for (x, y), selected in zip(result.graph.coordinates, mask):
                fh.write(f"{_fmt(x)} {_fmt(y)} {int(selected)}\n")


def rank_threshold_scan(cfg, k_range):
    """Full-rank threshold of the model along the greedy selection order.

    Designs one greedy pattern at the largest requested budget and reports
    ``(K, rank_ok)`` for every prefix size in ``k_range``, reusing the
    nested structure of greedy selections.
    """
    k_values = sorted(set(int(k) for k in k_range))
    if not k_values:
        raise ConfigError("empty k range")
    cfg = dataclasses.replace(cfg, k=k_values[-1]).validate()
    graph = cfg.graph.build()
    if k_values[-1] > graph.n_vertices or k_values[0] < 1:
        raise ConfigError("k range outside [1, n]")
    shift = graphs_mod.build_shift_operator(graph, cfg.shift_kind)
    basis = spectral_mod.eigendecompose(shift)
    filt = cfg.filter.build(basis)
    q = cfg.q
    if q is None and cfg.domain == sampling_mod.VERTEX:
        q = sampling_mod.required_q(filt.length, graph.n_vertices)
    objective = _build_objective(cfg, basis, shift, q)
    _, trace = design_mod.greedy_design(objective, k_values[-1])
    rows = []
    for k in k_values:
        prefix = sampling_mod.SamplingPattern(graph.n_vertices, trace.chosen[:k])
        if cfg.domain == sampling_mod.SPECTRAL:
            model = sampling_mod.build_spectral_model(basis, prefix)
        else:
            model = sampling_mod.build_vertex_model(shift, prefix, q)
        _, rank_ok = sampling_mod.model_rank(model)
        rows.append((k, rank_ok))
    return rows


def compression_sweep(cfg, k_list, n_seeds, out_dir=None):
    """Compare greedy and random samplers across sample budgets.

    For every K in ``k_list`` runs ``n_seeds`` seeded pipelines per sampler
    and aggregates mean NMSE and the fraction of runs whose model had full
    column rank.  Returns the rows and optionally writes ``sweep.csv``.
    """
    k_values = [int(k) for k in k_list]
    if not k_values:
        raise ConfigError("empty k list")
    if n_seeds < 1:
        raise ConfigError("need at least one seed")
    cfg = dataclasses.replace(cfg, k=max(k_values)).validate()
    graph = cfg.graph.build()
    if min(k_values) < 1 or max(k_values) > graph.n_vertices:
        raise ConfigError("k outside [1, n]")
    shift = graphs_mod.build_shift_operator(graph, cfg.shift_kind)
    basis = spectral_mod.eigendecompose(shift)
    filt = cfg.filter.build(basis)
    p_true = spectral_mod.true_power_spectrum(filt, basis)
    q = cfg.q
    if q is None and cfg.domain == sampling_mod.VERTEX:
        q = sampling_mod.required_q(filt.length, graph.n_vertices)
    objective = _build_objective(cfg, basis, shift, q)
    _, trace = design_mod.greedy_design(objective, max(k_values))

    def estimate_for(pattern, cov):
        cov_sub = sampling_mod.subsampled_covariance(cov, pattern)
        if cfg.domain == sampling_mod.SPECTRAL:
            model = sampling_mod.build_spectral_model(basis, pattern)
            est = sampling_mod.estimate_spectrum_spectral(cov_sub, model)
        else:
            model = sampling_mod.build_vertex_model(shift, pattern, q)
            est = sampling_mod.estimate_spectrum_vertex(cov_sub, model, basis)
        nmse = float(np.sum((est.p_hat - p_true) ** 2) / np.sum(p_true**2))
        return est.rank_ok, nmse

    rows = []
    for k in k_values:
        greedy_pattern = sampling_mod.SamplingPattern(graph.n_vertices, trace.chosen[:k])
        stats = {"greedy": [], "random": []}
        for seed_index in range(n_seeds):
            seed = cfg.seed + seed_index
            if cfg.use_population_covariance:
                cov = spectral_mod.true_covariance(filt, basis)
            else:
                snapshots = spectral_mod.synthesize(filt, basis, cfg.n_snapshots, seed=seed)
                cov = spectral_mod.sample_covariance(snapshots)
            stats["greedy"].append(estimate_for(greedy_pattern, cov))
            random_pattern = design_mod.random_design(graph.n_vertices, k, seed=seed)
            stats["random"].append(estimate_for(random_pattern, cov))
        for sampler in ("greedy", "random"):
            ranks = [ok for ok, _ in stats[sampler]]
            nmses = [nmse for _, nmse in stats[sampler]]
            rows.append(
                {
                    "k": k,
                    "sampler": sampler,
                    "mean_nmse": float(np.mean(nmses)),
                    "rank_ok_fraction": float(np.mean(ranks)),
                }
            )
    if out_dir is not None:
        import os

        os.makedirs(out_dir, exist_ok=True)
        with open(f"{out_dir}/sweep.csv", "w", encoding="utf-8") as fh:
            fh.write("k,sampler,mean_nmse,rank_ok_fraction\n")
            for row in rows:
                fh.write(
                    f"{row['k']},{row['sampler']},{_fmt(row['mean_nmse'])},"
                    f"{_fmt(row['rank_ok_fraction'])}\n"
                )
    return rows


def _property_instances(seed):
    """Small deterministic instances used by the property suites."""
    rng = np.random.default_rng(seed)
    instances = []
    for i in range(10):
        n = int(rng.integers(5, 11))
        graph = graphs_mod.random_sensor_graph(n, min(3, n - 1), seed=100 + i)
        shift = graphs_mod.build_laplacian(graph)
        if i % 2 == 0:
            basis = spectral_mod.eigendecompose(shift)
            objective = design_mod.DesignObjective.spectral(basis)
            domain = sampling_mod.SPECTRAL
        else:
            q = int(rng.integers(2, min(6, n) + 1))
            objective = design_mod.DesignObjective.vertex(shift, q)
            domain = sampling_mod.VERTEX
        instances.append((n, domain, objective))
    return instances


def run_property_suites(seed=0, trials=200):
    """Run the structural property suites and collect a machine-readable report.

    Covers objective normalization/monotonicity/diminishing-returns sampling,
    the greedy-versus-brute-force bound, the model-equivalence identity, the
    squared-response consistency of the spectrum, and the agreement of
    incremental gains with from-scratch evaluation.
    """
    report = {}

    instances = _property_instances(seed)
    sub_rows = []
    for n, domain, objective in instances:
        rep = design_mod.check_submodularity(objective, trials=trials, seed=seed)
        sub_rows.append(
            {
                "n": n,
                "domain": domain,
                "normalization_ok": rep.normalization_ok,
                "monotonicity_violations": rep.monotonicity_violations,
                "diminishing_returns_violations": rep.diminishing_returns_violations,
                "max_violation": rep.max_violation,
            }
        )
    report["submodularity"] = {
        "instances": sub_rows,
        "ok": all(
            r["normalization_ok"]
            and r["monotonicity_violations"] == 0
            and r["diminishing_returns_violations"] == 0
            for r in sub_rows
        ),
    }

    bound = 1.0 - 1.0 / math.e
    greedy_rows = []
    for i in range(5):
        graph = graphs_mod.random_sensor_graph(8, 3, seed=200 + i)
        shift = graphs_mod.build_laplacian(graph)
        basis = spectral_mod.eigendecompose(shift)
        if i % 2 == 0:
            objective = design_mod.DesignObjective.spectral(basis)
        else:
            objective = design_mod.DesignObjective.vertex(shift, 4)
        _, trace = design_mod.greedy_design(objective, 3)
        best = design_mod.brute_force_design(objective, 3)
        f_opt = design_mod.objective_value(objective, best)
        greedy_rows.append(
            {"instance": i, "greedy": trace.final_value, "optimum": f_opt,
             "ratio": trace.final_value / f_opt if f_opt else 1.0}
        )
    report["greedy_bound"] = {
        "instances": greedy_rows,
        "ok": all(r["greedy"] >= bound * r["optimum"] - 1e-9 for r in greedy_rows),
    }

    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for i in range(20):
        n = int(rng.integers(6, 31))
        graph = graphs_mod.random_sensor_graph(n, min(4, n - 1), seed=300 + i)
        shift = graphs_mod.build_laplacian(graph)
        basis = spectral_mod.eigendecompose(shift)
        k = int(rng.integers(2, n + 1))
        pattern = design_mod.random_design(n, k, seed=300 + i)
        q = int(rng.integers(1, min(8, n) + 1))
        vertex = sampling_mod.build_vertex_model(shift, pattern, q).matrix
        spectral = sampling_mod.build_spectral_model(basis, pattern).matrix
        via_basis = spectral @ spectral_mod.vandermonde(basis.eigenvalues, q)
        scale = max(np.abs(vertex).max(), np.abs(via_basis).max(), 1.0)
        worst = max(worst, float(np.abs(vertex - via_basis).max() / scale))
    report["model_equivalence"] = {"trials": 20, "max_scaled_error": worst, "ok": worst <= 1e-8}

    worst = 0.0
    for i in range(20):
        n = int(rng.integers(5, 31))
        graph = graphs_mod.random_sensor_graph(n, min(4, n - 1), seed=400 + i)
        basis = spectral_mod.eigendecompose(graphs_mod.build_laplacian(graph))
        length = int(rng.integers(1, 6))
        filt = spectral_mod.GraphFilter(coefficients=rng.standard_normal(length))
        h = spectral_mod.filter_matrix(filt, basis)
        u = basis.eigenvectors
        rotated = np.diag(u.T @ (h @ h.T) @ u)
        p = spectral_mod.true_power_spectrum(filt, basis)
        scale = max(np.abs(p).max(), 1.0)
        worst = max(worst, float(np.abs(rotated - p).max() / scale))
    report["spectrum_consistency"] = {"trials": 20, "max_scaled_error": worst, "ok": worst <= 1e-8}

    worst = 0.0
    for i, (n, k) in enumerate([(16, 8), (20, 10)]):
        graph = graphs_mod.random_sensor_graph(n, 4, seed=500 + i)
        basis = spectral_mod.eigendecompose(graphs_mod.build_laplacian(graph))
        objective = design_mod.DesignObjective.spectral(basis, epsilon=1e-6)
        _, trace = design_mod.greedy_design(objective, k, validate_gains=True)
        worst = max(worst, trace.max_gain_check_error)
    report["incremental_gains"] = {"max_relative_error": worst, "ok": worst <= 1e-8}

    report["ok"] = all(section["ok"] for section in report.values() if isinstance(section, dict))
    return report
