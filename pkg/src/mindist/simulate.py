"""Data generators and a replicated Monte Carlo benchmark harness.

Generators mirror the benchmark experiments: Uniform(0, 50) covariates,
errors or innovations from normal / Laplace / logistic families (scale 5 by
default), and autoregressive series built by the zero-initial-condition
recursion.  ``monte_carlo`` runs seeded replications of an experiment and
summarizes each estimator's bias, standard error, and mean squared error per
parameter.

Replication r draws from an independent stream derived deterministically
from (seed, r), so results are bitwise identical regardless of how many
worker processes execute the campaign.
"""

from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from io import StringIO
from typing import Callable, Mapping

import numpy as np

from .ar_mde import ARData, koul_ar_mde
from .baselines import ar_cls, cochrane_orcutt, ols
from .errors import CampaignError, EstimationError
from .lr_mde import RegressionData, koul_lr_mde
from .measures import measure_from_name
from .two_stage import koul_2stage_mde

FAMILIES = ("normal", "laplace", "logistic")
EXPERIMENTS = ("lr", "ar", "2stage")

CSV_COLUMNS = ("experiment", "distribution", "estimator", "parameter", "bias", "se", "mse", "reps_used")


@dataclass(frozen=True)
class ErrorDistribution:
    """Error/innovation family with location and scale (default scale 5)."""

    family: str
    loc: float = 0.0
    scale: float = 5.0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")


def _laplace_icdf(u: np.ndarray, loc: float, scale: float) -> np.ndarray:
    shifted = u - 0.5
    return loc - scale * np.sign(shifted) * np.log1p(-2.0 * np.abs(shifted))


def _logistic_icdf(u: np.ndarray, loc: float, scale: float) -> np.ndarray:
    return loc + scale * (np.log(u) - np.log1p(-u))


def sample_errors(dist: ErrorDistribution, n: int, stream: np.random.Generator) -> np.ndarray:
    """Draw n i.i.d. errors from the stream.

    The normal family scales a standard normal draw; Laplace and logistic
    use their inverse CDFs applied to uniforms from the stream.
    """
    if dist.family == "normal":
        return dist.loc + dist.scale * stream.standard_normal(n)
    # random() can return exactly 0, which both inverse CDFs reject.
    u = np.maximum(stream.random(n), np.finfo(float).tiny)
    if dist.family == "laplace":
        return _laplace_icdf(u, dist.loc, dist.scale)
    return _logistic_icdf(u, dist.loc, dist.scale)


def ar_recursion(innovations: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Build a series by e_i = sum_j rho_j e_{i-j} + xi_i with zero initial
    conditions (terms with i - j < 1 contribute zero)."""
    xi = np.asarray(innovations, dtype=float)
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    n = xi.shape[0]
    q = r.shape[0]
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for j in range(1, q + 1):
            if i - j >= 0:
                acc += r[j - 1] * out[i - j]
        out[i] = acc + xi[i]
    return out


def gen_lr(n: int, p: int, beta, dist: ErrorDistribution, stream: np.random.Generator) -> RegressionData:
    """Regression data with Uniform(0, 50) covariates and i.i.d. errors."""
    b = np.asarray(beta, dtype=float)
    if b.shape != (p,):
        raise ValueError(f"beta must have shape ({p},), got {b.shape}")
    x = stream.uniform(0.0, 50.0, size=(n, p))
    eps = sample_errors(dist, n, stream)
    return RegressionData(x @ b + eps, x)


def gen_ar(n: int, rho, dist: ErrorDistribution, stream: np.random.Generator) -> ARData:
    """Autoregressive series of length n driven by i.i.d. innovations."""
    r = np.atleast_1d(np.asarray(rho, dtype=float))
    xi = sample_errors(dist, n, stream)
    return ARData(ar_recursion(xi, r), r.shape[0])


def gen_lr_ar(
    n: int, p: int, beta, rho, dist: ErrorDistribution, stream: np.random.Generator
) -> RegressionData:
    """Regression data whose errors follow the AR recursion."""
    b = np.asarray(beta, dtype=float)
    if b.shape != (p,):
        raise ValueError(f"beta must have shape ({p},), got {b.shape}")
    x = stream.uniform(0.0, 50.0, size=(n, p))
    xi = sample_errors(dist, n, stream)
    eps = ar_recursion(xi, np.atleast_1d(np.asarray(rho, dtype=float)))
    return RegressionData(x @ b + eps, x)


@dataclass(frozen=True)
class McConfig:
    """A replicated experiment: what to generate, which estimators to run.

    ``estimators`` entries are names: "ols", "cls", "co", "md:<measure>"
    (regression or autoregression minimum distance), or "md2:<reg>:<ar>"
    (two-stage, with one measure per stage).  Measures are "lebesgue" or
    "degenerate".
    """

    experiment: str
    n: int
    dist: ErrorDistribution
    replications: int
    seed: int
    estimators: tuple[str, ...]
    beta: tuple[float, ...] | None = None
    rho: tuple[float, ...] | None = None


@dataclass(frozen=True)
class McRow:
    estimator: str
    parameter: str
    bias: float
    se: float
    mse: float
    reps_used: int


@dataclass(frozen=True)
class McReport:
    """Per-parameter, per-estimator bias/SE/MSE table plus campaign metadata."""

    config: McConfig
    rows: tuple[McRow, ...]
    elapsed: float

    def to_csv(self) -> str:
        buf = StringIO()
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for row in self.rows:
            buf.write(
                f"{self.config.experiment},{self.config.dist.family},{row.estimator},"
                f"{row.parameter},{row.bias!r},{row.se!r},{row.mse!r},{row.reps_used}\n"
            )
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "rows": [dataclasses.asdict(row) for row in self.rows],
            "metadata": {
                "config": dataclasses.asdict(self.config),
                "seed": self.config.seed,
                "elapsed": self.elapsed,
            },
        }
        return json.dumps(doc, indent=2)

    def mse(self, estimator: str, parameter: str) -> float:
        for row in self.rows:
            if row.estimator == estimator and row.parameter == parameter:
                return row.mse
        raise KeyError(f"no row for estimator={estimator!r}, parameter={parameter!r}")

    def bias(self, estimator: str, parameter: str) -> float:
        for row in self.rows:
            if row.estimator == estimator and row.parameter == parameter:
                return row.bias
        raise KeyError(f"no row for estimator={estimator!r}, parameter={parameter!r}")


def _validate_config(cfg: McConfig) -> None:
    if cfg.experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {cfg.experiment!r}")
    if cfg.replications < 2:
        raise ValueError("replications must be >= 2 (standard errors need a sample)")
    if cfg.seed < 0:
        raise ValueError("seed must be non-negative")
    if cfg.experiment in ("lr", "2stage") and not cfg.beta:
        raise ValueError(f"{cfg.experiment} experiment requires beta")
    if cfg.experiment in ("ar", "2stage") and not cfg.rho:
        raise ValueError(f"{cfg.experiment} experiment requires rho")
    if not cfg.estimators:
        raise ValueError("estimator list is empty")
    for name in cfg.estimators:
        _check_estimator_name(cfg.experiment, name)


def _check_estimator_name(experiment: str, name: str) -> None:
    parts = name.split(":")
    ok = {
        "lr": lambda: name == "ols" or (parts[0] == "md" and len(parts) == 2),
        "ar": lambda: name == "cls" or (parts[0] == "md" and len(parts) == 2),
        "2stage": lambda: name == "co" or (parts[0] == "md2" and len(parts) == 3),
    }[experiment]()
    if not ok:
        raise ValueError(f"estimator {name!r} is not valid for experiment {experiment!r}")
    for measure_name in parts[1:]:
        measure_from_name(measure_name)


def truth_vector(cfg: McConfig) -> np.ndarray:
    """True parameter vector matched to the estimate layout."""
    if cfg.experiment == "lr":
        return np.asarray(cfg.beta, dtype=float)
    if cfg.experiment == "ar":
        return np.asarray(cfg.rho, dtype=float)
    return np.concatenate([np.asarray(cfg.beta, dtype=float), np.asarray(cfg.rho, dtype=float)])


def parameter_labels(cfg: McConfig) -> list[str]:
    if cfg.experiment == "lr":
        return [f"beta{i + 1}" for i in range(len(cfg.beta))]
    if cfg.experiment == "ar":
        return [f"rho{i + 1}" for i in range(len(cfg.rho))]
    return [f"beta{i + 1}" for i in range(len(cfg.beta))] + [
        f"rho{i + 1}" for i in range(len(cfg.rho))
    ]


def _generate(cfg: McConfig, stream: np.random.Generator):
    if cfg.experiment == "lr":
        return gen_lr(cfg.n, len(cfg.beta), cfg.beta, cfg.dist, stream)
    if cfg.experiment == "ar":
        return gen_ar(cfg.n, cfg.rho, cfg.dist, stream)
    return gen_lr_ar(cfg.n, len(cfg.beta), cfg.beta, cfg.rho, cfg.dist, stream)


def _estimate(name: str, cfg: McConfig, data) -> np.ndarray:
    parts = name.split(":")
    if cfg.experiment == "lr":
        if name == "ols":
            return ols(data).betahat
        return koul_lr_mde(data, measure=measure_from_name(parts[1])).betahat
    if cfg.experiment == "ar":
        if name == "cls":
            return ar_cls(data)
        return koul_ar_mde(data, measure_from_name(parts[1])).rhohat
    q = len(cfg.rho)
    if name == "co":
        fit = cochrane_orcutt(data.y, data.x, q)
        return np.concatenate([fit.betahat, fit.rhohat])
    result = koul_2stage_mde(
        data.y,
        data.x,
        q,
        reg_measure=measure_from_name(parts[1]),
        ar_measure=measure_from_name(parts[2]),
    )
    return np.concatenate([result.stage2.betahat, result.stage2.rhohat])


def _run_replication(
    cfg: McConfig,
    rep: int,
    estimator_fns: Mapping[str, Callable] | None = None,
) -> dict[str, np.ndarray | None]:
    stream = np.random.default_rng([cfg.seed, rep])
    data = _generate(cfg, stream)
    out: dict[str, np.ndarray | None] = {}
    for name in cfg.estimators:
        try:
            if estimator_fns is not None and name in estimator_fns:
                estimate = estimator_fns[name](data, cfg)
            else:
                estimate = _estimate(name, cfg, data)
            out[name] = np.asarray(estimate, dtype=float)
        except EstimationError:
            out[name] = None
    return out


def _run_replication_item(item: tuple[McConfig, int]) -> dict[str, np.ndarray | None]:
    cfg, rep = item
    return _run_replication(cfg, rep)


def monte_carlo(
    cfg: McConfig,
    workers: int = 1,
    estimator_fns: Mapping[str, Callable] | None = None,
) -> McReport:
    """Run the campaign and summarize it.

    For each estimator and parameter: bias = mean(estimate) - truth,
    SE = sample standard deviation (denominator R - 1), MSE = mean squared
    deviation from truth.  Replications where an estimator raises an
    EstimationError are excluded from that estimator's summary and counted
    in ``reps_used``.

    ``estimator_fns`` maps estimator names to ``fn(data, cfg) -> estimates``
    overrides (single-process only; useful for testing against oracles).

    Results are deterministic for a fixed config regardless of ``workers``.
    """
    _validate_config(cfg)
    if estimator_fns is not None and workers > 1:
        raise ValueError("estimator overrides require workers=1")
    t0 = time.perf_counter()
    reps = range(cfg.replications)
    if workers <= 1:
        results = [_run_replication(cfg, r, estimator_fns) for r in reps]
    else:
        items = [(cfg, r) for r in reps]
        chunk = max(1, cfg.replications // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_replication_item, items, chunksize=chunk))

    truth = truth_vector(cfg)
    labels = parameter_labels(cfg)
    rows: list[McRow] = []
    for name in cfg.estimators:
        draws = [res[name] for res in results if res[name] is not None]
        if len(draws) < 2:
            raise CampaignError(
                f"estimator {name!r} produced {len(draws)} usable replications; "
                "at least 2 are required"
            )
        sample = np.vstack(draws)
        bias = sample.mean(axis=0) - truth
        se = sample.std(axis=0, ddof=1)
        mse = np.mean((sample - truth) ** 2, axis=0)
        rows.extend(
            McRow(name, labels[j], float(bias[j]), float(se[j]), float(mse[j]), len(draws))
            for j in range(truth.shape[0])
        )
    elapsed = time.perf_counter() - t0
    return McReport(config=cfg, rows=tuple(rows), elapsed=elapsed)


def default_config(
    kind: str,
    dist: ErrorDistribution,
    replications: int,
    seed: int,
    n: int | None = None,
    reg_measure: str = "lebesgue",
    ar_measure: str = "lebesgue",
) -> McConfig:
    """Benchmark defaults for each experiment kind.

    lr: n=50, p=3, beta=(-2, 0.3, 1.5), estimators OLS and MD.
    ar: n=100, q=4, rho=(-0.2, 0.8, 0.4, -0.7), estimators CLS and MD under
    both canonical measures.
    2stage: n=50, p=4, beta=(-2, 0.3, 1.5, -4.3), q=1, rho=(0.4,),
    estimators Cochrane-Orcutt and two-stage MD.
    """
    if kind == "lr":
        return McConfig(
            experiment="lr",
            n=n if n is not None else 50,
            dist=dist,
            replications=replications,
            seed=seed,
            estimators=("ols", f"md:{reg_measure}"),
            beta=(-2.0, 0.3, 1.5),
        )
    if kind == "ar":
        return McConfig(
            experiment="ar",
            n=n if n is not None else 100,
            dist=dist,
            replications=replications,
            seed=seed,
            estimators=("cls", "md:lebesgue", "md:degenerate"),
            rho=(-0.2, 0.8, 0.4, -0.7),
        )
    if kind == "2stage":
        return McConfig(
            experiment="2stage",
            n=n if n is not None else 50,
            dist=dist,
            replications=replications,
            seed=seed,
            estimators=("co", f"md2:{reg_measure}:{ar_measure}"),
            beta=(-2.0, 0.3, 1.5, -4.3),
            rho=(0.4,),
        )
    raise ValueError(f"unknown benchmark kind {kind!r}")
