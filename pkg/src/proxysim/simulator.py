"""Trace-driven simulation runs, sweeps, and model-vs-measurement tables.

A run draws a workload and attribute table from one seed, replays it
through a cache policy, and tallies per-rank requests, hits, misses,
and the bandwidth imported on misses. Sweeps fan out over alpha and
capacity lists with per-point seeds derived from the base seed, and the
comparison table puts measured hit ratios next to the closed-form
top-rank mass they should track.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy import stats

from .analytics import BandwidthParams, aggregate_bandwidth, top_c_mass
from .cache import POLICIES, make_policy
from .popularity import ZipfCatalog, build_catalog
from .workload import (DEFAULT_SESSION_SIZE, DEFAULT_SIZE_RANGE,
                       DEFAULT_TIME_RANGE, ObjectAttributes, Workload,
                       assign_attributes, generate_workload)

DEFAULT_ALPHAS = (0.98, 0.75, 0.64, 0.51, 0.41, 0.31)


@dataclass(frozen=True)
class SimConfig:
    """Inputs of one simulation run or sweep.

    ``alpha`` and ``cache_capacity`` may be sequences, in which case the
    config describes a sweep; :func:`run_simulation` requires scalars.
    The seed is mandatory: nothing in a run draws ambient randomness.
    """

    n_objects: int
    alpha: float | tuple[float, ...]
    total_requests: int
    cache_capacity: int | tuple[int, ...]
    seed: int
    session_size: int = DEFAULT_SESSION_SIZE
    policy: str = "session_lfu"
    size_range: tuple[float, float] = DEFAULT_SIZE_RANGE
    time_range: tuple[float, float] = DEFAULT_TIME_RANGE
    k: float = 1.0
    rate_convention: str = "product"

    def __post_init__(self) -> None:
        if self.n_objects < 1:
            raise ValueError(f"n_objects must be >= 1, got {self.n_objects}")
        if self.total_requests < 1:
            raise ValueError(
                f"total_requests must be >= 1, got {self.total_requests}")
        if self.session_size < 1:
            raise ValueError(
                f"session_size must be >= 1, got {self.session_size}")
        if self.policy not in POLICIES:
            raise ValueError(
                f"policy must be one of {POLICIES}, got {self.policy!r}")
        if not self.alphas:
            raise ValueError("alpha list must be non-empty")
        for a in self.alphas:
            if a < 0:
                raise ValueError(f"alpha must be >= 0, got {a}")
        for c in self.capacities:
            if c < 1:
                raise ValueError(f"cache_capacity must be >= 1, got {c}")
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k must be in [0, 1], got {self.k}")
        if self.rate_convention not in ("product", "ratio"):
            raise ValueError(
                f"rate_convention must be product or ratio, "
                f"got {self.rate_convention!r}")

    @property
    def alphas(self) -> tuple[float, ...]:
        a = self.alpha
        return tuple(a) if isinstance(a, (tuple, list)) else (a,)

    @property
    def capacities(self) -> tuple[int, ...]:
        c = self.cache_capacity
        return tuple(c) if isinstance(c, (tuple, list)) else (c,)

    @property
    def is_sweep(self) -> bool:
        return (isinstance(self.alpha, (tuple, list))
                or isinstance(self.cache_capacity, (tuple, list)))


# eq=False: ndarray fields make a generated __eq__ ambiguous; compare
# written reports (CSV/JSON) or individual fields instead.
@dataclass(frozen=True, eq=False)
class SimReport:
    """Per-rank tallies and totals of one finished run."""

    requests: np.ndarray
    hits: np.ndarray
    misses: np.ndarray
    imported_bandwidth: np.ndarray
    hit_ratio: float
    miss_ratio: float
    total_bandwidth: float
    config: dict
    elapsed: float


class CapacityComparison(NamedTuple):
    capacity: int
    simulated_hit_ratio: float
    top_c_mass: float
    gap: float
    sim_bandwidth: float
    model_bandwidth_product: float
    model_bandwidth_ratio: float


def _derived_seeds(seed: int) -> tuple[int, int]:
    """Split one config seed into independent workload/attribute seeds."""
    w, a = np.random.SeedSequence(seed).spawn(2)
    return (int(w.generate_state(1, np.uint32)[0]),
            int(a.generate_state(1, np.uint32)[0]))


def _build_inputs(config: SimConfig, alpha: float
                  ) -> tuple[ZipfCatalog, Workload, ObjectAttributes, dict]:
    workload_seed, attr_seed = _derived_seeds(config.seed)
    catalog = build_catalog(config.n_objects, alpha)
    workload = generate_workload(catalog, config.total_requests,
                                 config.session_size, workload_seed)
    attrs = assign_attributes(config.n_objects, config.size_range,
                              config.time_range, attr_seed)
    return catalog, workload, attrs, {
        "workload_seed": workload_seed, "attr_seed": attr_seed}


def _config_echo(config: SimConfig, alpha: float, capacity: int,
                 derived: dict) -> dict:
    return {
        "n_objects": config.n_objects,
        "alpha": alpha,
        "total_requests": config.total_requests,
        "session_size": config.session_size,
        "cache_capacity": capacity,
        "policy": config.policy,
        "seed": config.seed,
        "workload_seed": derived["workload_seed"],
        "attr_seed": derived["attr_seed"],
        "size_range": list(config.size_range),
        "time_range": list(config.time_range),
        "k": config.k,
        "rate_convention": config.rate_convention,
    }


def simulate_workload(workload: Workload, attrs: ObjectAttributes,
                      capacity: int, policy: str, k: float,
                      rate_convention: str, config_echo: dict) -> SimReport:
    """Replay an existing workload and tally the outcome.

    The building block behind :func:`run_simulation`, also used when a
    workload comes from a trace file instead of a seed.
    """
    t0 = time.perf_counter()
    cache = make_policy(policy, capacity)
    access = cache.access
    flags = np.fromiter((access(r)[0] for r in workload.requests.tolist()),
                        dtype=bool, count=workload.total_requests)
    n = workload.n_objects
    requests = np.bincount(workload.requests, minlength=n + 1)[1:]
    hits = np.bincount(workload.requests[flags], minlength=n + 1)[1:]
    misses = requests - hits
    b = (attrs.sizes * attrs.channel_times if rate_convention == "product"
         else attrs.sizes / attrs.channel_times)
    imported = k * misses * b
    total = workload.total_requests
    hit_ratio = float(hits.sum()) / total
    return SimReport(
        requests=requests,
        hits=hits,
        misses=misses,
        imported_bandwidth=imported,
        hit_ratio=hit_ratio,
        miss_ratio=1.0 - hit_ratio,
        total_bandwidth=float(imported.sum()),
        config=config_echo,
        elapsed=time.perf_counter() - t0,
    )


def run_simulation(config: SimConfig) -> SimReport:
    """Run one seeded simulation described by a scalar config."""
    if config.is_sweep:
        raise ValueError("run_simulation needs scalar alpha and capacity; "
                         "use sweep() for lists")
    alpha = config.alphas[0]
    capacity = config.capacities[0]
    catalog, workload, attrs, derived = _build_inputs(config, alpha)
    return simulate_workload(
        workload, attrs, capacity, config.policy, config.k,
        config.rate_convention, _config_echo(config, alpha, capacity,
                                             derived))


def sweep(config: SimConfig) -> list[SimReport]:
    """Run the cross-product of the config's alpha and capacity lists.

    Sweep point ``i`` runs with seed ``config.seed ^ i`` so points are
    independent yet reproducible; the effective seed lands in each
    report's config echo.
    """
    if not config.is_sweep:
        raise ValueError("sweep needs a list-valued alpha or cache_capacity")
    reports = []
    index = 0
    for alpha in config.alphas:
        for capacity in config.capacities:
            point = replace(config, alpha=alpha, cache_capacity=capacity,
                            seed=config.seed ^ index)
            reports.append(run_simulation(point))
            index += 1
    return reports


def compare_analytic(config: SimConfig) -> list[CapacityComparison]:
    """Measure hit ratios against the closed-form top-rank mass.

    One row per capacity in the config: the simulated hit ratio, the
    exact mass of the top ``C`` ranks, their absolute gap, and the
    simulated total imported bandwidth next to the model's aggregate
    under both rate conventions.
    """
    if isinstance(config.alpha, (tuple, list)):
        raise ValueError("compare_analytic needs a scalar alpha")
    alpha = config.alphas[0]
    rows = []
    for capacity in config.capacities:
        point = replace(config, cache_capacity=capacity)
        report = run_simulation(point)
        catalog, _, attrs, _ = _build_inputs(point, alpha)
        mass = top_c_mass(catalog, capacity)
        model = {
            conv: aggregate_bandwidth(
                attrs,
                BandwidthParams(k=config.k, cache_capacity=capacity,
                                rate_convention=conv),
                catalog, catalog.n_objects)
            for conv in ("product", "ratio")
        }
        rows.append(CapacityComparison(
            capacity=capacity,
            simulated_hit_ratio=report.hit_ratio,
            top_c_mass=mass,
            gap=abs(report.hit_ratio - mass),
            sim_bandwidth=report.total_bandwidth,
            model_bandwidth_product=model["product"],
            model_bandwidth_ratio=model["ratio"],
        ))
    return rows


def fit_power_law(counts, max_rank: int) -> tuple[float, float]:
    """Least-squares slope of log(count) against log(rank).

    Fits ranks ``1..max_rank``, skipping zero-count ranks since their
    logarithm is undefined. Intended for ``max_rank >= 10``; fewer than
    3 usable points is an error.

    Returns
    -------
    (slope, r_squared)
        ``slope`` is negative for decaying popularity; ``r_squared``
        measures how well a pure power law explains the counts.
    """
    counts = np.asarray(counts, dtype=np.float64)
    upper = min(int(max_rank), counts.size)
    ranks = np.arange(1, upper + 1, dtype=np.float64)
    y = counts[:upper]
    usable = y > 0
    if int(usable.sum()) < 3:
        raise ValueError(
            f"need at least 3 positive counts in ranks 1..{upper}, "
            f"got {int(usable.sum())}")
    fit = stats.linregress(np.log(ranks[usable]), np.log(y[usable]))
    r_squared = 1.0 if np.isnan(fit.rvalue) else float(fit.rvalue) ** 2
    return float(fit.slope), r_squared


def write_report_csv(report: SimReport, path: str) -> None:
    """Write per-rank tallies with a log-100 rank axis column."""
    log100 = np.log(np.arange(1, report.requests.size + 1)) / np.log(100.0)
    with open(path, "w") as f:
        f.write("rank,log100_rank,requests,hits,misses,bandwidth\n")
        for i in range(report.requests.size):
            f.write(f"{i + 1},{log100[i]:.6f},{report.requests[i]},"
                    f"{report.hits[i]},{report.misses[i]},"
                    f"{report.imported_bandwidth[i]:.10e}\n")


def write_summary_json(report: SimReport, path: str) -> None:
    """Write run totals and the config echo as deterministic JSON."""
    payload = {
        "totals": {
            "hit_ratio": report.hit_ratio,
            "miss_ratio": report.miss_ratio,
            "total_bandwidth": report.total_bandwidth,
            "total_requests": int(report.requests.sum()),
            "total_hits": int(report.hits.sum()),
            "total_misses": int(report.misses.sum()),
        },
        "config": report.config,
    }
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def write_comparison_csv(rows: list[CapacityComparison], path: str) -> None:
    """Write the model-vs-simulation table, one row per capacity."""
    with open(path, "w") as f:
        f.write("capacity,simulated_hit_ratio,top_c_mass,gap,sim_bandwidth,"
                "model_bandwidth_product,model_bandwidth_ratio\n")
        for row in rows:
            f.write(f"{row.capacity},{row.simulated_hit_ratio:.10e},"
                    f"{row.top_c_mass:.10e},{row.gap:.10e},"
                    f"{row.sim_bandwidth:.10e},"
                    f"{row.model_bandwidth_product:.10e},"
                    f"{row.model_bandwidth_ratio:.10e}\n")
