"""Monte Carlo replay of the checkpoint / failure / rollback timeline.

Each cycle runs periods of length ``t_c`` (start-to-start): ``t_c - t_s`` of
useful work, then an exposed save that completes on the period boundary.
One fault arrives at an exponentially distributed wall time, is detected
``t_e`` later, and the job rolls back to the newest uncorrupted snapshot
still retained (or to the origin), paying ``t_r`` to recover.

Random numbers: the fault time of cycle ``i`` is ``-t_f * ln(u_i)`` where
``u_i = ((z_i >> 11) + 1) / 2**53`` and ``z_i`` is output ``i`` of the
standard SplitMix64 generator seeded with ``seed``. Cycle ``i`` therefore
depends only on ``(seed, i)``, and results do not change with chunking or
thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .analytic import availability, lost_time
from .piecewise import availability_latency, lost_time_latency
from .units import DomainError, ModelParams, ValidationError, validate_params

CHUNK = 1 << 15


def default_retention(t_e: float, t_c: float) -> int:
    """Smallest depth that always keeps a snapshot saved before the fault."""
    return int(math.floor(t_e / t_c)) + 2


@dataclass(frozen=True)
class SimConfig:
    params: ModelParams
    t_c: float
    cycles: int = 100_000
    seed: int = 0
    retention_depth: int | None = None

    @property
    def depth(self) -> int:
        if self.retention_depth is None:
            return default_retention(self.params.t_e, self.t_c)
        return self.retention_depth

    def validate(self) -> SimConfig:
        validate_params(self.params)
        problems = []
        if not (math.isfinite(self.t_c) and self.t_c > self.params.t_s):
            problems.append("t_c must exceed t_s")
        if not (isinstance(self.cycles, int) and self.cycles >= 1):
            problems.append("cycles must be >= 1")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            problems.append("seed must be an unsigned 64-bit integer")
        if not (isinstance(self.depth, int) and self.depth >= 1):
            problems.append("retention_depth must be >= 1")
        if problems:
            raise ValidationError("; ".join(problems))
        return self


@dataclass(frozen=True)
class CycleRecord:
    wall: float
    retained_useful: float
    restarted_from_origin: bool

    @property
    def lost(self) -> float:
        return self.wall - self.retained_useful


@dataclass(frozen=True)
class SimResult:
    mean_lost_time_per_cycle: float
    availability_estimate: float
    stderr_lost_time: float
    stderr_availability: float
    cycles: int
    restarts_from_origin: int


@dataclass(frozen=True)
class ModelComparison:
    simulated: SimResult
    model_lost_time: float
    model_availability: float
    abs_error_lost_time: float
    abs_error_availability: float


def single_cycle(
    params: ModelParams,
    t_c: float,
    retention_depth: int,
    fault_time: float,
    backend: str | None = None,
) -> CycleRecord:
    """Replay one failure cycle for a fault at ``fault_time``.

    A save completing exactly at the fault time counts as valid; saves
    completing later are corrupt. Saves completing up to and including the
    detection instant are on the retention list.
    """
    if not fault_time >= 0:
        raise DomainError(f"fault_time must be >= 0, got {fault_time!r}")
    if not t_c > params.t_s:
        raise DomainError("t_c must exceed t_s")
    if retention_depth < 1:
        raise DomainError("retention_depth must be >= 1")
    k = _backend.get(backend)
    wall, retained, restarted = k.single_cycle(
        params.t_s, params.t_r, params.t_e, t_c, int(retention_depth), float(fault_time)
    )
    return CycleRecord(wall, retained, bool(restarted))


def simulate_arrays(
    config: SimConfig, workers: int = 1, backend: str | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cycle (wall, retained_useful, restarted) arrays in cycle order."""
    config.validate()
    k = _backend.get(backend)
    p = config.params
    starts = range(0, config.cycles, CHUNK)

    def run(start: int):
        count = min(CHUNK, config.cycles - start)
        return k.simulate_cycles(
            config.seed, start, count, p.t_f, p.t_s, p.t_r, p.t_e, config.t_c, config.depth
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    return tuple(np.concatenate(col) for col in zip(*parts))


def run_trials(config: SimConfig, workers: int = 1, backend: str | None = None) -> SimResult:
    wall, retained, restarted = simulate_arrays(config, workers, backend)
    n = len(wall)
    lost = wall - retained
    mean_lost = math.fsum(lost) / n
    total_wall = math.fsum(wall)
    av = math.fsum(retained) / total_wall
    if n > 1:
        se_lost = math.sqrt(math.fsum((lost - mean_lost) ** 2) / (n - 1) / n)
        # delta method for a ratio of sums
        resid = retained - av * wall
        se_av = math.sqrt(math.fsum(resid**2) / (n - 1) / n) / (total_wall / n)
    else:
        se_lost = se_av = 0.0
    return SimResult(mean_lost, av, se_lost, se_av, n, int(restarted.sum()))


def compare_with_model(
    config: SimConfig, workers: int = 1, backend: str | None = None
) -> ModelComparison:
    """Simulate and evaluate the matching analytic model at ``config.t_c``.

    Uses the closed-form models when ``t_e == 0`` and the floor-term models
    otherwise.
    """
    sim = run_trials(config, workers, backend)
    p, t_c = config.params, config.t_c
    if p.t_e == 0:
        lt, av = lost_time(p, t_c), availability(p, t_c)
    else:
        lt, av = lost_time_latency(p, t_c), availability_latency(p, t_c)
    return ModelComparison(
        sim,
        lt,
        av,
        abs(sim.mean_lost_time_per_cycle - lt),
        abs(sim.availability_estimate - av),
    )
