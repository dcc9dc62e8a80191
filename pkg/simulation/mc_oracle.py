"""
Monte Carlo oracle for the ratio x = A/S under the stock-numeraire measure
Simulates the stock exactly and the running average by trapezoid updates;
estimates moments, European values and the numeraire martingale identity
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from config.config import MC_CONFIG
from core.exceptions import DomainError
from core.model_core import AveragingMethod, AveragingSpec, ModelParams, OptionKind

logger = logging.getLogger(__name__)

Statistic = Callable[[np.ndarray, np.ndarray], np.ndarray]
BlockStats = Tuple[int, float, float]


class McEstimate(BaseModel):
    """Sample mean with its standard error"""

    model_config = ConfigDict(frozen=True)

    mean: float
    std_error: float = Field(..., ge=0)
    n_paths: int = Field(..., ge=1)
    seed: int


class McSettings(BaseModel):
    """Simulation controls shared by all oracle functions"""

    model_config = ConfigDict(frozen=True)

    n_paths: int = Field(MC_CONFIG['n_paths'], ge=2)
    seed: int = Field(MC_CONFIG['seed'], ge=0)
    block_size: int = Field(MC_CONFIG['block_size'], ge=2)
    workers: int = Field(MC_CONFIG['workers'], ge=1)
    antithetic: bool = MC_CONFIG['antithetic']
    steps_per_year: int = Field(MC_CONFIG['steps_per_year'], ge=1)

    def steps_for(self, horizon: float) -> int:
        return max(1, int(np.ceil(self.steps_per_year * horizon)))


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Counter-based generator for one path block, keyed by (seed, block)"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def _weight_mass(lam: float, t: float) -> float:
    # int_0^t exp(-lam (t - v)) dv
    return float(-np.expm1(-lam * t) / lam)


def _simulate_block(
    params: ModelParams,
    avg: AveragingSpec,
    t0: float,
    x0: float,
    horizon: float,
    n_steps: int,
    size: int,
    rng: np.random.Generator,
    antithetic: bool,
) -> Tuple[np.ndarray, np.ndarray]:
    # terminal (x, S/S_t0); antithetic blocks hold [Z paths, -Z paths]
    if horizon == 0.0:
        return np.full(size, x0), np.ones(size)
    dt = horizon / n_steps
    log_drift = (params.r - params.q + 0.5 * params.sigma ** 2) * dt
    vol = params.sigma * np.sqrt(dt)
    half = size // 2 if antithetic else size

    s = np.ones(size)
    log_s = np.zeros(size)
    if avg.method is AveragingMethod.ARITHMETIC:
        acc = np.full(size, t0 * x0)
    elif avg.method is AveragingMethod.GEOMETRIC:
        acc = np.full(size, t0 * np.log(x0))
    else:
        decay = np.exp(-avg.lam * dt)
        acc = np.full(size, x0 * _weight_mass(avg.lam, t0))

    for _ in range(n_steps):
        z = rng.standard_normal(half)
        if antithetic:
            z = np.concatenate((z, -z))
        log_next = log_s + log_drift + vol * z
        s_next = np.exp(log_next)
        if avg.method is AveragingMethod.ARITHMETIC:
            acc += 0.5 * dt * (s + s_next)
        elif avg.method is AveragingMethod.GEOMETRIC:
            acc += 0.5 * dt * (log_s + log_next)
        else:
            acc = decay * acc + 0.5 * dt * (decay * s + s_next)
        s, log_s = s_next, log_next

    t_end = t0 + horizon
    if avg.method is AveragingMethod.ARITHMETIC:
        a = acc / t_end
    elif avg.method is AveragingMethod.GEOMETRIC:
        a = np.exp(acc / t_end)
    else:
        a = acc / _weight_mass(avg.lam, t_end)
    return a / s, s


def _block_sizes(n_paths: int, block_size: int, antithetic: bool) -> List[int]:
    if antithetic and (n_paths % 2 or block_size % 2):
        raise DomainError(f"antithetic sampling needs even path and block counts, got {n_paths}, {block_size}")
    full, rest = divmod(n_paths, block_size)
    return [block_size] * full + ([rest] if rest else [])


def _check_inputs(params: ModelParams, t0: float, x0: float, horizon: float, n_steps: int) -> None:
    if not t0 > 0:
        raise DomainError(f"simulation needs t0 > 0 for the average to exist, got {t0}")
    if not x0 > 0:
        raise DomainError(f"initial ratio must be positive, got {x0}")
    if horizon < 0:
        raise DomainError(f"horizon must be non-negative, got {horizon}")
    if n_steps < 1:
        raise DomainError(f"need at least one time step, got {n_steps}")


def _moments_of(samples: np.ndarray) -> BlockStats:
    mean = float(np.mean(samples))
    return len(samples), mean, float(np.sum((samples - mean) ** 2))


def _merge(left: BlockStats, right: BlockStats) -> BlockStats:
    # pairwise update of (count, mean, sum of squared deviations)
    n_a, mean_a, m2_a = left
    n_b, mean_b, m2_b = right
    n = n_a + n_b
    delta = mean_b - mean_a
    return n, mean_a + delta * n_b / n, m2_a + m2_b + delta ** 2 * n_a * n_b / n


def _run_blocks(
    statistics: Dict[str, Statistic],
    params: ModelParams,
    avg: AveragingSpec,
    t0: float,
    x0: float,
    horizon: float,
    n_steps: int,
    settings: McSettings,
) -> Dict[str, McEstimate]:
    """
    Simulate all path blocks and reduce each statistic in block order

    Block b draws from Philox keyed by (seed, b); the reduction visits blocks
    in index order, so results do not depend on the worker count.
    """
    _check_inputs(params, t0, x0, horizon, n_steps)
    sizes = _block_sizes(settings.n_paths, settings.block_size, settings.antithetic)
    if horizon == 0.0:
        # every path sits at (x0, 1)
        start_x, start_s = np.array([x0]), np.ones(1)
        return {
            name: McEstimate(
                mean=float(statistic(start_x, start_s)[0]), std_error=0.0,
                n_paths=settings.n_paths, seed=settings.seed,
            )
            for name, statistic in statistics.items()
        }

    def run(block: int) -> Dict[str, BlockStats]:
        x, s = _simulate_block(
            params, avg, t0, x0, horizon, n_steps, sizes[block],
            block_generator(settings.seed, block), settings.antithetic,
        )
        stats = {}
        for name, statistic in statistics.items():
            values = statistic(x, s)
            if settings.antithetic:
                half = len(values) // 2
                values = 0.5 * (values[:half] + values[half:])
            stats[name] = _moments_of(values)
        return stats

    logger.info(
        f"MC run: {settings.n_paths} paths in {len(sizes)} blocks, {n_steps} steps over {horizon}, "
        f"seed {settings.seed}, workers {settings.workers}, antithetic {settings.antithetic}"
    )
    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            per_block = list(pool.map(run, range(len(sizes))))
    else:
        per_block = [run(block) for block in range(len(sizes))]

    estimates = {}
    for name in statistics:
        total = per_block[0][name]
        for stats in per_block[1:]:
            total = _merge(total, stats[name])
        count, mean, m2 = total
        std_error = np.sqrt(m2 / (count - 1) / count) if count > 1 else 0.0
        estimates[name] = McEstimate(mean=mean, std_error=float(std_error), n_paths=settings.n_paths, seed=settings.seed)
        logger.debug(f"{name}: {mean:.10g} +/- {std_error:.3g}")
    return estimates


def simulate_paths(
    params: ModelParams,
    avg: AveragingSpec,
    t0: float,
    x0: float,
    horizon: float,
    n_steps: int,
    n_paths: int,
    seed: int = MC_CONFIG['seed'],
    antithetic: bool = False,
    block_size: int = MC_CONFIG['block_size'],
) -> np.ndarray:
    """
    Terminal samples of x = A/S at t0 + horizon

    Args:
        params: Model parameters
        avg: Averaging operator
        t0: Start time, positive
        x0: Ratio at t0
        horizon: Simulated time span
        n_steps: Time steps over the horizon
        n_paths: Number of paths
        seed: Root seed; block b uses the key (seed, b)
        antithetic: Pair every normal draw with its negative
        block_size: Paths per block

    Returns:
        Array of n_paths terminal ratios in block order
    """
    _check_inputs(params, t0, x0, horizon, n_steps)
    sizes = _block_sizes(n_paths, block_size, antithetic)
    samples = [
        _simulate_block(params, avg, t0, x0, horizon, n_steps, size, block_generator(seed, block), antithetic)[0]
        for block, size in enumerate(sizes)
    ]
    return np.concatenate(samples)


def mc_european_value(
    params: ModelParams,
    avg: AveragingSpec,
    t0: float,
    x0: float,
    kind: OptionKind = OptionKind.CALL,
    n_steps: Optional[int] = None,
    settings: Optional[McSettings] = None,
) -> McEstimate:
    """
    Transformed European value E[exp(-qT) (rho (1 - x_T))^+]

    Args:
        params: Model parameters
        avg: Averaging operator
        t0: Current time, 0 < t0 <= T
        x0: Current ratio
        kind: Call or put
        n_steps: Steps to maturity; defaults to steps_per_year times the horizon
        settings: Path count, seed, workers and antithetic flag

    Returns:
        McEstimate of the discounted payoff
    """
    settings = settings or McSettings()
    horizon = params.T - t0
    if horizon < 0:
        raise DomainError(f"t0 must not exceed the maturity, got t0={t0}, T={params.T}")
    steps = n_steps or settings.steps_for(horizon)
    discount = np.exp(-params.q * params.T)
    rho = kind.rho

    def payoff(x: np.ndarray, _: np.ndarray) -> np.ndarray:
        return discount * np.maximum(rho * (1.0 - x), 0.0)

    return _run_blocks({'european': payoff}, params, avg, t0, x0, horizon, steps, settings)['european']


def mc_moments(
    params: ModelParams,
    avg: AveragingSpec,
    t0: float,
    x0: float,
    u: float,
    n_steps: Optional[int] = None,
    settings: Optional[McSettings] = None,
) -> Dict[str, McEstimate]:
    """
    Conditioned moments of x_u given x_t0 = x0

    Returns:
        Estimates keyed m1, m2, log_mean and log_sd; log_sd carries the
        asymptotic standard error sd / sqrt(2 (n - 1))
    """
    settings = settings or McSettings()
    horizon = u - t0
    steps = n_steps or settings.steps_for(horizon)
    statistics = {
        'm1': lambda x, _: x,
        'm2': lambda x, _: x ** 2,
        'log_mean': lambda x, _: np.log(x),
        'log_second': lambda x, _: np.log(x) ** 2,
    }
    estimates = _run_blocks(statistics, params, avg, t0, x0, horizon, steps, settings)
    log_mean = estimates['log_mean'].mean
    variance = max(estimates.pop('log_second').mean - log_mean ** 2, 0.0)
    estimates['log_sd'] = McEstimate(
        mean=float(np.sqrt(variance)),
        std_error=float(np.sqrt(variance / (2.0 * (settings.n_paths - 1)))),
        n_paths=settings.n_paths,
        seed=settings.seed,
    )
    return estimates


def mc_numeraire_check(
    params: ModelParams,
    t0: float,
    u: float,
    n_steps: Optional[int] = None,
    settings: Optional[McSettings] = None,
) -> McEstimate:
    """E[(S_t0 / S_u) exp((r - q)(u - t0))], equal to one under the stock-numeraire measure"""
    settings = settings or McSettings()
    horizon = u - t0
    steps = n_steps or settings.steps_for(horizon)
    growth = np.exp((params.r - params.q) * horizon)

    def ratio(_: np.ndarray, s: np.ndarray) -> np.ndarray:
        return growth / s

    return _run_blocks(
        {'numeraire': ratio}, params, AveragingSpec.arithmetic(), t0, 1.0, horizon, steps, settings
    )['numeraire']


def estimates_frame(estimates: Dict[str, McEstimate]) -> pd.DataFrame:
    """Rows quantity, mean, std_error, n_paths, seed"""
    rows = [{'quantity': name, **estimate.model_dump()} for name, estimate in estimates.items()]
    return pd.DataFrame(rows, columns=['quantity', 'mean', 'std_error', 'n_paths', 'seed'])
