"""
Monte-Carlo Service - per-trial orchestration and outage estimation
"""
import logging
import math
from dataclasses import dataclass
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import norm

from app.exceptions import ConfigError, DegenerateChannelError
from app.models.beamformers import BeamformerSet
from app.models.channel import ChannelRealization
from app.models.outcome import OracleReport, OutageEstimate, TrialOutcome
from app.models.parameters import SystemParameters
from app.models.power import EffectiveGains, PowerAllocation
from app.models.topology import Topology
from app.schemes import Scheme, SchemeFactory
from app.services.ia_service import InterferenceAlignmentService
from app.services.link_service import LinkService
from app.services.power_service import PowerService

logger = logging.getLogger(__name__)

SWEEP_VARIABLES = ('gamma_th_db', 'p_rs_dbm', 'n_su', 'r_a_rs')


@dataclass(frozen=True)
class TrialState:
    """Where the alternating optimization left one trial"""
    channels: ChannelRealization
    beamformers: BeamformerSet
    gains: EffectiveGains
    allocation: PowerAllocation
    pre_doomed: bool
    ia_iterations: int


def _run_chunk(task: Tuple[str, SystemParameters, Topology, int, Sequence[int]]) -> List[TrialOutcome]:
    """Worker entry point: schemes travel by name, trial streams by index"""
    scheme_name, params, topology, master_seed, indices = task
    scheme = SchemeFactory.create(scheme_name)
    return [
        MonteCarloService.run_trial(scheme, params, topology,
                                    MonteCarloService.trial_rng(master_seed, index))
        for index in indices
    ]


class MonteCarloService:
    """Outage probability estimation over independent fading trials"""

    def __init__(self, workers: int = 1, chunk_size: int = 64, progress_every: int = 0):
        """
        Initialize the estimator

        Args:
            workers: Worker processes (1 runs in-process)
            chunk_size: Trials per work unit
            progress_every: Log progress every this many trials (0 disables)
        """
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        if chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")

        self.workers = workers
        self.chunk_size = chunk_size
        self.progress_every = progress_every

    @staticmethod
    def trial_rng(master_seed: int, index: int) -> np.random.Generator:
        """Independent stream of trial `index`, fixed by (master_seed, index) alone"""
        return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))

    @staticmethod
    def _power_step(scheme: Scheme, channels: ChannelRealization, bf: BeamformerSet,
                    params: SystemParameters, topology: Topology) -> Tuple[EffectiveGains, PowerAllocation, bool]:
        gains = PowerService.effective_gains(channels, bf, params, topology)
        z_a = PowerService.compute_z(gains, params, topology, 'A')
        z_b = PowerService.compute_z(gains, params, topology, 'B')
        pre_doomed = (PowerService.optimal_ps(z_a, params.gamma_th) == 0.0
                      or PowerService.optimal_ps(z_b, params.gamma_th) == 0.0)

        rho_a, rho_b = scheme.choose_ps(z_a, z_b, params.gamma_th)
        try:
            theta = scheme.choose_theta(gains, rho_a, rho_b, params, topology)
        except DegenerateChannelError:
            theta = PowerService.THETA_DEFAULT

        allocation = PowerService.allocate(gains, rho_a, rho_b, theta, params, topology)
        return gains, allocation, pre_doomed

    @classmethod
    def solve_trial(cls, scheme: Scheme, params: SystemParameters, topology: Topology,
                    rng: np.random.Generator) -> TrialState:
        """
        Run the two-step alternation on one fading realization

        Channels are drawn before anything else so every scheme sees the
        same realization for the same stream. A ρ* = 0 in an intermediate
        power step only means the current beamformers are poor: the SU
        harvests everything (ρ = 0) and IA keeps going. Only the final
        power step decides whether the trial is pre-doomed.

        Args:
            scheme: Scheme deciding ρ, θ and the beamformers
            params: System parameters
            topology: Network geometry
            rng: Stream of this trial

        Returns:
            TrialState after the final power step
        """
        channels = ChannelRealization.sample(topology, params, rng)
        bf = scheme.initial_beamformers(channels, params, rng)
        ia = InterferenceAlignmentService(params, topology)
        iterations = 0

        for _ in range(params.max_outer_iters):
            if not scheme.uses_ia:
                break
            _, allocation, _ = cls._power_step(scheme, channels, bf, params, topology)
            bf, diagnostics = ia.run_ia(channels, allocation, bf)
            iterations += diagnostics.iterations_used

        gains, allocation, pre_doomed = cls._power_step(scheme, channels, bf, params, topology)
        return TrialState(channels, bf, gains, allocation, pre_doomed, iterations)

    @classmethod
    def run_trial(cls, scheme: Scheme, params: SystemParameters, topology: Topology,
                  rng: np.random.Generator) -> TrialOutcome:
        """
        One Monte-Carlo trial: solve, then evaluate the four SINRs

        Returns:
            TrialOutcome; a trial whose closed-form ρ* hits 0 is an outage
        """
        state = cls.solve_trial(scheme, params, topology, rng)
        return LinkService.evaluate(state.gains, state.allocation, params, topology,
                                    pre_doomed=state.pre_doomed, ia_iterations=state.ia_iterations)

    @staticmethod
    def wilson_interval(outages: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
        """
        Wilson score interval of a binomial proportion

        Args:
            outages: Number of outage trials
            trials: Number of trials (>= 1)
            confidence: Two-sided confidence level

        Returns:
            Tuple (low, high) with 0 <= low <= outages/trials <= high <= 1
        """
        if trials < 1:
            raise ValueError(f"trials must be >= 1, got {trials}")

        z = float(norm.ppf(0.5 + confidence / 2.0))
        p = outages / trials
        denominator = 1.0 + z ** 2 / trials
        centre = (p + z ** 2 / (2.0 * trials)) / denominator
        half_width = z * math.sqrt(p * (1.0 - p) / trials + z ** 2 / (4.0 * trials ** 2)) / denominator

        low = max(0.0, centre - half_width)
        high = min(1.0, centre + half_width)
        return min(low, p), max(high, p)

    def _chunks(self, n_trials: int) -> List[range]:
        return [range(start, min(start + self.chunk_size, n_trials))
                for start in range(0, n_trials, self.chunk_size)]

    def run_trials(self, scheme: Scheme, params: SystemParameters, topology: Topology,
                   n_trials: int, master_seed: int) -> List[TrialOutcome]:
        """Outcomes of trials 0..n_trials-1, in index order for any worker count"""
        tasks = [(scheme.name, params, topology, master_seed, chunk) for chunk in self._chunks(n_trials)]
        outcomes = []

        if self.workers == 1:
            for chunk in map(_run_chunk, tasks):
                self._collect(outcomes, chunk, n_trials, scheme)
        else:
            with Pool(processes=self.workers) as pool:
                for chunk in pool.imap(_run_chunk, tasks):
                    self._collect(outcomes, chunk, n_trials, scheme)

        return outcomes

    def _collect(self, outcomes: List[TrialOutcome], chunk: List[TrialOutcome],
                 n_trials: int, scheme: Scheme) -> None:
        before = len(outcomes)
        outcomes.extend(chunk)
        if self.progress_every and len(outcomes) // self.progress_every > before // self.progress_every:
            logger.info(f"[MonteCarlo] {scheme.name}: {len(outcomes)}/{n_trials} trials")

    def estimate_outage(self, scheme: Scheme, params: SystemParameters, topology: Topology,
                        n_trials: int, master_seed: int, sweep_variable: str = 'gamma_th_db',
                        sweep_value: Optional[float] = None) -> OutageEstimate:
        """
        Estimate the secondary network's outage probability

        Args:
            scheme: Scheme under test
            params: System parameters
            topology: Network geometry
            n_trials: Number of trials (>= 1)
            master_seed: Seed every trial stream derives from
            sweep_variable: Label of the swept parameter
            sweep_value: Value of the swept parameter (defaults to γth in dB)

        Returns:
            OutageEstimate with a 95% Wilson interval
        """
        if n_trials < 1:
            raise ValueError(f"n_trials must be >= 1, got {n_trials}")
        if sweep_value is None:
            sweep_value = 10.0 * math.log10(params.gamma_th)

        outcomes = self.run_trials(scheme, params, topology, n_trials, master_seed)
        outage_count = sum(1 for outcome in outcomes if outcome.outage)
        ci_low, ci_high = self.wilson_interval(outage_count, n_trials)

        estimate = OutageEstimate(
            scheme=scheme.name,
            sweep_variable=sweep_variable,
            sweep_value=sweep_value,
            trials=n_trials,
            outage_count=outage_count,
            probability=outage_count / n_trials,
            ci_low=ci_low,
            ci_high=ci_high,
            master_seed=master_seed,
            pre_doomed_count=sum(1 for outcome in outcomes if outcome.pre_doomed),
            mean_ia_iterations=sum(outcome.ia_iterations for outcome in outcomes) / n_trials
        )

        logger.info(
            f"[MonteCarlo] {scheme.name} {sweep_variable}={sweep_value:g}: "
            f"{outage_count}/{n_trials} outages, p={estimate.probability:.3e} "
            f"[{ci_low:.3e}, {ci_high:.3e}], pre-doomed {estimate.pre_doomed_count}, "
            f"mean IA sweeps {estimate.mean_ia_iterations:.1f}"
        )
        return estimate

    def sweep(self, config) -> List[OutageEstimate]:
        """
        One estimate per (scheme, sweep value)

        All schemes at a sweep point share the master seed, so trial k sees
        the same channels under every scheme.

        Args:
            config: SimConfig (schemes, sweep_variable, sweep_values, trials,
                seed and at_sweep_point)

        Returns:
            List of OutageEstimate, grouped by sweep value

        Raises:
            ConfigError: If the sweep variable is unknown or the values are
                not strictly increasing
        """
        if config.sweep_variable not in SWEEP_VARIABLES:
            raise ConfigError('sweep_variable', f"unknown sweep variable '{config.sweep_variable}'")
        values = list(config.sweep_values)
        if not values or any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError('sweep_values', "sweep values must be non-empty and strictly increasing")

        schemes = [SchemeFactory.create(name) for name in config.schemes]
        estimates = []

        for value in values:
            params, topology = config.at_sweep_point(value)
            logger.info(f"[MonteCarlo] {config.sweep_variable}={value:g}: {len(schemes)} schemes, {config.trials} trials")
            for scheme in schemes:
                estimates.append(self.estimate_outage(
                    scheme, params, topology, config.trials, config.seed,
                    sweep_variable=config.sweep_variable, sweep_value=value
                ))

        return estimates

    @staticmethod
    def crossing_point(estimates: Sequence[OutageEstimate], target: float) -> Optional[float]:
        """
        Sweep value where one scheme's outage curve crosses a target probability

        Interpolates log10(probability) linearly between neighbouring points;
        a zero estimate is floored at half an outage.

        Args:
            estimates: Estimates of a single scheme
            target: Target probability in (0, 1)

        Returns:
            Interpolated sweep value, or None if the curve never crosses
        """
        if not 0.0 < target < 1.0:
            raise ValueError(f"target must lie in (0, 1), got {target}")
        if len({estimate.scheme for estimate in estimates}) > 1:
            raise ValueError("crossing_point expects estimates of a single scheme")

        points = sorted(estimates, key=lambda estimate: estimate.sweep_value)
        x = np.array([estimate.sweep_value for estimate in points], dtype=float)
        y = np.log10([max(estimate.probability, 0.5 / estimate.trials) for estimate in points])
        level = math.log10(target)

        for i in range(len(points)):
            if y[i] == level:
                return float(x[i])
            if i + 1 < len(points) and (y[i] - level) * (y[i + 1] - level) < 0:
                return float(x[i] + (level - y[i]) / (y[i + 1] - y[i]) * (x[i + 1] - x[i]))
        return None

    @classmethod
    def oracle_check(cls, params: SystemParameters, topology: Topology, grid_size: int,
                     realizations: int, master_seed: int) -> OracleReport:
        """
        Compare the closed-form (ρ*, θ*) with an exhaustive grid search

        Each realization runs the proposed pipeline; the grid search then
        optimizes over the final beamformers' effective gains.

        Args:
            params: System parameters
            topology: Network geometry
            grid_size: Grid points per axis (>= 11)
            realizations: Number of realizations
            master_seed: Seed of the realization streams

        Returns:
            OracleReport; max_deviation is the worst relative shortfall of the
            closed form against the grid optimum
        """
        scheme = SchemeFactory.create('proposed')
        infeasible = 0
        mismatches = 0
        max_deviation = 0.0

        for index in range(realizations):
            state = cls.solve_trial(scheme, params, topology, cls.trial_rng(master_seed, index))
            best = PowerService.grid_oracle(state.gains, params, topology, grid_size)

            closed_feasible = not state.pre_doomed
            if not best.feasible:
                infeasible += 1
            if best.feasible != closed_feasible:
                mismatches += 1
                logger.debug(f"[MonteCarlo] oracle feasibility mismatch at realization {index}")
                continue
            if not best.feasible or best.min_sinr <= 0:
                continue

            closed = min(LinkService.snr_su('A', state.gains, state.allocation, params, topology),
                         LinkService.snr_su('B', state.gains, state.allocation, params, topology))
            max_deviation = max(max_deviation, (best.min_sinr - closed) / best.min_sinr)

        report = OracleReport(
            realizations=realizations,
            grid_size=grid_size,
            infeasible=infeasible,
            mismatches=mismatches,
            max_deviation=max_deviation
        )
        logger.info(
            f"[MonteCarlo] oracle: {realizations} realizations, grid {grid_size}, "
            f"{infeasible} infeasible, {mismatches} mismatches, max deviation {max_deviation:.3e}"
        )
        return report
