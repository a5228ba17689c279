"""
Interference Alignment Service - iterative MMSE beamformer design
"""
import logging
import math
from dataclasses import replace
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from app.models.beamformers import (
    BeamformerSet, IaDiagnostics, ReceiverDiagnostics, RECEIVER_DECODERS, unit_norm
)
from app.models.channel import ChannelRealization
from app.models.parameters import SystemParameters
from app.models.power import PowerAllocation
from app.models.topology import Topology

logger = logging.getLogger(__name__)

# Equal split of the primary relay's power between its two streams
PRIMARY_RELAY_WEIGHT = 1.0 / math.sqrt(2.0)

Terms = Tuple[List[np.ndarray], List[np.ndarray]]


def _as_terms(desired: Union[np.ndarray, Sequence[np.ndarray]]) -> List[np.ndarray]:
    if isinstance(desired, np.ndarray):
        return [desired]
    return list(desired)


def _covariance(desired: List[np.ndarray], interference: Sequence[np.ndarray]) -> np.ndarray:
    """Σ D D^H + Σ I I^H + identity (post-scaling received covariance)"""
    size = desired[0].shape[0]
    covariance = np.eye(size, dtype=complex)
    for term in list(desired) + list(interference):
        if term.shape[0] != size:
            raise ValueError(f"dimension mismatch: expected {size} rows, got {term.shape[0]}")
        covariance += term @ term.conj().T
    return covariance


def mmse_receive_filter(desired: Union[np.ndarray, Sequence[np.ndarray]],
                        interference_terms: Sequence[np.ndarray]) -> np.ndarray:
    """
    Unnormalized MMSE filter (Σ D D^H + Σ I I^H + I)^-1 Σ D

    Args:
        desired: Scaled desired effective channel sqrt(p r^-tau) H V, or a list
            of them when one filter serves several streams (relay precoders)
        interference_terms: Scaled interfering effective channels

    Returns:
        Filter matrix, N_rx x d
    """
    desired = _as_terms(desired)
    covariance = _covariance(desired, interference_terms)
    return np.linalg.solve(covariance, sum(desired))


def receiver_mse(decoder: np.ndarray, desired: Union[np.ndarray, Sequence[np.ndarray]],
                 interference_terms: Sequence[np.ndarray]) -> float:
    """
    Mean square error E||U^H y - x||^2 of an arbitrary filter

    Args:
        decoder: Filter U (any scale)
        desired: Scaled desired effective channel(s)
        interference_terms: Scaled interfering effective channels

    Returns:
        MSE (>= 0)
    """
    desired = _as_terms(desired)
    covariance = _covariance(desired, interference_terms)
    cross = decoder.conj().T @ sum(desired)
    value = (np.trace(decoder.conj().T @ covariance @ decoder).real
             - 2.0 * np.trace(cross).real
             + len(desired) * decoder.shape[1])
    return max(float(value), 0.0)


class InterferenceAlignmentService:
    """MMSE iterative IA for the six-node network over three time slots"""

    def __init__(self, params: SystemParameters, topology: Topology,
                 max_inner_iters: int = None, inner_tolerance: float = None):
        """
        Initialize the IA solver

        Args:
            params: System parameters (powers, antennas, default loop caps)
            topology: Network geometry
            max_inner_iters: Sweep cap (defaults to params.max_inner_iters)
            inner_tolerance: Stop when no matrix moves more than this
                (defaults to params.inner_tolerance)
        """
        self.params = params
        self.topology = topology
        self.max_inner_iters = params.max_inner_iters if max_inner_iters is None else max_inner_iters
        self.inner_tolerance = params.inner_tolerance if inner_tolerance is None else inner_tolerance

    def _power(self, node: str, allocation: PowerAllocation) -> float:
        if node in ('A', 'B'):
            return allocation.harvested(node)
        return self.params.fixed_power(node)

    def _scale(self, rx: str, tx: str, allocation: PowerAllocation) -> float:
        return math.sqrt(self._power(tx, allocation) * self.topology.path_loss(rx, tx, self.params.tau))

    def _forward(self, channels: ChannelRealization, allocation: PowerAllocation,
                 rx: str, tx: str, precoder: np.ndarray, weight: float = 1.0) -> np.ndarray:
        return self._scale(rx, tx, allocation) * weight * (channels.get(rx, tx) @ precoder)

    def _reverse(self, channels: ChannelRealization, allocation: PowerAllocation,
                 rx: str, tx: str, decoder: np.ndarray, weight: float = 1.0) -> np.ndarray:
        # The reciprocal transmitter (a forward receiver) sends with its own power
        return self._scale(rx, tx, allocation) * weight * (channels.reciprocal(rx, tx) @ decoder)

    def receiver_terms(self, channels: ChannelRealization, bf: BeamformerSet,
                       allocation: PowerAllocation,
                       receivers: Sequence[str] = tuple(RECEIVER_DECODERS)) -> Dict[str, Terms]:
        """
        Scaled desired and interfering effective channels at each receiver

        Args:
            channels: Channel realization
            bf: Beamformers providing the precoders
            allocation: Harvested SU powers and relay weights
            receivers: Receiver labels to build (RS1, RS2, RP1, RP2, A, B, P1, P2)

        Returns:
            Dict receiver -> (desired terms, interference terms)
        """
        def fwd(rx, tx, precoder, weight=1.0):
            return self._forward(channels, allocation, rx, tx, precoder, weight)

        builders = {
            'RS1': lambda: ([fwd('RS', 'A', bf.v_a)], [fwd('RS', 'P1', bf.v_p1)]),
            'RS2': lambda: ([fwd('RS', 'B', bf.v_b)], [fwd('RS', 'P2', bf.v_p2)]),
            'RP1': lambda: ([fwd('RP', 'P1', bf.v_p1)], [fwd('RP', 'A', bf.v_a)]),
            'RP2': lambda: ([fwd('RP', 'P2', bf.v_p2)], [fwd('RP', 'B', bf.v_b)]),
            'A': lambda: ([fwd('A', 'RS', bf.v_rs, allocation.x_a)], [fwd('A', 'RP', bf.v_rp)]),
            'B': lambda: ([fwd('B', 'RS', bf.v_rs, allocation.x_b)], [fwd('B', 'RP', bf.v_rp)]),
            'P1': lambda: ([fwd('P1', 'RP', bf.v_rp, PRIMARY_RELAY_WEIGHT)], [fwd('P1', 'RS', bf.v_rs)]),
            'P2': lambda: ([fwd('P2', 'RP', bf.v_rp, PRIMARY_RELAY_WEIGHT)], [fwd('P2', 'RS', bf.v_rs)])
        }
        return {receiver: builders[receiver]() for receiver in receivers}

    def precoder_terms(self, channels: ChannelRealization, bf: BeamformerSet,
                       allocation: PowerAllocation, precoders: Sequence[str]) -> Dict[str, Terms]:
        """Desired/interference terms of the reciprocal network, keyed by precoder name"""
        def rev(rx, tx, decoder, weight=1.0):
            return self._reverse(channels, allocation, rx, tx, decoder, weight)

        builders = {
            'v_a': lambda: ([rev('A', 'RS', bf.u_rs1)], [rev('A', 'RP', bf.u_rp1)]),
            'v_b': lambda: ([rev('B', 'RS', bf.u_rs2)], [rev('B', 'RP', bf.u_rp2)]),
            'v_p1': lambda: ([rev('P1', 'RP', bf.u_rp1)], [rev('P1', 'RS', bf.u_rs1)]),
            'v_p2': lambda: ([rev('P2', 'RP', bf.u_rp2)], [rev('P2', 'RS', bf.u_rs2)]),
            'v_rs': lambda: (
                [rev('RS', 'A', bf.u_a, allocation.x_a), rev('RS', 'B', bf.u_b, allocation.x_b)],
                [rev('RS', 'P1', bf.u_p1), rev('RS', 'P2', bf.u_p2)]
            ),
            'v_rp': lambda: (
                [rev('RP', 'P1', bf.u_p1, PRIMARY_RELAY_WEIGHT), rev('RP', 'P2', bf.u_p2, PRIMARY_RELAY_WEIGHT)],
                [rev('RP', 'A', bf.u_a), rev('RP', 'B', bf.u_b)]
            )
        }
        return {name: builders[name]() for name in precoders}

    @staticmethod
    def _update(bf: BeamformerSet, terms: Dict[str, Terms]) -> BeamformerSet:
        changes = {}
        for name, (desired, interference) in terms.items():
            candidate = mmse_receive_filter(desired, interference)
            changes[name] = unit_norm(candidate, getattr(bf, name))
        return bf.replace(**changes)

    def ia_iteration(self, channels: ChannelRealization, allocation: PowerAllocation,
                     bf: BeamformerSet) -> BeamformerSet:
        """
        One forward/reciprocal sweep over all 14 matrices

        Order: relay decoders of slots 1-2, SU/PU precoders (reciprocal
        network), slot-3 decoders, relay precoders (reciprocal network).
        Each step uses the matrices produced by the steps before it.

        Args:
            channels: Channel realization
            allocation: Harvested SU powers and relay weights
            bf: Current beamformers

        Returns:
            Updated BeamformerSet, every matrix unit norm
        """
        relay_terms = self.receiver_terms(channels, bf, allocation, ('RS1', 'RS2', 'RP1', 'RP2'))
        bf = self._update(bf, {RECEIVER_DECODERS[r]: t for r, t in relay_terms.items()})

        bf = self._update(bf, self.precoder_terms(channels, bf, allocation, ('v_a', 'v_b', 'v_p1', 'v_p2')))

        user_terms = self.receiver_terms(channels, bf, allocation, ('A', 'B', 'P1', 'P2'))
        bf = self._update(bf, {RECEIVER_DECODERS[r]: t for r, t in user_terms.items()})

        return self._update(bf, self.precoder_terms(channels, bf, allocation, ('v_rs', 'v_rp')))

    def run_ia(self, channels: ChannelRealization, allocation: PowerAllocation,
               init: BeamformerSet) -> Tuple[BeamformerSet, IaDiagnostics]:
        """
        Iterate sweeps until no matrix moves more than the tolerance

        Args:
            channels: Channel realization
            allocation: Harvested SU powers and relay weights
            init: Starting beamformers

        Returns:
            Tuple (beamformers, diagnostics); non-convergence is reported in
            the diagnostics, not raised
        """
        bf = init
        iterations = 0
        converged = False

        for iteration in range(1, self.max_inner_iters + 1):
            updated = self.ia_iteration(channels, allocation, bf)
            change = bf.max_change(updated)
            bf = updated
            iterations = iteration
            if change < self.inner_tolerance:
                converged = True
                break

        if not converged and self.max_inner_iters > 0:
            logger.debug(f"[InterferenceAlignment] no convergence after {iterations} sweeps")

        diagnostics = self.leakage_and_rank_check(channels, bf, allocation)
        if not diagnostics.rank_satisfied:
            failed = sorted(r for r, entry in diagnostics.receivers.items() if not entry.rank_satisfied)
            logger.debug(f"[InterferenceAlignment] rank condition fails at {', '.join(failed)}")
        return bf, replace(diagnostics, iterations_used=iterations, converged=converged)

    def leakage_and_rank_check(self, channels: ChannelRealization, bf: BeamformerSet,
                               allocation: PowerAllocation) -> IaDiagnostics:
        """
        Post-filter desired power, leakage and MSE at every receiver

        Args:
            channels: Channel realization
            bf: Beamformers to evaluate
            allocation: Harvested SU powers and relay weights

        Returns:
            IaDiagnostics keyed by receiver label
        """
        receivers = {}
        for receiver, (desired, interference) in self.receiver_terms(channels, bf, allocation).items():
            decoder = bf.decoder(receiver)
            noise = float(np.linalg.norm(decoder) ** 2)
            desired_gain = sum(float(np.linalg.norm(decoder.conj().T @ term) ** 2) for term in desired)
            leakage = sum(float(np.linalg.norm(decoder.conj().T @ term) ** 2) for term in interference)
            receivers[receiver] = ReceiverDiagnostics(
                desired_gain=desired_gain,
                leakage_power=leakage,
                mse=(noise + leakage) / (noise + leakage + desired_gain)
            )
        return IaDiagnostics(receivers=receivers)

    @staticmethod
    def mrt_mrc_beamformers(channels: ChannelRealization, params: SystemParameters) -> BeamformerSet:
        """
        Interference-oblivious matched filters (MRT at transmitters, MRC at receivers)

        Ties in a degenerate spectrum resolve to whatever numpy's SVD returns first.

        Args:
            channels: Channel realization
            params: System parameters (d must be 1)

        Returns:
            BeamformerSet of principal singular vectors
        """
        if params.d != 1:
            raise ValueError("MRT-MRC beamformers are defined for d = 1 only")

        def principal(matrix):
            left, _, right_h = np.linalg.svd(matrix)
            return left[:, :1], right_h[:1, :].conj().T

        u_rs1, v_a = principal(channels.get('RS', 'A'))
        u_rs2, v_b = principal(channels.get('RS', 'B'))
        u_rp1, v_p1 = principal(channels.get('RP', 'P1'))
        u_rp2, v_p2 = principal(channels.get('RP', 'P2'))
        u_a, _ = principal(channels.get('A', 'RS'))
        u_b, _ = principal(channels.get('B', 'RS'))
        u_p1, _ = principal(channels.get('P1', 'RP'))
        u_p2, _ = principal(channels.get('P2', 'RP'))
        _, v_rs = principal(np.vstack([channels.get('A', 'RS'), channels.get('B', 'RS')]))
        _, v_rp = principal(np.vstack([channels.get('P1', 'RP'), channels.get('P2', 'RP')]))

        return BeamformerSet(
            v_a=v_a, v_b=v_b, v_p1=v_p1, v_p2=v_p2, v_rs=v_rs, v_rp=v_rp,
            u_rs1=u_rs1, u_rs2=u_rs2, u_rp1=u_rp1, u_rp2=u_rp2,
            u_a=u_a, u_b=u_b, u_p1=u_p1, u_p2=u_p2
        )
