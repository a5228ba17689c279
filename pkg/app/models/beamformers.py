"""
Precoder/decoder sets and interference-alignment diagnostics
"""
from dataclasses import dataclass, fields, replace
from typing import Dict

import numpy as np

from app.models.channel import complex_gaussian
from app.models.parameters import SystemParameters

# Decoder name -> receiving node
DECODER_NODES = {
    'u_rs1': 'RS', 'u_rs2': 'RS', 'u_rp1': 'RP', 'u_rp2': 'RP',
    'u_a': 'A', 'u_b': 'B', 'u_p1': 'P1', 'u_p2': 'P2'
}
# Precoder name -> transmitting node
PRECODER_NODES = {
    'v_a': 'A', 'v_b': 'B', 'v_p1': 'P1', 'v_p2': 'P2', 'v_rs': 'RS', 'v_rp': 'RP'
}

# Receiver label -> decoder used there
RECEIVER_DECODERS = {
    'RS1': 'u_rs1', 'RS2': 'u_rs2', 'RP1': 'u_rp1', 'RP2': 'u_rp2',
    'A': 'u_a', 'B': 'u_b', 'P1': 'u_p1', 'P2': 'u_p2'
}

RANK_THRESHOLD = 1e-9


def unit_norm(matrix: np.ndarray, fallback: np.ndarray) -> np.ndarray:
    """
    Scale a filter to unit Frobenius norm

    A zero (or non-finite) candidate carries no direction, so the previous
    filter is kept instead.
    """
    norm = np.linalg.norm(matrix)
    if not np.isfinite(norm) or norm < 1e-300:
        return fallback
    return matrix / norm


@dataclass(frozen=True)
class BeamformerSet:
    """All precoders V and decoders U, each N x d with unit Frobenius norm"""

    v_a: np.ndarray
    v_b: np.ndarray
    v_p1: np.ndarray
    v_p2: np.ndarray
    v_rs: np.ndarray
    v_rp: np.ndarray
    u_rs1: np.ndarray
    u_rs2: np.ndarray
    u_rp1: np.ndarray
    u_rp2: np.ndarray
    u_a: np.ndarray
    u_b: np.ndarray
    u_p1: np.ndarray
    u_p2: np.ndarray

    @classmethod
    def random(cls, params: SystemParameters, rng: np.random.Generator) -> 'BeamformerSet':
        """
        Random complex Gaussian initialization, unit-normalized

        Args:
            params: System parameters (antenna counts, streams)
            rng: Random stream of the trial

        Returns:
            BeamformerSet
        """
        matrices = {}
        for field in fields(cls):
            node = PRECODER_NODES.get(field.name) or DECODER_NODES[field.name]
            draw = complex_gaussian(rng, (params.antennas(node), params.d))
            matrices[field.name] = draw / np.linalg.norm(draw)
        return cls(**matrices)

    def as_dict(self) -> Dict[str, np.ndarray]:
        return {field.name: getattr(self, field.name) for field in fields(self)}

    def decoder(self, receiver: str) -> np.ndarray:
        """Decoder applied at a receiver label (RS1, RS2, RP1, RP2, A, B, P1, P2)"""
        return getattr(self, RECEIVER_DECODERS[receiver])

    def replace(self, **changes) -> 'BeamformerSet':
        return replace(self, **changes)

    def max_change(self, other: 'BeamformerSet') -> float:
        """Largest Frobenius-norm difference over all 14 matrices"""
        return max(
            float(np.linalg.norm(getattr(self, name) - getattr(other, name)))
            for name in self.as_dict()
        )


@dataclass(frozen=True)
class ReceiverDiagnostics:
    """Post-filter figures of one receiver in one slot"""
    desired_gain: float
    leakage_power: float
    mse: float

    @property
    def rank_satisfied(self) -> bool:
        # Rank condition for d = 1
        return self.desired_gain > RANK_THRESHOLD


@dataclass(frozen=True)
class IaDiagnostics:
    """Per-receiver figures plus inner-loop convergence information"""
    receivers: Dict[str, ReceiverDiagnostics]
    iterations_used: int = 0
    converged: bool = False

    def __getitem__(self, receiver: str) -> ReceiverDiagnostics:
        return self.receivers[receiver]

    @property
    def rank_satisfied(self) -> bool:
        return all(entry.rank_satisfied for entry in self.receivers.values())
