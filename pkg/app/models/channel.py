"""
Rayleigh block-fading channel realizations
"""
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from app.models.parameters import SystemParameters
from app.models.topology import Topology

NODES = ('A', 'B', 'RS', 'P1', 'P2', 'RP')
SECONDARY_USERS = ('A', 'B')
PRIMARY_USERS = ('P1', 'P2')

# Slot j carries SU i to RS and P_j to RP
SLOT_OF_SU = {'A': 1, 'B': 2}
SU_OF_SLOT = {1: 'A', 2: 'B'}

# Directed links as (receiver, transmitter); the order fixes the draw order
LINKS = (
    ('RS', 'A'), ('RS', 'B'), ('RS', 'P1'), ('RS', 'P2'),
    ('RP', 'P1'), ('RP', 'P2'), ('RP', 'A'), ('RP', 'B'),
    ('A', 'RS'), ('B', 'RS'), ('A', 'RP'), ('B', 'RP'),
    ('P1', 'RS'), ('P2', 'RS'), ('P1', 'RP'), ('P2', 'RP')
)


def complex_gaussian(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    """Draw i.i.d. CN(0, 1) entries"""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of every directed small-scale fading matrix (path loss excluded)"""

    matrices: Dict[Tuple[str, str], np.ndarray]

    def __post_init__(self):
        for matrix in self.matrices.values():
            matrix.setflags(write=False)

    @classmethod
    def sample(cls, topology: Topology, params: SystemParameters,
               rng: np.random.Generator) -> 'ChannelRealization':
        """
        Draw all 16 link matrices

        Args:
            topology: Network geometry (path loss is applied later, not here)
            params: System parameters (antenna counts)
            rng: Random stream of the trial

        Returns:
            ChannelRealization with one N_rx x N_tx matrix per link
        """
        matrices = {}
        for rx, tx in LINKS:
            shape = (params.antennas(rx), params.antennas(tx))
            matrices[(rx, tx)] = complex_gaussian(rng, shape)
        return cls(matrices)

    def get(self, rx: str, tx: str) -> np.ndarray:
        """Forward channel from tx to rx"""
        return self.matrices[(rx, tx)]

    def reciprocal(self, rx: str, tx: str) -> np.ndarray:
        """
        Channel from tx to rx in the reciprocal network

        Reciprocity gives H_rev(rx, tx) = H(tx, rx)^H.
        """
        return self.matrices[(tx, rx)].conj().T


def sample_channels(topology: Topology, params: SystemParameters,
                    rng: np.random.Generator) -> ChannelRealization:
    """Module-level alias for ChannelRealization.sample"""
    return ChannelRealization.sample(topology, params, rng)
