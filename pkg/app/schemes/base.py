"""
Base class for outage-minimization schemes
"""
from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np

from app.models.beamformers import BeamformerSet
from app.models.channel import ChannelRealization
from app.models.parameters import SystemParameters
from app.models.power import EffectiveGains
from app.models.topology import Topology
from app.services.power_service import PowerService


class Scheme(ABC):
    """Abstract base class for the proposed scheme and its benchmarks"""

    # Whether the inner MMSE-IA loop runs between power steps
    uses_ia = True

    def __init__(self, **kwargs):
        """
        Initialize Scheme

        Args:
            **kwargs: Scheme-specific settings (e.g. the static PS ratio)
        """
        self.config = kwargs

    @property
    @abstractmethod
    def name(self) -> str:
        """Scheme label used in result files"""

    @abstractmethod
    def choose_ps(self, z_a: float, z_b: float, gamma_th: float) -> Tuple[float, float]:
        """
        Pick the PS ratios of both SUs

        Args:
            z_a: Relay-decode headroom Z_A
            z_b: Relay-decode headroom Z_B
            gamma_th: Threshold SNR (linear)

        Returns:
            Tuple (ρ_A, ρ_B)
        """

    def choose_theta(self, gains: EffectiveGains, rho_a: float, rho_b: float,
                     params: SystemParameters, topology: Topology) -> float:
        """Relay power-control factor; the closed form unless a scheme fixes it"""
        return PowerService.optimal_theta(gains, rho_a, rho_b, params, topology)

    def initial_beamformers(self, channels: ChannelRealization, params: SystemParameters,
                            rng: np.random.Generator) -> BeamformerSet:
        """Random starting point for the IA iteration"""
        return BeamformerSet.random(params, rng)

    def __repr__(self):
        return f'<Scheme {self.name}>'

    def __eq__(self, other):
        return isinstance(other, Scheme) and self.name == other.name

    def __hash__(self):
        return hash(self.name)
