"""
MRT-MRC benchmark: closed-form ρ* and θ* with matched-filter beamformers
"""
import numpy as np

from app.models.beamformers import BeamformerSet
from app.models.channel import ChannelRealization
from app.models.parameters import SystemParameters
from app.schemes.proposed import ProposedScheme
from app.services.ia_service import InterferenceAlignmentService


class MrtMrcScheme(ProposedScheme):
    """Interference-oblivious beamforming; no IA iteration"""

    uses_ia = False

    @property
    def name(self) -> str:
        return 'mrt_mrc'

    def initial_beamformers(self, channels: ChannelRealization, params: SystemParameters,
                            rng: np.random.Generator) -> BeamformerSet:
        return InterferenceAlignmentService.mrt_mrc_beamformers(channels, params)
