"""
Simulator data model
"""
from app.models.parameters import SystemParameters, dbm_to_linear, db_to_linear
from app.models.topology import Topology, derive_topology, path_loss
from app.models.channel import ChannelRealization, sample_channels, LINKS, NODES
from app.models.beamformers import BeamformerSet, IaDiagnostics, ReceiverDiagnostics
from app.models.power import PowerAllocation, EffectiveGains, SuGains
from app.models.outcome import TrialOutcome, OutageEstimate, OracleResult, OracleReport

__all__ = [
    'SystemParameters',
    'dbm_to_linear',
    'db_to_linear',
    'Topology',
    'derive_topology',
    'path_loss',
    'ChannelRealization',
    'sample_channels',
    'LINKS',
    'NODES',
    'BeamformerSet',
    'IaDiagnostics',
    'ReceiverDiagnostics',
    'PowerAllocation',
    'EffectiveGains',
    'SuGains',
    'TrialOutcome',
    'OutageEstimate',
    'OracleResult',
    'OracleReport'
]
