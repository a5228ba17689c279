"""
Builders for hand-made test inputs
"""
import numpy as np

from app.models.channel import ChannelRealization
from app.models.power import PowerAllocation, SuGains
from app.models.topology import Topology


def uniform_topology(distance: float) -> Topology:
    """Every node pair at the same distance (bypasses the Pythagoras derivation)"""
    return Topology(*([distance] * 9))


def symmetric_gains(**overrides) -> SuGains:
    values = dict(relay_gain=1.0, su_gain=1.0, harvest_gain_rs=1.0, harvest_gain_rp=0.0)
    values.update(overrides)
    return SuGains(**values)


def equal_allocation(p_a: float = 1.0, p_b: float = 1.0) -> PowerAllocation:
    weight = 1.0 / np.sqrt(2.0)
    return PowerAllocation(rho_a=0.5, rho_b=0.5, theta=0.5, x_a=weight, x_b=weight, p_a=p_a, p_b=p_b)


def with_links(channels: ChannelRealization, **links) -> ChannelRealization:
    """Copy of a realization with some links replaced, keyed 'RX_TX' (e.g. RS_A=...)"""
    matrices = {key: np.array(value) for key, value in channels.matrices.items()}
    for name, matrix in links.items():
        rx, tx = name.split('_')
        matrices[(rx, tx)] = np.asarray(matrix, dtype=complex)
    return ChannelRealization(matrices)
