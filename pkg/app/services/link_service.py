"""
Link Service - SINR of the four secondary links and the outage decision
"""
from typing import Sequence

import numpy as np

from app.models.channel import SU_OF_SLOT
from app.models.outcome import TrialOutcome
from app.models.parameters import SystemParameters
from app.models.power import EffectiveGains, PowerAllocation
from app.models.topology import Topology
from app.services.power_service import PowerService


class LinkService:
    """SINR evaluation for one trial"""

    # A relay constraint made active by ρ* lands on γth only up to a few ulps of rounding
    THRESHOLD_RTOL = 16 * np.finfo(float).eps

    @staticmethod
    def snr_relay(slot: int, gains: EffectiveGains, allocation: PowerAllocation,
                  params: SystemParameters, topology: Topology) -> float:
        """
        SINR at the secondary relay in slot 1 (from A) or 2 (from B)

        Args:
            slot: 1 or 2
            gains: Effective gains
            allocation: Power allocation with harvested powers set
            params: System parameters
            topology: Network geometry

        Returns:
            Linear SINR
        """
        su = SU_OF_SLOT[slot]
        g = gains.for_su(su)
        return (allocation.harvested(su) * topology.path_loss('RS', su, params.tau)
                * g.relay_gain / (1.0 + g.relay_leakage))

    @staticmethod
    def snr_su(su: str, gains: EffectiveGains, allocation: PowerAllocation,
               params: SystemParameters, topology: Topology) -> float:
        """
        SINR at the IP unit of SU su in slot 3

        Returns:
            Linear SINR, p_RS r^-tau ρ_i w_i^2 g_i / (1 + leakage_i)
        """
        return (PowerService.su_sinr_coefficient(gains, params, topology, su)
                * allocation.rho(su) * allocation.weight(su) ** 2)

    @classmethod
    def outage(cls, sinrs: Sequence[float], gamma_th: float) -> bool:
        """True iff any link falls below the threshold (success needs all >= γth)"""
        floor = gamma_th * (1.0 - cls.THRESHOLD_RTOL)
        return any(sinr < floor for sinr in sinrs)

    @classmethod
    def evaluate(cls, gains: EffectiveGains, allocation: PowerAllocation,
                 params: SystemParameters, topology: Topology,
                 pre_doomed: bool = False, ia_iterations: int = 0) -> TrialOutcome:
        """Compute the four SINRs and wrap them in a TrialOutcome"""
        gamma_rs1 = cls.snr_relay(1, gains, allocation, params, topology)
        gamma_rs2 = cls.snr_relay(2, gains, allocation, params, topology)
        gamma_a = cls.snr_su('A', gains, allocation, params, topology)
        gamma_b = cls.snr_su('B', gains, allocation, params, topology)

        return TrialOutcome(
            gamma_rs1=gamma_rs1,
            gamma_rs2=gamma_rs2,
            gamma_a=gamma_a,
            gamma_b=gamma_b,
            outage=pre_doomed or cls.outage((gamma_rs1, gamma_rs2, gamma_a, gamma_b), params.gamma_th),
            pre_doomed=pre_doomed,
            ia_iterations=ia_iterations
        )
