"""
Power Service - closed-form PS ratios, harvested power and relay power control
"""
import math

import numpy as np

from app.exceptions import DegenerateChannelError
from app.models.beamformers import BeamformerSet
from app.models.channel import ChannelRealization, SLOT_OF_SU
from app.models.outcome import OracleResult
from app.models.parameters import SystemParameters
from app.models.power import EffectiveGains, PowerAllocation, SuGains
from app.models.topology import Topology


def _gain(decoder: np.ndarray, channel: np.ndarray, precoder: np.ndarray) -> float:
    """|U^H H V|^2 (squared Frobenius norm for d > 1)"""
    return float(np.linalg.norm(decoder.conj().T @ channel @ precoder) ** 2)


class PowerService:
    """Closed-form solution of the PS-ratio / power-control step"""

    # θ used when some ρ* = 0 (the trial is an outage whatever θ is)
    THETA_DEFAULT = 0.5

    @staticmethod
    def effective_gains(channels: ChannelRealization, bf: BeamformerSet,
                        params: SystemParameters, topology: Topology) -> EffectiveGains:
        """
        Collect the beamformed gains the power step needs

        Args:
            channels: Channel realization of the trial
            bf: Current beamformers
            params: System parameters
            topology: Network geometry

        Returns:
            EffectiveGains for both SUs
        """
        tau = params.tau
        relay_decoders = {1: bf.u_rs1, 2: bf.u_rs2}
        su_decoders = {'A': bf.u_a, 'B': bf.u_b}
        su_precoders = {'A': bf.v_a, 'B': bf.v_b}
        primary_precoders = {1: bf.v_p1, 2: bf.v_p2}

        per_su = {}
        for su in ('A', 'B'):
            slot = SLOT_OF_SU[su]
            primary = f'P{slot}'
            u_relay = relay_decoders[slot]
            u_su = su_decoders[su]

            relay_leakage = (params.fixed_power(primary) * topology.path_loss('RS', primary, tau)
                             * _gain(u_relay, channels.get('RS', primary), primary_precoders[slot]))
            su_leakage = (params.p_rp * topology.path_loss(su, 'RP', tau)
                          * _gain(u_su, channels.get(su, 'RP'), bf.v_rp))

            per_su[su] = SuGains(
                relay_gain=_gain(u_relay, channels.get('RS', su), su_precoders[su]),
                su_gain=_gain(u_su, channels.get(su, 'RS'), bf.v_rs),
                harvest_gain_rs=float(np.linalg.norm(channels.get(su, 'RS') @ bf.v_rs) ** 2),
                harvest_gain_rp=float(np.linalg.norm(channels.get(su, 'RP') @ bf.v_rp) ** 2),
                relay_leakage=relay_leakage,
                su_leakage=su_leakage
            )

        return EffectiveGains(a=per_su['A'], b=per_su['B'])

    @staticmethod
    def harvest_budget(gains: EffectiveGains, params: SystemParameters,
                       topology: Topology, su: str) -> float:
        """Received RF power at SU su before splitting (relay plus primary relay)"""
        g = gains.for_su(su)
        return (params.p_rs * topology.path_loss('RS', su, params.tau) * g.harvest_gain_rs
                + params.p_rp * topology.path_loss('RP', su, params.tau) * g.harvest_gain_rp)

    @classmethod
    def compute_z(cls, gains: EffectiveGains, params: SystemParameters,
                  topology: Topology, su: str) -> float:
        """
        Relay-decode headroom Z_i: slot SINR at RS per unit of (1 - ρ_i)

        Args:
            gains: Effective gains of the current beamformers
            params: System parameters
            topology: Network geometry
            su: 'A' or 'B'

        Returns:
            Z_i (linear)
        """
        g = gains.for_su(su)
        return (topology.path_loss('RS', su, params.tau) * params.eta * g.relay_gain
                / (1.0 + g.relay_leakage) * cls.harvest_budget(gains, params, topology, su))

    @staticmethod
    def optimal_ps(z: float, gamma_th: float) -> float:
        """
        Largest PS ratio that still lets the relay decode

        Args:
            z: Z_i of the SU
            gamma_th: Threshold SNR (linear)

        Returns:
            ρ* in [0, 1); 0 means the relay cannot decode this SU for any split
        """
        if z <= 0:
            return 0.0
        return max(1.0 - gamma_th / z, 0.0)

    @classmethod
    def harvest_share(cls, rho: float, z: float, gamma_th: float) -> float:
        """
        EH share 1 - ρ

        For ρ = ρ*(Z) the share is returned as γth/Z, which 1 - ρ* cannot
        represent once γth/Z drops below machine precision.
        """
        if rho > 0.0 and rho == cls.optimal_ps(z, gamma_th):
            return gamma_th / z
        return 1.0 - rho

    @classmethod
    def harvested_power(cls, rho: float, gains: EffectiveGains, params: SystemParameters,
                        topology: Topology, su: str) -> float:
        """Transmit power SU su harvests with PS ratio rho: η (1 - ρ) times the received RF power"""
        share = cls.harvest_share(rho, cls.compute_z(gains, params, topology, su), params.gamma_th)
        return params.eta * share * cls.harvest_budget(gains, params, topology, su)

    @staticmethod
    def relay_weights(theta: float) -> tuple:
        """
        Relay stream weights for power-control factor theta

        Returns:
            Tuple (X_A, X_B) with X_A^2 + X_B^2 = 1
        """
        scale = math.sqrt(theta ** 2 + (1.0 - theta) ** 2)
        return (1.0 - theta) / scale, theta / scale

    @staticmethod
    def su_sinr_coefficient(gains: EffectiveGains, params: SystemParameters,
                            topology: Topology, su: str) -> float:
        """SU-side SINR per unit of ρ_i·w_i^2"""
        g = gains.for_su(su)
        return params.p_rs * topology.path_loss('RS', su, params.tau) * g.su_gain / (1.0 + g.su_leakage)

    @classmethod
    def optimal_theta(cls, gains: EffectiveGains, rho_a: float, rho_b: float,
                      params: SystemParameters, topology: Topology) -> float:
        """
        Power-control factor that equalizes the two SU SINRs

        Args:
            gains: Effective gains
            rho_a: PS ratio of A
            rho_b: PS ratio of B
            params: System parameters (path-loss exponent)
            topology: Network geometry

        Returns:
            θ* = a / (a + b)

        Raises:
            DegenerateChannelError: If both SU-side gains vanish
        """
        if rho_a <= 0 or rho_b <= 0:
            return cls.THETA_DEFAULT

        a = math.sqrt(rho_a * cls.su_sinr_coefficient(gains, params, topology, 'A') / params.p_rs)
        b = math.sqrt(rho_b * cls.su_sinr_coefficient(gains, params, topology, 'B') / params.p_rs)
        if a + b <= 0:
            raise DegenerateChannelError("both SU-side effective gains are zero")
        return a / (a + b)

    @classmethod
    def allocate(cls, gains: EffectiveGains, rho_a: float, rho_b: float, theta: float,
                 params: SystemParameters, topology: Topology) -> PowerAllocation:
        """Assemble a PowerAllocation (harvested powers and relay weights) from ρ and θ"""
        x_a, x_b = cls.relay_weights(theta)

        return PowerAllocation(
            rho_a=rho_a,
            rho_b=rho_b,
            theta=theta,
            x_a=x_a,
            x_b=x_b,
            p_a=cls.harvested_power(rho_a, gains, params, topology, 'A'),
            p_b=cls.harvested_power(rho_b, gains, params, topology, 'B')
        )

    @classmethod
    def grid_oracle(cls, gains: EffectiveGains, params: SystemParameters,
                    topology: Topology, grid_size: int) -> OracleResult:
        """
        Exhaustive max-min search over a uniform (ρ_A, ρ_B, θ) grid

        Only used to validate the closed form.

        Args:
            gains: Effective gains
            params: System parameters
            topology: Network geometry
            grid_size: Points per axis on [0, 1] (>= 11)

        Returns:
            OracleResult with the best feasible triple, or feasible=False
        """
        if grid_size < 11:
            raise ValueError(f"grid_size must be >= 11, got {grid_size}")

        grid = np.linspace(0.0, 1.0, grid_size)
        z_a = cls.compute_z(gains, params, topology, 'A')
        z_b = cls.compute_z(gains, params, topology, 'B')

        # Relay-decode constraints separate per SU
        feasible_a = (1.0 - grid) * z_a >= params.gamma_th
        feasible_b = (1.0 - grid) * z_b >= params.gamma_th
        if not feasible_a.any() or not feasible_b.any():
            return OracleResult(feasible=False)

        rho_a = grid[feasible_a]
        rho_b = grid[feasible_b]
        scale = grid ** 2 + (1.0 - grid) ** 2
        gamma_a = (cls.su_sinr_coefficient(gains, params, topology, 'A')
                   * rho_a[:, None] * ((1.0 - grid) ** 2 / scale)[None, :])
        gamma_b = (cls.su_sinr_coefficient(gains, params, topology, 'B')
                   * rho_b[:, None] * (grid ** 2 / scale)[None, :])

        objective = np.minimum(gamma_a[:, None, :], gamma_b[None, :, :])
        i, j, k = np.unravel_index(np.argmax(objective), objective.shape)

        return OracleResult(
            feasible=True,
            rho_a=float(rho_a[i]),
            rho_b=float(rho_b[j]),
            theta=float(grid[k]),
            min_sinr=float(objective[i, j, k])
        )
