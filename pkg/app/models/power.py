"""
Power allocation and effective link gains
"""
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PowerAllocation:
    """PS ratios, relay power-control factor and harvested SU powers"""

    rho_a: float
    rho_b: float
    theta: float
    x_a: float
    x_b: float
    p_a: float
    p_b: float

    def rho(self, su: str) -> float:
        return self.rho_a if su == 'A' else self.rho_b

    def harvested(self, su: str) -> float:
        return self.p_a if su == 'A' else self.p_b

    def weight(self, su: str) -> float:
        """Relay weight on the stream decoded by SU su"""
        return self.x_a if su == 'A' else self.x_b

    @property
    def weights_normalized(self) -> bool:
        return math.isclose(self.x_a ** 2 + self.x_b ** 2, 1.0, rel_tol=0.0, abs_tol=1e-12)


@dataclass(frozen=True)
class SuGains:
    """
    Beamformed gains seen by one SU and its relay slot

    relay_gain: |U_RS[j]^H H_(RS,i) V_i|^2
    su_gain: |U_i^H H_(i,RS) V_RS|^2
    harvest_gain_rs: ||H_(i,RS) V_RS||^2
    harvest_gain_rp: ||H_(i,RP) V_RP||^2
    relay_leakage: post-filter primary interference at RS in slot j (linear)
    su_leakage: post-filter primary-relay interference at SU i (linear)
    """
    relay_gain: float
    su_gain: float
    harvest_gain_rs: float
    harvest_gain_rp: float
    relay_leakage: float = 0.0
    su_leakage: float = 0.0


@dataclass(frozen=True)
class EffectiveGains:
    a: SuGains
    b: SuGains

    def for_su(self, su: str) -> SuGains:
        return self.a if su == 'A' else self.b
