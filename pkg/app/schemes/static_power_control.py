"""
Static power control benchmark: closed-form ρ*, θ = 0.5, MMSE IA
"""
from app.schemes.proposed import ProposedScheme


class StaticPowerControlScheme(ProposedScheme):
    """Relay splits its power equally between the two forwarded streams"""

    THETA = 0.5

    @property
    def name(self) -> str:
        return 'static_power_control'

    def choose_theta(self, gains, rho_a, rho_b, params, topology) -> float:
        return self.THETA
