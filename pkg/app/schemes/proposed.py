"""
Proposed scheme: closed-form ρ* and θ* with MMSE interference alignment
"""
from app.schemes.base import Scheme
from app.services.power_service import PowerService


class ProposedScheme(Scheme):
    """Two-step outage minimization"""

    @property
    def name(self) -> str:
        return 'proposed'

    def choose_ps(self, z_a: float, z_b: float, gamma_th: float) -> tuple:
        return PowerService.optimal_ps(z_a, gamma_th), PowerService.optimal_ps(z_b, gamma_th)
