"""
Static equal PS benchmark: fixed ρ_A = ρ_B, closed-form θ*, MMSE IA
"""
from app.schemes.base import Scheme


class StaticEqualPSScheme(Scheme):
    """Both SUs split with the same fixed ratio"""

    def __init__(self, rho: float = 0.5, **kwargs):
        if not 0.0 < rho < 1.0:
            raise ValueError(f"static PS ratio must lie in (0, 1), got {rho}")
        super().__init__(rho=rho, **kwargs)

    @property
    def rho(self) -> float:
        return self.config['rho']

    @property
    def name(self) -> str:
        return f'static_ps_{self.rho:g}'

    def choose_ps(self, z_a: float, z_b: float, gamma_th: float) -> tuple:
        return self.rho, self.rho
