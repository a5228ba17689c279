"""
Schemes package
"""
from app.schemes.base import Scheme
from app.schemes.proposed import ProposedScheme
from app.schemes.static_ps import StaticEqualPSScheme
from app.schemes.mrt_mrc import MrtMrcScheme
from app.schemes.static_power_control import StaticPowerControlScheme
from app.schemes.factory import SchemeFactory

__all__ = [
    'Scheme',
    'ProposedScheme',
    'StaticEqualPSScheme',
    'MrtMrcScheme',
    'StaticPowerControlScheme',
    'SchemeFactory'
]
