"""
Factory for creating Scheme instances
"""
import re

from app.schemes.base import Scheme
from app.schemes.mrt_mrc import MrtMrcScheme
from app.schemes.proposed import ProposedScheme
from app.schemes.static_power_control import StaticPowerControlScheme
from app.schemes.static_ps import StaticEqualPSScheme

_STATIC_PS = re.compile(r'^static_ps_(?P<rho>[0-9]*\.?[0-9]+)$')


class SchemeFactory:
    """Factory for creating Scheme instances"""

    _schemes = {
        'proposed': ProposedScheme,
        'mrt_mrc': MrtMrcScheme,
        'static_power_control': StaticPowerControlScheme
    }

    # Benchmark set, in plotting order
    DEFAULT_SCHEMES = (
        'proposed',
        'static_ps_0.3',
        'static_ps_0.5',
        'static_ps_0.7',
        'mrt_mrc',
        'static_power_control'
    )

    @classmethod
    def create(cls, scheme_name: str, **kwargs) -> Scheme:
        """
        Create a Scheme instance

        Args:
            scheme_name: 'proposed', 'mrt_mrc', 'static_power_control' or
                'static_ps_<rho>' (e.g. 'static_ps_0.3')
            **kwargs: Additional configuration for the scheme

        Returns:
            Scheme instance

        Raises:
            ValueError: If scheme_name is not supported
        """
        scheme_name = scheme_name.strip().lower()

        match = _STATIC_PS.match(scheme_name)
        if match:
            return StaticEqualPSScheme(rho=float(match.group('rho')), **kwargs)

        if scheme_name not in cls._schemes:
            raise ValueError(
                f"Scheme '{scheme_name}' not supported. "
                f"Available schemes: {', '.join(cls.get_available_schemes())}"
            )

        return cls._schemes[scheme_name](**kwargs)

    @classmethod
    def get_available_schemes(cls) -> list:
        """Get list of scheme names (static PS accepts any ratio in (0, 1))"""
        return list(cls._schemes.keys()) + ['static_ps_<rho>']
