"""
System parameters and unit conversion
"""
import math
from dataclasses import dataclass

from app.exceptions import InvalidParameterError


def dbm_to_linear(x: float) -> float:
    """
    Convert a power in dBm to linear units referenced to the noise power

    Noise power is fixed at 0 dBm, so the result is directly the power
    relative to unit-variance AWGN.

    Args:
        x: Power in dBm

    Returns:
        Linear power 10^(x/10)
    """
    return 10.0 ** (x / 10.0)


def db_to_linear(x: float) -> float:
    """Convert a ratio in dB to a linear power ratio"""
    return 10.0 ** (x / 10.0)


@dataclass(frozen=True)
class SystemParameters:
    """Scalar physical and algorithmic constants of one simulation point"""

    tau: float
    eta: float
    gamma_th: float
    p_rs: float
    p_p1: float
    p_p2: float
    p_rp: float
    n_a: int = 4
    n_b: int = 4
    n_rs: int = 4
    n_p1: int = 4
    n_p2: int = 4
    n_rp: int = 4
    d: int = 1
    max_outer_iters: int = 5
    max_inner_iters: int = 20
    inner_tolerance: float = 1e-6

    def __post_init__(self):
        if not self.tau >= 2:
            raise InvalidParameterError(f"path-loss exponent must satisfy tau >= 2, got {self.tau}", 'tau')
        if not 0 < self.eta <= 1:
            raise InvalidParameterError(f"conversion efficiency must lie in (0, 1], got {self.eta}", 'eta')
        if not self.gamma_th > 0:
            raise InvalidParameterError(f"threshold SNR must be positive, got {self.gamma_th}", 'gamma_th')
        if not (self.p_rs > 0 and math.isfinite(self.p_rs)):
            raise InvalidParameterError(f"relay power must be positive, got {self.p_rs}", 'p_rs')

        # A silent primary network (power 0) is allowed
        for name in ('p_p1', 'p_p2', 'p_rp'):
            value = getattr(self, name)
            if not (value >= 0 and math.isfinite(value)):
                raise InvalidParameterError(f"{name} must be a finite non-negative power, got {value}", name)

        if self.d != 1:
            raise InvalidParameterError(f"multi-stream unsupported: d={self.d}", 'd')

        for node, count in self.antenna_counts().items():
            if int(count) != count or count < self.d:
                raise InvalidParameterError(
                    f"antenna count N_{node}={count} must be an integer >= d={self.d}", f'n_{node.lower()}'
                )

        if self.max_outer_iters < 1:
            raise InvalidParameterError(f"max_outer_iters must be >= 1, got {self.max_outer_iters}",
                                        'max_outer_iters')
        if self.max_inner_iters < 0:
            raise InvalidParameterError(f"max_inner_iters must be >= 0, got {self.max_inner_iters}",
                                        'max_inner_iters')
        if not self.inner_tolerance >= 0:
            raise InvalidParameterError(f"inner_tolerance must be >= 0, got {self.inner_tolerance}",
                                        'inner_tolerance')

    def antenna_counts(self) -> dict:
        """Antenna count per node name"""
        return {
            'A': self.n_a,
            'B': self.n_b,
            'RS': self.n_rs,
            'P1': self.n_p1,
            'P2': self.n_p2,
            'RP': self.n_rp
        }

    def antennas(self, node: str) -> int:
        return self.antenna_counts()[node]

    def fixed_power(self, node: str) -> float:
        """
        Transmit power of a grid-powered node

        Args:
            node: One of RS, RP, P1, P2

        Returns:
            Linear transmit power
        """
        return {'RS': self.p_rs, 'RP': self.p_rp, 'P1': self.p_p1, 'P2': self.p_p2}[node]
