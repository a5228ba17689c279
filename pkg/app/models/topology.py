"""
Network geometry
"""
import math
from dataclasses import dataclass

from app.exceptions import InvalidGeometryError


def path_loss(distance: float, tau: float) -> float:
    """Large-scale attenuation r^-tau"""
    return distance ** (-tau)


@dataclass(frozen=True)
class Topology:
    """Node distances: five base distances plus the Pythagoras-derived cross links"""

    r_a_rs: float
    r_rs_b: float
    r_rs_rp: float
    r_p1_rp: float
    r_rp_p2: float
    r_rs_p1: float
    r_rs_p2: float
    r_rp_a: float
    r_rp_b: float

    @classmethod
    def derive(cls, r_a_rs: float, r_rs_b: float, r_rs_rp: float,
               r_p1_rp: float, r_rp_p2: float) -> 'Topology':
        """
        Build a topology from the base distances

        The cross-network distances follow from the two relays facing each
        other at distance r_rs_rp with every user perpendicular to that axis.

        Args:
            r_a_rs: Distance A - RS
            r_rs_b: Distance RS - B
            r_rs_rp: Distance RS - RP
            r_p1_rp: Distance P1 - RP
            r_rp_p2: Distance RP - P2

        Returns:
            Topology with derived distances filled

        Raises:
            InvalidGeometryError: If any base distance is not positive
        """
        base = {
            'r_a_rs': r_a_rs,
            'r_rs_b': r_rs_b,
            'r_rs_rp': r_rs_rp,
            'r_p1_rp': r_p1_rp,
            'r_rp_p2': r_rp_p2
        }
        for name, value in base.items():
            if not (value > 0 and math.isfinite(value)):
                raise InvalidGeometryError(f"{name} must be a positive distance, got {value}", name)

        return cls(
            r_rs_p1=math.hypot(r_rs_rp, r_p1_rp),
            r_rs_p2=math.hypot(r_rs_rp, r_rp_p2),
            r_rp_a=math.hypot(r_rs_rp, r_a_rs),
            r_rp_b=math.hypot(r_rs_rp, r_rs_b),
            **base
        )

    def distance(self, a: str, b: str) -> float:
        """Distance between two nodes (order independent)"""
        pair = frozenset((a, b))
        table = {
            frozenset(('A', 'RS')): self.r_a_rs,
            frozenset(('B', 'RS')): self.r_rs_b,
            frozenset(('RS', 'RP')): self.r_rs_rp,
            frozenset(('P1', 'RP')): self.r_p1_rp,
            frozenset(('P2', 'RP')): self.r_rp_p2,
            frozenset(('P1', 'RS')): self.r_rs_p1,
            frozenset(('P2', 'RS')): self.r_rs_p2,
            frozenset(('A', 'RP')): self.r_rp_a,
            frozenset(('B', 'RP')): self.r_rp_b
        }
        if pair not in table:
            raise KeyError(f"no modelled link between {a} and {b}")
        return table[pair]

    def path_loss(self, a: str, b: str, tau: float) -> float:
        return path_loss(self.distance(a, b), tau)


def derive_topology(r_a_rs: float, r_rs_b: float, r_rs_rp: float,
                    r_p1_rp: float, r_rp_p2: float) -> Topology:
    """Module-level alias for Topology.derive"""
    return Topology.derive(r_a_rs, r_rs_b, r_rs_rp, r_p1_rp, r_rp_p2)
