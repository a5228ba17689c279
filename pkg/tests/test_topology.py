"""
Tests for network geometry
"""
import math

import pytest

from app.exceptions import InvalidGeometryError
from app.models.topology import Topology, derive_topology, path_loss


def test_derived_distances_baseline():
    topology = derive_topology(0.5, 0.5, 2.0, 0.5, 0.5)

    assert topology.r_rp_a == pytest.approx(2.0615528128, rel=1e-9)
    assert topology.r_rs_p1 == pytest.approx(2.0615528128, rel=1e-9)
    assert topology.r_rs_p2 == topology.r_rs_p1
    assert topology.r_rp_b == topology.r_rp_a


def test_pythagoras():
    topology = Topology.derive(0.3, 0.7, 2.0, 0.4, 0.6)

    assert topology.r_rp_a == pytest.approx(math.sqrt(4.0 + 0.09))
    assert topology.r_rp_b == pytest.approx(math.sqrt(4.0 + 0.49))
    assert topology.r_rs_p1 == pytest.approx(math.sqrt(4.0 + 0.16))
    assert topology.r_rs_p2 == pytest.approx(math.sqrt(4.0 + 0.36))


@pytest.mark.parametrize('base', [
    (0.5, 0.5, 0.0, 0.5, 0.5),
    (-0.5, 0.5, 2.0, 0.5, 0.5),
    (0.5, 0.5, 2.0, float('nan'), 0.5)
])
def test_degenerate_geometry(base):
    with pytest.raises(InvalidGeometryError):
        derive_topology(*base)


def test_degenerate_geometry_names_field():
    with pytest.raises(InvalidGeometryError) as excinfo:
        derive_topology(0.5, 0.5, 0.0, 0.5, 0.5)
    assert excinfo.value.field == 'r_rs_rp'


def test_distance_is_symmetric():
    topology = derive_topology(0.3, 0.7, 2.0, 0.5, 0.5)

    assert topology.distance('A', 'RS') == topology.distance('RS', 'A') == 0.3
    assert topology.distance('RP', 'B') == topology.r_rp_b


def test_unmodelled_link():
    topology = derive_topology(0.5, 0.5, 2.0, 0.5, 0.5)
    with pytest.raises(KeyError):
        topology.distance('A', 'B')


def test_path_loss_decreasing():
    losses = [path_loss(r, 2.7) for r in (0.5, 1.0, 2.0)]
    assert losses[0] > losses[1] > losses[2]
    assert losses[1] == 1.0


def test_topology_path_loss():
    topology = derive_topology(0.5, 0.5, 2.0, 0.5, 0.5)
    assert topology.path_loss('RS', 'A', 2.0) == pytest.approx(4.0)
