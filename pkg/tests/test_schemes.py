"""
Tests for the scheme family and its factory
"""
import numpy as np
import pytest

from app.models.power import EffectiveGains
from app.schemes import (
    MrtMrcScheme, ProposedScheme, SchemeFactory, StaticEqualPSScheme, StaticPowerControlScheme
)
from app.services.ia_service import InterferenceAlignmentService
from tests.helpers import symmetric_gains, uniform_topology


@pytest.mark.parametrize('name, cls', [
    ('proposed', ProposedScheme),
    ('mrt_mrc', MrtMrcScheme),
    ('static_power_control', StaticPowerControlScheme),
    ('static_ps_0.3', StaticEqualPSScheme)
])
def test_factory_creates(name, cls):
    scheme = SchemeFactory.create(name)
    assert isinstance(scheme, cls)
    assert scheme.name == name


def test_default_schemes_round_trip_names():
    for name in SchemeFactory.DEFAULT_SCHEMES:
        assert SchemeFactory.create(name).name == name
    assert len(SchemeFactory.DEFAULT_SCHEMES) == 6


def test_factory_normalizes_names():
    assert SchemeFactory.create('  Proposed ').name == 'proposed'


def test_static_ps_ratio():
    scheme = SchemeFactory.create('static_ps_0.7')
    assert scheme.rho == 0.7
    assert scheme.config == {'rho': 0.7}
    assert scheme.choose_ps(100.0, 0.01, 1.0) == (0.7, 0.7)


@pytest.mark.parametrize('name', ['static_ps_1.5', 'static_ps_0', 'waterfilling', 'static_ps_'])
def test_factory_rejects(name):
    with pytest.raises(ValueError):
        SchemeFactory.create(name)


def test_available_schemes():
    available = SchemeFactory.get_available_schemes()
    assert 'proposed' in available
    assert 'static_ps_<rho>' in available


def test_proposed_uses_closed_form_ps():
    assert ProposedScheme().choose_ps(4.0, 0.5, 2.0) == (0.5, 0.0)


def test_static_power_control_fixes_theta(unit_params):
    gains = EffectiveGains(a=symmetric_gains(su_gain=9.0), b=symmetric_gains())
    topology = uniform_topology(1.0)

    assert StaticPowerControlScheme().choose_theta(gains, 0.5, 0.5, unit_params, topology) == 0.5
    assert ProposedScheme().choose_theta(gains, 0.5, 0.5, unit_params, topology) == pytest.approx(0.75)


def test_mrt_mrc_skips_ia(params, channels, rng):
    scheme = MrtMrcScheme()
    bf = scheme.initial_beamformers(channels, params, rng)
    expected = InterferenceAlignmentService.mrt_mrc_beamformers(channels, params)

    assert scheme.uses_ia is False
    for name, matrix in bf.as_dict().items():
        assert np.array_equal(matrix, getattr(expected, name))


def test_ia_schemes_start_random(params, channels):
    first = ProposedScheme().initial_beamformers(channels, params, np.random.default_rng(1))
    second = ProposedScheme().initial_beamformers(channels, params, np.random.default_rng(1))

    assert ProposedScheme.uses_ia
    assert np.array_equal(first.v_rs, second.v_rs)


def test_scheme_equality():
    assert SchemeFactory.create('static_ps_0.5') == StaticEqualPSScheme(rho=0.5)
    assert ProposedScheme() != StaticPowerControlScheme()
    assert repr(ProposedScheme()) == '<Scheme proposed>'
