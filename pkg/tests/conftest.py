"""
Shared fixtures
"""
import numpy as np
import pytest

from app.cli.config_loader import SimConfig
from app.models.channel import ChannelRealization
from app.models.parameters import SystemParameters
from app.schemes import ProposedScheme
from app.services.montecarlo_service import MonteCarloService


@pytest.fixture
def baseline_config():
    return SimConfig()


@pytest.fixture
def params(baseline_config):
    return baseline_config.system_parameters()


@pytest.fixture
def topology(baseline_config):
    return baseline_config.topology()


@pytest.fixture
def silent_params():
    """Primary network switched off: no interference anywhere"""
    return SystemParameters(tau=2.7, eta=0.8, gamma_th=1.0, p_rs=100.0, p_p1=0.0, p_p2=0.0, p_rp=0.0,
                            max_inner_iters=500, inner_tolerance=1e-12)


@pytest.fixture
def unit_params():
    return SystemParameters(tau=2.0, eta=1.0, gamma_th=1.0, p_rs=1.0, p_p1=0.0, p_p2=0.0, p_rp=0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def channels(topology, params, rng):
    return ChannelRealization.sample(topology, params, rng)


@pytest.fixture
def trial_state(params, topology):
    """Proposed scheme run to completion on one baseline realization"""
    return MonteCarloService.solve_trial(ProposedScheme(), params, topology, MonteCarloService.trial_rng(11, 0))
