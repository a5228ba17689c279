"""
Tests for the MMSE interference-alignment service
"""
import logging

import numpy as np
import pytest
from scipy.linalg import solve

from app.models.beamformers import BeamformerSet, RECEIVER_DECODERS
from app.models.channel import ChannelRealization
from app.models.parameters import SystemParameters
from app.schemes import ProposedScheme
from app.services.ia_service import InterferenceAlignmentService, mmse_receive_filter, receiver_mse
from app.services.montecarlo_service import MonteCarloService
from app.services.power_service import PowerService
from tests.helpers import equal_allocation, with_links


def random_matrix(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_scalar_filter_without_interference():
    assert mmse_receive_filter(np.array([[1.0]]), [])[0, 0] == pytest.approx(0.5)


def test_scalar_filter_with_interference():
    u = mmse_receive_filter(np.array([[1.0]]), [np.array([[np.sqrt(3.0)]])])
    assert u[0, 0] == pytest.approx(0.2)


def test_filter_matches_dense_solver(rng):
    desired = random_matrix(rng, (4, 1))
    interference = [random_matrix(rng, (4, 1)) for _ in range(2)]
    covariance = np.eye(4) + desired @ desired.conj().T + sum(i @ i.conj().T for i in interference)

    u = mmse_receive_filter(desired, interference)

    assert np.allclose(u, solve(covariance, desired, assume_a='her'), rtol=0.0, atol=1e-10)
    # Zero-derivative condition of the MSE
    assert np.linalg.norm(covariance @ u - desired) < 1e-9


def test_filter_with_two_desired_streams(rng):
    desired = [random_matrix(rng, (4, 1)), random_matrix(rng, (4, 1))]
    covariance = np.eye(4) + sum(d @ d.conj().T for d in desired)

    u = mmse_receive_filter(desired, [])

    assert np.allclose(covariance @ u, desired[0] + desired[1], atol=1e-9)


def test_filter_dimension_mismatch(rng):
    with pytest.raises(ValueError):
        mmse_receive_filter(random_matrix(rng, (4, 1)), [random_matrix(rng, (3, 1))])


def test_mmse_filter_minimizes_mse(rng):
    desired = random_matrix(rng, (4, 1))
    interference = [random_matrix(rng, (4, 1))]
    best = receiver_mse(mmse_receive_filter(desired, interference), desired, interference)

    for _ in range(20):
        assert best <= receiver_mse(random_matrix(rng, (4, 1)), desired, interference) + 1e-12
    assert receiver_mse(np.zeros((4, 1)), desired, interference) == pytest.approx(1.0)


def test_iteration_keeps_unit_norm(params, topology, channels, rng):
    service = InterferenceAlignmentService(params, topology)
    bf = BeamformerSet.random(params, rng)
    allocation = equal_allocation(p_a=50.0, p_b=80.0)

    for _ in range(3):
        bf = service.ia_iteration(channels, allocation, bf)
        for matrix in bf.as_dict().values():
            assert np.linalg.norm(matrix) == pytest.approx(1.0, abs=1e-12)


def test_update_never_increases_mse(params, topology):
    service = InterferenceAlignmentService(params, topology)

    for seed in range(5):
        rng = np.random.default_rng(seed)
        channels = ChannelRealization.sample(topology, params, rng)
        bf = BeamformerSet.random(params, rng)
        gains = PowerService.effective_gains(channels, bf, params, topology)
        allocation = PowerService.allocate(gains, 0.5, 0.5, 0.5, params, topology)

        for _ in range(20):
            terms = service.receiver_terms(channels, bf, allocation)
            for receiver, (desired, interference) in terms.items():
                before = receiver_mse(bf.decoder(receiver), desired, interference)
                after = receiver_mse(mmse_receive_filter(desired, interference), desired, interference)
                assert after <= before + 1e-9 * max(1.0, before)
            bf = service.ia_iteration(channels, allocation, bf)


def test_zero_iterations_returns_init(params, topology, channels, rng):
    init = BeamformerSet.random(params, rng)
    service = InterferenceAlignmentService(params, topology, max_inner_iters=0)

    bf, diagnostics = service.run_ia(channels, equal_allocation(), init)

    assert bf is init
    assert diagnostics.iterations_used == 0
    assert diagnostics.converged is False


def test_rank_failure_is_logged(params, topology, channels, rng, caplog):
    dead_link = with_links(channels, RS_A=np.zeros((params.n_rs, params.n_a)))
    service = InterferenceAlignmentService(params, topology, max_inner_iters=0)

    with caplog.at_level(logging.DEBUG, logger='app.services.ia_service'):
        _, diagnostics = service.run_ia(dead_link, equal_allocation(), BeamformerSet.random(params, rng))

    assert not diagnostics['RS1'].rank_satisfied
    assert not diagnostics.rank_satisfied
    assert 'rank condition fails at RS1' in caplog.text


def test_iterations_bounded(params, topology, channels, rng):
    service = InterferenceAlignmentService(params, topology, max_inner_iters=3, inner_tolerance=0.0)
    _, diagnostics = service.run_ia(channels, equal_allocation(), BeamformerSet.random(params, rng))

    assert diagnostics.iterations_used == 3
    assert diagnostics.converged is False


def test_silent_primaries_reduce_to_matched_filtering(silent_params, topology, rng):
    channels = ChannelRealization.sample(topology, silent_params, rng)
    service = InterferenceAlignmentService(silent_params, topology)

    bf, diagnostics = service.run_ia(channels, equal_allocation(p_a=10.0, p_b=10.0),
                                     BeamformerSet.random(silent_params, rng))
    mrt = InterferenceAlignmentService.mrt_mrc_beamformers(channels, silent_params)

    for decoder, link, precoder in (('u_rs1', ('RS', 'A'), 'v_a'), ('u_rs2', ('RS', 'B'), 'v_b')):
        h = channels.get(*link)
        ia_gain = abs((getattr(bf, decoder).conj().T @ h @ getattr(bf, precoder))[0, 0])
        mrt_gain = abs((getattr(mrt, decoder).conj().T @ h @ getattr(mrt, precoder))[0, 0])
        assert ia_gain == pytest.approx(mrt_gain, rel=1e-6)

    # Primary receivers still hear the secondary relay
    for receiver in ('RS1', 'RS2', 'A', 'B'):
        assert diagnostics[receiver].leakage_power == 0.0


def test_leakage_zero_when_interference_orthogonal(params, topology, channels, rng):
    bf = BeamformerSet.random(params, rng)
    u = bf.u_rs1
    projector = np.eye(4) - u @ u.conj().T
    aligned = with_links(channels, RS_P1=projector @ channels.get('RS', 'P1'))

    diagnostics = InterferenceAlignmentService(params, topology).leakage_and_rank_check(
        aligned, bf, equal_allocation())

    assert diagnostics['RS1'].leakage_power < 1e-20
    assert diagnostics['RS1'].rank_satisfied


def test_leakage_full_when_decoder_faces_interferer(params, topology, channels, rng):
    bf = BeamformerSet.random(params, rng)
    interferer = channels.get('RS', 'P1') @ bf.v_p1
    bf = bf.replace(u_rs1=interferer / np.linalg.norm(interferer))

    diagnostics = InterferenceAlignmentService(params, topology).leakage_and_rank_check(
        channels, bf, equal_allocation())

    expected = params.p_p1 * topology.path_loss('RS', 'P1', params.tau) * np.linalg.norm(interferer) ** 2
    assert diagnostics['RS1'].leakage_power == pytest.approx(expected, rel=1e-9)


def test_diagnostics_mse_bounds(trial_state, params, topology):
    diagnostics = InterferenceAlignmentService(params, topology).leakage_and_rank_check(
        trial_state.channels, trial_state.beamformers, trial_state.allocation)

    for receiver in RECEIVER_DECODERS:
        entry = diagnostics[receiver]
        assert entry.desired_gain >= 0.0
        assert entry.leakage_power >= 0.0
        assert 0.0 < entry.mse <= 1.0


def test_mrt_mrc_rank_one_channel(params, topology, channels, rng):
    u = rng.standard_normal((4, 1)) + 1j * rng.standard_normal((4, 1))
    v = rng.standard_normal((4, 1)) + 1j * rng.standard_normal((4, 1))
    u /= np.linalg.norm(u)
    v /= np.linalg.norm(v)
    rank_one = with_links(channels, RS_A=3.0 * u @ v.conj().T)

    bf = InterferenceAlignmentService.mrt_mrc_beamformers(rank_one, params)

    assert abs((bf.u_rs1.conj().T @ rank_one.get('RS', 'A') @ bf.v_a)[0, 0]) == pytest.approx(3.0)
    assert abs((bf.v_a.conj().T @ v)[0, 0]) == pytest.approx(1.0)
    assert abs((bf.u_rs1.conj().T @ u)[0, 0]) == pytest.approx(1.0)


def test_mrt_mrc_identity_channel(topology):
    params = SystemParameters(tau=2.7, eta=0.8, gamma_th=1.0, p_rs=100.0, p_p1=1.0, p_p2=1.0, p_rp=1.0,
                              n_a=2, n_b=2, n_rs=2, n_p1=2, n_p2=2, n_rp=2)
    channels = ChannelRealization.sample(topology, params, np.random.default_rng(3))
    identity = with_links(channels, RS_A=np.eye(2))

    bf = InterferenceAlignmentService.mrt_mrc_beamformers(identity, params)

    assert abs((bf.u_rs1.conj().T @ bf.v_a)[0, 0]) == pytest.approx(1.0)


def test_mrt_mrc_unit_norm(params, channels):
    bf = InterferenceAlignmentService.mrt_mrc_beamformers(channels, params)
    for matrix in bf.as_dict().values():
        assert matrix.shape == (4, 1)
        assert np.linalg.norm(matrix) == pytest.approx(1.0)


def test_mrt_mrc_relay_gain_dominates_ia(params, topology):
    service = InterferenceAlignmentService(params, topology)
    for index in range(10):
        rng = MonteCarloService.trial_rng(5, index)
        channels = ChannelRealization.sample(topology, params, rng)
        bf, _ = service.run_ia(channels, equal_allocation(p_a=50.0, p_b=50.0), BeamformerSet.random(params, rng))
        mrt = InterferenceAlignmentService.mrt_mrc_beamformers(channels, params)

        for decoder, link, precoder in (('u_rs1', ('RS', 'A'), 'v_a'), ('u_rs2', ('RS', 'B'), 'v_b'),
                                        ('u_rp1', ('RP', 'P1'), 'v_p1'), ('u_rp2', ('RP', 'P2'), 'v_p2')):
            h = channels.get(*link)
            ia_gain = abs((getattr(bf, decoder).conj().T @ h @ getattr(bf, precoder))[0, 0])
            mrt_gain = abs((getattr(mrt, decoder).conj().T @ h @ getattr(mrt, precoder))[0, 0])
            assert mrt_gain >= ia_gain - 1e-9


@pytest.mark.slow
def test_converged_set_is_fixed_point(params, topology):
    rng = MonteCarloService.trial_rng(3, 0)
    channels = ChannelRealization.sample(topology, params, rng)
    allocation = equal_allocation(p_a=50.0, p_b=50.0)
    service = InterferenceAlignmentService(params, topology, max_inner_iters=2000, inner_tolerance=1e-9)

    bf, diagnostics = service.run_ia(channels, allocation, BeamformerSet.random(params, rng))

    assert diagnostics.converged
    assert bf.max_change(service.ia_iteration(channels, allocation, bf)) < params.inner_tolerance


@pytest.mark.slow
def test_converged_leakage_below_desired(params, topology):
    service = InterferenceAlignmentService(params, topology)
    ratios = []
    for index in range(100):
        rng = MonteCarloService.trial_rng(8, index)
        state = MonteCarloService.solve_trial(ProposedScheme(), params, topology, rng)
        diagnostics = service.leakage_and_rank_check(state.channels, state.beamformers, state.allocation)
        ratios.append(diagnostics['RS1'].leakage_power / diagnostics['RS1'].desired_gain)

    assert np.median(ratios) < 1e-2


@pytest.mark.slow
def test_convergence_calibration(params, topology):
    """At most 50 sweeps at tol 1e-6 for 95% of realizations (200 seeds instead of 1000)"""
    service = InterferenceAlignmentService(params, topology, max_inner_iters=50, inner_tolerance=1e-6)
    converged = 0

    for seed in range(200):
        rng = MonteCarloService.trial_rng(seed, 0)
        channels = ChannelRealization.sample(topology, params, rng)
        bf = BeamformerSet.random(params, rng)
        gains = PowerService.effective_gains(channels, bf, params, topology)
        rho_a, rho_b = (PowerService.optimal_ps(PowerService.compute_z(gains, params, topology, su), params.gamma_th)
                        for su in ('A', 'B'))
        theta = PowerService.optimal_theta(gains, rho_a, rho_b, params, topology)
        allocation = PowerService.allocate(gains, rho_a, rho_b, theta, params, topology)

        _, diagnostics = service.run_ia(channels, allocation, bf)
        converged += diagnostics.converged

    assert converged >= 0.95 * 200
