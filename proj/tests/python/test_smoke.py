import math

import numpy as np
import pytest

import qsvtsim as q


def test_chebyshev_from_identity_phases():
    seq = q.PhaseSequence([0.0, 0.0, 0.0, 0.0])
    for a in np.linspace(-1, 1, 11):
        assert abs(q.response(seq, a).real - (4 * a**3 - 3 * a)) < 1e-12


def test_fixed_point_first_entries():
    seq = q.fixed_point_phases(10, 0.5)
    assert len(seq) == 20
    assert seq.convention == ("wx", "sz", "00")
    assert abs(seq.phases[0] + 1.58023603) < 1e-6
    assert abs(seq.phases[9] + 0.87463828) < 1e-6


def test_json_round_trip():
    seq = q.PhaseSequence([0.1, -0.2, 0.3], basis="00")
    back = q.PhaseSequence.from_json(seq.to_json())
    assert back.phases == seq.phases
    assert back.convention == seq.convention


def test_solve_and_transform_matches_oracle():
    target = q.ChebyshevPoly([0.0, 0.5, 0.0, 0.25], "odd")
    seq = q.solve_phases(target)
    assert q.residual(seq, target) < 1e-8
    rng = np.random.default_rng(3)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a /= np.linalg.norm(a, 2) * 1.01
    block = q.transformed_block(a, seq, 1.0)
    oracle = q.svd_oracle(a, target)
    # the matrix is encoded with alpha = 1, so the oracle sees a directly
    assert np.max(np.abs(block - oracle)) < 1e-8


def test_qpe_exact():
    rec = q.phase_estimation(0.625, 3, exact=True)
    assert rec["decision"]["theta"] == pytest.approx(0.625)


def test_search_exact_amplitude():
    rec = q.search(2, 3, delta=0.1, exact=True)
    assert rec["decision"]["found"] == 3
    assert rec["decision"]["marked_amplitude"] >= 0.95


def test_hamsim_error():
    h = np.array([[0.3, 0.1j], [-0.1j, -0.4]])
    block, queries = q.hamiltonian_simulation(h, 1.0, 1.0, 1e-2)
    exact = q.hermitian_expm(h, 1.0)
    k = np.argmax(np.abs(exact))
    phase = block.flat[k] / exact.flat[k]
    phase /= abs(phase)
    assert np.max(np.abs(block - phase * exact)) <= 1e-2
    assert queries > 0


def test_bernoulli_count():
    assert q.bernoulli_sample_count(0.0, 0.5, 0.05) == 24


def test_errors_map_to_python():
    with pytest.raises(q.QsvtError):
        q.matrix_inversion(np.diag([0.1, 1.0]), 2.0, 0.05)
    with pytest.raises(q.QsvtError):
        q.PhaseSequence([0.0], signal="bogus")
