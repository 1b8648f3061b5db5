"""Python front end for the QSP / QSVT simulator."""

import json

from ._core import (
    ChebyshevPoly,
    PhaseSequence,
    QsvtError,
    bernoulli_sample_count,
    convert_convention,
    eigen_oracle,
    fixed_point_phases,
    hamiltonian_simulation,
    hermitian_expm,
    jacobi_anger_cos,
    jacobi_anger_sin,
    matrix_inversion,
    matrix_inversion_poly,
    residual,
    response,
    response_curve,
    sign_poly,
    solve_phases,
    svd_oracle,
    transformed_block,
)
from . import _core


def search(n_qubits, marked, delta=0.1, gap=None, seed=0, exact=False):
    if gap is None:
        gap = 2.0 ** (-n_qubits / 2)
    return json.loads(_core._search(n_qubits, marked, delta, gap, seed, exact))


def phase_estimation(phi, n, epsilon=0.01, gap=0.2, seed=0, exact=False):
    return json.loads(_core._qpe(phi, n, epsilon, gap, seed, exact))


def order_finding(x, n_mod, delta=0.25, seed=0, retries=5):
    return json.loads(_core._order_finding(x, n_mod, delta, seed, retries))


__all__ = [
    "ChebyshevPoly",
    "PhaseSequence",
    "QsvtError",
    "bernoulli_sample_count",
    "convert_convention",
    "eigen_oracle",
    "fixed_point_phases",
    "hamiltonian_simulation",
    "hermitian_expm",
    "jacobi_anger_cos",
    "jacobi_anger_sin",
    "matrix_inversion",
    "matrix_inversion_poly",
    "order_finding",
    "phase_estimation",
    "residual",
    "response",
    "response_curve",
    "search",
    "sign_poly",
    "solve_phases",
    "svd_oracle",
    "transformed_block",
]
