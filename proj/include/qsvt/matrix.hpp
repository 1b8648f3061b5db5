#pragma once

#include <complex>

#include <Eigen/Core>

namespace qsvt {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxDimension = 1 << 10;

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-12);
bool is_projector(const ComplexMatrix& m, double tol = 1e-12);
double spectral_norm(const ComplexMatrix& m);

// Throws DomainError when a dimension exceeds kMaxDimension.
void check_dimension(Eigen::Index n);

// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// |k><k| of size n.
ComplexMatrix basis_projector(Eigen::Index n, Eigen::Index k);
ComplexVector basis_vector(Eigen::Index n, Eigen::Index k);

// U^(2^j) by repeated squaring.
ComplexMatrix power_of_two(const ComplexMatrix& u, int j);
// exp(-i H t) for Hermitian H via eigendecomposition.
ComplexMatrix hermitian_expm(const ComplexMatrix& h, double t);
// Principal square root of a unitary (eigenphases taken in [0, 2 pi)).
ComplexMatrix unitary_sqrt(const ComplexMatrix& u);

// max |a - e^{i g} b| with g maximizing Re tr(a^dag e^{i g} b).
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qsvt
