#pragma once

#include <optional>

#include "qsvt/matrix.hpp"

namespace qsvt {

// Unitary U with projectors locating the encoded operator: proj_left U proj_right.
struct BlockEncoding {
    ComplexMatrix unitary;
    ComplexMatrix proj_right;  // Pi
    ComplexMatrix proj_left;   // Pi tilde
    double alpha = 1.0;

    Eigen::Index dim() const { return unitary.rows(); }
};

// Throws NotUnitary / NotProjector when the type invariants fail.
void validate(const BlockEncoding& be);

// [[H/alpha, sqrt(I - H^2/alpha^2)], [sqrt(..), -H/alpha]] with Pi = Pi~ = |0><0| (x) I.
BlockEncoding qubitize_hermitian(const ComplexMatrix& h, double alpha = 1.0);

// [[B, C], [C, -B]] with B = A/alpha and C = W sqrt(I - S^2) V^dag from the SVD of B.
BlockEncoding embed_general(const ComplexMatrix& a, double alpha = 1.0);

// Encodes (X + I)/2 for the Hermitian X encoded by be; projectors |0><0| (x) Pi.
BlockEncoding shift_positive(const BlockEncoding& be);

// W = 1/2 [[I + V, I - V], [I - V, I + V]] with V = e^{-2 pi i theta} U^(2^j).
BlockEncoding phase_oracle_block(const ComplexMatrix& u, int j, double theta);
// Same with the power U^(2^j) supplied by the caller.
BlockEncoding phase_oracle_block_from_power(const ComplexMatrix& u_pow, double theta);

// 2x2 reflection [[a, sqrt(1-a^2)], [sqrt(1-a^2), -a]] with a = 1/sqrt(N) unless overridden.
BlockEncoding grover_signal(long n, std::optional<double> a_override = std::nullopt);

// e^{i phi} on range(proj), e^{-i phi} on its complement.
ComplexMatrix projector_phase(const ComplexMatrix& proj, double phi);

// Orthonormal basis of range(proj), columns ordered by their leading computational index.
ComplexMatrix projector_basis(const ComplexMatrix& proj);

// Pi~ U Pi written in the projector-range bases.
ComplexMatrix extract_block(const BlockEncoding& be);

}  // namespace qsvt
