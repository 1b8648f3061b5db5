#pragma once

#include <span>

#include "qsvt/block_encoding.hpp"
#include "qsvt/chebyshev.hpp"
#include "qsvt/qsp.hpp"

namespace qsvt {

struct QsvtProgram {
    BlockEncoding encoding;
    PhaseSequence phases{{0.0}};  // canonical (WX, SZ, ++)
    Parity parity = Parity::even;
};

// Accepts canonical, (WX, SZ, 00) or (REFLECTION, SZ, 00) phases; the real part of the
// 00 element is the same polynomial in all three.
QsvtProgram make_program(BlockEncoding encoding, const PhaseSequence& phases);

// The d+1 projector phases driving the alternating sequence.
std::vector<double> reflection_phases(const PhaseSequence& canonical);

// Pi_{psi_0} ... U^dag Pi~_{psi_{d-1}} U Pi_{psi_d}, rightmost factor on the input space.
ComplexMatrix qsvt_unitary(const BlockEncoding& encoding, std::span<const double> psi);
ComplexMatrix qsvt_unitary(const QsvtProgram& prog);
// Same sequence applied to a vector without forming the product.
ComplexVector apply_qsvt(const BlockEncoding& encoding, std::span<const double> psi, const ComplexVector& v);

// (1/2)(U_psi + U_-psi) applied to x in the input-projector basis, read out in the
// output-projector basis; psi are reflection phases.
ComplexVector apply_transformed(const BlockEncoding& encoding, std::span<const double> psi,
                                const ComplexVector& x);

// (1/2)(U_psi + U_-psi), realized with one control dimension and read out with <+| . |+>.
ComplexMatrix real_part_unitary(const QsvtProgram& prog);

// Block of the real-part construction between the output and input projector ranges:
// Pi~ (odd d) or Pi (even d) on the left, Pi on the right.
ComplexMatrix transformed_block(const QsvtProgram& prog);

// W P(S) V^dag for odd P, V P(S) V^dag for even P.
ComplexMatrix svd_oracle(const ComplexMatrix& a, const ChebyshevPoly& poly);
// sum_lambda P(lambda) |lambda><lambda|
ComplexMatrix eigen_oracle(const ComplexMatrix& h, const ChebyshevPoly& poly);

// <A0| prod_k [U B_{phi_{2k-1}} U^dag A_{phi_{2k}}] U |B0> for phases phi_1..phi_d, d even.
cplx amplitude_amplification_matrix_element(const ComplexMatrix& u, const ComplexVector& a0,
                                            const ComplexVector& b0, std::span<const double> phases);

}  // namespace qsvt
