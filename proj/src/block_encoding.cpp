#include "qsvt/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsvt/errors.hpp"

namespace qsvt {

namespace {

using cplx = std::complex<double>;

ComplexMatrix top_projector(Eigen::Index n) {
    return kron(basis_projector(2, 0), ComplexMatrix::Identity(n, n));
}

void check_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) throw DomainError(std::string(what) + " must be square");
    if (m.rows() == 0) throw DomainError(std::string(what) + " must be non-empty");
    check_dimension(2 * m.rows());
    if (!m.allFinite()) throw DomainError(std::string(what) + " holds non-finite entries");
}

}  // namespace

void validate(const BlockEncoding& be) {
    const Eigen::Index n = be.unitary.rows();
    if (be.proj_left.rows() != n || be.proj_right.rows() != n) throw DomainError("projector size mismatch");
    if (!is_unitary(be.unitary, 1e-10)) throw NotUnitary("block encoding unitary fails U^dag U = I");
    if (!is_projector(be.proj_left) || !is_projector(be.proj_right)) throw NotProjector("projector invariant fails");
}

BlockEncoding qubitize_hermitian(const ComplexMatrix& h, double alpha) {
    check_square(h, "H");
    if (!is_hermitian(h, 1e-10)) throw NotHermitian("H is not Hermitian");
    if (!(alpha > 0.0)) throw ScaleTooSmall("alpha must be positive");
    const ComplexMatrix hs = 0.5 * (h + h.adjoint()) / alpha;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hs);
    const Eigen::VectorXd& lam = es.eigenvalues();
    if (lam.cwiseAbs().maxCoeff() > 1.0 + 1e-12) throw ScaleTooSmall("||H|| / alpha exceeds 1");
    Eigen::VectorXd root(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) root(k) = std::sqrt(std::max(0.0, 1.0 - lam(k) * lam(k)));
    const ComplexMatrix& v = es.eigenvectors();
    const ComplexMatrix s = v * root.cast<cplx>().asDiagonal() * v.adjoint();

    const Eigen::Index n = h.rows();
    BlockEncoding be;
    be.unitary.resize(2 * n, 2 * n);
    be.unitary << hs, s, s, -hs;
    be.proj_right = top_projector(n);
    be.proj_left = be.proj_right;
    be.alpha = alpha;
    return be;
}

BlockEncoding embed_general(const ComplexMatrix& a, double alpha) {
    check_square(a, "A");
    if (!(alpha > 0.0)) throw ScaleTooSmall("alpha must be positive");
    const ComplexMatrix b = a / alpha;
    Eigen::JacobiSVD<ComplexMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sig = svd.singularValues();
    if (sig(0) > 1.0 + 1e-12) throw ScaleTooSmall("largest singular value exceeds alpha");
    Eigen::VectorXd root(sig.size());
    for (Eigen::Index k = 0; k < sig.size(); ++k) root(k) = std::sqrt(std::max(0.0, 1.0 - sig(k) * sig(k)));
    const ComplexMatrix c = svd.matrixU() * root.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();

    const Eigen::Index n = a.rows();
    BlockEncoding be;
    be.unitary.resize(2 * n, 2 * n);
    be.unitary << b, c, c, -b;
    be.proj_right = top_projector(n);
    be.proj_left = be.proj_right;
    be.alpha = alpha;
    return be;
}

BlockEncoding shift_positive(const BlockEncoding& be) {
    const Eigen::Index n = be.dim();
    check_dimension(2 * n);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    BlockEncoding out;
    out.unitary.resize(2 * n, 2 * n);
    out.unitary << 0.5 * (be.unitary + id), 0.5 * (be.unitary - id), 0.5 * (be.unitary - id),
        0.5 * (be.unitary + id);
    out.proj_right = kron(basis_projector(2, 0), be.proj_right);
    out.proj_left = out.proj_right;
    out.alpha = 1.0;
    return out;
}

BlockEncoding phase_oracle_block_from_power(const ComplexMatrix& u_pow, double theta) {
    check_square(u_pow, "U");
    if (!is_unitary(u_pow, 1e-10)) throw NotUnitary("oracle is not unitary");
    const Eigen::Index n = u_pow.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix v = std::polar(1.0, -2.0 * std::numbers::pi * theta) * u_pow;
    BlockEncoding be;
    be.unitary.resize(2 * n, 2 * n);
    be.unitary << 0.5 * (id + v), 0.5 * (id - v), 0.5 * (id - v), 0.5 * (id + v);
    be.proj_right = top_projector(n);
    be.proj_left = be.proj_right;
    be.alpha = 1.0;
    return be;
}

BlockEncoding phase_oracle_block(const ComplexMatrix& u, int j, double theta) {
    check_square(u, "U");
    if (!is_unitary(u, 1e-10)) throw NotUnitary("oracle is not unitary");
    return phase_oracle_block_from_power(power_of_two(u, j), theta);
}

BlockEncoding grover_signal(long n, std::optional<double> a_override) {
    if (n < 2) throw DomainError("N must be at least 2");
    const double a = a_override ? *a_override : 1.0 / std::sqrt(static_cast<double>(n));
    if (!(std::abs(a) <= 1.0)) throw DomainError("a must lie in [-1, 1]");
    const double s = std::sqrt(1.0 - a * a);
    BlockEncoding be;
    be.unitary.resize(2, 2);
    be.unitary << a, s, s, -a;
    be.proj_right = basis_projector(2, 0);
    be.proj_left = be.proj_right;
    be.alpha = 1.0;
    return be;
}

ComplexMatrix projector_phase(const ComplexMatrix& proj, double phi) {
    if (!is_projector(proj, 1e-10)) throw NotProjector("argument is not an orthogonal projector");
    const ComplexMatrix id = ComplexMatrix::Identity(proj.rows(), proj.cols());
    return std::polar(1.0, phi) * proj + std::polar(1.0, -phi) * (id - proj);
}

ComplexMatrix projector_basis(const ComplexMatrix& proj) {
    const Eigen::Index n = proj.rows();
    const auto rank = static_cast<Eigen::Index>(std::llround(proj.trace().real()));
    ComplexMatrix basis(n, std::max<Eigen::Index>(rank, 0));
    Eigen::Index found = 0;
    for (Eigen::Index k = 0; k < n && found < rank; ++k) {
        ComplexVector v = proj.col(k);
        for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j).dot(v) * basis.col(j);
        const double nv = v.norm();
        if (nv > 1e-8) basis.col(found++) = v / nv;
    }
    return basis.leftCols(found);
}

ComplexMatrix extract_block(const BlockEncoding& be) {
    const ComplexMatrix left = projector_basis(be.proj_left);
    const ComplexMatrix right = projector_basis(be.proj_right);
    return left.adjoint() * be.unitary * right;
}

}  // namespace qsvt
