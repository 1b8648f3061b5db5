#include "qsvt/matrix.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsvt/errors.hpp"

namespace qsvt {

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    return max_abs(m.adjoint() * m - id) <= tol;
}

bool is_projector(const ComplexMatrix& m, double tol) {
    return is_hermitian(m, tol) && max_abs(m * m - m) <= tol;
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

void check_dimension(Eigen::Index n) {
    if (n > kMaxDimension) throw DomainError("matrix dimension above " + std::to_string(kMaxDimension));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_dimension(a.rows() * b.rows());
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix basis_projector(Eigen::Index n, Eigen::Index k) {
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    p(k, k) = 1.0;
    return p;
}

ComplexVector basis_vector(Eigen::Index n, Eigen::Index k) {
    ComplexVector v = ComplexVector::Zero(n);
    v(k) = 1.0;
    return v;
}

ComplexMatrix power_of_two(const ComplexMatrix& u, int j) {
    if (j < 0) throw DomainError("power index must be non-negative");
    ComplexMatrix p = u;
    for (int s = 0; s < j; ++s) p = (p * p).eval();
    return p;
}

ComplexMatrix hermitian_expm(const ComplexMatrix& h, double t) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::VectorXd& lam = es.eigenvalues();
    ComplexVector ph(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) ph(k) = std::polar(1.0, -lam(k) * t);
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix unitary_sqrt(const ComplexMatrix& u) {
    Eigen::ComplexSchur<ComplexMatrix> cs(u);
    const ComplexMatrix& t = cs.matrixT();
    ComplexVector root(t.rows());
    for (Eigen::Index k = 0; k < t.rows(); ++k) {
        double arg = std::arg(t(k, k));
        if (arg < 0) arg += 2.0 * std::numbers::pi;
        root(k) = std::polar(1.0, arg / 2.0);
    }
    // Schur form of a normal matrix is diagonal.
    return cs.matrixU() * root.asDiagonal() * cs.matrixU().adjoint();
}

double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::complex<double> overlap = (b.adjoint() * a).trace();
    const std::complex<double> g = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
    return max_abs(a - g * b);
}

}  // namespace qsvt
