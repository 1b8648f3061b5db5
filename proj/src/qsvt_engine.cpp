#include "qsvt/qsvt_engine.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsvt/errors.hpp"

namespace qsvt {

namespace {

constexpr Convention kReflectionZero{SignalKind::reflection, ProcessingKind::sz, Basis::zero_zero};

}  // namespace

QsvtProgram make_program(BlockEncoding encoding, const PhaseSequence& phases) {
    const Convention& c = phases.convention();
    std::vector<double> canonical;
    if (c == kCanonical || c == kWxZero) {
        canonical = phases.phases();
    } else if (c == kReflectionZero) {
        canonical = convert_convention(phases, kWxZero).phases();
    } else {
        throw UnsupportedConversion("QSVT programs take WX or REFLECTION phases");
    }
    validate(encoding);
    QsvtProgram prog{std::move(encoding), PhaseSequence(std::move(canonical), kCanonical), Parity::even};
    prog.parity = parity_of_degree(prog.phases.degree());
    return prog;
}

std::vector<double> reflection_phases(const PhaseSequence& canonical) {
    // Re <+|U|+> and Re <0|U|0> coincide for the same WX phases.
    const PhaseSequence as_zero(canonical.phases(), kWxZero);
    return convert_convention(as_zero, kReflectionZero).phases();
}

ComplexMatrix qsvt_unitary(const BlockEncoding& encoding, std::span<const double> psi) {
    if (psi.empty()) throw DomainError("QSVT needs at least one phase");
    const int d = static_cast<int>(psi.size()) - 1;
    const ComplexMatrix& u = encoding.unitary;
    ComplexMatrix m = projector_phase(encoding.proj_right, psi[static_cast<std::size_t>(d)]);
    for (int step = 1; step <= d; ++step) {
        const double phase = psi[static_cast<std::size_t>(d - step)];
        if (step % 2 == 1) {
            m = (u * m).eval();
            m = (projector_phase(encoding.proj_left, phase) * m).eval();
        } else {
            m = (u.adjoint() * m).eval();
            m = (projector_phase(encoding.proj_right, phase) * m).eval();
        }
    }
    return m;
}

ComplexMatrix qsvt_unitary(const QsvtProgram& prog) {
    return qsvt_unitary(prog.encoding, reflection_phases(prog.phases));
}

ComplexVector apply_qsvt(const BlockEncoding& encoding, std::span<const double> psi, const ComplexVector& v) {
    if (psi.empty()) throw DomainError("QSVT needs at least one phase");
    const int d = static_cast<int>(psi.size()) - 1;
    auto phase = [](const ComplexMatrix& proj, double phi, ComplexVector& x) {
        const ComplexVector px = proj * x;
        x = std::polar(1.0, -phi) * x + (std::polar(1.0, phi) - std::polar(1.0, -phi)) * px;
    };
    ComplexVector x = v;
    phase(encoding.proj_right, psi[static_cast<std::size_t>(d)], x);
    for (int step = 1; step <= d; ++step) {
        const double p = psi[static_cast<std::size_t>(d - step)];
        if (step % 2 == 1) {
            x = encoding.unitary * x;
            phase(encoding.proj_left, p, x);
        } else {
            x = encoding.unitary.adjoint() * x;
            phase(encoding.proj_right, p, x);
        }
    }
    return x;
}

ComplexVector apply_transformed(const BlockEncoding& encoding, std::span<const double> psi,
                                const ComplexVector& x) {
    const bool odd = psi.size() % 2 == 0;
    const ComplexMatrix in_basis = projector_basis(encoding.proj_right);
    const ComplexMatrix out_basis = projector_basis(odd ? encoding.proj_left : encoding.proj_right);
    const ComplexVector v = in_basis * x;
    ComplexVector y = apply_qsvt(encoding, psi, v);
    std::vector<double> neg(psi.begin(), psi.end());
    for (double& p : neg) p = -p;
    y = 0.5 * (y + apply_qsvt(encoding, neg, v));
    return out_basis.adjoint() * y;
}

ComplexMatrix real_part_unitary(const QsvtProgram& prog) {
    std::vector<double> psi = reflection_phases(prog.phases);
    const ComplexMatrix plus = qsvt_unitary(prog.encoding, psi);
    for (double& p : psi) p = -p;
    const ComplexMatrix minus = qsvt_unitary(prog.encoding, psi);
    const Eigen::Index n = plus.rows();
    check_dimension(2 * n);
    ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
    out.topLeftCorner(n, n) = plus;
    out.bottomRightCorner(n, n) = minus;
    return out;
}

ComplexMatrix transformed_block(const QsvtProgram& prog) {
    const ComplexMatrix ctrl = real_part_unitary(prog);
    const bool odd = prog.phases.degree() % 2 == 1;
    const ComplexMatrix out_basis = projector_basis(odd ? prog.encoding.proj_left : prog.encoding.proj_right);
    const ComplexMatrix in_basis = projector_basis(prog.encoding.proj_right);
    ComplexMatrix plus(2, 1);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return kron(plus, out_basis).adjoint() * ctrl * kron(plus, in_basis);
}

ComplexMatrix svd_oracle(const ComplexMatrix& a, const ChebyshevPoly& poly) {
    if (poly.parity == Parity::none) throw ParityError("singular value transform needs a definite parity");
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sig = svd.singularValues();
    ComplexVector p(sig.size());
    for (Eigen::Index k = 0; k < sig.size(); ++k) p(k) = poly(sig(k));
    const ComplexMatrix& left = poly.parity == Parity::odd ? svd.matrixU() : svd.matrixV();
    return left * p.asDiagonal() * svd.matrixV().adjoint();
}

ComplexMatrix eigen_oracle(const ComplexMatrix& h, const ChebyshevPoly& poly) {
    if (!is_hermitian(h, 1e-10)) throw NotHermitian("eigen_oracle needs a Hermitian matrix");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    const Eigen::VectorXd& lam = es.eigenvalues();
    ComplexVector p(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) p(k) = poly(lam(k));
    return es.eigenvectors() * p.asDiagonal() * es.eigenvectors().adjoint();
}

cplx amplitude_amplification_matrix_element(const ComplexMatrix& u, const ComplexVector& a0,
                                            const ComplexVector& b0, std::span<const double> phases) {
    if (std::abs(a0.norm() - 1.0) > 1e-10 || std::abs(b0.norm() - 1.0) > 1e-10) {
        throw NotUnit("A0 and B0 must be unit vectors");
    }
    if (phases.size() % 2 != 0) throw DomainError("phase count must be even");
    if (u.rows() != u.cols() || u.rows() != a0.size() || u.rows() != b0.size()) {
        throw DomainError("dimension mismatch");
    }
    // e^{i phi |x><x|} v = v + (e^{i phi} - 1) <x|v> |x>
    auto reflect = [](const ComplexVector& x, double phi, ComplexVector& v) {
        v += (std::polar(1.0, phi) - 1.0) * x.dot(v) * x;
    };
    ComplexVector v = u * b0;
    for (std::size_t k = phases.size() / 2; k >= 1; --k) {
        reflect(a0, phases[2 * k - 1], v);  // phi_{2k}
        v = u.adjoint() * v;
        reflect(b0, phases[2 * k - 2], v);  // phi_{2k-1}
        v = u * v;
    }
    return a0.dot(v);
}

}  // namespace qsvt
