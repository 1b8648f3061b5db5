#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qsvt/errors.hpp"
#include "qsvt/phase_solver.hpp"
#include "qsvt/poly_approx.hpp"
#include "qsvt/qsvt_engine.hpp"

using namespace qsvt;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix diag(std::initializer_list<double> values) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                                          static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double v : values) {
        m(k, k) = v;
        ++k;
    }
    return m;
}

ComplexMatrix random_matrix(std::mt19937_64& eng, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> g;
    ComplexMatrix a(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) a(i, j) = cplx(g(eng), g(eng));
    }
    return a;
}

// Random polynomial of the given degree and parity scaled to sup 0.9.
ChebyshevPoly random_poly(std::mt19937_64& eng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(degree + 1), 0.0);
    for (int k = degree % 2; k <= degree; k += 2) c[static_cast<std::size_t>(k)] = u(eng);
    const ChebyshevPoly p = chebyshev_from_coeffs(c, parity_of_degree(degree));
    const std::vector<double> g = certification_grid();
    return scaled(p, 0.9 / max_abs_on(p, g));
}

}  // namespace

TEST_CASE("degree-one identity program") {
    const ChebyshevPoly id = chebyshev_from_coeffs({0, 1}, Parity::odd);
    const PhaseSequence seq = solve_phases(id);
    const QsvtProgram prog = make_program(embed_general(diag({0.3, 0.7}), 1.0), seq);
    CHECK(prog.parity == Parity::odd);
    CHECK(max_abs(transformed_block(prog) - diag({0.3, 0.7})) < 1e-10);
}

TEST_CASE("Chebyshev phases in the zero basis") {
    const QsvtProgram p1 = make_program(embed_general(diag({0.5}), 1.0), PhaseSequence({0, 0}, kWxZero));
    CHECK(max_abs(transformed_block(p1) - diag({0.5})) < 1e-12);
    const QsvtProgram p2 = make_program(embed_general(diag({0.5}), 1.0), PhaseSequence({0, 0, 0}, kWxZero));
    CHECK(max_abs(transformed_block(p2) - diag({-0.5})) < 1e-12);
    CHECK(is_unitary(qsvt_unitary(p2), 1e-11));
}

TEST_CASE("sign program on a diagonal matrix") {
    const ChebyshevPoly p = sign_poly({0.1, 0.4, 0.0});
    const QsvtProgram prog = make_program(embed_general(diag({0.1, 0.9}), 1.0), solve_phases(p));
    const ComplexMatrix blk = transformed_block(prog);
    CHECK(std::abs(blk(1, 1) - 1.0) <= 0.1);
    CHECK(std::abs(blk(0, 1)) < 1e-10);
    CHECK(std::abs(blk(0, 0) - p(0.1)) < 1e-8);
}

TEST_CASE("oracle equivalence on random instances") {
    std::mt19937_64 eng(41);
    for (int trial = 0; trial < 12; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const ComplexMatrix a0 = random_matrix(eng, n, n);
        const ComplexMatrix a = a0 * (0.95 / spectral_norm(a0));
        const ChebyshevPoly p = random_poly(eng, 3 + trial % 6);
        const SolveReport rep = solve_phases_report(p);
        const QsvtProgram prog = make_program(embed_general(a, 1.0), rep.phases);
        const ComplexMatrix blk = transformed_block(prog);
        const ComplexMatrix oracle = svd_oracle(a, p);
        CHECK(max_abs(blk - oracle) <= rep.residual + 1e-9);
    }
}

TEST_CASE("odd programs address the left singular space") {
    ComplexMatrix a(2, 2);
    a << 0.1, 0.6, 0.0, 0.2;  // not normal
    const ChebyshevPoly t3 = chebyshev_from_coeffs({0, 0, 0, 1}, Parity::odd);
    const QsvtProgram prog = make_program(embed_general(a, 1.0), PhaseSequence({0, 0, 0, 0}, kWxZero));
    const ComplexMatrix blk = transformed_block(prog);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ComplexVector pv(2);
    for (Eigen::Index k = 0; k < 2; ++k) pv(k) = t3(svd.singularValues()(k));
    const ComplexMatrix right_only = svd.matrixV() * pv.asDiagonal() * svd.matrixV().adjoint();
    CHECK(max_abs(blk - svd_oracle(a, t3)) < 1e-12);
    CHECK(max_abs(blk - right_only) > 1e-3);
}

TEST_CASE("SVD oracle") {
    const ChebyshevPoly t1 = chebyshev_from_coeffs({0, 1}, Parity::odd);
    const ChebyshevPoly t2 = chebyshev_from_coeffs({0, 0, 1}, Parity::even);
    const ChebyshevPoly t3 = chebyshev_from_coeffs({0, 0, 0, 1}, Parity::odd);
    std::mt19937_64 eng(1);
    const ComplexMatrix a = random_matrix(eng, 3, 3) * 0.2;
    CHECK(max_abs(svd_oracle(a, t1) - a) < 1e-12);
    CHECK(max_abs(svd_oracle(diag({1.0}), t2) - diag({1.0})) < 1e-14);
    ComplexMatrix r(2, 2);
    r << 0, 0.8, 0, 0;
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 1) = 4 * 0.512 - 3 * 0.8;
    CHECK(max_abs(svd_oracle(r, t3) - expected) < 1e-12);
    CHECK_THROWS_AS(svd_oracle(a, chebyshev_from_coeffs({1, 1}, Parity::none)), ParityError);
}

TEST_CASE("eigen oracle") {
    const ChebyshevPoly t1 = chebyshev_from_coeffs({0, 1}, Parity::odd);
    const ChebyshevPoly t2 = chebyshev_from_coeffs({0, 0, 1}, Parity::even);
    const ChebyshevPoly t3 = chebyshev_from_coeffs({0, 0, 0, 1}, Parity::odd);
    const ComplexMatrix h = diag({-0.5, 0.5});
    CHECK(max_abs(eigen_oracle(h, t1) - h) < 1e-14);
    const ComplexMatrix e = eigen_oracle(h, t2);
    CHECK(std::abs(e(0, 0) - e(1, 1)) < 1e-14);
    CHECK_THROWS_AS(eigen_oracle(ComplexMatrix{{0, 1}, {0, 0}}, t1), NotHermitian);

    // For Hermitian input the singular vectors absorb the eigenvalue signs, so both oracles
    // agree for either parity.
    std::mt19937_64 eng(6);
    const ComplexMatrix g = random_matrix(eng, 4, 4);
    ComplexMatrix herm = g + g.adjoint();
    herm *= 0.9 / spectral_norm(herm);
    CHECK(max_abs(eigen_oracle(herm, t3) - svd_oracle(herm, t3)) < 1e-12);
    CHECK(max_abs(eigen_oracle(herm, t2) - svd_oracle(herm, t2)) < 1e-12);

    // A polynomial without parity sees the sign of negative eigenvalues only through the shift.
    const ChebyshevPoly p = chebyshev_from_coeffs({0.1, 0.3, 0.2, 0.25}, Parity::none);
    const ChebyshevPoly odd_part = chebyshev_from_coeffs({0, 0.3, 0, 0.25}, Parity::odd);
    const QsvtProgram prog = make_program(shift_positive(qubitize_hermitian(herm, 1.0)), solve_phases(odd_part));
    const ComplexMatrix shifted = 0.5 * (herm + ComplexMatrix::Identity(4, 4));
    CHECK(max_abs(transformed_block(prog) - eigen_oracle(shifted, odd_part)) < 1e-8);
    CHECK(max_abs(eigen_oracle(herm, p) - eigen_oracle(herm, odd_part)) > 1e-3);
}

TEST_CASE("vector application matches the dense block") {
    std::mt19937_64 eng(12);
    const ComplexMatrix a0 = random_matrix(eng, 3, 3);
    const ComplexMatrix a = a0 * (0.9 / spectral_norm(a0));
    for (int d : {4, 5}) {
        const ChebyshevPoly p = random_poly(eng, d);
        const QsvtProgram prog = make_program(embed_general(a, 1.0), solve_phases(p));
        const ComplexMatrix blk = transformed_block(prog);
        const std::vector<double> psi = reflection_phases(prog.phases);
        for (Eigen::Index k = 0; k < 3; ++k) {
            const ComplexVector x = basis_vector(3, k);
            const ComplexVector y = apply_transformed(prog.encoding, psi, x);
            CHECK((y - blk.col(k)).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("program validation") {
    const BlockEncoding be = embed_general(diag({0.5}), 1.0);
    const Convention wz{SignalKind::wz, ProcessingKind::sx, Basis::zero_zero};
    CHECK_THROWS_AS(make_program(be, PhaseSequence({0.1, 0.2}, wz)), UnsupportedConversion);
    BlockEncoding broken = be;
    broken.unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(make_program(broken, PhaseSequence({0.1, 0.2})), NotUnitary);
}

TEST_CASE("amplitude amplification matrix element") {
    const int n = 16;
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    const BlockEncoding g = grover_signal(n);
    const ComplexVector e0 = basis_vector(2, 0);
    CHECK(std::abs(amplitude_amplification_matrix_element(g.unitary, e0, e0, {}) - a) < 1e-15);

    double last = a;
    const int steps = static_cast<int>(std::ceil(kPi / (2 * std::asin(a))));
    for (int k = 1; 2 * k + 1 <= steps; ++k) {
        const std::vector<double> phases(static_cast<std::size_t>(2 * k), kPi);
        const double v = std::abs(amplitude_amplification_matrix_element(g.unitary, e0, e0, phases));
        CHECK(v > last);
        last = v;
    }

    // Dense product with explicit reflections as an independent check.
    std::mt19937_64 eng(4);
    const ComplexMatrix m = random_matrix(eng, 4, 4);
    const Eigen::HouseholderQR<ComplexMatrix> qr(m);
    const ComplexMatrix u = qr.householderQ();
    ComplexVector a0 = random_matrix(eng, 4, 1).col(0);
    ComplexVector b0 = random_matrix(eng, 4, 1).col(0);
    a0.normalize();
    b0.normalize();
    const std::vector<double> phases = {0.3, -1.1, 0.7, 2.0};
    auto refl = [](const ComplexVector& x, double phi) {
        const ComplexMatrix id = ComplexMatrix::Identity(x.size(), x.size());
        return ComplexMatrix(id + (std::polar(1.0, phi) - 1.0) * x * x.adjoint());
    };
    ComplexMatrix prod = ComplexMatrix::Identity(4, 4);
    for (std::size_t k = 1; k <= phases.size() / 2; ++k) {
        prod = prod * u * refl(b0, phases[2 * k - 2]) * u.adjoint() * refl(a0, phases[2 * k - 1]);
    }
    const cplx dense = a0.dot(prod * u * b0);
    CHECK(std::abs(amplitude_amplification_matrix_element(u, a0, b0, phases) - dense) < 1e-12);

    CHECK_THROWS_AS(amplitude_amplification_matrix_element(u, 2.0 * a0, b0, phases), NotUnit);
    CHECK_THROWS_AS(amplitude_amplification_matrix_element(u, a0, b0, std::vector<double>{0.1}), DomainError);
}
