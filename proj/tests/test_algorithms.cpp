#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "qsvt/algorithms.hpp"
#include "qsvt/errors.hpp"
#include "qsvt/poly_approx.hpp"

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

ComplexMatrix phase_matrix(double phi) {
    ComplexMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, 2 * kPi * phi);
    return u;
}

}  // namespace

TEST_CASE("search") {
    SUBCASE("exact amplitude") {
        for (int n : {1, 2, 4}) {
            const long big_n = 1L << n;
            const SearchAnalysis an = analyze_search(n, big_n - 1, 0.1, 1.0 / std::sqrt(static_cast<double>(big_n)));
            CHECK(an.marked_amplitude >= 1 - 0.05);
            const RunRecord rec = qsvt_search(n, big_n - 1, 0.1, 1.0 / std::sqrt(static_cast<double>(big_n)), 0,
                                              Mode::exact);
            CHECK(rec.decision["found"].get<long>() == big_n - 1);
        }
    }
    SUBCASE("sampled") {
        int hits = 0;
        for (std::uint64_t s = 0; s < 200; ++s) {
            const RunRecord rec = qsvt_search(2, 2, 0.1, 0.5, s);
            if (rec.decision["found"].get<long>() == 2) ++hits;
        }
        CHECK(hits >= 180);
    }
    SUBCASE("replay") {
        const RunRecord a = qsvt_search(3, 5, 0.1, 0.35, 77);
        const RunRecord b = qsvt_search(3, 5, 0.1, 0.35, 77);
        CHECK(a.to_json() == b.to_json());
    }
    SUBCASE("domains") {
        CHECK_THROWS_AS(analyze_search(2, 4, 0.1, 0.5), DomainError);
        CHECK_THROWS_AS(analyze_search(2, 1, 0.1, 1.5), DomainError);
    }
}

TEST_CASE("eigenvalue threshold") {
    const double zeta = 1 / std::sqrt(2.0);
    const double eps = zeta / 4;
    ComplexVector uniform = ComplexVector::Constant(2, 1 / std::sqrt(2.0));

    const ThresholdAnalysis low = analyze_threshold(diag({0.2, 0.8}), 1.0, 0.5, 0.1, zeta, uniform);
    CHECK(std::abs(low.epsilon - eps) < 1e-15);
    CHECK(low.p0 >= zeta * zeta * (1 - eps));

    const ThresholdAnalysis high = analyze_threshold(diag({0.8, 0.9}), 1.0, 0.5, 0.1, zeta, uniform);
    CHECK(high.p0 <= 0.5 * eps * eps);

    const ThresholdAnalysis shifted = analyze_threshold(diag({-0.6, 0.7}), 1.0, 0.0, 0.2, zeta, uniform);
    CHECK(shifted.shifted);
    CHECK(shifted.p0 >= zeta * zeta * (1 - eps));

    const long shots = threshold_shot_count(zeta, 0.1);
    CHECK(shots == static_cast<long>(std::ceil(9.0 / (2 * std::pow(zeta, 4)) * std::log(10.0))));

    int right = 0;
    for (std::uint64_t s = 0; s < 40; ++s) {
        const RunRecord rec = eigenvalue_threshold(diag({0.2, 0.8}), 1.0, 0.5, 0.1, zeta, 0.1, uniform, s);
        if (rec.decision["low_eigenvalue"].get<bool>()) ++right;
    }
    CHECK(right >= 36);
}

TEST_CASE("Bernoulli helper") {
    CHECK(bernoulli_sample_count(0.0, 1.0, std::exp(-1.0)) == 2);
    CHECK(bernoulli_sample_count(0.0, 0.5, 0.05) == 24);
    CHECK_THROWS_AS(bernoulli_sample_count(0.5, 0.5, 0.1), DomainError);
    CHECK_THROWS_AS(bernoulli_sample_count(0.0, 0.5, 1.5), DomainError);
    Rng rng(3);
    int wrong = 0;
    for (int i = 0; i < 500; ++i) {
        if (bernoulli_decide_b(0.1, 0.6, 0.05, 0.1, rng)) ++wrong;
        if (!bernoulli_decide_b(0.1, 0.6, 0.05, 0.6, rng)) ++wrong;
    }
    CHECK(wrong <= 50);
}

TEST_CASE("phase estimation") {
    const PhaseEstimator est(0.05, 0.2);
    const ComplexVector one = ComplexVector::Ones(1);
    SUBCASE("exact bits") {
        const PhaseRun run = est.run(phase_matrix(0.625), one, 3, Mode::exact, nullptr);
        CHECK(run.estimate.value == 0.625);
        CHECK(run.queries > 0);
    }
    SUBCASE("rounding up past one") {
        const double phi = 0.5 + 0.25 + 0.125 + 1.0 / 32 + 1.0 / 128;
        const PhaseRun run = est.run(phase_matrix(phi), one, 2, Mode::exact, nullptr);
        CHECK(run.estimate.value == 1.0);
    }
    SUBCASE("singular values of the oracle") {
        // phi_m = 0 gives sigma = 1, phi_m = 1 gives sigma = 0 at the last iteration.
        const PhaseRun zero = est.run(phase_matrix(0.25), one, 2, Mode::exact, nullptr);
        CHECK(std::abs(zero.trace.front().sigma) < 1e-12);
        const PhaseRun half = est.run(phase_matrix(0.5), one, 2, Mode::exact, nullptr);
        CHECK(std::abs(half.trace.front().sigma - 1.0) < 1e-12);
    }
    SUBCASE("failure probability per iteration") {
        Rng rng(9);
        const PhaseRun run = est.run(phase_matrix(0.40625), one, 5, Mode::sampled, &rng);
        for (const PhaseIteration& it : run.trace) {
            if (!std::isnan(it.p_fail)) CHECK(it.p_fail <= 0.5 * 0.05 * 0.05 + 1e-15);
        }
    }
    SUBCASE("record") {
        const RunRecord rec = phase_estimation_record(0.625, 3, 0.05, 0.2, 0, Mode::exact);
        CHECK(rec.decision["theta"].get<double>() == 0.625);
        CHECK(rec.algorithm == "qpe");
    }
    CHECK(max_phase_window() > 0.2);
    CHECK(max_phase_window() < 0.25);
}

TEST_CASE("order finding") {
    CHECK(multiplicative_order(7, 15) == 4);
    CHECK(multiplicative_order(4, 15) == 2);
    const ComplexMatrix u = modular_multiplication(7, 15);
    CHECK(is_unitary(u));
    CHECK(std::abs(u(7, 1) - 1.0) < 1e-15);
    CHECK(best_fraction(0.75, 15) == std::make_pair(3L, 4L));
    CHECK(best_fraction(0.3330, 15) == std::make_pair(1L, 3L));
    CHECK_THROWS_AS(modular_multiplication(5, 15), DomainError);

    int ok = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        try {
            if (order_finding_demo(7, 15, 0.25, s).decision["order"].get<long>() == 4) ++ok;
        } catch (const OrderNotFound&) {
        }
    }
    CHECK(ok >= 15);
}

TEST_CASE("Hamiltonian simulation") {
    const ComplexMatrix h = diag({0.3, 0.7});
    const HamsimResult res = hamiltonian_simulation(h, 1.0, 1.0, 1e-3);
    const ComplexMatrix blk = 2.0 * extract_block(res.encoding);
    CHECK(phase_aligned_distance(blk, hermitian_expm(h, 1.0)) <= 1e-3);

    const TruncationSpec ts = solve_truncation(1.0, 1e-3 / 4);
    CHECK(res.queries == 4 * ts.k_prime + 1);

    const HamsimResult zero = hamiltonian_simulation(h, 1.0, 1e-9, 1e-2);
    const ComplexMatrix zblk = 2.0 * extract_block(zero.encoding);
    CHECK(phase_aligned_distance(zblk, ComplexMatrix::Identity(2, 2)) <= 1e-2);

    CHECK_THROWS_AS(hamiltonian_simulation(diag({2.0}), 1.0, 1.0, 1e-2), ScaleTooSmall);
}

TEST_CASE("matrix inversion") {
    const ComplexMatrix a = diag({0.5, 1.0});
    const InversionResult inv = matrix_inversion(a, 2.0, 0.02);
    const ComplexMatrix approx = 4.0 * extract_block(inv.encoding);
    CHECK(max_abs(approx - diag({2.0, 1.0})) <= 0.02);

    const InversionResult id = matrix_inversion(ComplexMatrix::Identity(2, 2), 2.0, 0.02);
    const ComplexMatrix id_approx = 4.0 * extract_block(id.encoding);
    CHECK(max_abs(id_approx - ComplexMatrix::Identity(2, 2)) <= 0.02);

    ComplexVector b(2);
    b << 1.0, 0.0;
    const ComplexVector x = solve_linear_system(inv, b);
    ComplexVector expected = a.inverse() * b;
    expected.normalize();
    CHECK((x - expected).cwiseAbs().maxCoeff() <= 0.02);

    CHECK_THROWS_AS(matrix_inversion(diag({0.1, 1.0}), 2.0, 0.02), ConditionViolated);
}
