#include <doctest.h>

#include <cmath>

#include "qsvt/errors.hpp"
#include "qsvt/poly_approx.hpp"

using namespace qsvt;

namespace {

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

bool even_on_grid(const ChebyshevPoly& p) {
    for (double x : uniform_grid(201)) {
        if (std::abs(p(x) - p(-x)) > 1e-12) return false;
    }
    return true;
}

bool odd_on_grid(const ChebyshevPoly& p) {
    for (double x : uniform_grid(201)) {
        if (std::abs(p(x) + p(-x)) > 1e-12) return false;
    }
    return true;
}

double sup(const ChebyshevPoly& p) {
    const std::vector<double> g = certification_grid();
    return max_abs_on(p, g);
}

}  // namespace

TEST_CASE("Chebyshev helpers") {
    const ChebyshevPoly t3 = chebyshev_from_coeffs({0, 0, 0, 1}, Parity::odd);
    for (double x : {-1.0, -0.4, 0.0, 0.3, 1.0}) CHECK(std::abs(t3(x) - (4 * x * x * x - 3 * x)) < 1e-14);
    CHECK(t3.degree() == 3);
    CHECK(t3.parity_consistent());

    const ChebyshevPoly prod = multiply(t3, chebyshev_from_coeffs({0, 1}, Parity::odd));
    for (double x : {-0.7, 0.2, 0.9}) CHECK(std::abs(prod(x) - x * t3(x)) < 1e-14);
    CHECK(prod.parity == Parity::even);

    const auto coeffs = chebyshev_coefficients([](double x) { return std::exp(x); }, 24);
    const ChebyshevPoly e = chebyshev_from_coeffs(coeffs, Parity::none);
    for (double x : uniform_grid(11)) CHECK(std::abs(e(x) - std::exp(x)) < 1e-13);
}

TEST_CASE("sign polynomial") {
    const ChebyshevPoly p = sign_poly({0.1, 0.4, 0.0});
    CHECK(p.parity == Parity::odd);
    CHECK(std::abs(p(0.0)) < 1e-15);
    for (double x : {-0.9, -0.5, -0.3, 0.3, 0.5, 0.9}) CHECK(std::abs(p(x) - sgn(x)) <= 0.1);
    CHECK(sup(p) <= 1.0 + 1e-12);
    CHECK(odd_on_grid(p));

    const int d1 = sign_poly({0.1, 0.4, 0.0}).degree();
    const int d2 = sign_poly({0.1, 0.2, 0.0}).degree();
    const int d3 = sign_poly({0.1, 0.1, 0.0}).degree();
    CHECK(d1 <= d2);
    CHECK(d2 <= d3);
    CHECK(d2 <= 2 * d1 + 8);
    CHECK(d3 <= 2 * d2 + 8);

    CHECK_THROWS_AS(sign_poly({0.01, 0.01, 0.0}, 31), DegreeCapExceeded);
}

TEST_CASE("threshold polynomials") {
    const ChebyshevPoly p = eigenvalue_threshold_poly({0.2, 0.2, 0.0}, 0.5);
    CHECK(p.parity == Parity::even);
    CHECK(p(0.2) >= 0.8);
    CHECK(p(0.8) <= -0.8);
    CHECK(std::abs(p(0.5)) <= 1.0);
    CHECK(even_on_grid(p));
    CHECK(sup(p) <= 1.0 + 1e-12);
    CHECK_THROWS_AS(eigenvalue_threshold_poly({0.2, 0.5, 0.0}, 0.9), DomainError);

    const ChebyshevPoly pe = phase_estimation_poly({0.1, 0.2, 0.0});
    CHECK(pe(0.0) >= 0.9);
    CHECK(pe(1.0) <= -0.9);
    CHECK(even_on_grid(pe));
    CHECK(sup(pe) <= 1.0 + 1e-12);
}

TEST_CASE("Jacobi-Anger truncation") {
    const TruncationSpec ts = solve_truncation(5.0, 0.1);
    CHECK(std::abs(std::pow(ts.t_arg / ts.r_value, ts.r_value) - ts.eps_arg) < 1e-10);
    CHECK(std::abs(ts.t_arg - std::exp(1.0) / 2 * 5.0) < 1e-15);
    CHECK(std::abs(ts.eps_arg - 0.125) < 1e-15);
    CHECK(ts.r_value >= ts.t_arg);
    CHECK(solve_r(2.0, 0.1) < solve_r(8.0, 0.1));

    const ChebyshevPoly c = jacobi_anger_cos(5.0, 0.1);
    const ChebyshevPoly s = jacobi_anger_sin(5.0, 0.1);
    CHECK(c.parity == Parity::even);
    CHECK(s.parity == Parity::odd);
    CHECK(c.degree() <= 2 * ts.k_prime);
    CHECK(s.degree() <= 2 * ts.k_prime + 1);
    CHECK(std::abs(c(0.0) * 1.1 - 1.0) <= 0.1);
    CHECK(std::abs(s(0.0)) < 1e-15);
    double worst = 0.0;
    for (double x : uniform_grid(1001)) {
        worst = std::max(worst, std::abs(c(x) - std::cos(5 * x) / 1.1));
        worst = std::max(worst, std::abs(s(x) - std::sin(5 * x) / 1.1));
    }
    CHECK(worst <= 0.2);
    CHECK_THROWS_AS(solve_truncation(5.0, 0.5), DomainError);
}

TEST_CASE("inverse polynomials") {
    CHECK(inverse_params(0.1, 2.0).b == 12);
    const ChebyshevPoly p = inverse_poly(0.1, 2.0);
    CHECK(p.parity == Parity::odd);
    CHECK(odd_on_grid(p));
    CHECK(std::abs(p(0.75) - 4.0 / 3.0) <= 0.2);

    // The series equals (1 - (1 - x^2)^b) / x before truncation.
    for (int b : {3, 10, 30}) {
        const ChebyshevPoly full = inverse_series(b, b);
        for (int i = 0; i <= 90; ++i) {
            const double x = 0.1 + 0.01 * i;
            const double direct = (1.0 - std::pow(1.0 - x * x, b)) / x;
            CHECK(std::abs(full(x) - direct) < 1e-8);
            CHECK(std::abs(full(-x) + direct) < 1e-8);
        }
    }

    const ChebyshevPoly r = rect_poly(0.1, 2.0);
    CHECK(r.parity == Parity::even);
    CHECK(r(0.0) <= 0.1);
    CHECK(r(0.0) >= -1e-12);
    CHECK(r(1.0) >= 0.9);
    CHECK(even_on_grid(r));

    const double eps = 0.1;
    const double kappa = 2.0;
    const ChebyshevPoly mi = matrix_inversion_poly(eps, kappa);
    CHECK(mi.parity == Parity::odd);
    CHECK(sup(mi) <= 1.0 + 1e-12);
    CHECK(2 * kappa * mi(1.0) >= 1 - eps);
    CHECK(2 * kappa * mi(1.0) <= 1 + eps);
    for (double x : uniform_grid(101, 1 / kappa, 1.0)) CHECK(std::abs(mi(x) - 1 / (2 * kappa * x)) <= eps / (2 * kappa));
    for (double x : uniform_grid(51, -1 / (2 * kappa), 1 / (2 * kappa))) CHECK(std::abs(mi(x)) <= 1.0);
    const double d_inv = inverse_params(eps / 4, 2 * kappa).D;
    const double eps_rect = std::min(2 * eps / (5 * kappa), kappa / (2 * d_inv));
    CHECK(mi.degree() <= inverse_poly(eps / 4, 2 * kappa).degree() + rect_poly(eps_rect, kappa).degree());
}

TEST_CASE("eigenstate filter") {
    const ChebyshevPoly f15 = eigenstate_filter_poly(15, 0.3);
    CHECK(f15.parity == Parity::even);
    CHECK(f15.degree() == 30);
    CHECK(std::abs(f15(0.0) - 1.0) < 1e-12);
    CHECK(sup(f15) <= 1.0 + 1e-12);
    const ChebyshevPoly f5 = eigenstate_filter_poly(5, 0.3);
    CHECK(std::abs(f15(0.3)) < 1.0);
    CHECK(std::abs(f15(0.3)) < std::abs(f5(0.3)));
    CHECK_THROWS_AS(eigenstate_filter_poly(0, 0.3), DomainError);
    CHECK_THROWS_AS(eigenstate_filter_poly(3, 1.2), DomainError);
}

TEST_CASE("fitted families") {
    const FittedPoly g = gibbs_poly(3.5, 20);
    CHECK(g.poly.parity == Parity::even);
    CHECK(std::abs(g.poly(0.0) - 1.0 * g.scale) <= g.fit_residual + 1e-12);
    CHECK(sup(g.poly) <= 1.0 + 1e-12);
    CHECK(even_on_grid(g.poly));

    const FittedPoly r = relu_poly(0.6, 15.0, 20);
    CHECK(r.poly.parity == Parity::even);
    const double softplus = std::log1p(std::exp(-9.0)) / 15.0;
    CHECK(std::abs(r.poly(0.0) - softplus * r.scale) <= r.fit_residual + 1e-4);
    CHECK(even_on_grid(r.poly));

    CHECK_THROWS_AS(gibbs_poly(3.5, 21), ParityError);
}
