#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace qsvt {

enum class Parity { even, odd, none };

std::string_view to_string(Parity p);
Parity parity_of_degree(int d);

// Real polynomial sum_k coeffs[k] T_k(x).
struct ChebyshevPoly {
    std::vector<double> coeffs;
    Parity parity = Parity::none;

    double operator()(double x) const;
    // Highest index with |coeff| > 1e-14; -1 for the zero polynomial.
    int degree() const;
    // True when every coefficient of the wrong parity is below tol.
    bool parity_consistent(double tol = 1e-14) const;
};

ChebyshevPoly chebyshev_from_coeffs(std::vector<double> coeffs, Parity parity);

// Coefficients of the degree-(n-1) interpolant of f at n first-kind Chebyshev nodes.
std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f, int n);

// Truncate a coefficient list at `degree` and zero the entries of the wrong parity.
ChebyshevPoly truncate(std::span<const double> coeffs, int degree, Parity parity);

ChebyshevPoly multiply(const ChebyshevPoly& a, const ChebyshevPoly& b);
ChebyshevPoly scaled(const ChebyshevPoly& p, double s);
// sum_i w_i p_i + c
ChebyshevPoly combine(std::span<const ChebyshevPoly> polys, std::span<const double> weights,
                      double constant, Parity parity);

// 4096 equispaced points on [-1, 1].
std::vector<double> certification_grid(int n = 4096);
// Equispaced grid used by residual checks.
std::vector<double> uniform_grid(int n, double lo = -1.0, double hi = 1.0);

double max_abs_on(const ChebyshevPoly& p, std::span<const double> grid);

}  // namespace qsvt
