#pragma once

#include "qsvt/chebyshev.hpp"

namespace qsvt {

struct ApproxSpec {
    double epsilon = 0.1;
    double delta_gap = 0.2;  // width of the excluded transition window
    double shift_c = 0.0;    // step location
};

inline constexpr int kDefaultDegreeCap = 512;

// Odd (c = 0) or unstructured (c != 0) polynomial approximating sign(x - c) via erf(k (x - c)).
ChebyshevPoly sign_poly(const ApproxSpec& spec, int degree_cap = kDefaultDegreeCap);
double erf_steepness(double epsilon, double delta_gap);

// Even polynomial close to Theta(lambda - |x|) outside the window around lambda.
ChebyshevPoly eigenvalue_threshold_poly(const ApproxSpec& spec, double lambda,
                                        int degree_cap = kDefaultDegreeCap);
// Same construction with the step at 1/sqrt(2).
ChebyshevPoly phase_estimation_poly(const ApproxSpec& spec, int degree_cap = kDefaultDegreeCap);

struct TruncationSpec {
    double t_arg = 0.0;
    double eps_arg = 0.0;
    double r_value = 0.0;
    int k_prime = 0;
};

// Root of (t / r)^r = eps on (t, inf).
double solve_r(double t, double eps);
// r evaluated at (e/2 |t|, 5/4 eps) and the floored half used as truncation index.
TruncationSpec solve_truncation(double t, double epsilon);

ChebyshevPoly jacobi_anger_cos(double t, double epsilon);
ChebyshevPoly jacobi_anger_sin(double t, double epsilon);

struct InverseParams {
    int b = 0;
    int D = 0;
};
InverseParams inverse_params(double epsilon, double kappa);
// The odd series 4 sum_{j<=D} (-1)^j [2^{-2b} sum_{i>j} C(2b, b+i)] T_{2j+1}.
ChebyshevPoly inverse_series(int b, int D);
ChebyshevPoly inverse_poly(double epsilon, double kappa);
ChebyshevPoly rect_poly(double epsilon, double kappa, int degree_cap = kDefaultDegreeCap);
ChebyshevPoly matrix_inversion_poly(double epsilon, double kappa);

ChebyshevPoly eigenstate_filter_poly(int k, double delta_lambda);

struct FittedPoly {
    ChebyshevPoly poly;
    double scale = 1.0;         // factor applied to the raw target
    double fit_residual = 0.0;  // max grid |poly - scale * target|
};

FittedPoly gibbs_poly(double beta, int degree);
FittedPoly relu_poly(double delta, double steepness, int degree);

// Fixed-degree fits used by the phase-list families.
FittedPoly erf_sign_fit(int degree, double k);
FittedPoly threshold_fit(int degree, double k);
FittedPoly phase_step_fit(int degree, double k);
FittedPoly inverse_fit(double epsilon, double kappa);

}  // namespace qsvt
