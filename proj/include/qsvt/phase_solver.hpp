#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsvt/chebyshev.hpp"
#include "qsvt/qsp.hpp"

namespace qsvt {

struct SolverOptions {
    int max_iterations = 500;
    double residual_tol = 1e-9;
    int restarts = 8;
    std::uint64_t rng_seed = 20240601;
};

struct FixedPointParams {
    int d = 1;
    double delta = 0.5;
    int L = 3;
    double gamma = 0.0;

    // Fills L = 2d + 1 and gamma = 1 / cosh(acosh(1/delta) / L).
    static FixedPointParams make(int d, double delta);
};

// Degree the solver uses for a target: highest non-negligible index, bumped to match parity.
int solver_degree(const ChebyshevPoly& target);

// Phases in the canonical (WX, SZ, ++) convention with Re <+|U|+> = target.
// Targets reaching |P| = 1 are retried at scale 1 - 1e-8, 1 - 1e-7, 1 - 1e-6.
PhaseSequence solve_phases(const ChebyshevPoly& target, const SolverOptions& options = {});

struct SolveReport {
    PhaseSequence phases;
    double scale = 1.0;     // factor applied to the target before solving
    double residual = 0.0;  // against the scaled target
};
SolveReport solve_phases_report(const ChebyshevPoly& target, const SolverOptions& options = {});

// 2d phases in (WX, SZ, 00); |<0|U|0>|^2 >= 1 - delta^2 above the threshold.
PhaseSequence fixed_point_phases(const FixedPointParams& params);

// Max over 1001 points of |Re response - target|.
double residual(const PhaseSequence& seq, const ChebyshevPoly& target);

// Sum of squared errors at the d+1 Chebyshev nodes and +-1, and its gradient in every phase.
struct Objective {
    double value = 0.0;
    std::vector<double> gradient;
};
Objective objective_and_gradient(std::span<const double> phases, const ChebyshevPoly& target);

}  // namespace qsvt
