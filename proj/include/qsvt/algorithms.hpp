#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsvt/block_encoding.hpp"
#include "qsvt/chebyshev.hpp"
#include "qsvt/phase_solver.hpp"
#include "qsvt/rng.hpp"

namespace qsvt {

struct RunRecord {
    std::string algorithm;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<int> shots;
    nlohmann::json decision;
    long queries = 0;

    nlohmann::json to_json() const;
};

// Exact mode replaces every measurement by its most likely outcome.
enum class Mode { exact, sampled };

// ---- search ----------------------------------------------------------------

struct SearchAnalysis {
    ChebyshevPoly poly;
    PhaseSequence phases{{0.0}};
    double a = 0.0;                // <m|H^n|0>
    double marked_amplitude = 0.0;  // amplitude of |+>|m> after the transform
    double plus_probability = 0.0;  // probability the control reads +
};

SearchAnalysis analyze_search(int n_qubits, long marked, double delta, double gap);

// Repeats until the control reads +, then reports the measured index. GiveUp after max_rounds.
RunRecord qsvt_search(int n_qubits, long marked, double delta, double gap, std::uint64_t seed,
                      Mode mode = Mode::sampled, int max_rounds = 1000);

// ---- eigenvalue threshold ---------------------------------------------------

struct ThresholdAnalysis {
    ChebyshevPoly poly;
    bool shifted = false;
    double step = 0.0;       // location of the step in the encoded variable
    double width = 0.0;      // excluded window width in the encoded variable
    double epsilon = 0.0;
    double p0 = 0.0;         // exact probability of outcome 0
    double high_bound = 0.0;  // eps^2 / 2
    double low_bound = 0.0;   // zeta^2 (1 - eps)
    int degree = 0;
};

// epsilon <= 0 selects zeta / 4.
ThresholdAnalysis analyze_threshold(const ComplexMatrix& h, double alpha, double lambda_th, double gap,
                                    double zeta, const ComplexVector& psi, double epsilon = -1.0);

long threshold_shot_count(double zeta, double delta);

RunRecord eigenvalue_threshold(const ComplexMatrix& h, double alpha, double lambda_th, double gap, double zeta,
                               double delta, const ComplexVector& psi, std::uint64_t seed,
                               Mode mode = Mode::sampled, double epsilon = -1.0);

// ---- Bernoulli helper --------------------------------------------------------

long bernoulli_sample_count(double a_mean, double b_mean, double delta);
// Draws the sample count from Bernoulli(p) and answers whether the mean is nearer b than a.
bool bernoulli_decide_b(double a_mean, double b_mean, double delta, double p, Rng& rng);

// ---- phase estimation --------------------------------------------------------

struct PhaseEstimate {
    std::vector<int> theta_bits;  // ones place first
    int n = 0;
    double value = 0.0;
};

struct PhaseIteration {
    int j = 0;             // -1 for the ones-place step
    double theta = 0.0;    // argument passed to the oracle block
    double sigma = 0.0;    // |<psi|A_j|psi>|
    double p1 = 0.0;       // probability of outcome 1
    double p_fail = 0.0;   // NaN when sigma lies in the excluded window
    int bit = 0;
};

struct PhaseRun {
    PhaseEstimate estimate;
    std::vector<PhaseIteration> trace;
    long queries = 0;
    ComplexVector final_state;
};

double max_phase_window(); // 2 (cos(3 pi / 16) - 1/sqrt 2)

class PhaseEstimator {
public:
    PhaseEstimator(double epsilon, double gap, const SolverOptions& options = {});

    // phase_errors, when non-empty, holds n + 1 offsets added to the eigenphase seen by
    // iterations j = n-1, ..., 0 and the ones-place step.
    PhaseRun run(const ComplexMatrix& u, const ComplexVector& state, int n, Mode mode, Rng* rng,
                 const std::vector<double>& phase_errors = {}) const;

    int degree() const { return static_cast<int>(psi_.size()) - 1; }
    double epsilon() const { return epsilon_; }
    double gap() const { return gap_; }
    const ChebyshevPoly& poly() const { return poly_; }

private:
    double epsilon_;
    double gap_;
    ChebyshevPoly poly_;
    std::vector<double> psi_;
};

PhaseEstimate qsvt_phase_estimation(const ComplexMatrix& u, const ComplexVector& eigenvector, int n,
                                    double epsilon, double gap, std::uint64_t seed, Mode mode = Mode::sampled);

// Phase estimate of the diagonal 1x1 unitary e^{2 pi i phi}.
RunRecord phase_estimation_record(double phi, int n, double epsilon, double gap, std::uint64_t seed, Mode mode);

// ---- order finding -------------------------------------------------------------

ComplexMatrix modular_multiplication(long x, long n_mod);
// Last continued-fraction convergent of value with denominator <= max_den; returns {num, den}.
std::pair<long, long> best_fraction(double value, long max_den);
long multiplicative_order(long x, long n_mod);

RunRecord order_finding_demo(long x, long n_mod, double delta, std::uint64_t seed, int retry_budget = 5);

// ---- Hamiltonian simulation ------------------------------------------------------

struct HamsimResult {
    BlockEncoding encoding;  // alpha = 2: extract_block ~ e^{-iHt} / 2
    ChebyshevPoly cos_poly;
    ChebyshevPoly sin_poly;
    PhaseSequence cos_phases{{0.0}};
    PhaseSequence sin_phases{{0.0}};
    int k_prime = 0;
    long queries = 0;
};

HamsimResult hamiltonian_simulation(const ComplexMatrix& h, double alpha, double t, double epsilon,
                                    const SolverOptions& options = {});

// ---- matrix inversion ---------------------------------------------------------------

struct InversionResult {
    BlockEncoding encoding;  // alpha = 2 kappa: extract_block ~ A^{-1} / (2 kappa)
    ChebyshevPoly poly;
    PhaseSequence phases{{0.0}};
    long queries = 0;
};

InversionResult matrix_inversion(const ComplexMatrix& a, double kappa, double epsilon,
                                 const SolverOptions& options = {});

// Normalized A^{-1} b read from the inversion block.
ComplexVector solve_linear_system(const InversionResult& inv, const ComplexVector& b);

}  // namespace qsvt
