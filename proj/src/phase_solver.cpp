#include "qsvt/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <numbers>
#include <optional>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "qsvt/errors.hpp"
#include "qsvt/rng.hpp"

namespace qsvt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr int kResidualGrid = 1001;
// Shrink factors tried in order when the target touches 1.
constexpr double kNudges[] = {1e-8, 1e-7, 1e-6};

using Row = Eigen::RowVector2cd;
using Col = Eigen::Vector2cd;

// Evaluation points: d+1 Chebyshev nodes and both endpoints.
std::vector<double> sample_points(int d) {
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(d) + 3);
    for (int j = 0; j <= d; ++j) x.push_back(std::cos(kPi * (2.0 * j + 1.0) / (2.0 * (d + 1))));
    x.push_back(1.0);
    x.push_back(-1.0);
    return x;
}

// Re <+|U|+> and d/dphi_k of it at one point.
double response_and_partials(std::span<const double> phi, double a, double* partials) {
    const int d = static_cast<int>(phi.size()) - 1;
    const double s = std::sqrt(std::max(0.0, 1.0 - a * a));
    Su2 w;
    w << a, kI * s, kI * s, a;
    const double h = 1.0 / std::sqrt(2.0);

    auto apply_s_row = [](Row v, double p) {
        v(0) *= std::polar(1.0, p);
        v(1) *= std::polar(1.0, -p);
        return v;
    };
    auto apply_s_col = [](Col v, double p) {
        v(0) *= std::polar(1.0, p);
        v(1) *= std::polar(1.0, -p);
        return v;
    };

    // suffix[k] = W S_{k+1} ... W S_d |+>, with suffix[d] = |+>
    std::vector<Col> suffix(static_cast<std::size_t>(d) + 1);
    suffix[static_cast<std::size_t>(d)] = Col(h, h);
    for (int k = d - 1; k >= 0; --k) {
        suffix[static_cast<std::size_t>(k)] = w * apply_s_col(suffix[static_cast<std::size_t>(k) + 1], phi[static_cast<std::size_t>(k) + 1]);
    }
    Row left(h, h);
    double value = 0.0;
    for (int k = 0; k <= d; ++k) {
        const Col& right = suffix[static_cast<std::size_t>(k)];
        const cplx e = std::polar(1.0, phi[static_cast<std::size_t>(k)]);
        if (partials) {
            const cplx dv = left(0) * kI * e * right(0) - left(1) * kI * std::conj(e) * right(1);
            partials[k] = dv.real();
        }
        if (k == d) value = (left(0) * e * right(0) + left(1) * std::conj(e) * right(1)).real();
        if (k < d) left = apply_s_row(left, phi[static_cast<std::size_t>(k)]) * w;
    }
    return value;
}

std::vector<double> expand(const Eigen::VectorXd& theta, int d) {
    std::vector<double> phi(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) phi[static_cast<std::size_t>(k)] = theta(std::min(k, d - k));
    return phi;
}

struct LmResult {
    Eigen::VectorXd theta;
    double cost = 0.0;
};

// Levenberg-Marquardt over the symmetric half of the phases.
LmResult levenberg_marquardt(Eigen::VectorXd theta, int d, std::span<const double> xs,
                             std::span<const double> fx, int max_iterations) {
    const Eigen::Index m = theta.size();
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
    std::vector<double> partials(static_cast<std::size_t>(d) + 1);

    auto evaluate = [&](const Eigen::VectorXd& t, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        const std::vector<double> phi = expand(t, d);
        r.resize(n);
        if (jac) jac->setZero(n, m);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = response_and_partials(phi, xs[static_cast<std::size_t>(i)], jac ? partials.data() : nullptr);
            r(i) = v - fx[static_cast<std::size_t>(i)];
            if (jac) {
                for (int k = 0; k <= d; ++k) (*jac)(i, std::min(k, d - k)) += partials[static_cast<std::size_t>(k)];
            }
        }
        return r.squaredNorm();
    };

    Eigen::VectorXd r, r_trial;
    Eigen::MatrixXd jac;
    double cost = evaluate(theta, r, &jac);
    double mu = 1e-3;
    for (int it = 0; it < max_iterations; ++it) {
        if (r.cwiseAbs().maxCoeff() < 1e-15) break;
        const Eigen::MatrixXd a = jac.transpose() * jac;
        const Eigen::VectorXd g = jac.transpose() * r;
        bool accepted = false;
        while (mu < 1e12) {
            Eigen::MatrixXd damped = a;
            for (Eigen::Index k = 0; k < m; ++k) damped(k, k) += mu * std::max(a(k, k), 1e-12);
            const Eigen::VectorXd step = damped.ldlt().solve(-g);
            const Eigen::VectorXd trial = theta + step;
            const double c = evaluate(trial, r_trial, nullptr);
            if (std::isfinite(c) && c < cost) {
                const double gain = cost - c;
                theta = trial;
                cost = evaluate(theta, r, &jac);
                mu = std::max(mu / 3.0, 1e-12);
                accepted = true;
                if (step.cwiseAbs().maxCoeff() < 1e-15 || gain < 1e-32) it = max_iterations;
                break;
            }
            mu *= 4.0;
        }
        if (!accepted) break;
    }
    return {theta, cost};
}

double sup_on_grid(const ChebyshevPoly& p) {
    static const std::vector<double> grid = uniform_grid(8193);
    return max_abs_on(p, grid);
}

}  // namespace

FixedPointParams FixedPointParams::make(int d, double delta) {
    if (d < 1) throw DomainError("fixed-point degree must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    FixedPointParams p;
    p.d = d;
    p.delta = delta;
    p.L = 2 * d + 1;
    p.gamma = 1.0 / std::cosh(std::acosh(1.0 / delta) / p.L);
    return p;
}

int solver_degree(const ChebyshevPoly& target) {
    int d = target.degree();
    if (d < 0) return target.parity == Parity::odd ? 1 : 0;
    if (target.parity != Parity::none && parity_of_degree(d) != target.parity) ++d;
    return d;
}

double residual(const PhaseSequence& seq, const ChebyshevPoly& target) {
    double worst = 0.0;
    for (int i = 0; i < kResidualGrid; ++i) {
        const double a = -1.0 + 2.0 * i / (kResidualGrid - 1);
        worst = std::max(worst, std::abs(response(seq, a).real() - target(a)));
    }
    return worst;
}

Objective objective_and_gradient(std::span<const double> phases, const ChebyshevPoly& target) {
    if (phases.empty()) throw DomainError("phase list is empty");
    const int d = static_cast<int>(phases.size()) - 1;
    Objective out;
    out.gradient.assign(phases.size(), 0.0);
    std::vector<double> partials(phases.size());
    for (double a : sample_points(d)) {
        const double r = response_and_partials(phases, a, partials.data()) - target(a);
        out.value += r * r;
        for (std::size_t k = 0; k < phases.size(); ++k) out.gradient[k] += 2.0 * r * partials[k];
    }
    return out;
}

SolveReport solve_phases_report(const ChebyshevPoly& target, const SolverOptions& options) {
    if (!(options.residual_tol > 0.0)) throw DomainError("residual_tol must be positive");
    if (options.restarts < 1) throw DomainError("restarts must be at least 1");
    if (target.parity == Parity::none) throw ParityError("target needs a definite parity");
    if (!target.parity_consistent(1e-12)) throw ParityError("target coefficients disagree with the parity tag");
    const double sup = sup_on_grid(target);
    if (sup > 1.0 + 1e-12) throw DomainError("target exceeds 1 in absolute value");

    const int d = solver_degree(target);
    if (d == 0) {
        const double c = std::clamp(target.coeffs.empty() ? 0.0 : target.coeffs[0], -1.0, 1.0);
        PhaseSequence seq({std::acos(c)}, kCanonical);
        return {seq, 1.0, residual(seq, target)};
    }

    const std::vector<double> xs = sample_points(d);
    const int m = d / 2 + 1;

    auto attempt = [&](const ChebyshevPoly& goal, double* best_res) -> std::optional<PhaseSequence> {
        std::vector<double> fx;
        fx.reserve(xs.size());
        for (double x : xs) fx.push_back(goal(x));
        Rng rng(options.rng_seed);
        std::optional<PhaseSequence> best;
        for (int r = 0; r < options.restarts; ++r) {
            Eigen::VectorXd theta = Eigen::VectorXd::Zero(m);
            const double noise = r == 0 ? 1e-2 : 1e-2 * (1 + r);
            for (int k = 0; k < m; ++k) theta(k) = noise * (2.0 * rng.uniform01() - 1.0);
            theta(0) += kPi / 4;
            if (r % 2 == 1) {
                for (int k = 1; k < m; ++k) theta(k) += (k % 2 == 0 ? 1.0 : -1.0) * kPi / 2;
            }
            const LmResult lm = levenberg_marquardt(theta, d, xs, fx, options.max_iterations);
            PhaseSequence seq(expand(lm.theta, d), kCanonical);
            const double res = residual(seq, goal);
            if (res < *best_res) {
                *best_res = res;
                best = seq;
            }
            if (res <= options.residual_tol) return seq;
        }
        return std::nullopt;
    };

    double best = INFINITY;
    if (auto seq = attempt(target, &best)) return {*seq, 1.0, best};
    if (sup >= 1.0 - 1e-6) {
        for (double eta : kNudges) {
            double best_nudged = INFINITY;
            if (auto seq = attempt(scaled(target, 1.0 - eta), &best_nudged)) {
                return {*seq, 1.0 - eta, best_nudged};
            }
            best = std::min(best, best_nudged);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", best);
    throw NoConvergence(std::string("phase solver stopped at residual ") + buf);
}

PhaseSequence solve_phases(const ChebyshevPoly& target, const SolverOptions& options) {
    return solve_phases_report(target, options).phases;
}

PhaseSequence fixed_point_phases(const FixedPointParams& params) {
    const FixedPointParams p = FixedPointParams::make(params.d, params.delta);
    const double s = std::sqrt(1.0 - p.gamma * p.gamma);
    std::vector<double> alpha(static_cast<std::size_t>(p.d));
    for (int k = 0; k < p.d; ++k) {
        // inverse cotangent on the branch (0, pi)
        alpha[static_cast<std::size_t>(k)] = -std::atan2(1.0, s * std::tan(2.0 * kPi * (k + 1) / p.L));
    }
    std::vector<double> phi(static_cast<std::size_t>(2 * p.d));
    for (int k = 0; k < p.d; ++k) {
        phi[static_cast<std::size_t>(2 * k)] = alpha[static_cast<std::size_t>(p.d - k - 1)];
        phi[static_cast<std::size_t>(2 * k + 1)] = alpha[static_cast<std::size_t>(k)];
    }
    return PhaseSequence(std::move(phi), kWxZero);
}

}  // namespace qsvt
