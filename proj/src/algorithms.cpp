#include "qsvt/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <map>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qsvt/errors.hpp"
#include "qsvt/poly_approx.hpp"
#include "qsvt/qsvt_engine.hpp"

namespace qsvt {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "sampled"; }

void check_unit(const ComplexVector& v, const char* what) {
    if (v.size() == 0 || std::abs(v.norm() - 1.0) > 1e-10) throw NotUnit(std::string(what) + " must be a unit vector");
}

ComplexMatrix hadamard_power(int n_qubits) {
    const long n = 1L << n_qubits;
    check_dimension(n);
    ComplexMatrix h(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) h(i, j) = (std::popcount(static_cast<unsigned long>(i & j)) % 2 ? -s : s);
    }
    return h;
}

// Index drawn from |amp_i|^2 / total.
long sample_index(const ComplexVector& amp, double total, Rng& rng) {
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < amp.size(); ++i) {
        acc += std::norm(amp(i));
        if (u < acc) return static_cast<long>(i);
    }
    return static_cast<long>(amp.size()) - 1;
}

std::vector<double> negated(std::vector<double> v) {
    for (double& x : v) x = -x;
    return v;
}

struct SolvedPoly {
    ChebyshevPoly poly;
    PhaseSequence phases{{0.0}};
};

// Per-thread memo of solved targets; repeated trials reuse the same phases.
template <typename Build>
const SolvedPoly& cached_solution(const std::string& tag, std::initializer_list<double> key, Build build) {
    static thread_local std::map<std::string, SolvedPoly> memo;
    std::string k = tag;
    char buf[32];
    for (double v : key) {
        std::snprintf(buf, sizeof buf, "|%.17g", v);
        k += buf;
    }
    auto it = memo.find(k);
    if (it == memo.end()) {
        ChebyshevPoly p = build();
        PhaseSequence ph = solve_phases(p);
        it = memo.emplace(k, SolvedPoly{std::move(p), std::move(ph)}).first;
    }
    return it->second;
}

long pow_mod(long base, long exp, long mod) {
    long result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

}  // namespace

nlohmann::json RunRecord::to_json() const {
    return {{"algorithm", algorithm}, {"params", params}, {"seed", seed},
            {"shots", shots},         {"decision", decision}, {"queries", queries}};
}

// ---- search ----------------------------------------------------------------

SearchAnalysis analyze_search(int n_qubits, long marked, double delta, double gap) {
    if (n_qubits < 1 || n_qubits > 10) throw DomainError("n_qubits must lie in [1, 10]");
    const long n = 1L << n_qubits;
    if (marked < 0 || marked >= n) throw DomainError("marked index out of range");
    if (!(gap > 0.0) || gap > 2.0 / std::sqrt(static_cast<double>(n)) + 1e-12) {
        throw DomainError("window must satisfy 0 < Delta <= 2 / sqrt(N)");
    }
    SearchAnalysis out;
    const SolvedPoly& sp = cached_solution("sign", {delta / 2, gap}, [&] { return sign_poly({delta / 2, gap, 0.0}); });
    out.poly = sp.poly;
    out.phases = sp.phases;

    BlockEncoding enc;
    enc.unitary = hadamard_power(n_qubits);
    enc.proj_right = basis_projector(n, 0);
    enc.proj_left = basis_projector(n, marked);
    out.a = enc.unitary(marked, 0).real();

    const std::vector<double> psi = reflection_phases(out.phases);
    const ComplexVector start = basis_vector(n, 0);
    const ComplexVector plus = 0.5 * (apply_qsvt(enc, psi, start) + apply_qsvt(enc, negated(psi), start));
    out.marked_amplitude = std::abs(plus(marked));
    out.plus_probability = plus.squaredNorm();
    return out;
}

RunRecord qsvt_search(int n_qubits, long marked, double delta, double gap, std::uint64_t seed, Mode mode,
                      int max_rounds) {
    RunRecord rec;
    rec.algorithm = "search";
    rec.seed = seed;
    rec.params = {{"n_qubits", n_qubits}, {"marked", marked}, {"delta", delta}, {"Delta", gap},
                  {"mode", mode_name(mode)}};

    const SearchAnalysis an = analyze_search(n_qubits, marked, delta, gap);
    const long n = 1L << n_qubits;
    const int d = an.phases.degree();

    BlockEncoding enc;
    enc.unitary = hadamard_power(n_qubits);
    enc.proj_right = basis_projector(n, 0);
    enc.proj_left = basis_projector(n, marked);
    const std::vector<double> psi = reflection_phases(an.phases);
    const ComplexVector start = basis_vector(n, 0);
    const ComplexVector plus = 0.5 * (apply_qsvt(enc, psi, start) + apply_qsvt(enc, negated(psi), start));
    const double p_plus = plus.squaredNorm();

    if (mode == Mode::exact) {
        Eigen::Index best = 0;
        plus.cwiseAbs().maxCoeff(&best);
        rec.shots.push_back(static_cast<int>(best));
        rec.queries = d;
        rec.decision = {{"found", best}, {"rounds", 1}, {"marked_amplitude", an.marked_amplitude}};
        return rec;
    }

    Rng rng(seed);
    for (int round = 1; round <= max_rounds; ++round) {
        rec.queries += d;
        if (rng.uniform01() < p_plus) {
            const long found = sample_index(plus, p_plus, rng);
            rec.shots.push_back(static_cast<int>(found));
            rec.decision = {{"found", found}, {"rounds", round}, {"marked_amplitude", an.marked_amplitude}};
            return rec;
        }
        rec.shots.push_back(-1);
    }
    throw GiveUp("search control never read + within the round cap");
}

// ---- eigenvalue threshold ---------------------------------------------------

ThresholdAnalysis analyze_threshold(const ComplexMatrix& h, double alpha, double lambda_th, double gap,
                                    double zeta, const ComplexVector& psi, double epsilon) {
    if (!is_hermitian(h, 1e-10)) throw NotHermitian("H is not Hermitian");
    check_unit(psi, "psi");
    if (psi.size() != h.rows()) throw DomainError("psi dimension mismatch");
    if (!(zeta > 0.0 && zeta <= 1.0)) throw DomainError("zeta must lie in (0, 1]");
    if (!(gap > 0.0)) throw DomainError("Delta_lambda must be positive");

    ThresholdAnalysis out;
    out.epsilon = epsilon > 0.0 ? epsilon : zeta / 4.0;
    BlockEncoding enc = qubitize_hermitian(h, alpha);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    out.shifted = es.eigenvalues().minCoeff() < 0.0;
    if (out.shifted) {
        enc = shift_positive(enc);
        out.step = 0.5 * (lambda_th / alpha + 1.0);
        out.width = gap / alpha;
    } else {
        out.step = lambda_th / alpha;
        out.width = 2.0 * gap / alpha;
    }
    const SolvedPoly& sp = cached_solution("threshold", {out.epsilon, out.width, out.step}, [&] {
        return eigenvalue_threshold_poly({out.epsilon, out.width, 0.0}, out.step);
    });
    out.poly = sp.poly;
    const PhaseSequence& phases = sp.phases;
    out.degree = phases.degree();
    const ComplexVector o = apply_transformed(enc, reflection_phases(phases), psi);
    const double zero = (0.5 * (psi + o)).squaredNorm();
    const double one = (0.5 * (psi - o)).squaredNorm();
    out.p0 = zero / (zero + one);
    out.high_bound = 0.5 * out.epsilon * out.epsilon;
    out.low_bound = zeta * zeta * (1.0 - out.epsilon);
    return out;
}

long threshold_shot_count(double zeta, double delta) {
    if (!(zeta > 0.0) || !(delta > 0.0 && delta < 1.0)) throw DomainError("need zeta > 0 and delta in (0, 1)");
    return static_cast<long>(std::ceil(9.0 / (2.0 * std::pow(zeta, 4)) * std::log(1.0 / delta)));
}

RunRecord eigenvalue_threshold(const ComplexMatrix& h, double alpha, double lambda_th, double gap, double zeta,
                               double delta, const ComplexVector& psi, std::uint64_t seed, Mode mode,
                               double epsilon) {
    RunRecord rec;
    rec.algorithm = "threshold";
    rec.seed = seed;
    const ThresholdAnalysis an = analyze_threshold(h, alpha, lambda_th, gap, zeta, psi, epsilon);
    const long shots = threshold_shot_count(zeta, delta);
    rec.params = {{"alpha", alpha}, {"lambda_th", lambda_th}, {"Delta_lambda", gap}, {"zeta", zeta},
                  {"delta", delta}, {"epsilon", an.epsilon}, {"shifted", an.shifted},
                  {"mode", mode_name(mode)}, {"dim", h.rows()}};

    double fraction = an.p0;
    if (mode == Mode::sampled) {
        Rng rng(seed);
        long zeros = 0;
        for (long s = 0; s < shots; ++s) {
            const int outcome = rng.bernoulli(an.p0) ? 0 : 1;
            zeros += outcome == 0;
            rec.shots.push_back(outcome);
        }
        fraction = static_cast<double>(zeros) / static_cast<double>(shots);
    }
    const bool low = std::abs(fraction - an.low_bound) < std::abs(fraction - an.high_bound);
    rec.queries = static_cast<long>(an.degree) * (mode == Mode::sampled ? shots : 1);
    rec.decision = {{"low_eigenvalue", low}, {"fraction_zero", fraction}, {"p0", an.p0},
                    {"low_bound", an.low_bound}, {"high_bound", an.high_bound}};
    return rec;
}

// ---- Bernoulli helper --------------------------------------------------------

long bernoulli_sample_count(double a_mean, double b_mean, double delta) {
    if (!(a_mean >= 0.0 && a_mean < b_mean && b_mean <= 1.0)) throw DomainError("need 0 <= a < b <= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    const double x = 2.0 / ((b_mean - a_mean) * (b_mean - a_mean)) * std::log(1.0 / delta);
    // shave rounding noise so exact integers stay put
    return static_cast<long>(std::ceil(x * (1.0 - 1e-12)));
}

bool bernoulli_decide_b(double a_mean, double b_mean, double delta, double p, Rng& rng) {
    const long n = bernoulli_sample_count(a_mean, b_mean, delta);
    long ones = 0;
    for (long i = 0; i < n; ++i) ones += rng.bernoulli(p);
    return static_cast<double>(ones) / static_cast<double>(n) > 0.5 * (a_mean + b_mean);
}

// ---- phase estimation --------------------------------------------------------

double max_phase_window() { return 2.0 * (std::cos(3.0 * kPi / 16.0) - kInvSqrt2); }

PhaseEstimator::PhaseEstimator(double epsilon, double gap, const SolverOptions& options)
    : epsilon_(epsilon), gap_(gap) {
    if (!(gap > 0.0 && gap < max_phase_window())) throw DomainError("Delta must lie in (0, 2(cos(3pi/16) - 1/sqrt2))");
    poly_ = phase_estimation_poly({epsilon, gap, 0.0});
    psi_ = reflection_phases(solve_phases(poly_, options));
}

PhaseRun PhaseEstimator::run(const ComplexMatrix& u, const ComplexVector& state, int n, Mode mode, Rng* rng,
                             const std::vector<double>& phase_errors) const {
    if (n < 1 || n > 30) throw DomainError("bit count must lie in [1, 30]");
    if (u.rows() != u.cols() || u.rows() != state.size()) throw DomainError("dimension mismatch");
    if (!is_unitary(u, 1e-10)) throw NotUnitary("U is not unitary");
    check_unit(state, "state");
    if (!phase_errors.empty() && phase_errors.size() != static_cast<std::size_t>(n) + 1) {
        throw DomainError("phase_errors needs n + 1 entries");
    }
    if (mode == Mode::sampled && rng == nullptr) throw DomainError("sampled mode needs a generator");

    std::vector<ComplexMatrix> powers{u};
    for (int j = 1; j < n; ++j) powers.push_back(powers.back() * powers.back());
    const ComplexMatrix root = unitary_sqrt(u);
    const Eigen::Index dim = u.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    PhaseRun out;
    ComplexVector psi = state;
    double theta = 0.0;
    for (int idx = 0; idx <= n; ++idx) {
        PhaseIteration it;
        it.j = idx < n ? n - 1 - idx : -1;
        theta /= 2.0;
        const ComplexMatrix& upow = it.j >= 0 ? powers[static_cast<std::size_t>(it.j)] : root;
        const double err = phase_errors.empty() ? 0.0 : phase_errors[static_cast<std::size_t>(idx)];
        it.theta = theta - err;
        const BlockEncoding enc = phase_oracle_block_from_power(upow, it.theta);

        const ComplexMatrix a = 0.5 * (id + std::polar(1.0, -2.0 * kPi * it.theta) * upow);
        it.sigma = std::abs(psi.dot(a * psi));
        const ComplexVector o = apply_transformed(enc, psi_, psi);
        const ComplexVector one = 0.5 * (psi + o);
        const ComplexVector zero = 0.5 * (psi - o);
        const double w1 = one.squaredNorm(), w0 = zero.squaredNorm();
        it.p1 = w1 / (w1 + w0);
        if (it.sigma < kInvSqrt2 - gap_ / 2) {
            it.p_fail = 1.0 - it.p1;
        } else if (it.sigma > kInvSqrt2 + gap_ / 2) {
            it.p_fail = it.p1;
        } else {
            it.p_fail = std::numeric_limits<double>::quiet_NaN();
        }
        it.bit = mode == Mode::exact ? (it.p1 >= 0.5) : rng->bernoulli(it.p1);
        const ComplexVector& kept = it.bit ? one : zero;
        if (kept.norm() > 0.0) psi = kept / kept.norm();
        theta += 0.5 * it.bit;
        out.queries += degree();
        out.trace.push_back(it);
    }
    theta *= 2.0;

    out.estimate.n = n;
    out.estimate.value = theta;
    double rest = theta;
    for (int k = 0; k <= n; ++k) {
        const int bit = rest >= 1.0 ? 1 : 0;
        out.estimate.theta_bits.push_back(bit);
        rest = 2.0 * (rest - bit);
    }
    out.final_state = psi;
    return out;
}

PhaseEstimate qsvt_phase_estimation(const ComplexMatrix& u, const ComplexVector& eigenvector, int n,
                                    double epsilon, double gap, std::uint64_t seed, Mode mode) {
    const PhaseEstimator est(epsilon, gap);
    Rng rng(seed);
    return est.run(u, eigenvector, n, mode, &rng).estimate;
}

RunRecord phase_estimation_record(double phi, int n, double epsilon, double gap, std::uint64_t seed, Mode mode) {
    const PhaseEstimator est(epsilon, gap);
    ComplexMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, 2.0 * kPi * phi);
    ComplexVector v(1);
    v(0) = 1.0;
    Rng rng(seed);
    const PhaseRun run = est.run(u, v, n, mode, &rng);

    RunRecord rec;
    rec.algorithm = "qpe";
    rec.seed = seed;
    rec.params = {{"phi", phi}, {"n", n}, {"epsilon", epsilon}, {"Delta", gap}, {"mode", mode_name(mode)}};
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& it : run.trace) {
        rec.shots.push_back(it.bit);
        trace.push_back({{"j", it.j}, {"theta", it.theta}, {"sigma", it.sigma}, {"p1", it.p1},
                         {"p_fail", std::isnan(it.p_fail) ? nlohmann::json(nullptr) : nlohmann::json(it.p_fail)}});
    }
    rec.queries = run.queries;
    rec.decision = {{"theta", run.estimate.value}, {"bits", run.estimate.theta_bits}, {"trace", trace}};
    return rec;
}

// ---- order finding -------------------------------------------------------------

ComplexMatrix modular_multiplication(long x, long n_mod) {
    if (n_mod < 2 || n_mod > 64) throw DomainError("N must lie in [2, 64]");
    if (std::gcd(x, n_mod) != 1) throw DomainError("x and N must be coprime");
    ComplexMatrix u = ComplexMatrix::Zero(n_mod, n_mod);
    for (long v = 0; v < n_mod; ++v) u((x * v) % n_mod, v) = 1.0;
    return u;
}

std::pair<long, long> best_fraction(double value, long max_den) {
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
    double rest = value;
    std::pair<long, long> best{0, 1};
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(rest);
        const long h2 = static_cast<long>(a) * h1 + h0;
        const long k2 = static_cast<long>(a) * k1 + k0;
        if (k2 > max_den) break;
        best = {h2, k2};
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        const double frac = rest - a;
        if (frac < 1e-12) break;
        rest = 1.0 / frac;
    }
    return best;
}

long multiplicative_order(long x, long n_mod) {
    if (std::gcd(x, n_mod) != 1) throw DomainError("x and N must be coprime");
    long v = x % n_mod;
    for (long r = 1; r <= n_mod; ++r) {
        if (v == 1 % n_mod) return r;
        v = v * x % n_mod;
    }
    throw OrderNotFound("no order found");
}

RunRecord order_finding_demo(long x, long n_mod, double delta, std::uint64_t seed, int retry_budget) {
    const ComplexMatrix u = modular_multiplication(x, n_mod);
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    const int n = static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(n_mod)))) + 1;
    const double eps = std::min(std::sqrt(2.0 * delta / (n + 1)), std::sqrt(2.0 / (std::numbers::e * kPi)));
    const double gap = 0.2;
    static thread_local std::vector<std::pair<std::pair<double, double>, std::shared_ptr<PhaseEstimator>>> cache;
    std::shared_ptr<PhaseEstimator> est;
    for (const auto& [key, value] : cache) {
        if (key.first == eps && key.second == gap) est = value;
    }
    if (!est) {
        est = std::make_shared<PhaseEstimator>(eps, gap);
        cache.emplace_back(std::make_pair(eps, gap), est);
    }

    RunRecord rec;
    rec.algorithm = "factor";
    rec.seed = seed;
    rec.params = {{"x", x}, {"N", n_mod}, {"delta", delta}, {"n", n}, {"epsilon", eps}, {"Delta", gap}};

    Rng rng(seed);
    const ComplexVector start = basis_vector(n_mod, 1);
    long acc = 1;
    nlohmann::json estimates = nlohmann::json::array();
    for (int attempt = 1; attempt <= retry_budget; ++attempt) {
        const PhaseRun run = est->run(u, start, n, Mode::sampled, &rng);
        rec.queries += run.queries;
        for (int b : run.estimate.theta_bits) rec.shots.push_back(b);
        const double frac = run.estimate.value - std::floor(run.estimate.value);
        estimates.push_back(frac);
        const auto [s, r] = best_fraction(frac, n_mod);
        if (s == 0 || r < 1) continue;
        long cand = std::lcm(acc, r);
        if (cand > n_mod) cand = r;
        if (pow_mod(x, cand, n_mod) == 1 % n_mod) {
            for (long p = 2; p <= cand; ++p) {
                while (cand % p == 0 && pow_mod(x, cand / p, n_mod) == 1 % n_mod) cand /= p;
            }
            rec.decision = {{"order", cand}, {"attempts", attempt}, {"estimates", estimates}};
            return rec;
        }
        acc = cand;
    }
    throw OrderNotFound("order not recovered within the retry budget");
}

// ---- Hamiltonian simulation ------------------------------------------------------

HamsimResult hamiltonian_simulation(const ComplexMatrix& h, double alpha, double t, double epsilon,
                                    const SolverOptions& options) {
    if (!(epsilon > 0.0 && epsilon < 1.0 / std::numbers::e)) throw DomainError("epsilon must lie in (0, 1/e)");
    const BlockEncoding enc = qubitize_hermitian(h, alpha);
    const double tau = alpha * t;

    HamsimResult out;
    out.cos_poly = jacobi_anger_cos(tau, epsilon / 4);
    out.sin_poly = jacobi_anger_sin(tau, epsilon / 4);
    out.k_prime = tau == 0.0 ? 0 : solve_truncation(std::abs(tau), epsilon / 4).k_prime;
    out.cos_phases = solve_phases(out.cos_poly, options);
    out.sin_phases = solve_phases(out.sin_poly, options);
    out.queries = out.cos_phases.degree() + out.sin_phases.degree();

    const ComplexMatrix vc = real_part_unitary(make_program(enc, out.cos_phases));
    const ComplexMatrix vs = real_part_unitary(make_program(enc, out.sin_phases));
    const Eigen::Index m = vc.rows();
    check_dimension(2 * m);
    ComplexMatrix had(2, 2);
    had << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    const ComplexMatrix hm = kron(had, ComplexMatrix::Identity(m, m));
    ComplexMatrix mid = ComplexMatrix::Zero(2 * m, 2 * m);
    mid.topLeftCorner(m, m) = vc;
    mid.bottomRightCorner(m, m) = cplx(0.0, -1.0) * vs;

    ComplexMatrix plus(2, 2);
    plus.setConstant(0.5);
    out.encoding.unitary = hm * mid * hm;
    out.encoding.proj_right = kron(basis_projector(2, 0), kron(plus, enc.proj_right));
    out.encoding.proj_left = out.encoding.proj_right;
    out.encoding.alpha = 2.0;
    return out;
}

// ---- matrix inversion ---------------------------------------------------------------

InversionResult matrix_inversion(const ComplexMatrix& a, double kappa, double epsilon, const SolverOptions& options) {
    if (a.rows() != a.cols() || a.rows() == 0) throw DomainError("A must be square");
    if (!(kappa >= 1.0)) throw DomainError("kappa must be at least 1");
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const Eigen::VectorXd& sig = svd.singularValues();
    if (sig.maxCoeff() > 1.0 + 1e-9 || sig.minCoeff() < 1.0 / kappa - 1e-9) {
        throw ConditionViolated("singular values of A leave [1/kappa, 1]");
    }
    const BlockEncoding enc = embed_general(a.adjoint(), 1.0);

    InversionResult out;
    out.poly = matrix_inversion_poly(epsilon, kappa);
    out.phases = solve_phases(out.poly, options);
    out.queries = out.phases.degree();
    const QsvtProgram prog = make_program(enc, out.phases);

    ComplexMatrix plus(2, 2);
    plus.setConstant(0.5);
    out.encoding.unitary = real_part_unitary(prog);
    out.encoding.proj_right = kron(plus, enc.proj_right);
    out.encoding.proj_left = kron(plus, enc.proj_left);
    out.encoding.alpha = 2.0 * kappa;
    return out;
}

ComplexVector solve_linear_system(const InversionResult& inv, const ComplexVector& b) {
    const ComplexMatrix block = extract_block(inv.encoding);
    if (b.size() != block.cols()) throw DomainError("b dimension mismatch");
    ComplexVector x = block * b;
    const double nx = x.norm();
    if (nx == 0.0) throw DomainError("b maps to zero");
    return x / nx;
}

}  // namespace qsvt
