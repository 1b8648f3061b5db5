#include "qsvt/poly_approx.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "qsvt/errors.hpp"

namespace qsvt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr int kFitNodes = 4096;
constexpr int kFineGrid = 16385;
// Rounding slack on the hard edges of a certified range.
constexpr double kEdgeSlack = 1e-12;

const std::vector<double>& cert_grid() {
    static const std::vector<double> g = certification_grid();
    return g;
}

const std::vector<double>& fine_grid() {
    static const std::vector<double> g = uniform_grid(kFineGrid);
    return g;
}

std::vector<double> grid_with(std::initializer_list<double> extra) {
    std::vector<double> g = cert_grid();
    for (double x : extra) {
        if (x >= -1.0 && x <= 1.0) g.push_back(x);
    }
    return g;
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

// Divide by the sup over the fine grid when it exceeds one.
ChebyshevPoly clip_sup(const ChebyshevPoly& p, double* scale_out = nullptr) {
    const double m = std::max(max_abs_on(p, fine_grid()), max_abs_on(p, cert_grid()));
    const double s = m > 1.0 ? 1.0 / m : 1.0;
    if (scale_out) *scale_out = s;
    return s == 1.0 ? p : scaled(p, s);
}

void check_sign_epsilon(double eps) {
    const double bound = std::sqrt(2.0 / (kE * kPi));
    if (!(eps > 0.0) || eps > bound + 1e-15) {
        throw DomainError("epsilon must lie in (0, sqrt(2/(e pi))]");
    }
}

double bessel_j(int n, double x) {
    if (x >= 0) return std::cyl_bessel_j(static_cast<double>(n), x);
    const double v = std::cyl_bessel_j(static_cast<double>(n), -x);
    return (n % 2 == 0) ? v : -v;
}

FittedPoly fit_target(const std::function<double(double)>& f, int degree, Parity parity) {
    if (degree < 0) throw DomainError("degree must be non-negative");
    if (parity != Parity::none && parity_of_degree(degree) != parity) {
        throw ParityError("degree parity disagrees with the target symmetry");
    }
    const auto c = chebyshev_coefficients(f, std::max(kFitNodes, 4 * (degree + 1)));
    FittedPoly out;
    out.poly = clip_sup(truncate(c, degree, parity), &out.scale);
    double r = 0.0;
    for (double x : grid_with({-1.0, 0.0, 1.0})) r = std::max(r, std::abs(out.poly(x) - out.scale * f(x)));
    out.fit_residual = r;
    return out;
}

}  // namespace

double erf_steepness(double epsilon, double delta_gap) {
    return std::sqrt(2.0) / delta_gap * std::sqrt(std::log(2.0 / (kPi * epsilon * epsilon)));
}

ChebyshevPoly sign_poly(const ApproxSpec& spec, int degree_cap) {
    const double eps = spec.epsilon, gap = spec.delta_gap, c = spec.shift_c;
    check_sign_epsilon(eps);
    if (!(gap > 0.0)) throw DomainError("transition width must be positive");
    if (!(std::abs(c) < 1.0)) throw DomainError("step location must lie inside (-1, 1)");
    if (degree_cap < 1) throw DomainError("degree cap must be positive");

    const double k = erf_steepness(eps, gap);
    const Parity parity = (c == 0.0) ? Parity::odd : Parity::none;
    const auto full = chebyshev_coefficients([&](double x) { return std::erf(k * (x - c)); }, kFitNodes);
    const auto grid = grid_with({c - gap / 2, c + gap / 2, -1.0, 1.0});

    auto attempt = [&](int d) -> std::optional<ChebyshevPoly> {
        ChebyshevPoly p = clip_sup(truncate(full, d, parity));
        for (double x : grid) {
            const double v = p(x);
            if (std::abs(v) > 1.0 + kEdgeSlack) return std::nullopt;
            if (std::abs(x - c) >= gap / 2 && std::abs(v - sgn(x - c)) > eps) return std::nullopt;
        }
        return p;
    };

    const int cap = (degree_cap % 2 == 0) ? degree_cap - 1 : degree_cap;
    int failed = -1;
    std::optional<ChebyshevPoly> found;
    int found_degree = -1;
    for (int d = 1;; d = 2 * d + 1) {
        const int dd = std::min(d, cap);
        if (auto p = attempt(dd)) {
            found = std::move(p);
            found_degree = dd;
            break;
        }
        failed = dd;
        if (dd == cap) break;
    }
    if (!found) throw DegreeCapExceeded("sign polynomial not certified below the degree cap");

    // Shrink back towards the smallest certified odd degree.
    while (found_degree - failed > 2) {
        int mid = (found_degree + failed) / 2;
        if (mid % 2 == 0) ++mid;
        if (mid >= found_degree) break;
        if (auto p = attempt(mid)) {
            found = std::move(p);
            found_degree = mid;
        } else {
            failed = mid;
        }
    }
    return *found;
}

ChebyshevPoly eigenvalue_threshold_poly(const ApproxSpec& spec, double lambda, int degree_cap) {
    const double eps = spec.epsilon, gap = spec.delta_gap;
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("threshold must lie in (0, 1)");
    if (!(lambda - gap / 2 > 0.0 && lambda + gap / 2 < 1.0)) {
        throw DomainError("transition window leaves (0, 1)");
    }
    check_sign_epsilon(eps);

    // below ~ sign(x - lambda), above ~ sign(x + lambda)
    const ChebyshevPoly below = sign_poly({eps / 2, gap, lambda}, degree_cap);
    const ChebyshevPoly above = sign_poly({eps / 2, gap, -lambda}, degree_cap);
    const double norm = 1.0 / (1.0 + eps / 4);
    const std::array<ChebyshevPoly, 2> parts{below, above};
    const std::array<double, 2> weights{-norm, norm};
    ChebyshevPoly p = clip_sup(combine(parts, weights, (-1.0 + eps / 4) * norm, Parity::even));

    const double lo = lambda - gap / 2, hi = lambda + gap / 2;
    for (double x : grid_with({lo, hi, -lo, -hi})) {
        const double v = p(x);
        if (std::abs(v) > 1.0 + kEdgeSlack) throw CertificationFailed("threshold polynomial exceeds 1");
        const double ax = std::abs(x);
        if (ax <= lo || ax >= hi) {
            const double target = ax < lambda ? 1.0 : -1.0;
            if (std::abs(v - target) > eps) throw CertificationFailed("threshold polynomial misses its bound");
        }
    }
    return p;
}

ChebyshevPoly phase_estimation_poly(const ApproxSpec& spec, int degree_cap) {
    return eigenvalue_threshold_poly(spec, 1.0 / std::sqrt(2.0), degree_cap);
}

double solve_r(double t, double eps) {
    if (!(t > 0.0) || !(eps > 0.0 && eps < 1.0)) throw DomainError("solve_r needs t > 0 and eps in (0, 1)");
    const double log_eps = std::log(eps);
    auto f = [&](double r) { return r * std::log(t / r) - log_eps; };
    double lo = t, hi = 2.0 * t;
    int guard = 0;
    while (f(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw ConvergenceError("could not bracket r(t, eps)");
    }
    for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TruncationSpec solve_truncation(double t, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0 / kE)) throw DomainError("epsilon must lie in (0, 1/e)");
    if (!(t > 0.0)) throw DomainError("t must be positive");
    TruncationSpec s;
    s.t_arg = kE / 2.0 * t;
    s.eps_arg = 1.25 * epsilon;
    s.r_value = solve_r(s.t_arg, s.eps_arg);
    s.k_prime = static_cast<int>(std::floor(0.5 * s.r_value));
    return s;
}

namespace {

int truncation_index(double t, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0 / kE)) throw DomainError("epsilon must lie in (0, 1/e)");
    if (t == 0.0) return 0;
    return solve_truncation(std::abs(t), epsilon).k_prime;
}

void certify_trig(const ChebyshevPoly& p, double epsilon, const std::function<double(double)>& f) {
    for (double x : cert_grid()) {
        const double v = p(x);
        if (std::abs(v) > 1.0 + kEdgeSlack) throw CertificationFailed("trigonometric polynomial exceeds 1");
        if (std::abs(v - f(x)) > 2.0 * epsilon) throw CertificationFailed("trigonometric polynomial misses 2 eps");
    }
}

}  // namespace

ChebyshevPoly jacobi_anger_cos(double t, double epsilon) {
    const int kp = truncation_index(t, epsilon);
    std::vector<double> c(static_cast<std::size_t>(2 * kp + 1), 0.0);
    c[0] = bessel_j(0, t);
    for (int k = 1; k <= kp; ++k) {
        c[static_cast<std::size_t>(2 * k)] = 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * bessel_j(2 * k, t);
    }
    ChebyshevPoly p = scaled(truncate(c, 2 * kp, Parity::even), 1.0 / (1.0 + epsilon));
    certify_trig(p, epsilon, [t](double x) { return std::cos(t * x); });
    return p;
}

ChebyshevPoly jacobi_anger_sin(double t, double epsilon) {
    const int kp = truncation_index(t, epsilon);
    std::vector<double> c(static_cast<std::size_t>(2 * kp + 2), 0.0);
    for (int k = 0; k <= kp; ++k) {
        c[static_cast<std::size_t>(2 * k + 1)] = 2.0 * (k % 2 == 0 ? 1.0 : -1.0) * bessel_j(2 * k + 1, t);
    }
    ChebyshevPoly p = scaled(truncate(c, 2 * kp + 1, Parity::odd), 1.0 / (1.0 + epsilon));
    certify_trig(p, epsilon, [t](double x) { return std::sin(t * x); });
    return p;
}

InverseParams inverse_params(double epsilon, double kappa) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
    if (!(kappa >= 1.0)) throw DomainError("kappa must be at least 1");
    InverseParams ip;
    ip.b = static_cast<int>(std::ceil(kappa * kappa * std::log(kappa / epsilon)));
    ip.b = std::max(ip.b, 1);
    ip.D = static_cast<int>(std::ceil(std::sqrt(ip.b * std::log(4.0 * ip.b / epsilon))));
    return ip;
}

ChebyshevPoly inverse_series(int b, int D) {
    if (b < 1 || D < 0) throw DomainError("inverse series needs b >= 1 and D >= 0");
    // log of 2^{-2b} C(2b, b+i) for i = 1..b
    std::vector<double> logt(static_cast<std::size_t>(b) + 1, -INFINITY);
    const double head = std::lgamma(2.0 * b + 1.0) - 2.0 * b * std::log(2.0);
    for (int i = 1; i <= b; ++i) {
        logt[static_cast<std::size_t>(i)] = head - std::lgamma(b + i + 1.0) - std::lgamma(b - i + 1.0);
    }
    // suffix[j] = log sum_{i=j+1..b} exp(logt[i])
    std::vector<double> suffix(static_cast<std::size_t>(b) + 1, -INFINITY);
    for (int j = b - 1; j >= 0; --j) {
        const double a = suffix[static_cast<std::size_t>(j) + 1];
        const double t = logt[static_cast<std::size_t>(j) + 1];
        const double m = std::max(a, t);
        suffix[static_cast<std::size_t>(j)] = m + std::log(std::exp(a - m) + std::exp(t - m));
    }
    std::vector<double> c(static_cast<std::size_t>(2 * D + 2), 0.0);
    for (int j = 0; j <= D && j < b; ++j) {
        const double v = 4.0 * (j % 2 == 0 ? 1.0 : -1.0) * std::exp(suffix[static_cast<std::size_t>(j)]);
        if (!std::isfinite(v)) throw OverflowGuard("binomial tail overflowed");
        c[static_cast<std::size_t>(2 * j + 1)] = v;
    }
    return truncate(c, 2 * D + 1, Parity::odd);
}

ChebyshevPoly inverse_poly(double epsilon, double kappa) {
    const InverseParams ip = inverse_params(epsilon, kappa);
    ChebyshevPoly p = inverse_series(ip.b, ip.D);
    for (double x : grid_with({1.0 / kappa, -1.0 / kappa})) {
        const double v = p(x);
        if (std::abs(v) > 4.0 * ip.D) throw CertificationFailed("inverse polynomial exceeds 4D");
        if (std::abs(x) >= 1.0 / kappa && std::abs(v - 1.0 / x) > 2.0 * epsilon) {
            throw CertificationFailed("inverse polynomial misses 2 eps");
        }
    }
    return p;
}

ChebyshevPoly rect_poly(double epsilon, double kappa, int degree_cap) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("epsilon must lie in (0, 1/2)");
    if (!(kappa >= 1.0)) throw DomainError("kappa must be at least 1");
    const double gap = 1.0 / (4.0 * kappa), c = 3.0 / (4.0 * kappa);
    const ChebyshevPoly right = sign_poly({epsilon, gap, c}, degree_cap);
    const ChebyshevPoly left = sign_poly({epsilon, gap, -c}, degree_cap);
    const double norm = 1.0 / (1.0 + epsilon / 2);
    const std::array<ChebyshevPoly, 2> parts{right, left};
    const std::array<double, 2> weights{0.5 * norm, -0.5 * norm};
    ChebyshevPoly p = clip_sup(combine(parts, weights, norm, Parity::even));

    const double outer = 1.0 / kappa, inner = 1.0 / (2.0 * kappa);
    for (double x : grid_with({outer, -outer, inner, -inner})) {
        const double v = p(x), ax = std::abs(x);
        bool ok = std::abs(v) <= 1.0 + kEdgeSlack;
        if (ax >= outer) ok = ok && v >= 1.0 - epsilon && v <= 1.0 + kEdgeSlack;
        if (ax <= inner) ok = ok && v >= -kEdgeSlack && v <= epsilon;
        if (!ok) throw DegreeCapExceeded("rectangle polynomial not certified");
    }
    return p;
}

ChebyshevPoly matrix_inversion_poly(double epsilon, double kappa) {
    if (!(epsilon > 0.0) || !(kappa >= 1.0) || !(epsilon / kappa < 0.5)) {
        throw DomainError("matrix inversion needs eps > 0, kappa >= 1 and eps/kappa < 1/2");
    }
    const InverseParams ip = inverse_params(epsilon / 4, 2.0 * kappa);
    const ChebyshevPoly inv = inverse_poly(epsilon / 4, 2.0 * kappa);
    const double eps_rect = std::min(2.0 * epsilon / (5.0 * kappa), kappa / (2.0 * ip.D));
    const ChebyshevPoly rect = rect_poly(eps_rect, kappa);
    ChebyshevPoly prod = scaled(multiply(inv, rect), 1.0 / (2.0 * kappa));
    ChebyshevPoly p = truncate(prod.coeffs, static_cast<int>(prod.coeffs.size()) - 1, Parity::odd);

    for (double x : grid_with({1.0 / kappa, -1.0 / kappa})) {
        const double v = p(x);
        if (std::abs(v) > 1.0 + kEdgeSlack) throw DegreeCapExceeded("inversion polynomial exceeds 1");
        if (std::abs(x) >= 1.0 / kappa && std::abs(v - 1.0 / (2.0 * kappa * x)) > epsilon / (2.0 * kappa)) {
            throw DegreeCapExceeded("inversion polynomial misses eps / 2 kappa");
        }
    }
    return p;
}

ChebyshevPoly eigenstate_filter_poly(int k, double delta_lambda) {
    if (k < 1) throw DomainError("filter order must be positive");
    if (!(delta_lambda > 0.0 && delta_lambda < 1.0)) throw DomainError("gap must lie in (0, 1)");
    const double d2 = delta_lambda * delta_lambda;
    auto tk = [k](double y) {
        double t0 = 1.0, t1 = y;
        for (int n = 1; n < k; ++n) {
            const double t2 = 2.0 * y * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
        return t1;
    };
    const double denom = tk(-1.0 - 2.0 * d2 / (1.0 - d2));
    auto f = [&](double x) { return tk(-1.0 + 2.0 * (x * x - d2) / (1.0 - d2)) / denom; };
    const auto c = chebyshev_coefficients(f, 2 * k + 1);
    return truncate(c, 2 * k, Parity::even);
}

FittedPoly gibbs_poly(double beta, int degree) {
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    return fit_target([beta](double x) { return std::exp(-beta * std::abs(x)); }, degree, Parity::even);
}

FittedPoly relu_poly(double delta, double steepness, int degree) {
    if (!(steepness > 0.0)) throw DomainError("steepness must be positive");
    return fit_target(
        [=](double x) { return std::log1p(std::exp(steepness * (std::abs(x) - delta))) / steepness; },
        degree, Parity::even);
}

FittedPoly erf_sign_fit(int degree, double k) {
    return fit_target([k](double x) { return std::erf(k * x); }, degree, Parity::odd);
}

FittedPoly threshold_fit(int degree, double k) {
    return fit_target(
        [k](double x) { return 0.5 * (std::erf(k * (x + 0.5)) - std::erf(k * (x - 0.5))); }, degree,
        Parity::even);
}

FittedPoly phase_step_fit(int degree, double k) {
    const double h = 1.0 / std::sqrt(2.0);
    return fit_target(
        [k, h](double x) { return -1.0 + std::erf(k * (h - x)) + std::erf(k * (h + x)); }, degree,
        Parity::even);
}

FittedPoly inverse_fit(double epsilon, double kappa) {
    FittedPoly out;
    out.poly = inverse_poly(epsilon, kappa);
    const double m = std::max(max_abs_on(out.poly, fine_grid()), 1.0);
    out.scale = 1.0 / m;
    out.poly = scaled(out.poly, out.scale);
    double r = 0.0;
    for (double x : cert_grid()) {
        if (std::abs(x) >= 1.0 / kappa) r = std::max(r, std::abs(out.poly(x) - out.scale / x));
    }
    out.fit_residual = r;
    return out;
}

}  // namespace qsvt
