#include "qsvt/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsvt/errors.hpp"

namespace qsvt {

std::string_view to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        case Parity::none: return "none";
    }
    return "none";
}

Parity parity_of_degree(int d) { return d % 2 == 0 ? Parity::even : Parity::odd; }

double ChebyshevPoly::operator()(double x) const {
    // Clenshaw recurrence
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        const double b0 = coeffs[k] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    const double c0 = coeffs.empty() ? 0.0 : coeffs[0];
    return c0 + x * b1 - b2;
}

int ChebyshevPoly::degree() const {
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (std::abs(coeffs[k]) > 1e-14) return static_cast<int>(k);
    }
    return -1;
}

bool ChebyshevPoly::parity_consistent(double tol) const {
    if (parity == Parity::none) return true;
    const std::size_t wrong = parity == Parity::even ? 1 : 0;
    for (std::size_t k = wrong; k < coeffs.size(); k += 2) {
        if (std::abs(coeffs[k]) > tol) return false;
    }
    return true;
}

ChebyshevPoly chebyshev_from_coeffs(std::vector<double> coeffs, Parity parity) {
    ChebyshevPoly p{std::move(coeffs), parity};
    if (!p.parity_consistent()) throw ParityError("coefficients disagree with the parity tag");
    return p;
}

std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f, int n) {
    if (n < 1) throw DomainError("need at least one interpolation node");
    std::vector<double> fx(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        fx[static_cast<std::size_t>(j)] = f(std::cos(std::numbers::pi * (j + 0.5) / n));
    }
    // cos(pi k (2j+1) / 2n) read from a table indexed mod 4n
    const long period = 4L * n;
    std::vector<double> table(static_cast<std::size_t>(period));
    for (long m = 0; m < period; ++m) {
        table[static_cast<std::size_t>(m)] = std::cos(std::numbers::pi * static_cast<double>(m) / (2.0 * n));
    }
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        long m = k;
        const long step = 2L * k % period;
        for (int j = 0; j < n; ++j) {
            acc += fx[static_cast<std::size_t>(j)] * table[static_cast<std::size_t>(m)];
            m += step;
            if (m >= period) m -= period;
        }
        c[static_cast<std::size_t>(k)] = (k == 0 ? 1.0 : 2.0) * acc / n;
    }
    return c;
}

ChebyshevPoly truncate(std::span<const double> coeffs, int degree, Parity parity) {
    ChebyshevPoly p;
    p.parity = parity;
    p.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int k = 0; k <= degree && k < static_cast<int>(coeffs.size()); ++k) {
        const bool keep = parity == Parity::none || (parity == Parity::even) == (k % 2 == 0);
        if (keep) p.coeffs[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k)];
    }
    return p;
}

ChebyshevPoly multiply(const ChebyshevPoly& a, const ChebyshevPoly& b) {
    ChebyshevPoly out;
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    // T_m T_n = (T_{m+n} + T_{|m-n|}) / 2
    for (std::size_t m = 0; m < a.coeffs.size(); ++m) {
        if (a.coeffs[m] == 0.0) continue;
        for (std::size_t n = 0; n < b.coeffs.size(); ++n) {
            const double v = 0.5 * a.coeffs[m] * b.coeffs[n];
            out.coeffs[m + n] += v;
            out.coeffs[m > n ? m - n : n - m] += v;
        }
    }
    if (a.parity == Parity::none || b.parity == Parity::none) {
        out.parity = Parity::none;
    } else {
        out.parity = (a.parity == b.parity) ? Parity::even : Parity::odd;
    }
    return out;
}

ChebyshevPoly scaled(const ChebyshevPoly& p, double s) {
    ChebyshevPoly out = p;
    for (double& c : out.coeffs) c *= s;
    return out;
}

ChebyshevPoly combine(std::span<const ChebyshevPoly> polys, std::span<const double> weights,
                      double constant, Parity parity) {
    std::size_t n = 1;
    for (const auto& p : polys) n = std::max(n, p.coeffs.size());
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (std::size_t k = 0; k < polys[i].coeffs.size(); ++k) c[k] += weights[i] * polys[i].coeffs[k];
    }
    c[0] += constant;
    return truncate(c, static_cast<int>(n) - 1, parity);
}

std::vector<double> uniform_grid(int n, double lo, double hi) {
    std::vector<double> g(static_cast<std::size_t>(n));
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<double> certification_grid(int n) { return uniform_grid(n); }

double max_abs_on(const ChebyshevPoly& p, std::span<const double> grid) {
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(p(x)));
    return m;
}

}  // namespace qsvt
