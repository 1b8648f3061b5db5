#include "qsvt/qsp.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qsvt/errors.hpp"

namespace qsvt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void check_signal_domain(double a) {
    if (!std::isfinite(a) || std::abs(a) > 1.0 + 1e-12) {
        throw DomainError("signal value outside [-1, 1]: " + std::to_string(a));
    }
}

double clamp_unit(double a) { return std::max(-1.0, std::min(1.0, a)); }

}  // namespace

bool is_constructible(const Convention& c) {
    switch (c.signal) {
        case SignalKind::wx:
        case SignalKind::reflection:
            return c.processing == ProcessingKind::sz;
        case SignalKind::wz:
            return c.processing == ProcessingKind::sx && c.basis == Basis::zero_zero;
    }
    return false;
}

PhaseSequence::PhaseSequence(std::vector<double> phases, Convention convention)
    : phases_(std::move(phases)), convention_(convention) {
    if (!is_constructible(convention_)) throw DomainError("convention combination not supported");
    if (phases_.empty()) throw DomainError("phase sequence must hold at least one phase");
    for (double p : phases_) {
        if (!std::isfinite(p)) throw DomainError("phase sequence holds a non-finite entry");
    }
}

Su2 signal_operator(double a, const Convention& c) {
    Su2 m;
    switch (c.signal) {
        case SignalKind::wx: {
            check_signal_domain(a);
            a = clamp_unit(a);
            const double s = std::sqrt(1.0 - a * a);
            m << a, kI * s, kI * s, a;
            break;
        }
        case SignalKind::reflection: {
            check_signal_domain(a);
            a = clamp_unit(a);
            const double s = std::sqrt(1.0 - a * a);
            m << a, s, s, -a;
            break;
        }
        case SignalKind::wz: {
            if (!std::isfinite(a)) throw DomainError("signal angle must be finite");
            const cplx w = std::polar(1.0, a / 2.0);
            m << w, 0.0, 0.0, std::conj(w);
            break;
        }
    }
    return m;
}

Su2 processing_operator(double phi, const Convention& c) {
    Su2 m;
    const double co = std::cos(phi), si = std::sin(phi);
    if (c.processing == ProcessingKind::sz) {
        m << cplx(co, si), 0.0, 0.0, cplx(co, -si);
    } else {
        m << co, kI * si, kI * si, co;
    }
    return m;
}

Su2 evaluate_sequence(const PhaseSequence& seq, double a) {
    const Convention& c = seq.convention();
    const Su2 w = signal_operator(a, c);
    Su2 u = processing_operator(seq[0], c);
    for (std::size_t k = 1; k < seq.size(); ++k) {
        u = (u * w).eval();
        u = (u * processing_operator(seq[k], c)).eval();
    }
    return u;
}

cplx response(const PhaseSequence& seq, double a) {
    const Su2 u = evaluate_sequence(seq, a);
    if (seq.convention().basis == Basis::zero_zero) return u(0, 0);
    return 0.5 * (u(0, 0) + u(0, 1) + u(1, 0) + u(1, 1));
}

std::vector<std::pair<double, cplx>> response_curve(const PhaseSequence& seq,
                                                     std::span<const double> grid) {
    std::vector<std::pair<double, cplx>> out;
    out.reserve(grid.size());
    for (double a : grid) out.emplace_back(a, response(seq, a));
    return out;
}

double signal_argument(const Convention& c, double a) {
    if (c.signal != SignalKind::wz) return a;
    check_signal_domain(a);
    return 2.0 * std::acos(clamp_unit(a));
}

PhaseSequence convert_convention(const PhaseSequence& seq, const Convention& target) {
    const Convention& src = seq.convention();
    if (!is_constructible(target)) throw UnsupportedConversion("target convention not constructible");
    if (src == target) return seq;

    const int d = seq.degree();
    std::vector<double> phases = seq.phases();

    const bool wx_reflection =
        src.basis == target.basis &&
        ((src.signal == SignalKind::wx && target.signal == SignalKind::reflection) ||
         (src.signal == SignalKind::reflection && target.signal == SignalKind::wx));
    if (wx_reflection) {
        // In the |+> basis the two sequences differ by diag(1, (-1)^d), which only
        // cancels for even degree.
        if (src.basis == Basis::plus_plus && d % 2 == 1) {
            throw UnsupportedConversion("WX <-> REFLECTION in the |+> basis needs even degree");
        }
        if (d == 0) return PhaseSequence(phases, target);
        const double sgn = (target.signal == SignalKind::reflection) ? 1.0 : -1.0;
        phases[0] += sgn * (2.0 * d - 1.0) * kPi / 4.0;
        for (int k = 1; k < d; ++k) phases[static_cast<std::size_t>(k)] -= sgn * kPi / 2.0;
        phases[static_cast<std::size_t>(d)] -= sgn * kPi / 4.0;
        return PhaseSequence(std::move(phases), target);
    }

    const bool wx_wz =
        (src.signal == SignalKind::wx && src.basis == Basis::plus_plus &&
         target.signal == SignalKind::wz) ||
        (src.signal == SignalKind::wz && target.signal == SignalKind::wx &&
         target.basis == Basis::plus_plus);
    if (wx_wz) return PhaseSequence(std::move(phases), target);

    throw UnsupportedConversion("conversion between these conventions is not supported");
}

cplx LaurentPair::eval_f(cplx w) const {
    cplx acc = 0.0;
    for (int k = -d; k <= d; ++k) acc += f_at(k) * std::pow(w, k);
    return acc;
}

cplx LaurentPair::eval_g(cplx w) const {
    cplx acc = 0.0;
    for (int k = -d; k <= d; ++k) acc += g_at(k) * std::pow(w, k);
    return acc;
}

double LaurentPair::unitarity_defect(int samples) const {
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const cplx w = std::polar(1.0, 2.0 * kPi * s / samples);
        const cplx wi = 1.0 / w;
        const cplx v = eval_f(w) * eval_f(wi) + eval_g(w) * eval_g(wi) - 1.0;
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

LaurentPair laurent_from_pq(std::span<const cplx> p, std::span<const cplx> q, int d) {
    if (d < 0) throw DomainError("degree must be non-negative");
    if (p.size() > static_cast<std::size_t>(d) + 1 || q.size() > static_cast<std::size_t>(d) + 1) {
        throw DomainError("coefficient list longer than degree + 1");
    }
    constexpr double tol = 1e-12;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if ((static_cast<int>(k) - d) % 2 != 0 && std::abs(p[k]) > tol) {
            throw ParityError("P has a coefficient of the wrong parity");
        }
    }
    for (std::size_t k = 1; k < q.size(); ++k) {
        if ((static_cast<int>(k) - d) % 2 != 0 && std::abs(q[k]) > tol) {
            throw ParityError("Q has a coefficient of the wrong parity");
        }
    }
    auto pk = [&](int k) { return k < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(k)] : cplx{}; };
    auto qk = [&](int k) { return k < static_cast<int>(q.size()) ? q[static_cast<std::size_t>(k)] : cplx{}; };

    LaurentPair out;
    out.d = d;
    out.f.assign(static_cast<std::size_t>(2 * d + 1), 0.0);
    out.g.assign(static_cast<std::size_t>(2 * d + 1), 0.0);
    auto at = [d](int k) { return static_cast<std::size_t>(k + d); };
    out.f[at(0)] = pk(0).real();
    out.g[at(0)] = pk(0).imag();
    for (int k = 1; k <= d; ++k) {
        out.f[at(k)] = 0.5 * (pk(k) + qk(k)).real();
        out.f[at(-k)] = 0.5 * (pk(k) - qk(k)).real();
        out.g[at(k)] = 0.5 * (pk(k) - qk(k)).imag();
        out.g[at(-k)] = 0.5 * (pk(k) + qk(k)).imag();
    }
    return out;
}

PqCoefficients pq_coefficients(const PhaseSequence& seq) {
    if (seq.convention().signal != SignalKind::wx) {
        throw DomainError("pq_coefficients needs a WX sequence");
    }
    // Entries of U as Laurent polynomials in z = e^{it}, a = cos t.
    const int d = seq.degree();
    const std::size_t n = static_cast<std::size_t>(2 * d + 1);
    using Laurent = std::vector<cplx>;
    auto idx = [d](int k) { return static_cast<std::size_t>(k + d); };

    std::array<Laurent, 4> u;  // row-major 2x2
    for (auto& e : u) e.assign(n, 0.0);
    u[0][idx(0)] = std::polar(1.0, seq[0]);
    u[3][idx(0)] = std::polar(1.0, -seq[0]);

    // W = [[c, is], [is, c]] with c = (z + 1/z)/2 and i sin t = (z - 1/z)/2.
    auto times_w = [&](const Laurent& x, const Laurent& y, Laurent& out_c, Laurent& out_s) {
        // out_c = x*c + y*is, out_s = x*is + y*c
        out_c.assign(n, 0.0);
        out_s.assign(n, 0.0);
        for (int k = -d; k <= d; ++k) {
            const cplx xv = x[idx(k)], yv = y[idx(k)];
            if (xv == cplx{} && yv == cplx{}) continue;
            if (k + 1 <= d) {
                out_c[idx(k + 1)] += 0.5 * (xv + yv);
                out_s[idx(k + 1)] += 0.5 * (xv + yv);
            }
            if (k - 1 >= -d) {
                out_c[idx(k - 1)] += 0.5 * (xv - yv);
                out_s[idx(k - 1)] += 0.5 * (yv - xv);
            }
        }
    };

    for (int step = 1; step <= d; ++step) {
        std::array<Laurent, 4> next;
        times_w(u[0], u[1], next[0], next[1]);
        times_w(u[2], u[3], next[2], next[3]);
        const cplx e = std::polar(1.0, seq[static_cast<std::size_t>(step)]);
        for (auto& v : next[0]) v *= e;
        for (auto& v : next[2]) v *= e;
        for (auto& v : next[1]) v *= std::conj(e);
        for (auto& v : next[3]) v *= std::conj(e);
        u = std::move(next);
    }

    PqCoefficients out;
    out.p.assign(static_cast<std::size_t>(d) + 1, 0.0);
    out.q.assign(static_cast<std::size_t>(d) + 1, 0.0);
    out.p[0] = u[0][idx(0)];
    for (int k = 1; k <= d; ++k) {
        out.p[static_cast<std::size_t>(k)] = u[0][idx(k)] + u[0][idx(-k)];
        out.q[static_cast<std::size_t>(k)] = u[1][idx(k)] - u[1][idx(-k)];
    }
    return out;
}

std::string_view to_string(SignalKind k) {
    switch (k) {
        case SignalKind::wx: return "wx";
        case SignalKind::reflection: return "reflection";
        case SignalKind::wz: return "wz";
    }
    return "?";
}

std::string_view to_string(ProcessingKind k) { return k == ProcessingKind::sz ? "sz" : "sx"; }

std::string_view to_string(Basis b) { return b == Basis::zero_zero ? "00" : "++"; }

}  // namespace qsvt
