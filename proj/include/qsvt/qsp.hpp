#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace qsvt {

using cplx = std::complex<double>;
using Su2 = Eigen::Matrix2cd;

enum class SignalKind { wx, reflection, wz };
enum class ProcessingKind { sz, sx };
enum class Basis { zero_zero, plus_plus };

struct Convention {
    SignalKind signal = SignalKind::wx;
    ProcessingKind processing = ProcessingKind::sz;
    Basis basis = Basis::plus_plus;

    friend bool operator==(const Convention&, const Convention&) = default;
};

// (WX, SZ, *), (REFLECTION, SZ, *) and (WZ, SX, 00) are the only valid combinations.
bool is_constructible(const Convention& c);

inline constexpr Convention kCanonical{SignalKind::wx, ProcessingKind::sz, Basis::plus_plus};
inline constexpr Convention kWxZero{SignalKind::wx, ProcessingKind::sz, Basis::zero_zero};

class PhaseSequence {
public:
    PhaseSequence(std::vector<double> phases, Convention convention = kCanonical);

    const std::vector<double>& phases() const { return phases_; }
    const Convention& convention() const { return convention_; }
    int degree() const { return static_cast<int>(phases_.size()) - 1; }
    std::size_t size() const { return phases_.size(); }
    double operator[](std::size_t k) const { return phases_[k]; }

private:
    std::vector<double> phases_;
    Convention convention_;
};

// For WZ the argument is the angle theta; for WX and REFLECTION it is a in [-1, 1].
Su2 signal_operator(double a, const Convention& c);
Su2 processing_operator(double phi, const Convention& c);

// e^{i phi_0 Z} W(a) e^{i phi_1 Z} ... W(a) e^{i phi_d Z}, multiplied left to right.
Su2 evaluate_sequence(const PhaseSequence& seq, double a);

cplx response(const PhaseSequence& seq, double a);
std::vector<std::pair<double, cplx>> response_curve(const PhaseSequence& seq,
                                                     std::span<const double> grid);

// Maps a in [-1, 1] to the signal argument of the convention (theta = 2 acos a for WZ).
double signal_argument(const Convention& c, double a);

PhaseSequence convert_convention(const PhaseSequence& seq, const Convention& target);

// Laurent polynomials F, G in w with real coefficients indexed -d..d.
struct LaurentPair {
    int d = 0;
    std::vector<double> f;  // f[k + d]
    std::vector<double> g;

    double f_at(int k) const { return f[static_cast<std::size_t>(k + d)]; }
    double g_at(int k) const { return g[static_cast<std::size_t>(k + d)]; }
    cplx eval_f(cplx w) const;
    cplx eval_g(cplx w) const;
    // max over the unit-circle sample grid of |F(w)F(1/w) + G(w)G(1/w) - 1|
    double unitarity_defect(int samples = 64) const;
};

// p holds T_k coefficients of P, q holds U_{k-1} coefficients of Q (q[0] unused).
LaurentPair laurent_from_pq(std::span<const cplx> p, std::span<const cplx> q, int d);

// Exact (P, Q) coefficients of a WX sequence: <0|U|0> = sum p_k T_k(a),
// <0|U|1> = i sqrt(1-a^2) sum q_k U_{k-1}(a).
struct PqCoefficients {
    std::vector<cplx> p;
    std::vector<cplx> q;
};
PqCoefficients pq_coefficients(const PhaseSequence& seq);

std::string_view to_string(SignalKind k);
std::string_view to_string(ProcessingKind k);
std::string_view to_string(Basis b);

}  // namespace qsvt
