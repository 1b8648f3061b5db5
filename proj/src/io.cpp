#include "qsvt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsvt/errors.hpp"

namespace qsvt {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

template <typename E>
E parse_enum(const json& j, const char* key, std::initializer_list<E> values) {
    const std::string s = j.at(key).get<std::string>();
    for (E v : values) {
        if (to_string(v) == s) return v;
    }
    throw DomainError(std::string("unknown ") + key + " '" + s + "'");
}

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

json to_json(const PhaseSequence& seq) {
    const Convention& c = seq.convention();
    json out;
    out["convention"] = {{"signal", std::string(to_string(c.signal))},
                         {"processing", std::string(to_string(c.processing))},
                         {"basis", std::string(to_string(c.basis))}};
    out["phases"] = seq.phases();
    return out;
}

PhaseSequence phases_from_json(const json& j) {
    Convention c = kCanonical;
    if (j.is_object() && j.contains("convention")) {
        const json& cj = j.at("convention");
        c.signal = parse_enum(cj, "signal", {SignalKind::wx, SignalKind::reflection, SignalKind::wz});
        c.processing = parse_enum(cj, "processing", {ProcessingKind::sz, ProcessingKind::sx});
        c.basis = parse_enum(cj, "basis", {Basis::zero_zero, Basis::plus_plus});
    }
    return PhaseSequence(require(j, "phases").get<std::vector<double>>(), c);
}

json to_json(const ChebyshevPoly& p) {
    return {{"parity", std::string(to_string(p.parity))}, {"coeffs", p.coeffs}};
}

ChebyshevPoly poly_from_json(const json& j) {
    const Parity parity = parse_enum(j, "parity", {Parity::even, Parity::odd, Parity::none});
    return chebyshev_from_coeffs(require(j, "coeffs").get<std::vector<double>>(), parity);
}

json matrix_to_json(const ComplexMatrix& m) {
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const long rows = require(j, "rows").get<long>();
    const long cols = require(j, "cols").get<long>();
    if (rows <= 0 || cols <= 0) throw DomainError("matrix dimensions must be positive");
    check_dimension(std::max(rows, cols));
    const auto re = require(j, "re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    const auto n = static_cast<std::size_t>(rows * cols);
    if (re.size() != n || im.size() != n) throw DomainError("matrix entry count does not match rows * cols");
    ComplexMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < cols; ++c) {
            const auto k = static_cast<std::size_t>(r * cols + c);
            m(r, c) = cplx(re[k], im[k]);
        }
    }
    return m;
}

json to_json(const BlockEncoding& be) {
    return {{"unitary", matrix_to_json(be.unitary)},
            {"proj_right", matrix_to_json(be.proj_right)},
            {"proj_left", matrix_to_json(be.proj_left)},
            {"alpha", be.alpha}};
}

BlockEncoding encoding_from_json(const json& j) {
    if (j.is_object() && j.contains("unitary")) {
        BlockEncoding be;
        be.unitary = matrix_from_json(j.at("unitary"));
        be.proj_right = matrix_from_json(require(j, "proj_right"));
        be.proj_left = j.contains("proj_left") ? matrix_from_json(j.at("proj_left")) : be.proj_right;
        be.alpha = j.value("alpha", 1.0);
        validate(be);
        return be;
    }
    const ComplexMatrix a = matrix_from_json(j);
    const double alpha = std::max(spectral_norm(a), 1e-300);
    return is_hermitian(a) ? qubitize_hermitian(a, alpha) : embed_general(a, alpha);
}

std::string response_csv(const Curve& curve) {
    std::string out = "a,re,im,abs2\n";
    for (const auto& [a, z] : curve) {
        out += fmt17(a) + ',' + fmt17(z.real()) + ',' + fmt17(z.imag()) + ',' + fmt17(std::norm(z)) + '\n';
    }
    return out;
}

std::string emit_svg(const Curve& curve, const SvgStyle& style) {
    if (curve.empty()) throw EmptyCurve("cannot plot an empty curve");
    const double margin = 40.0;
    const double w = style.width;
    const double h = style.height;
    double xlo = curve.front().first;
    double xhi = curve.front().first;
    for (const auto& pt : curve) {
        xlo = std::min(xlo, pt.first);
        xhi = std::max(xhi, pt.first);
    }
    if (xhi - xlo < 1e-12) {
        xlo -= 0.5;
        xhi += 0.5;
    }
    // y axis spans [-1, 1 + 1e-9] so that clamped abs2 fits.
    const double ylo = -1.0;
    const double yhi = 1.0 + 1e-9;
    auto px = [&](double x) { return margin + (x - xlo) / (xhi - xlo) * (w - 2 * margin); };
    auto py = [&](double y) {
        y = std::clamp(y, ylo, yhi);
        return h - margin - (y - ylo) / (yhi - ylo) * (h - 2 * margin);
    };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.height
      << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << style.width << "\" height=\"" << style.height
      << "\" style=\"fill:#ffffff\"/>\n";
    s << "<g style=\"stroke:#000000;stroke-width:1\">\n";
    s << "<line x1=\"" << fmt4(margin) << "\" y1=\"" << fmt4(py(0.0)) << "\" x2=\"" << fmt4(w - margin)
      << "\" y2=\"" << fmt4(py(0.0)) << "\"/>\n";
    s << "<line x1=\"" << fmt4(margin) << "\" y1=\"" << fmt4(py(ylo)) << "\" x2=\"" << fmt4(margin) << "\" y2=\""
      << fmt4(py(yhi)) << "\"/>\n";
    s << "</g>\n";
    s << "<g style=\"font-family:monospace;font-size:11px\">\n";
    s << "<text x=\"" << fmt4(margin) << "\" y=\"" << fmt4(h - margin / 3) << "\">" << fmt4(xlo) << "</text>\n";
    s << "<text x=\"" << fmt4(w - margin) << "\" y=\"" << fmt4(h - margin / 3)
      << "\" style=\"text-anchor:end\">" << fmt4(xhi) << "</text>\n";
    s << "<text x=\"4\" y=\"" << fmt4(py(1.0) + 4) << "\">1</text>\n";
    s << "<text x=\"4\" y=\"" << fmt4(py(-1.0) + 4) << "\">-1</text>\n";
    s << "</g>\n";

    auto channel = [&](const char* name, const char* color, auto value) {
        s << "<polyline class=\"" << name << "\" style=\"fill:none;stroke:" << color
          << ";stroke-width:1.5\" points=\"";
        bool first = true;
        for (const auto& [a, z] : curve) {
            if (!first) s << ' ';
            first = false;
            s << fmt4(px(a)) << ',' << fmt4(py(value(z)));
        }
        s << "\"/>\n";
    };
    if (style.re) channel("re", "#1f77b4", [](cplx z) { return z.real(); });
    if (style.im) channel("im", "#2ca02c", [](cplx z) { return z.imag(); });
    if (style.abs2) channel("abs2", "#d62728", [](cplx z) { return std::clamp(std::norm(z), 0.0, 1.0 + 1e-9); });
    s << "</svg>\n";
    return s.str();
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path.string());
    out << text;
}

}  // namespace qsvt
