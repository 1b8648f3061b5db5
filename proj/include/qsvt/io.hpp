#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsvt/block_encoding.hpp"
#include "qsvt/chebyshev.hpp"
#include "qsvt/qsp.hpp"

namespace qsvt {

using Curve = std::vector<std::pair<double, cplx>>;

nlohmann::json to_json(const PhaseSequence& seq);
PhaseSequence phases_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ChebyshevPoly& p);
ChebyshevPoly poly_from_json(const nlohmann::json& j);

// {"rows", "cols", "re", "im"}, row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// {"unitary", "proj_right", "proj_left", "alpha"}. A bare matrix is embedded with
// alpha = its spectral norm (qubitized when Hermitian).
nlohmann::json to_json(const BlockEncoding& be);
BlockEncoding encoding_from_json(const nlohmann::json& j);

// Header a,re,im,abs2; %.17g; LF.
std::string response_csv(const Curve& curve);

struct SvgStyle {
    bool re = true;
    bool im = false;
    bool abs2 = true;
    int width = 640;
    int height = 400;
};

std::string emit_svg(const Curve& curve, const SvgStyle& style = {});

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qsvt
