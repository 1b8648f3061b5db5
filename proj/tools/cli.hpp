#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsvt/chebyshev.hpp"
#include "qsvt/qsp.hpp"

namespace qsvt::cli {

// Exit codes: 0 success, 1 computation error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

struct FamilyResult {
    PhaseSequence phases{{0.0}};
    bool has_target = false;
    ChebyshevPoly target;
};

std::vector<std::string> family_names();
// Throws std::invalid_argument for unknown families or keys.
ChebyshevPoly family_poly(const std::string& family, const std::map<std::string, double>& args);
FamilyResult family_phases(const std::string& family, const std::map<std::string, double>& args);

std::map<std::string, double> parse_kv(const std::string& text);

}  // namespace qsvt::cli
