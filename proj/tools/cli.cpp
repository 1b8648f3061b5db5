#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsvt/algorithms.hpp"
#include "qsvt/errors.hpp"
#include "qsvt/io.hpp"
#include "qsvt/phase_solver.hpp"
#include "qsvt/poly_approx.hpp"
#include "qsvt/qsvt_engine.hpp"

namespace qsvt::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Args = std::map<std::string, double>;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FamilySpec {
    const char* name;
    Args defaults;
};

const std::vector<FamilySpec>& families() {
    static const std::vector<FamilySpec> specs = {
        {"fpsearch", {{"d", 10}, {"delta", 0.5}}},
        {"poly_sign", {{"d", 19}, {"k", 10}}},
        {"invert", {{"kappa", 3}, {"epsilon", 0.3}}},
        {"hamsim", {{"t", 5}, {"epsilon", 0.1}}},
        {"hamsim_cos", {{"t", 5}, {"epsilon", 0.1}}},
        {"hamsim_sin", {{"t", 5}, {"epsilon", 0.1}}},
        {"poly_thresh", {{"d", 18}, {"k", 10}}},
        {"poly_phase", {{"d", 18}, {"k", 10}}},
        {"efilter", {{"d", 30}, {"delta_lambda", 0.3}}},
        {"gibbs", {{"beta", 3.5}, {"d", 20}}},
        {"relu", {{"delta", 0.6}, {"steepness", 15}, {"d", 20}}},
    };
    return specs;
}

Args merged_args(const std::string& family, const Args& given) {
    for (const auto& spec : families()) {
        if (family != spec.name) continue;
        Args out = spec.defaults;
        for (const auto& [k, v] : given) {
            if (!out.contains(k)) throw UsageError("family " + family + " has no argument '" + k + "'");
            out[k] = v;
        }
        return out;
    }
    throw UsageError("unknown family '" + family + "'");
}

int as_int(const Args& a, const std::string& key) {
    const double v = a.at(key);
    if (v != std::floor(v) || v < 0 || v > 100000) throw UsageError(key + " must be a non-negative integer");
    return static_cast<int>(v);
}

fs::path output_path(const std::string& p) {
    const fs::path path(p);
    if (path.is_absolute()) return path;
    if (const char* dir = std::getenv("QSVT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') return fs::path(dir) / path;
    return path;
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw DomainError(path + ": " + e.what());
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Curve sample(const PhaseSequence& seq, int npts) {
    const std::vector<double> grid = uniform_grid(npts);
    return response_curve(seq, grid);
}

struct CurveOutputs {
    std::string csv;
    std::string svg;
    int npts = 400;
};

void emit_curve(const PhaseSequence& seq, const CurveOutputs& o) {
    if (o.csv.empty() && o.svg.empty()) return;
    const Curve curve = sample(seq, o.npts);
    if (!o.csv.empty()) write_text(output_path(o.csv), response_csv(curve));
    if (!o.svg.empty()) write_text(output_path(o.svg), emit_svg(curve));
}

Mode mode_of(bool exact, const std::optional<std::uint64_t>& seed) {
    if (!exact && !seed) throw UsageError("--seed is required unless --exact is given");
    return exact ? Mode::exact : Mode::sampled;
}

void write_record(const RunRecord& rec, const std::string& path) {
    if (!path.empty()) write_text(output_path(path), rec.to_json().dump(2) + "\n");
}

ComplexVector vector_from_json(const json& j) {
    const ComplexMatrix m = matrix_from_json(j);
    if (m.cols() != 1) throw DomainError("vector file must have one column");
    return m.col(0);
}

}  // namespace

std::vector<std::string> family_names() {
    std::vector<std::string> out;
    for (const auto& spec : families()) out.emplace_back(spec.name);
    return out;
}

Args parse_kv(const std::string& text) {
    Args out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != val.size() || val.empty() || !std::isfinite(v)) {
            throw UsageError("value of '" + key + "' is not a number");
        }
        out[key] = v;
    }
    return out;
}

ChebyshevPoly family_poly(const std::string& family, const Args& given) {
    const Args a = merged_args(family, given);
    if (family == "fpsearch") throw UsageError("fpsearch has closed-form phases and no target polynomial");
    if (family == "poly_sign") return erf_sign_fit(as_int(a, "d"), a.at("k")).poly;
    if (family == "invert") return inverse_fit(a.at("epsilon"), a.at("kappa")).poly;
    if (family == "hamsim" || family == "hamsim_cos") return jacobi_anger_cos(a.at("t"), a.at("epsilon"));
    if (family == "hamsim_sin") return jacobi_anger_sin(a.at("t"), a.at("epsilon"));
    if (family == "poly_thresh") return threshold_fit(as_int(a, "d"), a.at("k")).poly;
    if (family == "poly_phase") return phase_step_fit(as_int(a, "d"), a.at("k")).poly;
    if (family == "efilter") {
        const int d = as_int(a, "d");
        if (d % 2 != 0) throw UsageError("efilter degree must be even");
        return eigenstate_filter_poly(d / 2, a.at("delta_lambda"));
    }
    if (family == "gibbs") return gibbs_poly(a.at("beta"), as_int(a, "d")).poly;
    return relu_poly(a.at("delta"), a.at("steepness"), as_int(a, "d")).poly;
}

FamilyResult family_phases(const std::string& family, const Args& given) {
    const Args a = merged_args(family, given);
    FamilyResult out;
    if (family == "fpsearch") {
        out.phases = fixed_point_phases(FixedPointParams::make(as_int(a, "d"), a.at("delta")));
        return out;
    }
    out.target = family_poly(family, given);
    out.has_target = true;
    out.phases = solve_phases(out.target);
    return out;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum signal processing and QSVT simulator"};
    app.name("qsvt");
    app.require_subcommand(1);

    // phases
    std::string family;
    std::string args_text;
    std::string phases_out;
    CurveOutputs curve_out;
    auto* phases_cmd = app.add_subcommand("phases", "Synthesize phases for a named family");
    phases_cmd->add_option("--family", family, "fpsearch, poly_sign, invert, hamsim, hamsim_cos, hamsim_sin, "
                                               "poly_thresh, poly_phase, efilter, gibbs, relu")
        ->required();
    phases_cmd->add_option("--args", args_text, "Comma separated key=value overrides");
    phases_cmd->add_option("--out", phases_out, "Also write the phase JSON here");
    phases_cmd->add_option("--emit-response", curve_out.csv, "Response curve CSV");
    phases_cmd->add_option("--svg", curve_out.svg, "Response curve SVG");
    phases_cmd->add_option("--npts", curve_out.npts, "Grid points")->check(CLI::Range(2, 1000000));

    // response
    std::string phases_file;
    auto* response_cmd = app.add_subcommand("response", "Sample the response of a phase file");
    response_cmd->add_option("--phases", phases_file, "Phase JSON")->required();
    response_cmd->add_option("--csv", curve_out.csv, "CSV output");
    response_cmd->add_option("--svg", curve_out.svg, "SVG output");
    response_cmd->add_option("--npts", curve_out.npts, "Grid points")->check(CLI::Range(2, 1000000));

    // poly
    auto* poly_cmd = app.add_subcommand("poly", "Print the target polynomial of a family");
    poly_cmd->add_option("--family", family, "Family name")->required();
    poly_cmd->add_option("--args", args_text, "Comma separated key=value overrides");
    poly_cmd->add_option("--csv", curve_out.csv, "CSV sampling (a,value)");
    poly_cmd->add_option("--npts", curve_out.npts, "Grid points")->check(CLI::Range(2, 1000000));

    // qsvt
    std::string encoding_file;
    std::string emit_file;
    auto* qsvt_cmd = app.add_subcommand("qsvt", "Apply a phase sequence to a block encoding");
    qsvt_cmd->add_option("--encoding", encoding_file, "Encoding or matrix JSON")->required();
    qsvt_cmd->add_option("--phases", phases_file, "Phase JSON")->required();
    qsvt_cmd->add_option("--emit", emit_file, "Write the transformed block as matrix JSON");

    // algorithm runners share these
    std::optional<std::uint64_t> seed;
    bool exact = false;
    std::string record_out;
    auto add_common = [&](CLI::App* cmd, bool with_exact) {
        cmd->add_option("--seed", seed, "RNG seed (required in sampled mode)");
        if (with_exact) cmd->add_flag("--exact", exact, "Replace measurements by their likeliest outcome");
        cmd->add_option("--out", record_out, "Write the run record JSON here");
    };

    int n_qubits = 2;
    long marked = 0;
    double delta = 0.1;
    double gap = 0.0;
    auto* search_cmd = app.add_subcommand("search", "Fixed-point search");
    search_cmd->add_option("--n-qubits", n_qubits, "Number of qubits")->check(CLI::Range(1, 10));
    search_cmd->add_option("--marked", marked, "Marked index");
    search_cmd->add_option("--delta", delta, "Failure probability");
    search_cmd->add_option("--gap", gap, "Window width (defaults to 1/sqrt N)");
    add_common(search_cmd, true);

    std::string matrix_file;
    std::string state_file;
    double alpha = 1.0;
    double lambda_th = 0.5;
    double zeta = 0.5;
    double epsilon = -1.0;
    auto* thr_cmd = app.add_subcommand("threshold", "Eigenvalue threshold decision");
    thr_cmd->add_option("--matrix", matrix_file, "Hermitian matrix JSON")->required();
    thr_cmd->add_option("--state", state_file, "State vector JSON (defaults to |0>)");
    thr_cmd->add_option("--alpha", alpha, "Normalization");
    thr_cmd->add_option("--lambda", lambda_th, "Threshold eigenvalue");
    thr_cmd->add_option("--gap", gap, "Promise gap")->required();
    thr_cmd->add_option("--zeta", zeta, "Overlap lower bound");
    thr_cmd->add_option("--delta", delta, "Failure probability");
    thr_cmd->add_option("--epsilon", epsilon, "Polynomial accuracy (defaults to zeta/4)");
    add_common(thr_cmd, true);

    double phi = 0.0;
    int n_bits = 3;
    double qpe_eps = 0.01;
    double qpe_gap = 0.2;
    auto* qpe_cmd = app.add_subcommand("qpe", "Phase estimation of e^{2 pi i phi}");
    qpe_cmd->add_option("--phi", phi, "Eigenphase in [0, 1)")->required();
    qpe_cmd->add_option("--n", n_bits, "Bits of precision")->check(CLI::Range(1, 20));
    qpe_cmd->add_option("--epsilon", qpe_eps, "Per-iteration accuracy");
    qpe_cmd->add_option("--gap", qpe_gap, "Window width");
    add_common(qpe_cmd, true);

    long fx = 7;
    long fn = 15;
    int retries = 5;
    double f_delta = 0.25;
    auto* factor_cmd = app.add_subcommand("factor", "Order finding for x mod N");
    factor_cmd->add_option("--x", fx, "Base");
    factor_cmd->add_option("--N", fn, "Modulus (at most 64)");
    factor_cmd->add_option("--delta", f_delta, "Failure probability per run");
    factor_cmd->add_option("--retries", retries, "Retry budget")->check(CLI::Range(1, 1000));
    add_common(factor_cmd, false);

    double t = 1.0;
    auto* hamsim_cmd = app.add_subcommand("hamsim", "Block encoding of e^{-iHt}");
    hamsim_cmd->add_option("--matrix", matrix_file, "Hermitian matrix JSON")->required();
    hamsim_cmd->add_option("--alpha", alpha, "Normalization");
    hamsim_cmd->add_option("--t", t, "Evolution time");
    hamsim_cmd->add_option("--epsilon", qpe_eps, "Accuracy")->default_val(1e-2);
    hamsim_cmd->add_option("--emit", emit_file, "Write 2 * block as matrix JSON");

    double kappa = 2.0;
    double inv_eps = 0.05;
    std::string rhs_file;
    auto* invert_cmd = app.add_subcommand("invert", "Block encoding of A^{-1} / (2 kappa)");
    invert_cmd->add_option("--matrix", matrix_file, "Matrix JSON")->required();
    invert_cmd->add_option("--kappa", kappa, "Condition number bound");
    invert_cmd->add_option("--epsilon", inv_eps, "Accuracy");
    invert_cmd->add_option("--rhs", rhs_file, "Right-hand side vector JSON");
    invert_cmd->add_option("--emit", emit_file, "Write 2 kappa * block as matrix JSON");

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*phases_cmd) {
            const FamilyResult res = family_phases(family, parse_kv(args_text));
            const std::string text = to_json(res.phases).dump(2) + "\n";
            out << text;
            if (!phases_out.empty()) write_text(output_path(phases_out), text);
            emit_curve(res.phases, curve_out);
        } else if (*response_cmd) {
            const PhaseSequence seq = phases_from_json(load_json(phases_file));
            if (curve_out.csv.empty() && curve_out.svg.empty()) {
                out << response_csv(sample(seq, curve_out.npts));
            } else {
                emit_curve(seq, curve_out);
            }
        } else if (*poly_cmd) {
            const ChebyshevPoly p = family_poly(family, parse_kv(args_text));
            out << to_json(p).dump(2) << "\n";
            if (!curve_out.csv.empty()) {
                std::string csv = "a,value\n";
                for (double a : uniform_grid(curve_out.npts)) csv += fmt17(a) + ',' + fmt17(p(a)) + '\n';
                write_text(output_path(curve_out.csv), csv);
            }
        } else if (*qsvt_cmd) {
            const BlockEncoding enc = encoding_from_json(load_json(encoding_file));
            const QsvtProgram prog = make_program(enc, phases_from_json(load_json(phases_file)));
            const ComplexMatrix block = transformed_block(prog);
            const std::string text = matrix_to_json(block).dump(2) + "\n";
            if (emit_file.empty()) {
                out << text;
            } else {
                write_text(output_path(emit_file), text);
            }
        } else if (*search_cmd) {
            const Mode mode = mode_of(exact, seed);
            const double g = gap > 0.0 ? gap : 1.0 / std::sqrt(static_cast<double>(1L << n_qubits));
            const RunRecord rec = qsvt_search(n_qubits, marked, delta, g, seed.value_or(0), mode);
            out << "found=" << rec.decision.at("found").get<long>() << " rounds=" << rec.decision.at("rounds")
                << " queries=" << rec.queries << "\n";
            write_record(rec, record_out);
        } else if (*thr_cmd) {
            const Mode mode = mode_of(exact, seed);
            const ComplexMatrix h = matrix_from_json(load_json(matrix_file));
            const ComplexVector psi = state_file.empty() ? basis_vector(h.rows(), 0)
                                                         : vector_from_json(load_json(state_file));
            const RunRecord rec = eigenvalue_threshold(h, alpha, lambda_th, gap, zeta, delta, psi,
                                                       seed.value_or(0), mode, epsilon);
            out << "low_eigenvalue=" << (rec.decision.at("low_eigenvalue").get<bool>() ? "true" : "false")
                << " queries=" << rec.queries << "\n";
            write_record(rec, record_out);
        } else if (*qpe_cmd) {
            const Mode mode = mode_of(exact, seed);
            const RunRecord rec = phase_estimation_record(phi, n_bits, qpe_eps, qpe_gap, seed.value_or(0), mode);
            out << "theta=" << fmt17(rec.decision.at("theta").get<double>()) << "\n";
            write_record(rec, record_out);
        } else if (*factor_cmd) {
            if (!seed) throw UsageError("--seed is required");
            const RunRecord rec = order_finding_demo(fx, fn, f_delta, *seed, retries);
            out << "order=" << rec.decision.at("order").get<long>() << "\n";
            write_record(rec, record_out);
        } else if (*hamsim_cmd) {
            const ComplexMatrix h = matrix_from_json(load_json(matrix_file));
            const HamsimResult res = hamiltonian_simulation(h, alpha, t, qpe_eps);
            const ComplexMatrix approx = 2.0 * extract_block(res.encoding);
            const ComplexMatrix exact_u = hermitian_expm(h, t);
            out << "queries=" << res.queries << " error=" << fmt17(phase_aligned_distance(approx, exact_u)) << "\n";
            if (!emit_file.empty()) write_text(output_path(emit_file), matrix_to_json(approx).dump(2) + "\n");
        } else if (*invert_cmd) {
            const ComplexMatrix a = matrix_from_json(load_json(matrix_file));
            const InversionResult res = matrix_inversion(a, kappa, inv_eps);
            const ComplexMatrix approx = 2.0 * kappa * extract_block(res.encoding);
            const ComplexMatrix inverse = a.inverse();
            out << "queries=" << res.queries << " error=" << fmt17(max_abs(approx - inverse)) << "\n";
            if (!rhs_file.empty()) {
                const ComplexVector x = solve_linear_system(res, vector_from_json(load_json(rhs_file)));
                ComplexMatrix col = x;
                out << matrix_to_json(col).dump(2) << "\n";
            }
            if (!emit_file.empty()) write_text(output_path(emit_file), matrix_to_json(approx).dump(2) + "\n");
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace qsvt::cli
