#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsvt/algorithms.hpp"
#include "qsvt/errors.hpp"
#include "qsvt/io.hpp"
#include "qsvt/phase_solver.hpp"
#include "qsvt/poly_approx.hpp"
#include "qsvt/qsvt_engine.hpp"

namespace py = pybind11;
using namespace qsvt;

namespace {

template <typename E>
E enum_from(const std::string& s, std::initializer_list<E> values) {
    for (E v : values) {
        if (to_string(v) == s) return v;
    }
    throw DomainError("unknown convention field '" + s + "'");
}

Convention make_convention(const std::string& signal, const std::string& processing, const std::string& basis) {
    return {enum_from(signal, {SignalKind::wx, SignalKind::reflection, SignalKind::wz}),
            enum_from(processing, {ProcessingKind::sz, ProcessingKind::sx}),
            enum_from(basis, {Basis::zero_zero, Basis::plus_plus})};
}

Parity parity_from(const std::string& s) { return enum_from(s, {Parity::even, Parity::odd, Parity::none}); }

BlockEncoding encode(const ComplexMatrix& a, double alpha) {
    return is_hermitian(a) ? qubitize_hermitian(a, alpha) : embed_general(a, alpha);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "QSP / QSVT simulator core";

    static py::exception<Error> base(m, "QsvtError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<PhaseSequence>(m, "PhaseSequence")
        .def(py::init([](std::vector<double> phases, const std::string& signal, const std::string& processing,
                         const std::string& basis) {
                 return PhaseSequence(std::move(phases), make_convention(signal, processing, basis));
             }),
             py::arg("phases"), py::arg("signal") = "wx", py::arg("processing") = "sz", py::arg("basis") = "++")
        .def_property_readonly("phases", &PhaseSequence::phases)
        .def_property_readonly("degree", &PhaseSequence::degree)
        .def_property_readonly("convention",
                               [](const PhaseSequence& s) {
                                   const Convention& c = s.convention();
                                   return py::make_tuple(std::string(to_string(c.signal)),
                                                         std::string(to_string(c.processing)),
                                                         std::string(to_string(c.basis)));
                               })
        .def("to_json", [](const PhaseSequence& s) { return to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return phases_from_json(nlohmann::json::parse(text)); })
        .def("__len__", &PhaseSequence::size);

    py::class_<ChebyshevPoly>(m, "ChebyshevPoly")
        .def(py::init([](std::vector<double> coeffs, const std::string& parity) {
                 return chebyshev_from_coeffs(std::move(coeffs), parity_from(parity));
             }),
             py::arg("coeffs"), py::arg("parity"))
        .def_readonly("coeffs", &ChebyshevPoly::coeffs)
        .def_property_readonly("parity", [](const ChebyshevPoly& p) { return std::string(to_string(p.parity)); })
        .def_property_readonly("degree", &ChebyshevPoly::degree)
        .def("__call__", &ChebyshevPoly::operator());

    m.def("response", &response, py::arg("seq"), py::arg("a"));
    m.def("response_curve", [](const PhaseSequence& seq, int npts) {
        const std::vector<double> grid = uniform_grid(npts);
        return response_curve(seq, grid);
    }, py::arg("seq"), py::arg("npts") = 400);
    m.def("convert_convention",
          [](const PhaseSequence& seq, const std::string& signal, const std::string& processing,
             const std::string& basis) { return convert_convention(seq, make_convention(signal, processing, basis)); },
          py::arg("seq"), py::arg("signal"), py::arg("processing") = "sz", py::arg("basis") = "++");

    m.def("fixed_point_phases", [](int d, double delta) { return fixed_point_phases(FixedPointParams::make(d, delta)); },
          py::arg("d"), py::arg("delta"));
    m.def("solve_phases", [](const ChebyshevPoly& p) { return solve_phases(p); }, py::arg("target"));
    m.def("residual", &residual, py::arg("seq"), py::arg("target"));

    m.def("sign_poly", [](double epsilon, double gap) { return sign_poly({epsilon, gap, 0.0}); },
          py::arg("epsilon"), py::arg("gap"));
    m.def("jacobi_anger_cos", &jacobi_anger_cos, py::arg("t"), py::arg("epsilon"));
    m.def("jacobi_anger_sin", &jacobi_anger_sin, py::arg("t"), py::arg("epsilon"));
    m.def("matrix_inversion_poly", &matrix_inversion_poly, py::arg("epsilon"), py::arg("kappa"));

    m.def("transformed_block",
          [](const ComplexMatrix& a, const PhaseSequence& seq, double alpha) {
              return transformed_block(make_program(encode(a, alpha), seq));
          },
          py::arg("a"), py::arg("seq"), py::arg("alpha") = 1.0);
    m.def("svd_oracle", &svd_oracle, py::arg("a"), py::arg("poly"));
    m.def("eigen_oracle", &eigen_oracle, py::arg("h"), py::arg("poly"));

    m.def("_search",
          [](int n_qubits, long marked, double delta, double gap, std::uint64_t seed, bool exact) {
              return qsvt_search(n_qubits, marked, delta, gap, seed, exact ? Mode::exact : Mode::sampled)
                  .to_json()
                  .dump();
          },
          py::arg("n_qubits"), py::arg("marked"), py::arg("delta"), py::arg("gap"), py::arg("seed"),
          py::arg("exact"));
    m.def("_qpe",
          [](double phi, int n, double epsilon, double gap, std::uint64_t seed, bool exact) {
              return phase_estimation_record(phi, n, epsilon, gap, seed, exact ? Mode::exact : Mode::sampled)
                  .to_json()
                  .dump();
          },
          py::arg("phi"), py::arg("n"), py::arg("epsilon"), py::arg("gap"), py::arg("seed"), py::arg("exact"));
    m.def("_order_finding",
          [](long x, long n_mod, double delta, std::uint64_t seed, int retries) {
              return order_finding_demo(x, n_mod, delta, seed, retries).to_json().dump();
          },
          py::arg("x"), py::arg("n_mod"), py::arg("delta"), py::arg("seed"), py::arg("retries"));
    m.def("bernoulli_sample_count", &bernoulli_sample_count, py::arg("a"), py::arg("b"), py::arg("delta"));

    m.def("hamiltonian_simulation",
          [](const ComplexMatrix& h, double alpha, double t, double epsilon) {
              const HamsimResult r = hamiltonian_simulation(h, alpha, t, epsilon);
              const ComplexMatrix block = 2.0 * extract_block(r.encoding);
              return py::make_tuple(block, r.queries);
          },
          py::arg("h"), py::arg("alpha"), py::arg("t"), py::arg("epsilon"));
    m.def("matrix_inversion",
          [](const ComplexMatrix& a, double kappa, double epsilon) {
              const InversionResult r = matrix_inversion(a, kappa, epsilon);
              const ComplexMatrix block = 2.0 * kappa * extract_block(r.encoding);
              return py::make_tuple(block, r.queries);
          },
          py::arg("a"), py::arg("kappa"), py::arg("epsilon"));
    m.def("hermitian_expm", &hermitian_expm, py::arg("h"), py::arg("t"));
}
