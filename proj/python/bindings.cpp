#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "arlimit/ar_sim.hpp"
#include "arlimit/char_roots.hpp"
#include "arlimit/error.hpp"
#include "arlimit/limit_eval.hpp"
#include "arlimit/oracles.hpp"
#include "arlimit/service.hpp"

namespace py = pybind11;
using namespace arlimit;

namespace {

RootMultiset to_roots(const std::vector<Complex>& roots) { return RootMultiset(roots); }

std::vector<Complex> from_roots(const RootMultiset& roots) {
    return {roots.roots().begin(), roots.roots().end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed-form limit of AR(k) lattice sums, root extraction, oracles and simulation";

    static py::exception<Error> error_type(m, "ArlimitError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            // args = (code, message)
            const py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), e.what());
            PyErr_SetObject(error_type.ptr(), args.ptr());
        }
    });

    py::class_<RootCluster>(m, "RootCluster")
        .def_readonly("indices", &RootCluster::indices)
        .def_readonly("centroid", &RootCluster::centroid);

    py::class_<EvalResult>(m, "EvalResult")
        .def_readonly("value", &EvalResult::value)
        .def_readonly("real_value", &EvalResult::real_value)
        .def_readonly("max_imag", &EvalResult::max_imag)
        .def_property_readonly("method", [](const EvalResult& r) { return std::string(method_name(r.method)); })
        .def_readonly("tail_bound", &EvalResult::tail_bound)
        .def_readonly("clusters", &EvalResult::clusters)
        .def("__repr__", [](const EvalResult& r) {
            return "EvalResult(value=" + py::repr(py::cast(r.value)).cast<std::string>() +
                   ", method='" + std::string(method_name(r.method)) + "')";
        });

    py::class_<SlopeEstimate>(m, "SlopeEstimate")
        .def_readonly("value", &SlopeEstimate::value)
        .def_readonly("n1", &SlopeEstimate::n1)
        .def_readonly("n2", &SlopeEstimate::n2)
        .def_readonly("t1", &SlopeEstimate::t1)
        .def_readonly("t2", &SlopeEstimate::t2);

    m.def("char_polynomial", [](const std::vector<double>& alphas) {
        const auto p = char_polynomial(ARCoefficients(alphas));
        return std::vector<double>(p.coefficients().begin(), p.coefficients().end());
    }, py::arg("alphas"));

    m.def("solve_roots", [](const std::vector<double>& coefficients, double tol, int max_iter) {
        const auto sol = solve_roots(MonicPolynomial(coefficients), {tol, max_iter});
        return py::make_tuple(from_roots(sol.roots), sol.residual, sol.iterations);
    }, py::arg("coefficients"), py::arg("tol") = 1e-13, py::arg("max_iter") = 200,
       "Returns (roots, coefficient residual, iterations).");

    m.def("ar_roots", [](const std::vector<double>& alphas) {
        return from_roots(ar_roots(ARCoefficients(alphas)).roots);
    }, py::arg("alphas"));

    m.def("is_stationary", [](const std::vector<Complex>& r) { return is_stationary(to_roots(r)); },
          py::arg("roots"));
    m.def("is_conjugate_closed", [](const std::vector<Complex>& r) { return is_conjugate_closed(r); },
          py::arg("roots"));

    m.def("residue_coefficients", [](const std::vector<Complex>& r, double cluster_tol) {
        return residue_coefficients(to_roots(r), cluster_tol).c;
    }, py::arg("roots"), py::arg("cluster_tol") = kClusterTol);

    m.def("limit_A", [](const std::vector<Complex>& r, unsigned S, double cluster_tol) {
        return limit_A(to_roots(r), S, {cluster_tol, kRealnessTol});
    }, py::arg("roots"), py::arg("S"), py::arg("cluster_tol") = kClusterTol);

    m.def("limit_A_confluent", [](const std::vector<Complex>& r, unsigned S, double cluster_tol) {
        return limit_A_confluent(to_roots(r), S, {cluster_tol, kRealnessTol});
    }, py::arg("roots"), py::arg("S"), py::arg("cluster_tol") = kClusterTol);

    m.def("F_eval", [](const std::vector<Complex>& r, Complex t) { return F_eval(to_roots(r), t); },
          py::arg("roots"), py::arg("t"));

    m.def("direct_sum_S4", [](const std::vector<Complex>& r, const std::vector<long long>& s, int n,
                              unsigned threads) {
        py::gil_scoped_release release;
        return direct_sum_S4(to_roots(r), ShiftVector(s), n, threads);
    }, py::arg("roots"), py::arg("shifts"), py::arg("n"), py::arg("threads") = 1);

    m.def("slope_estimate", [](const std::vector<Complex>& r, const std::vector<long long>& s, int n1,
                               int n2, unsigned threads) {
        py::gil_scoped_release release;
        return slope_estimate(to_roots(r), ShiftVector(s), n1, n2, threads);
    }, py::arg("roots"), py::arg("shifts"), py::arg("n1") = kDefaultSlopeN1,
       py::arg("n2") = kDefaultSlopeN2, py::arg("threads") = 1);

    m.def("bs_truncated", [](const std::vector<Complex>& r, unsigned S, int M) {
        return bs_truncated(to_roots(r), S, M);
    }, py::arg("roots"), py::arg("S"), py::arg("M"));

    m.def("bs_order_for", [](const std::vector<Complex>& r, unsigned S, double target) {
        return bs_order_for(to_roots(r), S, target);
    }, py::arg("roots"), py::arg("S"), py::arg("target") = 1e-12);

    m.def("contour_coefficient", [](const std::vector<Complex>& r, unsigned S, int points) {
        return contour_coefficient(to_roots(r), S, points);
    }, py::arg("roots"), py::arg("S"), py::arg("num_points"));

    m.def("simulate", [](const std::vector<double>& alphas, int n, double sigma,
                         std::optional<int> burn_in, std::uint64_t seed) {
        const auto s = simulate(ARCoefficients(alphas), sigma, n, burn_in, seed);
        return py::make_tuple(s.values, s.burn_in);
    }, py::arg("alphas"), py::arg("n"), py::arg("sigma") = 1.0, py::arg("burn_in") = py::none(),
       py::arg("seed") = 0, "Returns (values, burn_in used).");

    m.def("sum_x", [](const std::vector<double>& x) { return sum_x(x); }, py::arg("series"));
    m.def("lagged_cross_sum", [](const std::vector<double>& x, int j) { return lagged_cross_sum(x, j); },
          py::arg("series"), py::arg("j"));
    m.def("rho_eval", [](const std::vector<Complex>& a, const std::vector<Complex>& r, long long j) {
        return rho_eval(a, to_roots(r), j);
    }, py::arg("a_coeffs"), py::arg("roots"), py::arg("j"));

    m.def("run_json", [](const std::string& request) {
        nlohmann::json req;
        try {
            req = nlohmann::json::parse(request);
        } catch (const nlohmann::json::exception& e) {
            return nlohmann::json{{"schema_version", kSchemaVersion},
                                  {"status", "error"},
                                  {"command", nullptr},
                                  {"error", {{"code", "PARSE_ERROR"}, {"message", e.what()}}}}
                .dump();
        }
        return run(req).dump();
    }, py::arg("request"), "Runs a JSON request string and returns the JSON response string.");

    m.attr("CLUSTER_TOL") = kClusterTol;
    m.attr("REALNESS_TOL") = kRealnessTol;
    m.attr("SCHEMA_VERSION") = kSchemaVersion;
#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
