#include "arlimit/service.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arlimit/ar_sim.hpp"
#include "arlimit/char_roots.hpp"
#include "arlimit/error.hpp"
#include "arlimit/limit_eval.hpp"
#include "arlimit/oracles.hpp"

namespace arlimit {

using nlohmann::json;

namespace {

constexpr double kTruncationTarget = 1e-12;
constexpr double kDefaultOracleTol = 1e-6;

json encode(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex decode_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw Error(ErrorCode::ParseError, "complex values must be numbers or [re, im] pairs");
}

template <typename T>
std::optional<T> optional_field(const json& req, const char* key) {
    const auto it = req.find(key);
    if (it == req.end() || it->is_null()) return std::nullopt;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::ParseError, std::string("field '") + key + "' has the wrong type");
    }
}

json encode_roots(const RootMultiset& roots) {
    json out = json::array();
    for (const auto& z : roots.roots()) out.push_back(encode(z));
    return out;
}

json encode_eval(const EvalResult& r) {
    json out{{"value", encode(r.value)},
             {"max_imag", r.max_imag},
             {"method", std::string(method_name(r.method))}};
    if (r.real_value) out["real_value"] = *r.real_value;
    if (r.tail_bound) out["tail_bound"] = *r.tail_bound;
    if (!r.clusters.empty()) {
        json clusters = json::array();
        for (const auto& c : r.clusters) {
            clusters.push_back({{"indices", c.indices}, {"centroid", encode(c.centroid)}});
        }
        out["clusters"] = std::move(clusters);
    }
    return out;
}

RootSolveOptions solve_options(const json& req) {
    RootSolveOptions opt;
    if (auto tol = optional_field<double>(req, "solver_tol")) opt.tol = *tol;
    if (auto it = optional_field<int>(req, "max_iter")) opt.max_iter = *it;
    return opt;
}

// Exactly one of "alphas" / "roots".
RootMultiset roots_from(const json& req, json& echo) {
    const bool has_alphas = req.contains("alphas") && !req["alphas"].is_null();
    const bool has_roots = req.contains("roots") && !req["roots"].is_null();
    if (has_alphas == has_roots) {
        throw Error(ErrorCode::ParseError, "exactly one of 'alphas' or 'roots' is required");
    }
    if (has_roots) {
        if (!req["roots"].is_array()) throw Error(ErrorCode::ParseError, "'roots' must be an array");
        std::vector<Complex> z;
        for (const auto& item : req["roots"]) z.push_back(decode_complex(item));
        return RootMultiset(std::move(z));
    }
    const auto alphas = optional_field<std::vector<double>>(req, "alphas").value();
    auto solved = ar_roots(ARCoefficients(alphas), solve_options(req));
    echo["solver_residual"] = solved.residual;
    return solved.roots;
}

// Exactly one of "shifts" / "S".
ShiftVector shifts_from(const json& req, std::size_t k) {
    const auto shifts = optional_field<std::vector<long long>>(req, "shifts");
    const auto S = optional_field<long long>(req, "S");
    if (shifts.has_value() == S.has_value()) {
        throw Error(ErrorCode::ParseError, "exactly one of 'shifts' or 'S' is required");
    }
    if (shifts) {
        if (shifts->size() != k) {
            throw Error(ErrorCode::LengthMismatch, "shift vector length differs from root count");
        }
        return ShiftVector(*shifts);
    }
    if (*S < 0) throw Error(ErrorCode::InvalidArgument, "S must be a non-negative integer");
    return ShiftVector::canonical(k, static_cast<unsigned>(*S));
}

LimitOptions limit_options(const json& req) {
    LimitOptions opt;
    if (auto c = optional_field<double>(req, "cluster_tol")) opt.cluster_tol = *c;
    return opt;
}

// Request shape is checked in full before any numerical validation, so a
// malformed request always reports PARSE_ERROR.
std::pair<RootMultiset, ShiftVector> checked_inputs(const json& req, json& echo) {
    const auto raw = roots_from(req, echo);
    auto shifts = shifts_from(req, raw.size());
    auto roots = validate_roots(raw, optional_field<double>(req, "margin").value_or(0.0));
    return {std::move(roots), std::move(shifts)};
}

json run_roots(const json& req) {
    const auto alphas = optional_field<std::vector<double>>(req, "alphas");
    if (!alphas) throw Error(ErrorCode::ParseError, "'alphas' is required");
    const ARCoefficients coeffs(*alphas);
    const auto poly = char_polynomial(coeffs);
    const auto solved = solve_roots(poly, solve_options(req));
    return {{"roots", encode_roots(solved.roots)},
            {"polynomial", poly.coefficients()},
            {"residual", solved.residual},
            {"residual_target", residual_target(poly)},
            {"iterations", solved.iterations},
            {"max_modulus", solved.roots.max_modulus()},
            {"stationary", solved.roots.stationary()},
            {"conjugate_closed", solved.roots.conjugate_closed()}};
}

json run_limit(const json& req) {
    json out;
    const auto [roots, shifts] = checked_inputs(req, out);
    const auto opt = limit_options(req);
    const auto r = optional_field<bool>(req, "confluent").value_or(false)
                       ? limit_A_confluent(roots, shifts.S(), opt)
                       : limit_A(roots, shifts.S(), opt);
    out.update(encode_eval(r));
    out["S"] = shifts.S();
    out["k"] = roots.size();
    out["roots"] = encode_roots(roots);
    return out;
}

struct Estimate {
    std::string name;
    Complex value;
};

json run_oracle(const json& req, json& mismatch) {
    json out;
    const auto [roots, shifts] = checked_inputs(req, out);
    const unsigned S = shifts.S();
    const double tol = optional_field<double>(req, "tol").value_or(kDefaultOracleTol);
    out["S"] = S;
    out["k"] = roots.size();
    out["roots"] = encode_roots(roots);
    out["tol"] = tol;

    std::vector<Estimate> estimates;
    const auto closed = limit_A(roots, S, limit_options(req));
    out["closed_form"] = encode_eval(closed);
    estimates.push_back({"closed_form", closed.value});

    const int M = optional_field<int>(req, "M").value_or(bs_order_for(roots, S, kTruncationTarget));
    const auto trunc = bs_truncated(roots, S, M);
    out["truncated"] = encode_eval(trunc);
    out["truncated"]["M"] = M;
    estimates.push_back({"truncated", trunc.value});

    const int points = optional_field<int>(req, "points").value_or(contour_points_for(roots, S));
    const auto contour = contour_coefficient(roots, S, points);
    out["contour"] = encode_eval(contour);
    out["contour"]["points"] = points;
    estimates.push_back({"contour", contour.value});

    const int n1 = optional_field<int>(req, "n1").value_or(kDefaultSlopeN1);
    const int n2 = optional_field<int>(req, "n2").value_or(kDefaultSlopeN2);
    try {
        const auto slope = slope_estimate(roots, shifts, n1, n2, 0);
        out["slope"] = {{"value", encode(slope.value)}, {"n1", n1}, {"n2", n2},
                        {"t1", encode(slope.t1)},       {"t2", encode(slope.t2)},
                        {"shifts", shifts.shifts()}};
        estimates.push_back({"slope", slope.value});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        out["slope"] = {{"skipped", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    }

    const double scale = 1.0 + std::abs(closed.value);
    json disc = json::array();
    bool agree = true;
    for (std::size_t a = 0; a < estimates.size(); ++a) {
        for (std::size_t b = a + 1; b < estimates.size(); ++b) {
            const double abs_err = std::abs(estimates[a].value - estimates[b].value);
            const double rel_err = abs_err / scale;
            const bool ok = rel_err <= tol;
            agree = agree && ok;
            disc.push_back({{"a", estimates[a].name}, {"b", estimates[b].name},
                            {"abs", abs_err}, {"rel", rel_err}, {"ok", ok}});
        }
    }
    out["discrepancies"] = disc;
    if (!agree) mismatch = out;
    return out;
}

json run_simulate(const json& req) {
    const auto alphas = optional_field<std::vector<double>>(req, "alphas");
    if (!alphas) throw Error(ErrorCode::ParseError, "'alphas' is required");
    const auto n = optional_field<int>(req, "n");
    if (!n) throw Error(ErrorCode::ParseError, "'n' is required");
    const double sigma = optional_field<double>(req, "sigma").value_or(1.0);
    const auto seed = optional_field<std::uint64_t>(req, "seed").value_or(0);
    const auto burn_in = optional_field<int>(req, "burn_in");
    const int lags = optional_field<int>(req, "lags").value_or(1);

    const auto sample = simulate(ARCoefficients(*alphas), sigma, *n, burn_in, seed);
    json cross = json::array();
    for (int j = 0; j <= lags && j < *n; ++j) cross.push_back(lagged_cross_sum(sample, j));
    return {{"alphas", sample.alphas.alphas()},
            {"sigma", sample.sigma},
            {"n", sample.values.size()},
            {"burn_in", sample.burn_in},
            {"seed", sample.seed},
            {"sum_x", sum_x(sample)},
            {"lagged_cross_sums", cross},
            {"values", sample.values}};
}

json error_response(const json& command, std::string_view code, const std::string& message) {
    return {{"schema_version", kSchemaVersion},
            {"status", "error"},
            {"command", command},
            {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

json run(const json& request) {
    json command = nullptr;
    try {
        if (!request.is_object()) throw Error(ErrorCode::ParseError, "request must be a JSON object");
        const auto name = optional_field<std::string>(request, "command");
        if (!name) throw Error(ErrorCode::ParseError, "'command' is required");
        command = *name;

        json result;
        json mismatch;
        if (*name == "roots") {
            result = run_roots(request);
        } else if (*name == "limit") {
            result = run_limit(request);
        } else if (*name == "oracle") {
            result = run_oracle(request, mismatch);
        } else if (*name == "simulate") {
            result = run_simulate(request);
        } else {
            throw Error(ErrorCode::ParseError, "unknown command '" + *name + "'");
        }

        if (!mismatch.is_null()) {
            auto resp = error_response(command, error_code_name(ErrorCode::OracleMismatch),
                                       "oracle discrepancy exceeds tolerance");
            resp["error"]["details"] = std::move(mismatch);
            return resp;
        }
        return {{"schema_version", kSchemaVersion},
                {"status", "ok"},
                {"command", command},
                {"result", std::move(result)}};
    } catch (const Error& e) {
        return error_response(command, error_code_name(e.code()), e.what());
    } catch (const json::exception& e) {
        return error_response(command, error_code_name(ErrorCode::ParseError), e.what());
    } catch (const std::exception& e) {
        return error_response(command, "INTERNAL", e.what());
    }
}

}  // namespace arlimit
