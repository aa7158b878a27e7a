// Command-line front end: builds a JSON request from flags (or reads one
// with --json), runs it, and prints the JSON response on stdout.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arlimit/ar_sim.hpp"
#include "arlimit/char_roots.hpp"
#include "arlimit/limit_eval.hpp"
#include "arlimit/oracles.hpp"
#include "arlimit/service.hpp"

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& text, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (seps.find(c) != std::string::npos) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// "0.8,-0.15" or "0.8 -0.15"
json parse_number_list(const std::string& text, bool integers) {
    json out = json::array();
    for (const auto& tok : split(text, ", \t")) {
        std::size_t used = 0;
        if (integers) {
            const long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
            out.push_back(v);
        } else {
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
            out.push_back(v);
        }
    }
    return out;
}

// Items separated by ';' or whitespace, each "re" or "re,im".
json parse_roots(const std::vector<std::string>& args) {
    json out = json::array();
    for (const auto& arg : args) {
        for (const auto& item : split(arg, "; \t")) {
            const auto parts = parse_number_list(item, false);
            if (parts.size() == 1) {
                out.push_back(json::array({parts[0], 0.0}));
            } else if (parts.size() == 2) {
                out.push_back(parts);
            } else {
                throw std::invalid_argument("root '" + item + "' is not re or re,im");
            }
        }
    }
    return out;
}

struct Flags {
    std::optional<std::string> alphas, shifts, out;
    std::vector<std::string> roots;
    std::optional<long long> S;
    std::optional<int> n, n1, n2, M, points, burn_in, max_iter, lags;
    std::optional<double> sigma, tol, cluster_tol, margin;
    std::optional<std::uint64_t> seed;
    bool confluent = false;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--alphas", f.alphas, "AR coefficients alpha_1..alpha_k, comma separated");
    cmd->add_option("--roots", f.roots,
                    "explicit roots: items 're' or 're,im' separated by ';' (use --roots=... for a leading '-')");
    cmd->add_option("--shifts", f.shifts, "integer shifts s_1..s_k, comma separated");
    cmd->add_option("--S", f.S, "S = |s_1 + ... + s_k| (instead of --shifts)");
    cmd->add_option("--cluster-tol", f.cluster_tol, "cluster threshold on |lambda_a - lambda_b| (default 1e-7)");
    cmd->add_option("--margin", f.margin, "required stationarity margin: max|lambda| < 1 - margin");
}

json to_request(const std::string& command, const Flags& f) {
    json req{{"command", command}};
    if (f.alphas) req["alphas"] = parse_number_list(*f.alphas, false);
    if (!f.roots.empty()) req["roots"] = parse_roots(f.roots);
    if (f.shifts) req["shifts"] = parse_number_list(*f.shifts, true);
    auto put = [&req](const char* key, const auto& value) {
        if (value) req[key] = *value;
    };
    put("S", f.S);
    put("n", f.n);
    put("n1", f.n1);
    put("n2", f.n2);
    put("M", f.M);
    put("points", f.points);
    put("burn_in", f.burn_in);
    put("max_iter", f.max_iter);
    put("lags", f.lags);
    put("sigma", f.sigma);
    put("cluster_tol", f.cluster_tol);
    put("margin", f.margin);
    put("seed", f.seed);
    if (f.tol) req[command == "roots" ? "solver_tol" : "tol"] = *f.tol;
    if (f.confluent) req["confluent"] = true;
    return req;
}

json read_request(const std::string& path) {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open request file " + path);
    return json::parse(in);
}

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form asymptotics of AR(k) lattice sums, with brute-force oracles"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // --json / --pretty may follow the subcommand

    std::optional<std::string> json_path;
    bool pretty = false;
    app.add_option("--json", json_path, "structured request file ('-' for stdin); subcommand flags override it");
    app.add_flag("--pretty", pretty, "indent the JSON response");

    Flags f;
    auto* roots = app.add_subcommand("roots", "roots of the characteristic polynomial");
    roots->add_option("--alphas", f.alphas, "AR coefficients alpha_1..alpha_k, comma separated");
    roots->add_option("--tol", f.tol, "per-root correction tolerance (default 1e-13)");
    roots->add_option("--max-iter", f.max_iter, "iteration budget (default 200)");

    auto* limit = app.add_subcommand("limit", "closed-form limit A for roots and S");
    add_model_flags(limit, f);
    limit->add_flag("--confluent", f.confluent, "force the confluent (contour) path");

    auto* oracle = app.add_subcommand("oracle", "closed form vs truncated B_S, contour and slope oracles");
    add_model_flags(oracle, f);
    oracle->add_option("--M", f.M, "truncation order for B_S (default: smallest M with tail bound <= 1e-12)");
    oracle->add_option("--points", f.points, "contour points (default: sized from max|lambda|, >= 2(S+8))");
    oracle->add_option("--n1", f.n1, "first direct-sum size for the slope oracle (default " +
                                          std::to_string(arlimit::kDefaultSlopeN1) + ")");
    oracle->add_option("--n2", f.n2, "second direct-sum size (default " +
                                          std::to_string(arlimit::kDefaultSlopeN2) + ")");
    oracle->add_option("--n", f.n2, "alias of --n2");
    oracle->add_option("--tol", f.tol, "max relative discrepancy |a-b|/(1+|A|) (default 1e-6)");

    auto* sim = app.add_subcommand("simulate", "simulate an AR(k) path");
    sim->add_option("--alphas", f.alphas, "AR coefficients alpha_1..alpha_k, comma separated");
    sim->add_option("--n", f.n, "series length");
    sim->add_option("--sigma", f.sigma, "noise standard deviation (default 1)");
    sim->add_option("--seed", f.seed, "mt19937_64 seed (default 0)");
    sim->add_option("--burn-in", f.burn_in, "burn-in steps (default ceil(10k/(1-max|lambda|)))");
    sim->add_option("--lags", f.lags, "report lagged cross sums for j = 0..lags (default 1)");
    sim->add_option("--out", f.out, "also write the series, one value per line, to this file");

    app.footer("Defaults: cluster tol " + fmt(arlimit::kClusterTol) + ", realness tol " +
               fmt(arlimit::kRealnessTol) + ", direct-sum budget 1e9 tuples.");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    json request;
    try {
        if (json_path) request = read_request(*json_path);
        const auto subs = app.get_subcommands();
        if (!subs.empty()) {
            auto flags = to_request(subs.front()->get_name(), f);
            if (request.is_object()) {
                request.update(flags);
            } else {
                request = std::move(flags);
            }
        }
        if (request.is_null()) {
            std::cerr << app.help();
            return 2;
        }
    } catch (const std::exception& e) {
        const json resp{{"schema_version", arlimit::kSchemaVersion},
                        {"status", "error"},
                        {"command", nullptr},
                        {"error", {{"code", "PARSE_ERROR"}, {"message", e.what()}}}};
        std::cout << resp.dump(pretty ? 2 : -1) << '\n';
        return 2;
    }

    const json response = arlimit::run(request);
    if (f.out && response["status"] == "ok") {
        std::ofstream out(*f.out);
        const auto values = response["result"]["values"].get<std::vector<double>>();
        arlimit::write_series(out, values);
        if (!out) {
            std::cerr << "failed to write " << *f.out << '\n';
            return 1;
        }
    }
    std::cout << response.dump(pretty ? 2 : -1) << '\n';
    return response["status"] == "ok" ? 0 : 1;
}
