// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <future>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "arlimit/ar_sim.hpp"
#include "arlimit/char_roots.hpp"
#include "arlimit/limit_eval.hpp"
#include "arlimit/oracles.hpp"
#include "test_support.hpp"

using namespace arlimit;
using arlimit::testing::random_roots;
using arlimit::testing::scaled_error;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> body;
};

// Tracks the worst observed value of some error measure against its bound.
struct Worst {
    double value = 0.0;
    void see(double x) { value = std::max(value, std::isnan(x) ? INFINITY : x); }
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome k1_law() {
    Worst rel;
    for (int i = 0; i < 20; ++i) {
        const double lam = -0.95 + 0.095 * (i + 0.5);
        for (unsigned S = 0; S <= 8; ++S) {
            const double want = std::pow(lam, static_cast<double>(S));
            const auto got = limit_A(RootMultiset({lam}), S);
            rel.see(std::abs(got.value - want) / std::abs(want));
        }
    }
    return {rel.value <= 1e-14, fmt("max rel err %.2e (bound 1e-14)", rel.value)};
}

// Shared by criteria 2 and 6.
struct TriangleStats {
    double closed_vs_truncated = 0.0;
    double closed_vs_contour = 0.0;
    double worst_tail = 0.0;
    double worst_imag = 0.0;  // |imag| / (1 + |value|) over all three methods
};

TriangleStats triangle() {
    static const TriangleStats stats = [] {
        TriangleStats st;
        std::mt19937_64 rng(20240601);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t k = 1 + trial % 5;
            const unsigned S = static_cast<unsigned>(trial % 7);
            const auto roots = random_roots(rng, k, 0.9, true);
            const auto a = limit_A(roots, S);
            const auto t = bs_truncated(roots, S, bs_order_for(roots, S, 1e-12));
            const auto c = contour_coefficient(roots, S, contour_points_for(roots, S));
            st.closed_vs_truncated = std::max(st.closed_vs_truncated, scaled_error(t.value, a.value, a.value));
            st.closed_vs_contour = std::max(st.closed_vs_contour, scaled_error(c.value, a.value, a.value));
            st.worst_tail = std::max(st.worst_tail, *t.tail_bound);
            for (const auto* r : {&a, &t, &c}) {
                if (!r->real_value) st.worst_imag = INFINITY;
                st.worst_imag = std::max(st.worst_imag, std::abs(r->value.imag()) / (1.0 + std::abs(r->value)));
            }
        }
        return st;
    }();
    return stats;
}

Outcome oracle_triangle() {
    const auto st = triangle();
    const bool ok = st.closed_vs_truncated <= 1e-10 && st.closed_vs_contour <= 1e-10 && st.worst_tail <= 1e-12;
    return {ok, fmt("truncated %.2e, contour %.2e (bound 1e-10)", st.closed_vs_truncated, st.closed_vs_contour) +
                    fmt(", max tail %.2e", st.worst_tail)};
}

Outcome slope_convergence() {
    std::mt19937_64 rng(777);
    Worst rel;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 1 + trial % 3;
        const auto roots = random_roots(rng, k, 0.9, trial % 2 == 0);
        const unsigned S = static_cast<unsigned>(trial % 4);
        const auto a = limit_A(roots, S).value;
        const auto est = slope_estimate(roots, ShiftVector::canonical(k, S), 150, 200);
        rel.see(scaled_error(est.value, a, a));
    }
    return {rel.value <= 1e-6, fmt("max rel err %.2e (bound 1e-6)", rel.value)};
}

Outcome shift_independence() {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long long> pick(-4, 4);
    Worst rel;
    for (int set = 0; set < 10; ++set) {
        const std::size_t k = 2 + set % 2;
        const auto roots = random_roots(rng, k, 0.9, set % 2 == 0);
        const long long S = set % 5;
        std::vector<Complex> est;
        for (int v = 0; v < 5; ++v) {
            // Free entries are random; the last one restores sum = +-S.
            std::vector<long long> s(k);
            long long partial = 0;
            for (std::size_t i = 0; i + 1 < k; ++i) partial += (s[i] = pick(rng));
            s[k - 1] = (v % 2 == 0 ? S : -S) - partial;
            est.push_back(slope_estimate(roots, ShiftVector(s)).value);
        }
        for (std::size_t i = 0; i < est.size(); ++i) {
            for (std::size_t j = i + 1; j < est.size(); ++j) rel.see(scaled_error(est[i], est[j], est[0]));
        }
    }
    return {rel.value <= 1e-9, fmt("max pairwise rel diff %.2e (bound 1e-9)", rel.value)};
}

Outcome confluence() {
    const double five_thirds = 5.0 / 3.0;
    const auto c = limit_A_confluent(RootMultiset({0.5, 0.5}), 0);
    const double e0 = std::abs(c.value - five_thirds) / five_thirds;
    bool ok = e0 <= 1e-10;
    std::string detail = fmt("double root rel err %.2e", e0);

    const double eps[] = {1e-5, 1e-7, 1e-9};
    const double bound[] = {1e-3, 1e-5, 1e-6};
    for (int i = 0; i < 3; ++i) {
        const auto r = limit_A(RootMultiset({0.5, 0.5 + eps[i]}), 0);
        const double err = std::abs(r.value - five_thirds);
        ok = ok && err <= bound[i];
        detail += fmt(", eps %.0e: %.2e", eps[i], err);
    }

    const RootMultiset triple({0.5, 0.5, 0.5});
    const auto a = limit_A(triple, 2).value;
    const auto t = bs_truncated(triple, 2, bs_order_for(triple, 2, 1e-14)).value;
    const double e3 = std::abs(a - t) / std::abs(t);
    ok = ok && e3 <= 1e-9;
    detail += fmt(", triple vs truncated %.2e", e3);
    return {ok, detail};
}

Outcome realness() {
    const auto st = triangle();
    return {st.worst_imag <= 1e-10, fmt("max |imag|/(1+|value|) %.2e (bound 1e-10)", st.worst_imag)};
}

// Smallest max-distance over all matchings of two equal-size root lists.
double matched_error(std::vector<Complex> got, const std::vector<Complex>& want) {
    std::vector<std::size_t> perm(want.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = INFINITY;
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) worst = std::max(worst, std::abs(got[perm[i]] - want[i]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Outcome root_solver() {
    std::mt19937_64 rng(99);
    Worst per_root, residual;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 1 + trial % 6;
        const auto roots = random_roots(rng, k, 0.95, trial % 3 != 0, 1e-2);
        const auto expanded = expand_roots(roots.roots());
        std::vector<double> coeffs;
        for (const auto& c : expanded) coeffs.push_back(c.real());
        const MonicPolynomial poly(coeffs);
        const auto sol = solve_roots(poly);
        per_root.see(matched_error({sol.roots.roots().begin(), sol.roots.roots().end()},
                                   {roots.roots().begin(), roots.roots().end()}));
        residual.see(coefficient_residual(poly, sol.roots.roots()));
    }
    const auto pair = ar_roots(ARCoefficients({0.8, -0.15})).roots;
    const double pair_err = std::max(std::abs(pair[0] - 0.3), std::abs(pair[1] - 0.5));
    const bool ok = per_root.value <= 1e-8 && residual.value <= 1e-10 && pair_err <= 1e-12;
    return {ok, fmt("per-root %.2e, residual %.2e", per_root.value, residual.value) +
                    fmt(", (0.8,-0.15) err %.2e", pair_err)};
}

Outcome simulation() {
    const ARCoefficients ar1({0.5});
    double lag0 = 0.0, lag1 = 0.0;
    constexpr int n = 100000;
    constexpr int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto s = simulate(ar1, 1.0, n, std::nullopt, static_cast<std::uint64_t>(seed) + 1);
        lag0 += lagged_cross_sum(s, 0);
        lag1 += lagged_cross_sum(s, 1);
    }
    const double rho1 = lag1 / lag0;
    const double var = lag0 / (static_cast<double>(n) * seeds);
    const bool ok = std::abs(rho1 - 0.5) <= 0.01 && std::abs(var / (4.0 / 3.0) - 1.0) <= 0.05;
    return {ok, fmt("lag-1 %.5f (0.5 +- 0.01), variance %.5f (4/3 +- 5%%)", rho1, var)};
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

Outcome determinism() {
    const RootMultiset roots({{0.6, 0.25}, {0.6, -0.25}, {-0.7, 0.0}});
    const ShiftVector shifts({2, -1, 3});
    const Complex ref = direct_sum_S4(roots, shifts, 120, 1);
    bool sums_ok = true;
    for (unsigned threads : {1U, 2U, 4U, 8U, 0U}) {
        const Complex v = direct_sum_S4(roots, shifts, 120, threads);
        sums_ok = sums_ok && std::memcmp(&v, &ref, sizeof v) == 0;
    }

    const ARCoefficients alphas({0.8, -0.15, 0.05});
    const auto base = simulate(alphas, 1.5, 20000, std::nullopt, 31337).values;
    bool sim_ok = same_bits(base, simulate(alphas, 1.5, 20000, std::nullopt, 31337).values);
    std::vector<std::future<std::vector<double>>> jobs;
    for (int i = 0; i < 4; ++i) {
        jobs.push_back(std::async(std::launch::async, [&] {
            return simulate(alphas, 1.5, 20000, std::nullopt, 31337).values;
        }));
    }
    for (auto& j : jobs) sim_ok = sim_ok && same_bits(base, j.get());

    return {sums_ok && sim_ok, std::string("direct sum across 1/2/4/8/auto threads: ") +
                                   (sums_ok ? "identical" : "DIFFERENT") +
                                   ", simulate sequential and concurrent: " + (sim_ok ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "k=1 law", 1.0, k1_law},
        {2, "oracle triangle", 30.0, oracle_triangle},
        {3, "slope convergence", 60.0, slope_convergence},
        {4, "shift independence", 0.0, shift_independence},
        {5, "confluence", 0.0, confluence},
        {6, "realness", 0.0, realness},
        {7, "root solver", 0.0, root_solver},
        {8, "simulation sanity", 10.0, simulation},
        {9, "determinism", 0.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && secs > c.time_limit) {
            out.ok = false;
            out.detail += fmt("; over time limit %.0f s", c.time_limit);
        }
        std::printf("%s [%d] %s: %s (%.2f s)\n", out.ok ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs);
        std::fflush(stdout);
        failures += out.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
