#include "arlimit/limit_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "arlimit/error.hpp"
#include "arlimit/summation.hpp"

namespace arlimit {

namespace {

void require_stationary(const RootMultiset& roots) {
    if (!roots.stationary()) {
        throw Error(ErrorCode::NonStationary,
                    "max |lambda| = " + format_number(roots.max_modulus()) + " is not below 1");
    }
}

bool all_singletons(const std::vector<RootCluster>& clusters) {
    return std::all_of(clusters.begin(), clusters.end(),
                       [](const RootCluster& c) { return c.multiplicity() == 1; });
}

}  // namespace

std::vector<RootCluster> cluster_roots(const RootMultiset& roots, double cluster_tol) {
    const std::size_t k = roots.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (std::abs(roots[a] - roots[b]) <= cluster_tol) {
                const auto ra = find(a);
                const auto rb = find(b);
                parent[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
    }

    std::vector<RootCluster> clusters;
    std::vector<std::size_t> slot(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto r = find(i);
        if (slot[r] == k) {
            slot[r] = clusters.size();
            clusters.push_back({});
        }
        clusters[slot[r]].indices.push_back(i);
    }
    for (auto& c : clusters) {
        Complex sum = 0.0;
        for (auto i : c.indices) sum += roots[i];
        c.centroid = sum / static_cast<double>(c.indices.size());
    }
    return clusters;
}

Complex ipow(Complex lambda, unsigned n) noexcept {
    Complex result = 1.0;
    Complex base = lambda;
    while (n > 0) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n > 0) base *= base;
    }
    return result;
}

ResidueSet residue_coefficients(const RootMultiset& roots, double cluster_tol) {
    require_stationary(roots);
    if (!all_singletons(cluster_roots(roots, cluster_tol))) {
        throw Error(ErrorCode::ClusteredRoots,
                    "roots closer than the cluster tolerance; use the confluent path");
    }
    const auto lam = roots.roots();
    const std::size_t k = lam.size();
    ResidueSet out;
    out.c.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        Complex c = ipow(lam[j], static_cast<unsigned>(k - 1));
        for (std::size_t l = 0; l < k; ++l) {
            if (l == j) continue;
            c *= (1.0 - lam[l] * lam[l]) / ((lam[j] - lam[l]) * (1.0 - lam[j] * lam[l]));
        }
        out.c.push_back(c);
    }
    return out;
}

EvalResult limit_A(const RootMultiset& roots, unsigned S, const LimitOptions& options) {
    require_stationary(roots);
    auto clusters = cluster_roots(roots, options.cluster_tol);
    if (!all_singletons(clusters)) {
        return limit_A_confluent(roots, S, options);
    }

    const auto residues = residue_coefficients(roots, options.cluster_tol);
    const auto lam = roots.roots();
    std::vector<Complex> terms(lam.size());
    for (std::size_t j = 0; j < lam.size(); ++j) terms[j] = ipow(lam[j], S) * residues.c[j];

    EvalResult result;
    result.value = pairwise_sum<Complex>(terms);
    result.method = Method::DistinctResidues;
    result.clusters = std::move(clusters);
    certify_realness(result, roots.conjugate_closed(), options.realness_tol);
    return result;
}

EvalResult limit_A_confluent(const RootMultiset& roots, unsigned S, const LimitOptions& options) {
    require_stationary(roots);
    EvalResult result;
    result.value = laurent_coefficient(roots, S, contour_points_for(roots, S), contour_radius(roots));
    result.method = Method::Confluent;
    result.clusters = cluster_roots(roots, options.cluster_tol);
    certify_realness(result, roots.conjugate_closed(), options.realness_tol);
    return result;
}

Complex F_product(std::span<const Complex> roots, Complex t) noexcept {
    Complex f = 1.0;
    for (const auto& lam : roots) {
        // 1/(1 - t lam) + (lam/t)/(1 - lam/t), combined over one denominator.
        f *= (1.0 - lam * lam) / ((1.0 - t * lam) * (1.0 - lam / t));
    }
    return f;
}

Complex F_eval(const RootMultiset& roots, Complex t) {
    const double r = std::abs(t);
    const double rho = roots.max_modulus();
    const bool inside = r > rho && (rho == 0.0 || r * rho < 1.0) && r > 0.0 && std::isfinite(r);
    if (!inside) {
        throw Error(ErrorCode::OutsideAnnulus,
                    "|t| = " + format_number(r) + " is outside the annulus (" +
                        format_number(rho) + ", 1/" + format_number(rho) + ")");
    }
    return F_product(roots.roots(), t);
}

double contour_radius(const RootMultiset& /*roots*/) noexcept { return 1.0; }

int contour_points_for(const RootMultiset& roots, unsigned S) {
    constexpr int kMinPoints = 64;
    constexpr int kMaxPoints = 1 << 20;
    const double rho = roots.max_modulus();
    int n = kMinPoints;
    const auto floor = static_cast<long long>(2) * (static_cast<long long>(S) + 8);
    while (n < floor && n < kMaxPoints) n *= 2;
    if (rho == 0.0) return n;
    if (rho >= 1.0) {
        throw Error(ErrorCode::NonStationary, "contour extraction needs max |lambda| < 1");
    }

    // Aliased coefficients B_{S+mN} decay like N^{k-1} rho^{N-S} times the
    // absolute mass of F's factors.
    double mass = 1.0;
    for (const auto& lam : roots.roots()) {
        const double a = std::abs(lam);
        mass *= (1.0 + a) / (1.0 - a);
    }
    const auto k = static_cast<double>(roots.size());
    auto estimate = [&](int points) {
        const double gap = static_cast<double>(points) - static_cast<double>(S);
        return mass * std::pow(static_cast<double>(points), k - 1.0) * std::pow(rho, gap);
    };
    while (n < kMaxPoints && estimate(n) > 1e-18) n *= 2;
    return n;
}

Complex laurent_coefficient(const RootMultiset& roots, unsigned S, int num_points, double radius) {
    if (num_points < 1) {
        throw Error(ErrorCode::InvalidArgument, "contour needs at least one point");
    }
    const auto n = static_cast<std::size_t>(num_points);
    const auto lam = roots.roots();
    const double scale = std::pow(radius, -static_cast<double>(S));

    std::vector<Complex> terms(n);
    for (std::size_t q = 0; q < n; ++q) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
        const Complex t = std::polar(radius, theta);
        // t^{-S} = r^{-S} w^{-qS}; reduce qS mod N to keep the angle exact.
        const std::size_t phase = (q * static_cast<std::size_t>(S)) % n;
        const double back = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n);
        terms[q] = F_product(lam, t) * std::polar(scale, back);
    }
    return pairwise_sum<Complex>(terms) / static_cast<double>(n);
}

}  // namespace arlimit
