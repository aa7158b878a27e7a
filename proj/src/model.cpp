#include "arlimit/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>

#include "arlimit/error.hpp"

namespace arlimit {

namespace {

bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ARCoefficients::ARCoefficients(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) {
        throw Error(ErrorCode::EmptyInput, "AR order must be at least 1");
    }
    for (double a : alphas_) {
        if (!std::isfinite(a)) {
            throw Error(ErrorCode::InvalidArgument, "AR coefficients must be finite");
        }
    }
    if (alphas_.back() == 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "trailing AR coefficient is zero; the order is overstated");
    }
}

RootMultiset::RootMultiset(std::vector<Complex> roots) : roots_(std::move(roots)) {
    if (roots_.empty()) {
        throw Error(ErrorCode::EmptyInput, "root multiset is empty");
    }
    for (const auto& z : roots_) {
        if (!is_finite(z)) {
            throw Error(ErrorCode::InvalidArgument, "roots must be finite");
        }
        max_modulus_ = std::max(max_modulus_, std::abs(z));
    }
    conjugate_closed_ = is_conjugate_closed(roots_);
}

RootMultiset RootMultiset::from_real(std::span<const double> roots) {
    std::vector<Complex> z(roots.begin(), roots.end());
    return RootMultiset(std::move(z));
}

bool is_conjugate_closed(std::span<const Complex> roots) {
    // Canonical order first, so the greedy matching does not depend on the
    // caller's permutation.
    std::vector<Complex> z(roots.begin(), roots.end());
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        return std::make_tuple(a.real(), a.imag()) < std::make_tuple(b.real(), b.imag());
    });

    const std::size_t k = z.size();
    std::vector<bool> used(k, false);
    for (std::size_t a = 0; a < k; ++a) {
        if (used[a]) continue;
        const double tol = kConjugatePairingTol * std::max(1.0, std::abs(z[a]));
        std::size_t best = k;
        double best_dist = 0.0;
        for (std::size_t b = a; b < k; ++b) {
            if (used[b]) continue;
            const double d = std::abs(z[a] - std::conj(z[b]));
            if (d <= tol && (best == k || d < best_dist)) {
                best = b;
                best_dist = d;
            }
        }
        if (best == k) return false;
        used[a] = true;
        used[best] = true;
    }
    return true;
}

RootMultiset validate_roots(const RootMultiset& roots, double stationarity_margin) {
    if (!(stationarity_margin >= 0.0 && stationarity_margin < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "stationarity margin must lie in [0, 1)");
    }
    if (roots.max_modulus() >= 1.0 - stationarity_margin) {
        throw Error(ErrorCode::NonStationary,
                    "max |lambda| = " + format_number(roots.max_modulus()) +
                        " is not below 1 - margin");
    }
    return roots;
}

ShiftVector::ShiftVector(std::vector<long long> shifts) : shifts_(std::move(shifts)) {
    if (shifts_.empty()) {
        throw Error(ErrorCode::EmptyInput, "shift vector is empty");
    }
    const long long sum = std::accumulate(shifts_.begin(), shifts_.end(), 0LL);
    S_ = static_cast<unsigned>(std::llabs(sum));
}

ShiftVector ShiftVector::canonical(std::size_t k, unsigned S) {
    std::vector<long long> s(k, 0);
    if (k == 0) {
        throw Error(ErrorCode::EmptyInput, "shift vector is empty");
    }
    s[0] = S;
    return ShiftVector(std::move(s));
}

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::DistinctResidues: return "distinct_residues";
        case Method::Confluent: return "confluent";
        case Method::Contour: return "contour";
        case Method::Truncated: return "truncated";
        case Method::DirectSum: return "direct_sum";
    }
    return "unknown";
}

void certify_realness(EvalResult& result, bool conjugate_closed, double realness_tol) {
    result.max_imag = std::abs(result.value.imag());
    result.real_value.reset();
    if (!conjugate_closed) return;
    if (result.max_imag > realness_tol * (1.0 + std::abs(result.value))) {
        throw Error(ErrorCode::RealnessViolation,
                    "conjugate-closed input produced imaginary part " +
                        format_number(result.max_imag));
    }
    result.real_value = result.value.real();
}

}  // namespace arlimit
