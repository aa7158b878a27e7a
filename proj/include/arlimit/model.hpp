#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace arlimit {

using Complex = std::complex<double>;

/// Relative tolerance for pairing a root with the conjugate of another:
/// |a - conj(b)| <= kConjugatePairingTol * max(1, |a|).
inline constexpr double kConjugatePairingTol = 1e-12;

/**
 * AR(k) coefficients alpha_1..alpha_k of
 *
 *     X_i = alpha_1 X_{i-1} + ... + alpha_k X_{i-k} + eps_i.
 *
 * The order k is the number of coefficients. A zero trailing coefficient is
 * rejected rather than trimmed, so k always matches the root count.
 */
class ARCoefficients {
public:
    explicit ARCoefficients(std::vector<double> alphas);

    [[nodiscard]] std::span<const double> alphas() const noexcept { return alphas_; }
    [[nodiscard]] std::size_t order() const noexcept { return alphas_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return alphas_.at(i); }

private:
    std::vector<double> alphas_;
};

/**
 * Ordered multiset of (possibly complex, possibly repeated) characteristic
 * roots. Stationarity and conjugate closure are computed once at
 * construction; the object is immutable afterwards.
 */
class RootMultiset {
public:
    explicit RootMultiset(std::vector<Complex> roots);

    /// Convenience for all-real input.
    static RootMultiset from_real(std::span<const double> roots);

    [[nodiscard]] std::span<const Complex> roots() const noexcept { return roots_; }
    [[nodiscard]] std::size_t size() const noexcept { return roots_.size(); }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return roots_.at(i); }

    [[nodiscard]] double max_modulus() const noexcept { return max_modulus_; }
    /// max_j |lambda_j| < 1
    [[nodiscard]] bool stationary() const noexcept { return max_modulus_ < 1.0; }
    [[nodiscard]] bool conjugate_closed() const noexcept { return conjugate_closed_; }

private:
    std::vector<Complex> roots_;
    double max_modulus_ = 0.0;
    bool conjugate_closed_ = false;
};

/// True iff every root's conjugate appears with equal multiplicity, within
/// kConjugatePairingTol. Independent of the order of the input.
bool is_conjugate_closed(std::span<const Complex> roots);

/// Throws NonStationary when some |lambda_j| >= 1 - stationarity_margin.
/// Returns the (unchanged, already annotated) multiset otherwise.
RootMultiset validate_roots(const RootMultiset& roots, double stationarity_margin = 0.0);

/// Integer shifts s_1..s_k. Only S = |s_1 + ... + s_k| enters the limit.
class ShiftVector {
public:
    explicit ShiftVector(std::vector<long long> shifts);

    /// (S, 0, ..., 0) of length k; a canonical representative for a given S.
    static ShiftVector canonical(std::size_t k, unsigned S);

    [[nodiscard]] std::span<const long long> shifts() const noexcept { return shifts_; }
    [[nodiscard]] std::size_t size() const noexcept { return shifts_.size(); }
    [[nodiscard]] unsigned S() const noexcept { return S_; }

private:
    std::vector<long long> shifts_;
    unsigned S_ = 0;
};

enum class Method { DistinctResidues, Confluent, Contour, Truncated, DirectSum };

std::string_view method_name(Method m) noexcept;

/// A group of roots lying within the cluster tolerance of each other
/// (transitively). Singletons are clusters too.
struct RootCluster {
    std::vector<std::size_t> indices;
    Complex centroid;

    [[nodiscard]] std::size_t multiplicity() const noexcept { return indices.size(); }
};

struct EvalResult {
    Complex value;
    /// Present only when the input was conjugate closed and the imaginary
    /// part was certified negligible.
    std::optional<double> real_value;
    /// |imag(value)|, reported whether or not it was discarded.
    double max_imag = 0.0;
    Method method = Method::DistinctResidues;
    /// Certified bound on truncation error (truncated oracle only).
    std::optional<double> tail_bound;
    std::vector<RootCluster> clusters;
};

/// Relative realness tolerance: |imag| <= tol * (1 + |value|).
inline constexpr double kRealnessTol = 1e-10;

/**
 * Fills real_value and max_imag. When conjugate_closed is true and the
 * imaginary part exceeds the tolerance, throws RealnessViolation: the
 * exact answer is real, so a large imaginary part means a numerical failure.
 */
void certify_realness(EvalResult& result, bool conjugate_closed,
                      double realness_tol = kRealnessTol);

}  // namespace arlimit
