#pragma once

#include <span>
#include <vector>

#include "arlimit/model.hpp"

namespace arlimit {

/// lambda^k + c_1 lambda^{k-1} + ... + c_k, stored highest degree first with
/// a leading 1.
class MonicPolynomial {
public:
    explicit MonicPolynomial(std::vector<double> coefficients);

    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }

    [[nodiscard]] Complex operator()(Complex z) const noexcept;

private:
    std::vector<double> coeffs_;
};

/// [1, -alpha_1, ..., -alpha_k]
MonicPolynomial char_polynomial(const ARCoefficients& alphas);

/// Coefficients of prod_j (lambda - root_j), highest degree first.
std::vector<Complex> expand_roots(std::span<const Complex> roots);

/// Max absolute difference between the polynomial's coefficients and those
/// of prod_j (lambda - root_j).
double coefficient_residual(const MonicPolynomial& poly, std::span<const Complex> roots);

/// k * 1e-10 * (1 + max |coefficient|)
double residual_target(const MonicPolynomial& poly);

struct RootSolveOptions {
    /// Per-root correction magnitude at which iteration stops.
    double tol = 1e-13;
    int max_iter = 200;
};

struct RootSolution {
    RootMultiset roots;
    double residual = 0.0;
    int iterations = 0;
};

/**
 * All k roots of a monic real polynomial by Aberth-Ehrlich simultaneous
 * iteration.
 *
 * Starting points sit on a circle of radius 1 + max |c_i|, rotated off the
 * real axis. Roots that pair up as conjugates are symmetrized afterwards so
 * the result is exactly conjugate closed, and the list is sorted by
 * (real, imag). Repeated roots come back as nearby distinct values.
 *
 * Throws NoConvergence when the coefficient residual misses
 * residual_target() once the iteration budget is spent.
 */
RootSolution solve_roots(const MonicPolynomial& poly, const RootSolveOptions& options = {});

/// Roots of the characteristic polynomial of an AR model.
RootSolution ar_roots(const ARCoefficients& alphas, const RootSolveOptions& options = {});

bool is_stationary(const RootMultiset& roots) noexcept;

}  // namespace arlimit
