#pragma once

#include <cstdint>

#include "arlimit/model.hpp"

namespace arlimit {

/// Largest number of index tuples n^k the direct sum will enumerate.
inline constexpr std::uint64_t kDirectSumBudget = 1'000'000'000ULL;

inline constexpr int kDefaultSlopeN1 = 150;
inline constexpr int kDefaultSlopeN2 = 200;

/**
 * T(n) = sum over (i_1..i_k) in {1..n}^k of prod_p lambda_p^{|i_p - i_{p+1} - s_p|},
 * with i_{k+1} = i_1.
 *
 * Terms are reduced by the library's pairwise tree over the lexicographic
 * tuple order (i_1 most significant). Subtrees may be evaluated on up to
 * `threads` threads; the tree is fixed, so the result is bit-identical for
 * any thread count. threads == 0 means hardware concurrency.
 *
 * Throws BudgetExceeded when n^k > kDirectSumBudget.
 */
Complex direct_sum_S4(const RootMultiset& roots, const ShiftVector& shifts, int n,
                      unsigned threads = 1);

struct SlopeEstimate {
    Complex value;
    int n1 = 0;
    int n2 = 0;
    Complex t1;
    Complex t2;
};

/// (T(n2) - T(n1)) / (n2 - n1): the n-linear coefficient of the lattice sum
/// once the exponentially decaying part has died out.
SlopeEstimate slope_estimate(const RootMultiset& roots, const ShiftVector& shifts,
                             int n1 = kDefaultSlopeN1, int n2 = kDefaultSlopeN2,
                             unsigned threads = 1);

/**
 * B_S restricted to tuples with every |m_p| <= M, built by convolving the k
 * truncated two-sided sequences (lambda_p^{|m|})_{|m| <= M}.
 *
 * tail_bound is a certified bound on |B_S - result|: a dropped tuple has
 * some |m_p| > M, and summing that coordinate's geometric tail against the
 * absolute sums of the other free coordinates bounds every such tuple.
 */
EvalResult bs_truncated(const RootMultiset& roots, unsigned S, int M);

/// Tail bound bs_truncated() would report, without doing the convolution.
double bs_tail_bound(const RootMultiset& roots, unsigned S, int M);

/// Smallest M >= S whose tail bound is <= target. Throws BudgetExceeded if
/// none is found below max_M.
int bs_order_for(const RootMultiset& roots, unsigned S, double target, int max_M = 1 << 16);

/// Validated trapezoid-rule extraction of the t^S Laurent coefficient of F
/// on the circle of radius sqrt(max|lambda|). Requires
/// num_points >= 2(S + 8).
EvalResult contour_coefficient(const RootMultiset& roots, unsigned S, int num_points);

}  // namespace arlimit
