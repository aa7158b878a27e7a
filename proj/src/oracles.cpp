#include "arlimit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "arlimit/error.hpp"
#include "arlimit/limit_eval.hpp"
#include "arlimit/summation.hpp"

namespace arlimit {

namespace {

void require_stationary(const RootMultiset& roots) {
    if (!roots.stationary()) {
        throw Error(ErrorCode::NonStationary,
                    "max |lambda| = " + format_number(roots.max_modulus()) + " is not below 1");
    }
}

// Evaluates the lattice sum over a contiguous block of the lexicographic
// tuple order, reproducing the pairwise tree of pairwise_sum().
class LatticeSum {
public:
    LatticeSum(const RootMultiset& roots, const ShiftVector& shifts, int n)
        : k_(roots.size()), n_(static_cast<std::size_t>(n)) {
        // table_[p][(i_p - i_{p+1}) + n - 1] = lambda_p^{|i_p - i_{p+1} - s_p|}
        const auto lam = roots.roots();
        const auto s = shifts.shifts();
        table_.resize(k_);
        for (std::size_t p = 0; p < k_; ++p) {
            const long long reach = static_cast<long long>(n_) - 1 + std::llabs(s[p]);
            std::vector<Complex> powers(static_cast<std::size_t>(reach) + 1);
            powers[0] = 1.0;
            for (std::size_t m = 1; m < powers.size(); ++m) powers[m] = powers[m - 1] * lam[p];

            auto& row = table_[p];
            row.resize(2 * n_ - 1);
            for (std::size_t idx = 0; idx < row.size(); ++idx) {
                const long long d =
                    static_cast<long long>(idx) - static_cast<long long>(n_ - 1) - s[p];
                row[idx] = powers[static_cast<std::size_t>(std::llabs(d))];
            }
        }
    }

    Complex range(std::size_t lo, std::size_t hi, unsigned spawn) const {
        if (hi - lo <= kPairwiseLeaf) return leaf(lo, hi);
        const std::size_t mid = pairwise_split(lo, hi);
        if (spawn > 1) {
            const unsigned right_share = spawn / 2;
            auto left = std::async(std::launch::async,
                                   [&] { return range(lo, mid, spawn - right_share); });
            const Complex right = range(mid, hi, right_share);
            return left.get() + right;
        }
        return range(lo, mid, 1) + range(mid, hi, 1);
    }

private:
    Complex leaf(std::size_t lo, std::size_t hi) const {
        // Decode lo into base-n digits, most significant first.
        std::vector<std::size_t> idx(k_);
        std::size_t rem = lo;
        for (std::size_t p = k_; p-- > 0;) {
            idx[p] = rem % n_;
            rem /= n_;
        }
        Complex acc = 0.0;
        for (std::size_t t = lo; t < hi; ++t) {
            Complex term = 1.0;
            for (std::size_t p = 0; p < k_; ++p) {
                const std::size_t next = idx[(p + 1) % k_];
                term *= table_[p][idx[p] + (n_ - 1) - next];
            }
            acc += term;
            for (std::size_t p = k_; p-- > 0;) {
                if (++idx[p] < n_) break;
                idx[p] = 0;
            }
        }
        return acc;
    }

    std::size_t k_;
    std::size_t n_;
    std::vector<std::vector<Complex>> table_;
};

std::uint64_t checked_tuple_count(std::size_t k, int n) {
    std::uint64_t total = 1;
    for (std::size_t p = 0; p < k; ++p) {
        total *= static_cast<std::uint64_t>(n);
        if (total > kDirectSumBudget) {
            throw Error(ErrorCode::BudgetExceeded,
                        "n^k exceeds the direct-sum budget of 1e9 tuples (n=" +
                            std::to_string(n) + ", k=" + std::to_string(k) + ")");
        }
    }
    return total;
}

}  // namespace

Complex direct_sum_S4(const RootMultiset& roots, const ShiftVector& shifts, int n,
                      unsigned threads) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "direct sum needs n >= 1");
    }
    if (shifts.size() != roots.size()) {
        throw Error(ErrorCode::LengthMismatch, "shift vector length differs from root count");
    }
    const auto total = checked_tuple_count(roots.size(), n);
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());

    const LatticeSum sum(roots, shifts, n);
    return sum.range(0, static_cast<std::size_t>(total), threads);
}

SlopeEstimate slope_estimate(const RootMultiset& roots, const ShiftVector& shifts, int n1, int n2,
                             unsigned threads) {
    if (!(n1 >= 1 && n2 > n1)) {
        throw Error(ErrorCode::InvalidArgument, "slope estimate needs 1 <= n1 < n2");
    }
    checked_tuple_count(roots.size(), n2);
    SlopeEstimate est;
    est.n1 = n1;
    est.n2 = n2;
    est.t1 = direct_sum_S4(roots, shifts, n1, threads);
    est.t2 = direct_sum_S4(roots, shifts, n2, threads);
    est.value = (est.t2 - est.t1) / static_cast<double>(n2 - n1);
    return est;
}

double bs_tail_bound(const RootMultiset& roots, unsigned S, int M) {
    if (M < static_cast<int>(S)) {
        throw Error(ErrorCode::InvalidArgument, "truncation order M must be at least S");
    }
    require_stationary(roots);
    const std::size_t k = roots.size();
    if (k == 1) return 0.0;

    std::vector<double> mod(k), mass(k);
    for (std::size_t p = 0; p < k; ++p) {
        mod[p] = std::abs(roots[p]);
        mass[p] = (1.0 + mod[p]) / (1.0 - mod[p]);
    }

    double bound = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
        const double edge = std::pow(mod[p], M + 1);
        // Coordinate p is free and over the tail; one other coordinate is
        // pinned by the constraint (bounded by 1), the rest are free.
        std::size_t pinned = p == 0 ? 1 : 0;
        for (std::size_t q = 0; q < k; ++q) {
            if (q != p && mass[q] > mass[pinned]) pinned = q;
        }
        double free_tail = 2.0 * edge / (1.0 - mod[p]);
        // Alternative: coordinate p is the pinned one, bounded by its edge
        // value, all others free.
        double pinned_tail = edge;
        for (std::size_t q = 0; q < k; ++q) {
            if (q == p) continue;
            pinned_tail *= mass[q];
            if (q != pinned) free_tail *= mass[q];
        }
        bound += std::min(free_tail, pinned_tail);
    }
    return bound;
}

int bs_order_for(const RootMultiset& roots, unsigned S, double target, int max_M) {
    const int lo_start = static_cast<int>(S);
    if (bs_tail_bound(roots, S, lo_start) <= target) return lo_start;
    int lo = lo_start;
    int hi = std::max(lo_start + 1, 16);
    while (bs_tail_bound(roots, S, hi) > target) {
        lo = hi;
        if (hi >= max_M) {
            throw Error(ErrorCode::BudgetExceeded,
                        "no truncation order below " + std::to_string(max_M) +
                            " reaches the requested tail bound");
        }
        hi = std::min(2 * hi, max_M);
    }
    // Invariant: bound(lo) > target >= bound(hi).
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (bs_tail_bound(roots, S, mid) > target ? lo : hi) = mid;
    }
    return hi;
}

EvalResult bs_truncated(const RootMultiset& roots, unsigned S, int M) {
    const double tail = bs_tail_bound(roots, S, M);  // validates M and stationarity
    const auto lam = roots.roots();
    const std::size_t k = lam.size();
    const auto width = static_cast<std::size_t>(2 * M + 1);
    const auto half = static_cast<std::size_t>(M);

    auto sequence = [&](const Complex& l) {
        std::vector<Complex> seq(width);
        seq[half] = 1.0;
        for (std::size_t m = 1; m <= half; ++m) seq[half + m] = seq[half - m] = seq[half + m - 1] * l;
        return seq;
    };

    // cur holds the convolution of the first p sequences, index offset p*M.
    std::vector<Complex> cur = sequence(lam[0]);
    std::vector<Complex> buffer;
    for (std::size_t p = 1; p + 1 < k; ++p) {
        const auto seq = sequence(lam[p]);
        std::vector<Complex> next(cur.size() + width - 1);
        for (std::size_t i = 0; i < next.size(); ++i) {
            buffer.clear();
            const std::size_t j_lo = i >= width - 1 ? i - (width - 1) : 0;
            const std::size_t j_hi = std::min(i, cur.size() - 1);
            for (std::size_t j = j_lo; j <= j_hi; ++j) buffer.push_back(cur[j] * seq[i - j]);
            next[i] = pairwise_sum<Complex>(buffer);
        }
        cur = std::move(next);
    }

    Complex value = 0.0;
    const std::size_t target = static_cast<std::size_t>(S) + k * half;
    if (k == 1) {
        value = cur[target];
    } else {
        const auto seq = sequence(lam[k - 1]);
        buffer.clear();
        for (std::size_t j = 0; j < cur.size(); ++j) {
            if (target >= j && target - j < width) buffer.push_back(cur[j] * seq[target - j]);
        }
        value = pairwise_sum<Complex>(buffer);
    }

    EvalResult result;
    result.value = value;
    result.method = Method::Truncated;
    result.tail_bound = tail;
    certify_realness(result, roots.conjugate_closed());
    return result;
}

EvalResult contour_coefficient(const RootMultiset& roots, unsigned S, int num_points) {
    require_stationary(roots);
    if (static_cast<long long>(num_points) < 2LL * (static_cast<long long>(S) + 8)) {
        throw Error(ErrorCode::InvalidArgument, "contour needs num_points >= 2(S + 8)");
    }
    EvalResult result;
    result.value = laurent_coefficient(roots, S, num_points, contour_radius(roots));
    result.method = Method::Contour;
    certify_realness(result, roots.conjugate_closed());
    return result;
}

}  // namespace arlimit
