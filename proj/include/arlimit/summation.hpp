#pragma once

#include <cstddef>
#include <span>

namespace arlimit {

/// Leaf width of the pairwise reduction tree. Ranges of at most this many
/// terms are summed left to right; longer ranges split at size/2.
inline constexpr std::size_t kPairwiseLeaf = 32;

/// Split point used by every pairwise reduction in the library. Anything
/// that reproduces this tree (including the concurrent direct sum) yields
/// bit-identical results.
constexpr std::size_t pairwise_split(std::size_t lo, std::size_t hi) noexcept {
    return lo + (hi - lo) / 2;
}

template <typename T>
T pairwise_sum(std::span<const T> terms) {
    const std::size_t n = terms.size();
    if (n <= kPairwiseLeaf) {
        T acc{};
        for (const T& t : terms) acc += t;
        return acc;
    }
    const std::size_t mid = pairwise_split(0, n);
    return pairwise_sum(terms.first(mid)) + pairwise_sum(terms.subspan(mid));
}

}  // namespace arlimit
