#pragma once

#include <cstddef>
#include <span>

namespace padic {

/// Pairwise (cascade) summation in a fixed order; deterministic for a given input.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
    if (terms.empty()) return T{};
    if (terms.size() <= 8) {
        T acc{};
        for (const T &x : terms) acc += x;
        return acc;
    }
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

} // namespace padic
