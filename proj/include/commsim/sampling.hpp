#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "commsim/rng.hpp"

namespace commsim {

// Picks k distinct indices from [0, n) uniformly at random (partial
// Fisher-Yates over scratch). k >= n returns all indices in order without
// consuming draws.
inline void sample_k_of_n(std::uint32_t n, std::uint32_t k, Rng& rng,
                          std::vector<std::uint32_t>& scratch,
                          std::vector<std::uint32_t>& out) {
    out.clear();
    if (k >= n) {
        for (std::uint32_t i = 0; i < n; ++i) out.push_back(i);
        return;
    }
    scratch.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) scratch[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uint32_t j = i + rng.below(n - i);
        std::swap(scratch[i], scratch[j]);
        out.push_back(scratch[i]);
    }
}

// Indices of the k largest keys, ties at the cutoff broken uniformly at
// random. Keys strictly above the cutoff are kept in input order; the
// remaining slots are filled by sampling among the keys equal to the cutoff.
// Consumes RNG draws only when the cutoff is actually contested.
template <typename Key>
void top_k_indices(const std::vector<Key>& keys, std::uint32_t k, Rng& rng,
                   std::vector<std::uint32_t>& scratch,
                   std::vector<std::uint32_t>& out) {
    out.clear();
    const std::uint32_t n = static_cast<std::uint32_t>(keys.size());
    if (k == 0) return;
    if (k >= n) {
        for (std::uint32_t i = 0; i < n; ++i) out.push_back(i);
        return;
    }
    // Find the k-th largest key value.
    scratch.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) scratch[i] = i;
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] > keys[b]; });
    const Key cutoff = keys[scratch[k - 1]];

    std::vector<std::uint32_t>& ties = scratch;
    ties.clear();
    for (std::uint32_t i = 0; i < n; ++i) {
        if (keys[i] > cutoff) {
            out.push_back(i);
        } else if (keys[i] == cutoff) {
            ties.push_back(i);
        }
    }
    std::uint32_t need = k - static_cast<std::uint32_t>(out.size());
    if (need == ties.size()) {
        out.insert(out.end(), ties.begin(), ties.end());
    } else {
        for (std::uint32_t i = 0; i < need; ++i) {
            std::uint32_t j = i + rng.below(static_cast<std::uint32_t>(ties.size()) - i);
            std::swap(ties[i], ties[j]);
            out.push_back(ties[i]);
        }
    }
}

} // namespace commsim
