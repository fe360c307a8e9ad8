#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace xlcite {

// Deterministic RNG used for every sampling step. std::mt19937_64 output
// is pinned by the standard; the bounded draw below avoids std::shuffle
// and the distribution classes, whose sequences are implementation
// defined.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Unbiased draw in [0, n) via rejection.
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Draws k distinct indices from [0, n) by partial Fisher-Yates.
    // Result order is the draw order; callers sort if needed.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        if (k > n) k = n;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(bounded(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace xlcite
