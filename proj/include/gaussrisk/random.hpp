#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gaussrisk {

/// Seeded generator with a fully specified algorithm.
///
/// std::mt19937_64 is pinned by the standard, but the std distributions are
/// not, so every derived draw (uniform doubles, normals via Box-Muller,
/// bounded integers via rejection, Fisher-Yates shuffles) is implemented here.
/// Given the same seed the stream is identical on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    double normal();

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    std::vector<std::size_t> permutation(std::size_t n);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Derives an independent stream seed from a base seed and a stream tag (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace gaussrisk
