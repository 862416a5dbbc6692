#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sackg::rng {

// Uniform sample of k distinct indices from [0, pool), in draw order.
//
// The algorithm is pinned so that results are reproducible across platforms
// and so independent reimplementations can check it: a partial Fisher-Yates
// shuffle over the index array where draw i swaps position i with position
// i + (engine() % (pool - i)), using std::mt19937_64 seeded with `seed`.
std::vector<std::size_t> sample_without_replacement(std::size_t pool, std::size_t k,
                                                    std::uint64_t seed);

// Same, but advances a caller-owned engine (used for sequential draws that
// share one seed).
std::vector<std::size_t> sample_without_replacement(std::size_t pool, std::size_t k,
                                                    std::mt19937_64& engine);

}  // namespace sackg::rng
