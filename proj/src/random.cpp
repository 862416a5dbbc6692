#include "sackg/random.hpp"

#include <numeric>

#include "sackg/errors.hpp"

namespace sackg::rng {

std::vector<std::size_t> sample_without_replacement(std::size_t pool, std::size_t k,
                                                    std::mt19937_64& engine) {
  if (k > pool) {
    throw InsufficientPoolError("cannot sample " + std::to_string(k) + " items from a pool of " +
                                std::to_string(pool));
  }
  std::vector<std::size_t> indices(pool);
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(engine() % (pool - i));
    std::swap(indices[i], indices[j]);
    out.push_back(indices[i]);
  }
  return out;
}

std::vector<std::size_t> sample_without_replacement(std::size_t pool, std::size_t k,
                                                    std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return sample_without_replacement(pool, k, engine);
}

}  // namespace sackg::rng
