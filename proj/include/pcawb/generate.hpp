#ifndef PCAWB_GENERATE_HPP
#define PCAWB_GENERATE_HPP

#include "pcawb/finite_pas.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace pcawb::gen {

/// Random table of size n; each cell is empty with probability `holes`.
inline FinitePas random_table(std::mt19937_64& rng, std::uint32_t n, double holes = 0.0) {
  std::uniform_int_distribution<std::uint32_t> val(0, n - 1);
  std::bernoulli_distribution hole(holes);
  std::vector<FinitePas::Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n) * n; ++i) {
    if (holes > 0 && hole(rng)) cells.emplace_back(std::nullopt);
    else cells.emplace_back(val(rng));
  }
  return FinitePas(n, std::move(cells), std::nullopt, "random");
}

/// Random partition of {0..n-1} into at most `max_blocks` labelled blocks.
inline std::vector<int> random_partition(std::mt19937_64& rng, std::uint32_t n, std::uint32_t max_blocks) {
  std::uniform_int_distribution<int> blk(0, static_cast<int>(max_blocks) - 1);
  std::vector<int> out(n);
  for (auto& c : out) c = blk(rng);
  return out;
}

}  // namespace pcawb::gen

#endif  // PCAWB_GENERATE_HPP
