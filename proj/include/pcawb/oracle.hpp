#ifndef PCAWB_ORACLE_HPP
#define PCAWB_ORACLE_HPP

#include "pcawb/finite_pas.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace pcawb::oracle {

// Reference computations by exhaustive enumeration. They share no code
// with the iterative algorithms they are used to cross-check.

/// Every partition of {0..n-1} as a restricted growth string.
inline void for_each_partition(std::uint32_t n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> rgs(n, 0);
  std::function<void(std::uint32_t, int)> rec = [&](std::uint32_t i, int max_used) {
    if (i == n) {
      visit(rgs);
      return;
    }
    for (int b = 0; b <= max_used + 1; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(max_used, b));
    }
  };
  if (n == 0) {
    visit(rgs);
    return;
  }
  rgs[0] = 0;
  rec(1, 0);
}

/// P is closed: whenever f x and g x are P-related for all x, f P g.
inline bool closed_under_operator(const std::vector<int>& p, const FinitePas& m) {
  const std::uint32_t n = m.size();
  for (std::uint32_t f = 0; f < n; ++f)
    for (std::uint32_t g = 0; g < n; ++g) {
      if (p[f] == p[g]) continue;
      bool related = true;
      for (std::uint32_t x = 0; x < n && related; ++x) {
        auto a = m.at(f, x), b = m.at(g, x);
        if (a.has_value() != b.has_value()) related = false;
        else if (a && p[*a] != p[*b]) related = false;
      }
      if (related) return false;
    }
  return true;
}

inline bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
  for (std::size_t i = 0; i < fine.size(); ++i)
    for (std::size_t j = 0; j < fine.size(); ++j)
      if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
  return true;
}

/// The least closed partition above the seed, found as the closed
/// partition refining all others. Returned in first-occurrence labels.
inline std::optional<std::vector<int>> minimal_fixed_point(const std::vector<int>& seed, const FinitePas& m) {
  std::vector<std::vector<int>> closed;
  for_each_partition(m.size(), [&](const std::vector<int>& p) {
    if (refines(seed, p) && closed_under_operator(p, m)) closed.push_back(p);
  });
  for (const auto& c : closed) {
    bool least = true;
    for (const auto& o : closed)
      if (!refines(c, o)) {
        least = false;
        break;
      }
    if (least) return c;
  }
  return std::nullopt;
}

}  // namespace pcawb::oracle

#endif  // PCAWB_ORACLE_HPP
