#ifndef PCAWB_TESTS_SUPPORT_HPP
#define PCAWB_TESTS_SUPPORT_HPP

// Generators and brute-force references shared by the unit and acceptance
// suites. Nothing here calls the checker it is compared against.

#include "pcawb/pcawb.hpp"
#include "pcawb/generate.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace support {

using namespace pcawb;
using Rng = std::mt19937_64;

inline std::string data_path(const std::string& file) { return std::string(PCAWB_DATA_DIR) + "/" + file; }

inline std::vector<Element> ids(std::uint64_t n) {
  std::vector<Element> out;
  for (std::uint64_t i = 0; i < n; ++i) out.emplace_back(i);
  return out;
}

/// Every table over n elements (entries 0..n-1, plus empty if `partial`),
/// visited in lexicographic order of the cell vector.
inline void for_each_table(std::uint32_t n, bool partial, const std::function<void(const FinitePas&)>& visit) {
  const std::uint32_t cells = n * n, radix = partial ? n + 1 : n;
  std::vector<std::uint32_t> digits(cells, 0);
  while (true) {
    std::vector<FinitePas::Cell> t;
    for (auto d : digits) t.push_back(d == n ? FinitePas::Cell{} : FinitePas::Cell{d});
    visit(FinitePas(n, std::move(t)));
    std::uint32_t i = 0;
    while (i < cells && ++digits[i] == radix) digits[i++] = 0;
    if (i == cells) return;
  }
}

/// All partitions of n elements as block labels.
inline std::vector<std::vector<int>> all_partitions(std::uint32_t n) {
  std::vector<std::vector<int>> out;
  oracle::for_each_partition(n, [&](const std::vector<int>& p) { out.push_back(p); });
  return out;
}

/// Reference ~gamma on finite tables: extended equality of cells.
inline bool related(const std::vector<int>& cls, const FinitePas::Cell& a, const FinitePas::Cell& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || cls[*a] == cls[*b];
}

/// Reference congruence test by direct quantification.
inline bool congruence(const FinitePas& m, const std::vector<int>& cls) {
  const auto n = m.size();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t a2 = 0; a2 < n; ++a2)
      for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t b2 = 0; b2 < n; ++b2)
          if (cls[a] == cls[a2] && cls[b] == cls[b2] && !related(cls, m.at(a, b), m.at(a2, b2))) return false;
  return true;
}

/// Reference precompleteness by direct quantification.
inline bool precomplete_ref(const FinitePas& m, const std::vector<int>& cls) {
  const auto n = m.size();
  for (std::uint32_t b = 0; b < n; ++b) {
    bool some = false;
    for (std::uint32_t f = 0; f < n && !some; ++f) {
      bool ok = m.row_total(f);
      for (std::uint32_t a = 0; a < n && ok; ++a)
        if (m.at(b, a)) ok = cls[*m.at(f, a)] == cls[*m.at(b, a)];
      some = ok;
    }
    if (!some) return false;
  }
  return true;
}

/// Does the table admit k and s satisfying the Feferman laws?
inline bool has_pca_witnesses(const FinitePas& m) {
  const auto n = m.size();
  for (std::uint32_t k = 0; k < n; ++k)
    for (std::uint32_t s = 0; s < n; ++s) {
      bool ok = true;
      for (std::uint32_t a = 0; a < n && ok; ++a) {
        auto ka = m.at(k, a);
        if (!ka) {
          ok = false;
          break;
        }
        for (std::uint32_t b = 0; b < n && ok; ++b) ok = m.at(*ka, b) == FinitePas::Cell{a};
      }
      for (std::uint32_t a = 0; a < n && ok; ++a) {
        auto sa = m.at(s, a);
        if (!sa) {
          ok = false;
          break;
        }
        for (std::uint32_t b = 0; b < n && ok; ++b) {
          auto sab = m.at(*sa, b);
          if (!sab) {
            ok = false;
            break;
          }
          for (std::uint32_t c = 0; c < n && ok; ++c) {
            auto lhs = m.at(*sab, c);
            auto ac = m.at(a, c), bc = m.at(b, c);
            FinitePas::Cell rhs = ac && bc ? m.at(*ac, *bc) : FinitePas::Cell{};
            ok = lhs == rhs;
          }
        }
      }
      if (ok) return true;
    }
  return false;
}

/// A random table in which every column is also a row: for a random
/// permutation sigma, row sigma(x) equals column x. Cells linked by
/// (r, c) -> (c, sigma^-1(r)) share one random value (or a hole).
inline FinitePas column_closed_table(Rng& rng, std::uint32_t n, double holes) {
  std::vector<std::uint32_t> sigma(n), inv(n);
  for (std::uint32_t i = 0; i < n; ++i) sigma[i] = i;
  std::shuffle(sigma.begin(), sigma.end(), rng);
  for (std::uint32_t i = 0; i < n; ++i) inv[sigma[i]] = i;
  std::vector<std::optional<FinitePas::Cell>> cells(static_cast<std::size_t>(n) * n);
  std::uniform_int_distribution<std::uint32_t> val(0, n - 1);
  std::bernoulli_distribution hole(holes);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < n; ++c) {
      if (cells[r * n + c]) continue;
      FinitePas::Cell v = hole(rng) ? FinitePas::Cell{} : FinitePas::Cell{val(rng)};
      std::uint32_t rr = r, cc = c;
      while (!cells[rr * n + cc]) {
        cells[rr * n + cc] = v;
        std::uint32_t nr = cc, nc = inv[rr];
        rr = nr;
        cc = nc;
      }
    }
  std::vector<FinitePas::Cell> flat;
  for (auto& c : cells) flat.push_back(*c);
  return FinitePas(n, std::move(flat), std::nullopt, "column-closed");
}

/// The pca totalizer hypothesis on a finite table: every b has a total f
/// whose products f a act like b a (same row) wherever b a is defined.
inline bool totalizer_hypothesis(const FinitePas& m) {
  const auto n = m.size();
  auto same_row = [&](std::uint32_t u, std::uint32_t v) {
    for (std::uint32_t c = 0; c < n; ++c)
      if (m.at(u, c) != m.at(v, c)) return false;
    return true;
  };
  for (std::uint32_t b = 0; b < n; ++b) {
    bool some = false;
    for (std::uint32_t f = 0; f < n && !some; ++f) {
      bool ok = m.row_total(f);
      for (std::uint32_t a = 0; a < n && ok; ++a)
        if (m.at(b, a)) ok = same_row(*m.at(f, a), *m.at(b, a));
      some = ok;
    }
    if (!some) return false;
  }
  return true;
}

/// Random closed-over-params term: leaves are variables, small elements,
/// or the witnesses; depth-bounded.
inline Term random_term(Rng& rng, const std::vector<std::string>& vars, const std::vector<Element>& atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || pick(rng) < 4) {
    std::uniform_int_distribution<std::size_t> which(0, vars.size() + atoms.size() - 1);
    auto i = which(rng);
    return i < vars.size() ? Term::var(vars[i]) : Term::elem(atoms[i - vars.size()]);
  }
  return Term::app(random_term(rng, vars, atoms, depth - 1), random_term(rng, vars, atoms, depth - 1));
}

/// A random finite family, each set listed in random order with a random
/// start delay; sets drawn from a small universe so repeats are common.
struct RandomFamily {
  std::vector<std::vector<Nat>> seqs;
  std::vector<Nat> delays;
  std::vector<NatSet> sets;
};

inline RandomFamily random_family(Rng& rng, std::uint32_t max_indices, Nat universe) {
  RandomFamily f;
  std::uniform_int_distribution<std::uint32_t> count(1, max_indices);
  std::uniform_int_distribution<Nat> elem(0, universe - 1), delay(0, 5);
  std::uniform_int_distribution<int> size(0, 3);
  const std::uint32_t n = count(rng);
  std::vector<std::vector<Nat>> pool;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<Nat> seq;
    if (!pool.empty() && rng() % 3 == 0) {
      seq = pool[rng() % pool.size()];
      std::shuffle(seq.begin(), seq.end(), rng);
    } else {
      std::set<Nat> s;
      for (int k = size(rng); k > 0; --k) s.insert(elem(rng));
      seq.assign(s.begin(), s.end());
      std::shuffle(seq.begin(), seq.end(), rng);
      pool.push_back(seq);
    }
    f.seqs.push_back(seq);
    f.delays.push_back(delay(rng));
    f.sets.emplace_back(seq.begin(), seq.end());
  }
  return f;
}

}  // namespace support

#endif  // PCAWB_TESTS_SUPPORT_HPP
