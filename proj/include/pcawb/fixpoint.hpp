#ifndef PCAWB_FIXPOINT_HPP
#define PCAWB_FIXPOINT_HPP

#include "pcawb/finite_pas.hpp"
#include "pcawb/numbering.hpp"
#include "pcawb/properties.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcawb {

/// Equivalence relation on {0, ..., n-1} as a disjoint-set forest whose
/// roots are the least members of their blocks.
class EqRel {
 public:
  explicit EqRel(std::uint32_t n = 0) : parent_(n) {
    for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
  }

  static EqRel identity(std::uint32_t n) { return EqRel(n); }
  static EqRel all(std::uint32_t n) {
    EqRel r(n);
    for (std::uint32_t i = 1; i < n; ++i) r.merge(0, i);
    return r;
  }
  /// From a block label per element.
  static EqRel from_classes(const std::vector<int>& cls) {
    EqRel r(static_cast<std::uint32_t>(cls.size()));
    std::map<int, std::uint32_t> first;
    for (std::uint32_t i = 0; i < cls.size(); ++i) {
      auto [it, fresh] = first.emplace(cls[i], i);
      if (!fresh) r.merge(it->second, i);
    }
    return r;
  }
  static EqRel from_json(const nlohmann::json& j, std::uint32_t n) {
    return from_classes(classes_from_partition_json(j, n));
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }

  std::uint32_t find(std::uint32_t a) const {
    while (parent_[a] != a) a = parent_[a];
    return a;
  }
  bool same(std::uint32_t a, std::uint32_t b) const { return find(a) == find(b); }

  /// Joins two blocks; false if they were already one.
  bool merge(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  /// Blocks sorted by least member, each block ascending.
  std::vector<std::vector<std::uint32_t>> blocks() const {
    std::map<std::uint32_t, std::vector<std::uint32_t>> by_root;
    for (std::uint32_t i = 0; i < size(); ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [r, b] : by_root) out.push_back(std::move(b));
    return out;
  }

  /// Block index per element, numbered by least member.
  std::vector<int> classes() const {
    std::vector<int> out(size());
    std::map<std::uint32_t, int> idx;
    for (std::uint32_t i = 0; i < size(); ++i) {
      auto [it, fresh] = idx.emplace(find(i), static_cast<int>(idx.size()));
      out[i] = it->second;
    }
    return out;
  }

  bool subset_of(const EqRel& other) const {
    for (std::uint32_t i = 0; i < size(); ++i)
      if (!other.same(i, find(i))) return false;
    return true;
  }

  bool has_nontrivial_block() const {
    for (std::uint32_t i = 0; i < size(); ++i)
      if (find(i) != i) return true;
    return false;
  }

  nlohmann::json to_json() const { return blocks(); }

  friend bool operator==(const EqRel& x, const EqRel& y) { return x.size() == y.size() && x.classes() == y.classes(); }

 private:
  std::vector<std::uint32_t> parent_;
};

inline std::string to_string(const EqRel& r) {
  std::string out = "{";
  bool first_block = true;
  for (const auto& b : r.blocks()) {
    out += first_block ? "{" : ",{";
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i]);
    out += "}";
    first_block = false;
  }
  return out + "}";
}

/// f ~R g on a finite table: for every x, f x and g x are both undefined
/// or both defined and R-related.
inline bool rows_related(const EqRel& r, const FinitePas& m, std::uint32_t f, std::uint32_t g) {
  for (std::uint32_t x = 0; x < m.size(); ++x) {
    const auto &a = m.at(f, x), &b = m.at(g, x);
    if (a.has_value() != b.has_value()) return false;
    if (a && !r.same(*a, *b)) return false;
  }
  return true;
}

/// The relation f ~ g iff for all x, f x and g x are related by R (in the
/// extended sense: both undefined counts as related).
inline EqRel operator_step(const EqRel& r, const FinitePas& m) {
  if (r.size() != m.size()) throw InputError("relation and table have different carriers");
  const std::uint32_t n = m.size();
  // Row signatures: class of each product, or -1 for undefined.
  std::map<std::vector<int>, std::uint32_t> seen;
  EqRel out(n);
  for (std::uint32_t f = 0; f < n; ++f) {
    std::vector<int> sig(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      const auto& c = m.at(f, x);
      sig[x] = c ? static_cast<int>(r.find(*c)) : -1;
    }
    auto [it, fresh] = seen.emplace(std::move(sig), f);
    if (!fresh) out.merge(it->second, f);
  }
  return out;
}

enum class FixMode { ImplicationOnly, Biconditional };

/// One direction of f ~ g <=> (for all x) f x ~ g x on a fixed point.
struct DirectionStatus {
  bool holds = true;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> witness;
  std::optional<std::uint32_t> x;
};

struct FixpointResult {
  EqRel relation;
  std::uint32_t iterations = 0;
  std::vector<EqRel> trace;
  /// Biconditional mode only: forward is f ~ g => (for all x) f x ~ g x,
  /// backward is the converse (true on every output by construction).
  std::optional<DirectionStatus> forward;
  std::optional<DirectionStatus> backward;
};

/// Least relation containing the seed and closed under the operator:
/// repeatedly merges every pair the operator relates, scanning pairs in
/// lexicographic order and merging immediately, until a pass changes
/// nothing. `iterations` counts passes including the final stable one.
inline FixpointResult least_fixed_point(const EqRel& seed, const FinitePas& m, FixMode mode = FixMode::ImplicationOnly,
                                        bool keep_trace = false) {
  if (seed.size() != m.size()) throw InputError("seed and table have different carriers");
  FixpointResult out{seed, 0, {}, std::nullopt, std::nullopt};
  EqRel& r = out.relation;
  if (keep_trace) out.trace.push_back(r);
  const std::uint32_t n = m.size();
  bool changed = true;
  while (changed) {
    changed = false;
    ++out.iterations;
    for (std::uint32_t f = 0; f < n; ++f)
      for (std::uint32_t g = f + 1; g < n; ++g)
        if (!r.same(f, g) && rows_related(r, m, f, g)) {
          r.merge(f, g);
          changed = true;
        }
    if (keep_trace) out.trace.push_back(r);
  }
  if (mode == FixMode::Biconditional) {
    DirectionStatus fwd, bwd;
    for (std::uint32_t f = 0; f < n && fwd.holds; ++f)
      for (std::uint32_t g = f + 1; g < n && fwd.holds; ++g) {
        if (!r.same(f, g)) continue;
        for (std::uint32_t x = 0; x < n; ++x) {
          const auto &a = m.at(f, x), &b = m.at(g, x);
          if (a.has_value() != b.has_value() || (a && !r.same(*a, *b))) {
            fwd = {false, std::make_pair(f, g), x};
            break;
          }
        }
      }
    for (std::uint32_t f = 0; f < n && bwd.holds; ++f)
      for (std::uint32_t g = f + 1; g < n && bwd.holds; ++g)
        if (!r.same(f, g) && rows_related(r, m, f, g)) bwd = {false, std::make_pair(f, g), std::nullopt};
    out.forward = fwd;
    out.backward = bwd;
  }
  return out;
}

/// Outcome of the strong-extensional-but-not-left-algebraic construction.
struct StrongNotAlgebraicReport {
  enum class Status { Witnessed, Degenerate, NoWitness };
  Status status = Status::NoWitness;
  EqRel relation;
  Verdict strong_extensional;
  Verdict left_algebraic;
  /// f ~ g, z f = a, z g = b with a not ~ b.
  std::optional<std::uint32_t> f, g, z;
  std::optional<FinitePas::Cell> a, b;
  std::string note;
};

/// Builds gamma as the least fixed point above the seed, confirms strong
/// extensionality exhaustively, then looks for z with z f not ~ z g.
inline StrongNotAlgebraicReport demo_strong_not_algebraic(const FinitePas& m, const EqRel& seed) {
  StrongNotAlgebraicReport rep;
  if (!seed.has_nontrivial_block()) {
    rep.status = StrongNotAlgebraicReport::Status::Degenerate;
    rep.relation = seed;
    rep.note = "degenerate-input: the seed relates no two distinct elements";
    return rep;
  }
  rep.relation = least_fixed_point(seed, m).relation;
  LabelNumbering gamma = LabelNumbering::from_classes(m, rep.relation.classes(), "lfp");
  std::vector<Element> all;
  for (std::uint32_t i = 0; i < m.size(); ++i) all.emplace_back(i);
  rep.strong_extensional = check_strong_extensional(gamma, all, kDefaultFuel);
  rep.left_algebraic = check_left_algebraic(gamma, all, kDefaultFuel);
  if (rep.relation.blocks().size() < 2) {
    rep.status = StrongNotAlgebraicReport::Status::Degenerate;
    rep.note = "degenerate-input: the fixed point has a single class";
    return rep;
  }
  const auto& r = rep.relation;
  for (std::uint32_t f = 0; f < m.size(); ++f)
    for (std::uint32_t g = f + 1; g < m.size(); ++g) {
      if (!r.same(f, g)) continue;
      for (std::uint32_t z = 0; z < m.size(); ++z) {
        const auto &a = m.at(z, f), &b = m.at(z, g);
        bool related = a.has_value() == b.has_value() && (!a || r.same(*a, *b));
        if (!related) {
          rep.status = StrongNotAlgebraicReport::Status::Witnessed;
          rep.f = f;
          rep.g = g;
          rep.z = z;
          rep.a = a;
          rep.b = b;
          return rep;
        }
      }
    }
  rep.status = StrongNotAlgebraicReport::Status::NoWitness;
  rep.note = "table too small: no z separates a related pair";
  return rep;
}

}  // namespace pcawb

#endif  // PCAWB_FIXPOINT_HPP
