#ifndef PCAWB_MODEL_HPP
#define PCAWB_MODEL_HPP

#include "pcawb/outcome.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcawb {

/// Designated k and s elements of a pca-flagged model.
struct PcaWitnesses {
  Element k;
  Element s;
};

/// A partial applicative structure. Carriers are enumerated by dense ids
/// starting at 0; application is deterministic and fuel-monotone.
///
/// Implementations are immutable after construction and safe to share
/// between threads.
class PasModel {
 public:
  virtual ~PasModel() = default;

  virtual std::string name() const = 0;

  /// Number of elements, or nullopt for an unbounded carrier.
  virtual std::optional<std::uint64_t> carrier_size() const = 0;

  virtual bool contains(const Element& e) const {
    if (e < 0) return false;
    auto n = carrier_size();
    return !n || e < *n;
  }

  /// Partial application a.b. Consumes at least one unit of fuel when
  /// fuel remains; returns Unknown once the budget is spent.
  virtual Outcome apply(const Element& a, const Element& b, Fuel& fuel) const = 0;

  virtual std::optional<PcaWitnesses> witnesses() const { return std::nullopt; }

  /// Claim that application is everywhere defined.
  virtual bool total() const { return false; }

  /// Human-readable rendering of an element (the id for plain tables).
  virtual std::string describe(const Element& e) const { return "#" + e.str(); }

  Outcome apply(const Element& a, const Element& b, std::uint64_t fuel) const {
    Fuel f(fuel);
    return apply(a, b, f);
  }

  bool finite() const { return carrier_size().has_value(); }
};

/// Deterministic sample policy: the whole carrier for finite models,
/// otherwise the first `count` ids plus designated witnesses and extras,
/// sorted ascending without duplicates.
struct SamplePolicy {
  std::size_t count = 16;
  std::vector<Element> extra;
  bool include_witnesses = true;
};

inline std::vector<Element> sample_elements(const PasModel& m, const SamplePolicy& policy = {}) {
  std::vector<Element> out;
  if (auto n = m.carrier_size()) {
    for (std::uint64_t i = 0; i < *n; ++i) out.emplace_back(i);
    return out;
  }
  for (std::size_t i = 0; i < policy.count; ++i) out.emplace_back(i);
  if (policy.include_witnesses) {
    if (auto w = m.witnesses()) {
      out.push_back(w->k);
      out.push_back(w->s);
    }
  }
  for (const auto& e : policy.extra) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True when `samples` is the entire (finite) carrier, i.e. checks are exhaustive.
inline bool covers_carrier(const PasModel& m, const std::vector<Element>& samples) {
  auto n = m.carrier_size();
  if (!n) return false;
  std::vector<bool> seen(*n, false);
  std::uint64_t hit = 0;
  for (const auto& e : samples) {
    auto id = small_id(e);
    if (id && *id < *n && !seen[*id]) {
      seen[*id] = true;
      ++hit;
    }
  }
  return hit == *n;
}

}  // namespace pcawb

#endif  // PCAWB_MODEL_HPP
