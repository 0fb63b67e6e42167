#ifndef PCAWB_LAWS_HPP
#define PCAWB_LAWS_HPP

#include "pcawb/eval.hpp"
#include "pcawb/model.hpp"
#include "pcawb/numbering.hpp"
#include "pcawb/properties.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcawb {

/// Feferman's laws for a claimed k and s over every sampled triple:
/// k a defined, k a b = a, s a b defined, s a b c ~= a c (b c).
/// Triples that fuel leaves unresolved are counted, never taken as agreement.
inline Verdict check_pca_witnesses(const PasModel& m, const PcaWitnesses& claimed, const std::vector<Element>& xs,
                                   std::uint64_t fuel) {
  const PcaWitnesses* w = &claimed;
  Products p(m, fuel);
  detail::Scan scan;
  const bool exhaustive = covers_carrier(m, xs);

  for (const auto& a : xs) {
    const Outcome& ka = p.at(w->k, a);
    if (ka.is_unknown()) {
      ++scan.unresolved;
      continue;
    }
    if (!ka.is_defined()) {
      scan.failure = Verdict::fails({{"a", a}}, "k a is undefined");
      return scan.finish(exhaustive);
    }
    for (const auto& b : xs) {
      const Outcome& kab = p.at(ka.value(), b);
      if (kab.is_unknown()) {
        ++scan.unresolved;
      } else if (!kab.is_defined() || kab.value() != a) {
        scan.failure = Verdict::fails({{"a", a}, {"b", b}}, "k a b is not a");
        return scan.finish(exhaustive);
      } else {
        ++scan.resolved;
      }
    }
  }

  for (const auto& a : xs) {
    const Outcome& sa = p.at(w->s, a);
    if (sa.is_unknown()) {
      ++scan.unresolved;
      continue;
    }
    if (!sa.is_defined()) {
      scan.failure = Verdict::fails({{"a", a}}, "s a is undefined");
      return scan.finish(exhaustive);
    }
    for (const auto& b : xs) {
      const Outcome& sab = p.at(sa.value(), b);
      if (sab.is_unknown()) {
        ++scan.unresolved;
        continue;
      }
      if (!sab.is_defined()) {
        scan.failure = Verdict::fails({{"a", a}, {"b", b}}, "s a b is undefined");
        return scan.finish(exhaustive);
      }
      for (const auto& c : xs) {
        Outcome lhs = p.at(sab.value(), c);
        Outcome ac = p.at(a, c);
        Outcome bc = p.at(b, c);
        Outcome rhs = Outcome::unknown();
        if (ac.is_undefined() || bc.is_undefined()) {
          rhs = Outcome::undefined();
        } else if (ac.is_defined() && bc.is_defined()) {
          rhs = p.at(ac.value(), bc.value());
        }
        Truth t = kleene_equal(lhs, rhs);
        if (t == Truth::False) {
          scan.failure = Verdict::fails({{"a", a}, {"b", b}, {"c", c}}, "s a b c is not ~= a c (b c)");
          return scan.finish(exhaustive);
        }
        if (t == Truth::Unknown) ++scan.unresolved;
        else ++scan.resolved;
      }
    }
  }
  return scan.finish(exhaustive);
}

inline Verdict check_pca_witnesses(const PasModel& m, const std::vector<Element>& xs, std::uint64_t fuel) {
  auto w = m.witnesses();
  if (!w) throw UnsupportedOperation("model '" + m.name() + "' has no designated k and s");
  return check_pca_witnesses(m, *w, xs, fuel);
}

/// Result of a bounded search for an element behaving like k.
struct KSearch {
  std::optional<Element> found;
  std::uint64_t bound = 0;
  std::uint64_t unresolved_candidates = 0;

  std::string label() const {
    return found ? "FoundCandidate(#" + found->str() + ")" : "NoneWithin(" + std::to_string(bound) + ")";
  }
};

/// Looks for e < bound with e a b = a for all a, b < bound. On a finite
/// carrier the bound is clipped to its size.
inline KSearch search_combinator_k(const PasModel& m, std::uint64_t bound, std::uint64_t fuel = kDefaultFuel) {
  if (auto n = m.carrier_size()) bound = std::min(bound, *n);
  KSearch out;
  out.bound = bound;
  Products p(m, fuel);
  for (std::uint64_t e = 0; e < bound; ++e) {
    bool ok = true, unresolved = false;
    for (std::uint64_t a = 0; a < bound && ok; ++a) {
      const Outcome& ea = p.at(Element(e), Element(a));
      if (ea.is_unknown()) {
        unresolved = true;
        continue;
      }
      if (!ea.is_defined()) {
        ok = false;
        break;
      }
      for (std::uint64_t b = 0; b < bound; ++b) {
        const Outcome& eab = p.at(ea.value(), Element(b));
        if (eab.is_unknown()) {
          unresolved = true;
          continue;
        }
        if (!eab.is_defined() || eab.value() != a) {
          ok = false;
          break;
        }
      }
    }
    if (ok && !unresolved) {
      out.found = Element(e);
      return out;
    }
    if (ok && unresolved) ++out.unresolved_candidates;
  }
  return out;
}

}  // namespace pcawb

#endif  // PCAWB_LAWS_HPP
