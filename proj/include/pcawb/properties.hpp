#ifndef PCAWB_PROPERTIES_HPP
#define PCAWB_PROPERTIES_HPP

#include "pcawb/eval.hpp"
#include "pcawb/model.hpp"
#include "pcawb/numbering.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcawb {

/// Memoized products a.b for one checker run (model applications are pure).
class Products {
 public:
  Products(const PasModel& m, std::uint64_t fuel) : m_(m), fuel_(fuel) {}

  const Outcome& at(const Element& a, const Element& b) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(key, m_.apply(a, b, fuel_)).first->second;
  }

  std::uint64_t fuel() const { return fuel_; }

 private:
  const PasModel& m_;
  std::uint64_t fuel_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Element, Element>, Outcome> memo_;
};

namespace detail {

/// Pairwise gamma-equivalence matrix over the samples, computed once.
class EquivMatrix {
 public:
  EquivMatrix(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) : n_(xs.size()) {
    cells_.assign(n_ * n_, Truth::True);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        Truth t = g.equivalent(xs[i], xs[j], fuel);
        cells_[i * n_ + j] = t;
        cells_[j * n_ + i] = t;
      }
  }
  Truth at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<Truth> cells_;
};

/// Accumulates a universally quantified check: the first resolved
/// violation in scan order wins; unresolved instances are counted.
struct Scan {
  std::optional<Verdict> failure;
  std::uint64_t unresolved = 0;
  std::uint64_t resolved = 0;

  Verdict finish(bool exhaustive) const {
    if (failure) {
      Verdict v = *failure;
      v.exhaustive = exhaustive;
      v.unknowns = unresolved;
      return v;
    }
    if (unresolved > 0 && resolved == 0) {
      Verdict v = Verdict::unknown("every instance was left unresolved by fuel");
      v.unknowns = unresolved;
      return v;
    }
    if (unresolved > 0 && exhaustive) {
      Verdict v = Verdict::unknown("some instances were left unresolved by fuel");
      v.unknowns = unresolved;
      return v;
    }
    Verdict v = Verdict::holds(exhaustive);
    v.unknowns = unresolved;
    return v;
  }
};

/// Evaluates an implication premise => conclusion where either side may
/// be unresolved. Returns true when a violation was recorded.
inline bool record_implication(Scan& scan, Truth premise, Truth conclusion, const Verdict::Witness& w,
                               const std::string& note) {
  if (premise == Truth::False || conclusion == Truth::True) {
    ++scan.resolved;
    return false;
  }
  if (premise == Truth::True && conclusion == Truth::False) {
    scan.failure = Verdict::fails(w, note);
    return true;
  }
  ++scan.unresolved;
  return false;
}

}  // namespace detail

/// (forall x in xs) f x ~gamma g x, with the first separating x if any.
inline std::pair<Truth, std::optional<Element>> right_equivalent(const Element& f, const Element& g,
                                                                 const Numbering& gm, const Products& p,
                                                                 const std::vector<Element>& xs) {
  Truth acc = Truth::True;
  for (const auto& x : xs) {
    Truth t = outcome_equiv_gamma(p.at(f, x), p.at(g, x), gm, p.fuel());
    if (t == Truth::False) return {Truth::False, x};
    acc = truth_and(acc, t);
  }
  return {acc, std::nullopt};
}

/// (forall z in zs) z f ~gamma z g, with the first separating z if any.
inline std::pair<Truth, std::optional<Element>> left_equivalent(const Element& f, const Element& g,
                                                                const Numbering& gm, const Products& p,
                                                                const std::vector<Element>& zs) {
  Truth acc = Truth::True;
  for (const auto& z : zs) {
    Truth t = outcome_equiv_gamma(p.at(z, f), p.at(z, g), gm, p.fuel());
    if (t == Truth::False) return {Truth::False, z};
    acc = truth_and(acc, t);
  }
  return {acc, std::nullopt};
}

/// (forall x in xs) f x ~= g x (Kleene equality).
inline std::pair<Truth, std::optional<Element>> pointwise_kleene(const Element& f, const Element& g,
                                                                 const Products& p, const std::vector<Element>& xs) {
  Truth acc = Truth::True;
  for (const auto& x : xs) {
    Truth t = kleene_equal(p.at(f, x), p.at(g, x));
    if (t == Truth::False) return {Truth::False, x};
    acc = truth_and(acc, t);
  }
  return {acc, std::nullopt};
}

/// ~gamma is a congruence: a ~ a' and b ~ b' imply a b ~ a' b'.
inline Verdict check_algebraic(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  const PasModel& m = g.model();
  Products p(m, fuel);
  detail::EquivMatrix eq(g, xs, fuel);
  detail::Scan scan;
  const std::size_t n = xs.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      if (eq.at(a, a2) == Truth::False) continue;
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t b2 = 0; b2 < n; ++b2) {
          if (eq.at(b, b2) == Truth::False) continue;
          if (a == a2 && b == b2) continue;
          Truth premise = truth_and(eq.at(a, a2), eq.at(b, b2));
          Truth concl = outcome_equiv_gamma(p.at(xs[a], xs[b]), p.at(xs[a2], xs[b2]), g, fuel);
          if (detail::record_implication(scan, premise, concl,
                                         {{"a", xs[a]}, {"a'", xs[a2]}, {"b", xs[b]}, {"b'", xs[b2]}},
                                         "a ~ a' and b ~ b' but a b is not ~ a' b'"))
            return scan.finish(covers_carrier(m, xs));
        }
    }
  return scan.finish(covers_carrier(m, xs));
}

/// Right-algebraic: f ~gamma g implies f x ~gamma g x for every x.
inline Verdict check_right_algebraic(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  detail::EquivMatrix eq(g, xs, fuel);
  detail::Scan scan;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j || eq.at(i, j) == Truth::False) continue;
      auto [t, x] = right_equivalent(xs[i], xs[j], g, p, xs);
      Verdict::Witness w{{"f", xs[i]}, {"g", xs[j]}};
      if (x) w.emplace_back("x", *x);
      if (detail::record_implication(scan, eq.at(i, j), t, w, "f ~ g but f x is not ~ g x"))
        return scan.finish(covers_carrier(g.model(), xs));
    }
  return scan.finish(covers_carrier(g.model(), xs));
}

/// Left-algebraic: f ~gamma g implies z f ~gamma z g for every z.
inline Verdict check_left_algebraic(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  detail::EquivMatrix eq(g, xs, fuel);
  detail::Scan scan;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j || eq.at(i, j) == Truth::False) continue;
      auto [t, z] = left_equivalent(xs[i], xs[j], g, p, xs);
      Verdict::Witness w{{"f", xs[i]}, {"g", xs[j]}};
      if (z) w.emplace_back("z", *z);
      if (detail::record_implication(scan, eq.at(i, j), t, w, "f ~ g but z f is not ~ z g"))
        return scan.finish(covers_carrier(g.model(), xs));
    }
  return scan.finish(covers_carrier(g.model(), xs));
}

/// Inseparability: (forall x f x ~ g x) implies (forall z z f ~ z g).
inline Verdict check_inseparability(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  detail::Scan scan;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      auto [r, x] = right_equivalent(xs[i], xs[j], g, p, xs);
      if (r == Truth::False) {
        ++scan.resolved;
        continue;
      }
      auto [l, z] = left_equivalent(xs[i], xs[j], g, p, xs);
      Verdict::Witness w{{"f", xs[i]}, {"g", xs[j]}};
      if (z) w.emplace_back("z", *z);
      if (detail::record_implication(scan, r, l, w, "f and g agree on every x but z separates them"))
        return scan.finish(covers_carrier(g.model(), xs));
    }
  return scan.finish(covers_carrier(g.model(), xs));
}

/// gamma-extensional: (forall a f a ~= g a) implies f ~gamma g. Pairs
/// range over `cands`, the inner quantifier over `probes`.
inline Verdict check_extensional(const Numbering& g, const std::vector<Element>& cands,
                                 const std::vector<Element>& probes, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  detail::Scan scan;
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      auto [prem, x] = pointwise_kleene(cands[i], cands[j], p, probes);
      if (prem == Truth::False) {
        ++scan.resolved;
        continue;
      }
      Truth concl = g.equivalent(cands[i], cands[j], fuel);
      if (detail::record_implication(scan, prem, concl, {{"f", cands[i]}, {"g", cands[j]}},
                                     "f a ~= g a for every a but f is not ~ g"))
        return scan.finish(covers_carrier(g.model(), cands) && covers_carrier(g.model(), probes));
    }
  return scan.finish(covers_carrier(g.model(), cands) && covers_carrier(g.model(), probes));
}

inline Verdict check_extensional(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  return check_extensional(g, xs, xs, fuel);
}

/// Strongly gamma-extensional: (forall x f x ~gamma g x) implies f ~gamma g.
inline Verdict check_strong_extensional(const Numbering& g, const std::vector<Element>& cands,
                                        const std::vector<Element>& probes, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  detail::Scan scan;
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j) {
      auto [prem, x] = right_equivalent(cands[i], cands[j], g, p, probes);
      if (prem == Truth::False) {
        ++scan.resolved;
        continue;
      }
      Truth concl = g.equivalent(cands[i], cands[j], fuel);
      if (detail::record_implication(scan, prem, concl, {{"f", cands[i]}, {"g", cands[j]}},
                                     "f x ~ g x for every x but f is not ~ g"))
        return scan.finish(covers_carrier(g.model(), cands) && covers_carrier(g.model(), probes));
    }
  return scan.finish(covers_carrier(g.model(), cands) && covers_carrier(g.model(), probes));
}

inline Verdict check_strong_extensional(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  return check_strong_extensional(g, xs, xs, fuel);
}

/// Precompleteness with the totalizer chosen for each b (first in scan order).
struct PrecompleteResult {
  Verdict verdict;
  std::map<Element, Element> totalizers;
};

namespace detail {

enum class Fit { Yes, No, Unresolved };

/// Does f totalize b modulo gamma on xs? With `special` set, positions
/// where b a is undefined must land in the class of *special.
inline Fit totalizes(const Element& f, const Element& b, const Numbering& g, const Products& p,
                     const std::vector<Element>& xs, const std::optional<Element>& special) {
  Fit fit = Fit::Yes;
  for (const auto& a : xs) {
    const Outcome& fa = p.at(f, a);
    if (fa.is_undefined()) return Fit::No;
    const Outcome& ba = p.at(b, a);
    if (fa.is_unknown()) {
      fit = Fit::Unresolved;
      continue;
    }
    Truth t = Truth::True;
    if (ba.is_defined()) {
      t = g.equivalent(fa.value(), ba.value(), p.fuel());
    } else if (ba.is_undefined()) {
      if (special) t = g.equivalent(fa.value(), *special, p.fuel());
    } else {
      t = Truth::Unknown;
    }
    if (t == Truth::False) return Fit::No;
    if (t == Truth::Unknown) fit = Fit::Unresolved;
  }
  return fit;
}

/// Searches a totalizer for every b; returns the first b without one.
inline PrecompleteResult precomplete_scan(const Numbering& g, const std::vector<Element>& xs, const Products& p,
                                          const std::optional<Element>& special) {
  const bool exhaustive = covers_carrier(g.model(), xs);
  PrecompleteResult out;
  std::uint64_t unresolved = 0;
  for (const auto& b : xs) {
    bool found = false, maybe = false;
    for (const auto& f : xs) {
      Fit fit = totalizes(f, b, g, p, xs, special);
      if (fit == Fit::Yes) {
        out.totalizers.emplace(b, f);
        found = true;
        break;
      }
      if (fit == Fit::Unresolved) maybe = true;
    }
    if (found) continue;
    if (maybe) {
      ++unresolved;
      continue;
    }
    out.verdict = Verdict::fails({{"b", b}}, "no sampled total element totalizes b");
    out.verdict.exhaustive = exhaustive;
    out.verdict.conclusive = exhaustive;
    out.verdict.unknowns = unresolved;
    return out;
  }
  if (unresolved > 0) {
    out.verdict = Verdict::unknown("some b had only unresolved totalizer candidates");
  } else {
    out.verdict = Verdict::holds(exhaustive);
  }
  out.verdict.unknowns = unresolved;
  return out;
}

}  // namespace detail

/// Precomplete: every b has a total f with b a defined => f a ~gamma b a.
/// Decisive on finite models; on sampled carriers a Fails is marked
/// inconclusive (a totalizer may exist outside the sample).
inline PrecompleteResult check_precomplete(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  return detail::precomplete_scan(g, xs, p, std::nullopt);
}

/// Complete: precomplete with one special class s such that f a lands in
/// s wherever b a is undefined, for every b. Tries each class in order of
/// its first sample.
inline Verdict check_complete(const Numbering& g, const std::vector<Element>& xs, std::uint64_t fuel) {
  Products p(g.model(), fuel);
  auto pre = detail::precomplete_scan(g, xs, p, std::nullopt);
  if (!pre.verdict.is_holds()) return pre.verdict;
  // One representative per class.
  std::vector<Element> reps;
  for (const auto& x : xs) {
    bool seen = false;
    for (const auto& r : reps)
      if (g.equivalent(x, r, fuel) == Truth::True) seen = true;
    if (!seen) reps.push_back(x);
  }
  Verdict::Witness blockers;
  bool unresolved = false;
  for (const auto& r : reps) {
    auto res = detail::precomplete_scan(g, xs, p, r);
    if (res.verdict.is_holds()) {
      Verdict v = Verdict::holds(covers_carrier(g.model(), xs));
      v.witness = {{"special", r}};
      return v;
    }
    if (res.verdict.is_unknown()) unresolved = true;
    if (auto b = res.verdict.witness_of("b")) blockers.emplace_back("blocks-class-of-" + r.str(), *b);
  }
  if (unresolved) return Verdict::unknown("some special classes left unresolved");
  Verdict v = Verdict::fails(blockers, "no single special class works for every b");
  v.exhaustive = covers_carrier(g.model(), xs);
  v.conclusive = v.exhaustive;
  return v;
}

}  // namespace pcawb

#endif  // PCAWB_PROPERTIES_HPP
