#ifndef PCAWB_ENUMERATION_HPP
#define PCAWB_ENUMERATION_HPP

#include "pcawb/numbering.hpp"
#include "pcawb/outcome.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcawb {

using Nat = std::uint64_t;
using NatSet = std::set<Nat>;

/// A uniformly c.e. family presented by stages: at(n, s) is the part of
/// the n-th set enumerated by stage s, monotone in s.
class CeFamily {
 public:
  using Enumerator = std::function<NatSet(Nat index, Nat stage)>;

  CeFamily(Enumerator e, std::optional<Nat> index_bound) : enum_(std::move(e)), bound_(index_bound) {}

  /// Element i of set n appears at stage delays[n] + i (delay 0 if absent).
  static CeFamily finite(std::vector<std::vector<Nat>> sets, std::vector<Nat> delays = {}) {
    if (!delays.empty() && delays.size() != sets.size()) throw InputError("family: schedule length differs from sets");
    delays.resize(sets.size(), 0);
    auto data = std::make_shared<std::pair<std::vector<std::vector<Nat>>, std::vector<Nat>>>(std::move(sets),
                                                                                            std::move(delays));
    Nat n = data->first.size();
    CeFamily f(
        [data](Nat idx, Nat stage) {
          NatSet out;
          if (idx >= data->first.size()) return out;
          const auto& seq = data->first[idx];
          Nat d = data->second[idx];
          for (Nat i = 0; i < seq.size() && d + i <= stage; ++i) out.insert(seq[i]);
          return out;
        },
        n);
    Nat last = 0;
    for (std::size_t i = 0; i < data->first.size(); ++i) {
      Nat done = data->second[i] + data->first[i].size();
      last = std::max(last, done);
    }
    f.settled_ = last;
    return f;
  }

  static CeFamily from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("sets") || !j["sets"].is_array()) throw InputError("family: expected {\"sets\": [...]}");
    std::vector<std::vector<Nat>> sets;
    for (const auto& s : j["sets"]) {
      if (!s.is_array()) throw InputError("family: each set must be an array");
      std::vector<Nat> seq;
      for (const auto& x : s) {
        if (!x.is_number_unsigned()) throw InputError("family: elements must be naturals");
        seq.push_back(x.get<Nat>());
      }
      sets.push_back(std::move(seq));
    }
    std::vector<Nat> delays;
    if (j.contains("schedule")) {
      if (!j["schedule"].is_array()) throw InputError("family: schedule must be an array");
      for (const auto& d : j["schedule"]) {
        if (!d.is_number_unsigned()) throw InputError("family: schedule entries must be naturals");
        delays.push_back(d.get<Nat>());
      }
    }
    return finite(std::move(sets), std::move(delays));
  }

  NatSet at(Nat index, Nat stage) const { return enum_(index, stage); }
  std::optional<Nat> index_bound() const { return bound_; }
  /// A stage after which nothing new appears, when known.
  std::optional<Nat> settled_stage() const { return settled_; }
  void set_settled_stage(Nat s) { settled_ = s; }

  /// All sets at a stage (requires an index bound).
  std::vector<NatSet> materialize(Nat stage) const {
    if (!bound_) throw InputError("family has no index bound");
    std::vector<NatSet> out;
    for (Nat i = 0; i < *bound_; ++i) out.push_back(at(i, stage));
    return out;
  }

  /// The sets themselves: at the settled stage if known, else at `stage`.
  std::vector<NatSet> final_sets(Nat stage) const { return materialize(settled_ ? std::max(*settled_, stage) : stage); }

 private:
  Enumerator enum_;
  std::optional<Nat> bound_;
  std::optional<Nat> settled_;
};

/// Stagewise enumeration of unordered index pairs whose sets differ.
class InequalityOracle {
 public:
  struct Entry {
    Nat n, m, stage;
  };

  InequalityOracle() = default;
  explicit InequalityOracle(std::vector<Entry> entries) {
    for (auto e : entries) {
      if (e.n == e.m) throw InputError("oracle: pair (" + std::to_string(e.n) + "," + std::to_string(e.n) + ") relates an index to itself");
      if (e.n > e.m) std::swap(e.n, e.m);
      auto key = std::make_pair(e.n, e.m);
      auto it = first_.find(key);
      if (it == first_.end() || e.stage < it->second) first_[key] = e.stage;
    }
  }

  static InequalityOracle from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("oracle: expected a list of [n, m, stage]");
    std::vector<Entry> es;
    for (const auto& t : j) {
      if (!t.is_array() || t.size() != 3) throw InputError("oracle: entries are [n, m, stage]");
      for (const auto& x : t)
        if (!x.is_number_unsigned()) throw InputError("oracle: entries must be naturals");
      es.push_back({t[0].get<Nat>(), t[1].get<Nat>(), t[2].get<Nat>()});
    }
    return InequalityOracle(std::move(es));
  }

  /// Has (n, m) been listed by stage s?
  bool listed(Nat n, Nat m, Nat stage) const {
    if (n > m) std::swap(n, m);
    auto it = first_.find({n, m});
    return it != first_.end() && it->second <= stage;
  }

  std::set<std::pair<Nat, Nat>> pairs_at(Nat stage) const {
    std::set<std::pair<Nat, Nat>> out;
    for (const auto& [p, s] : first_)
      if (s <= stage) out.insert(p);
    return out;
  }

  const std::map<std::pair<Nat, Nat>, Nat>& entries() const { return first_; }

  /// A listed pair whose sets are in fact equal, if any.
  std::optional<std::pair<Nat, Nat>> unsound_pair(const std::vector<NatSet>& sets) const {
    for (const auto& [p, s] : first_) {
      if (p.second >= sets.size()) return p;
      if (sets[p.first] == sets[p.second]) return p;
    }
    return std::nullopt;
  }

 private:
  std::map<std::pair<Nat, Nat>, Nat> first_;
};

/// Lists every genuinely unequal pair, at the stage given by `when`.
inline InequalityOracle oracle_from_sets(const std::vector<NatSet>& sets,
                                         const std::function<Nat(Nat, Nat)>& when) {
  std::vector<InequalityOracle::Entry> es;
  for (Nat n = 0; n < sets.size(); ++n)
    for (Nat m = n + 1; m < sets.size(); ++m)
      if (sets[n] != sets[m]) es.push_back({n, m, when(n, m)});
  return InequalityOracle(std::move(es));
}

struct Emission {
  Nat index;
  Nat stage;
};

/// Emits n at the first stage by which every pair (n, m), m < n, has been
/// listed as unequal. Stages run 0 .. stages-1.
inline std::vector<Emission> one_one_numbering(const CeFamily& f, const InequalityOracle& u, Nat stages) {
  if (!f.index_bound()) throw InputError("one-one numbering needs a desk-scale family with an index bound");
  const Nat n_max = *f.index_bound();
  std::vector<Emission> out;
  std::vector<bool> done(n_max, false);
  for (Nat s = 0; s < stages; ++s)
    for (Nat n = 0; n < n_max; ++n) {
      if (done[n]) continue;
      bool ready = true;
      for (Nat m = 0; m < n && ready; ++m) ready = u.listed(n, m, s);
      if (ready) {
        done[n] = true;
        out.push_back({n, s});
      }
    }
  return out;
}

/// Emitted indices denote pairwise distinct sets covering the family.
inline Verdict verify_one_one(const std::vector<NatSet>& sets, const std::vector<Nat>& emitted) {
  for (auto e : emitted)
    if (e >= sets.size()) return Verdict::fails({{"index", Element(e)}}, "emitted index outside the family");
  for (std::size_t i = 0; i < emitted.size(); ++i)
    for (std::size_t j = i + 1; j < emitted.size(); ++j)
      if (sets[emitted[i]] == sets[emitted[j]])
        return Verdict::fails({{"n", Element(emitted[i])}, {"m", Element(emitted[j])}}, "two emitted indices denote the same set");
  for (Nat n = 0; n < sets.size(); ++n) {
    bool covered = false;
    for (auto e : emitted) covered = covered || sets[e] == sets[n];
    if (!covered) return Verdict::fails({{"missing", Element(n)}}, "a set of the family is never emitted");
  }
  return Verdict::holds(true);
}

/// A scripted candidate enumeration: emits[s] is the code listed at stage s.
struct Candidate {
  std::string name;
  std::vector<std::optional<Nat>> emits;

  std::vector<Nat> range_by(Nat stage) const {
    std::vector<Nat> out;
    for (Nat s = 0; s < emits.size() && s <= stage; ++s)
      if (emits[s]) out.push_back(*emits[s]);
    return out;
  }
};

inline std::vector<Candidate> candidates_from_json(const nlohmann::json& j) {
  const nlohmann::json& list = j.is_object() && j.contains("candidates") ? j["candidates"] : j;
  if (!list.is_array()) throw InputError("candidates: expected a list");
  std::vector<Candidate> out;
  for (const auto& c : list) {
    if (!c.is_object() || !c.contains("emits") || !c["emits"].is_array()) throw InputError("candidates: each needs \"emits\"");
    Candidate cand;
    cand.name = c.value("name", "phi_" + std::to_string(out.size()));
    for (const auto& x : c["emits"]) {
      if (x.is_null()) cand.emits.emplace_back(std::nullopt);
      else if (x.is_number_unsigned()) cand.emits.emplace_back(x.get<Nat>());
      else throw InputError("candidates: emits entries are naturals or null");
    }
    out.push_back(std::move(cand));
  }
  return out;
}

/// The diagonal class against a list of candidates: index 2e holds x_e,
/// index 2e+1 holds y_e = {2e, 2e+1}. x_e starts as {2e} and gains 2e+1
/// once candidate e has listed two different codes whose sets contain 2e.
struct DiagonalClass {
  CeFamily family;
  std::size_t width = 0;
  /// Stage at which the search for x_e succeeded, per e.
  std::vector<std::optional<Nat>> fired;
};

inline DiagonalClass sigma1_counterexample_class(const std::vector<Candidate>& cands, Nat stages,
                                                 std::size_t width = 0) {
  width = std::max(width, cands.size());
  for (const auto& c : cands)
    for (const auto& x : c.emits)
      if (x && *x >= 2 * width) throw InputError("candidate '" + c.name + "' lists code " + std::to_string(*x) + " outside the class");
  // Which codes hold 2e by stage s: y_e from the start, x_e from the start.
  // Both contain 2e at every stage, so the search only needs the range.
  std::vector<std::optional<Nat>> fired(width);
  for (std::size_t e = 0; e < cands.size(); ++e) {
    std::set<Nat> hits;
    const auto& em = cands[e].emits;
    for (Nat s = 0; s < em.size() && s < stages; ++s) {
      if (!em[s]) continue;
      if (*em[s] / 2 == e) hits.insert(*em[s]);
      if (hits.size() >= 2) {
        fired[e] = s;
        break;
      }
    }
  }
  auto shared = std::make_shared<std::vector<std::optional<Nat>>>(fired);
  CeFamily fam(
      [shared](Nat idx, Nat stage) {
        NatSet out;
        Nat e = idx / 2;
        if (e >= shared->size()) return out;
        out.insert(2 * e);
        bool gained = idx % 2 == 1 || ((*shared)[e] && *(*shared)[e] <= stage);
        if (gained) out.insert(2 * e + 1);
        return out;
      },
      2 * width);
  fam.set_settled_stage(stages);
  return {std::move(fam), width, std::move(fired)};
}

/// Per-candidate verdict of the case split.
struct DichotomyVerdict {
  std::string candidate;
  std::string verdict;  // "repeats-a-set" or "misses-a-set"
  std::vector<Nat> witness;
  bool ground_truth_agrees = false;
};

/// Classifies each candidate by whether its search fired, then checks the
/// claim against the settled sets of the class.
inline std::vector<DichotomyVerdict> diagonal_dichotomy(const std::vector<Candidate>& cands, const DiagonalClass& cls,
                                                        Nat stages) {
  auto sets = cls.family.final_sets(stages);
  std::vector<DichotomyVerdict> out;
  for (std::size_t e = 0; e < cands.size(); ++e) {
    DichotomyVerdict v;
    v.candidate = cands[e].name;
    auto range = cands[e].range_by(stages == 0 ? 0 : stages - 1);
    if (cls.fired[e]) {
      v.verdict = "repeats-a-set";
      v.witness = {2 * e, 2 * e + 1};
      bool both = std::count(range.begin(), range.end(), 2 * e) && std::count(range.begin(), range.end(), 2 * e + 1);
      v.ground_truth_agrees = both && sets[2 * e] == sets[2 * e + 1];
    } else {
      v.verdict = "misses-a-set";
      // The first of x_e, y_e whose set is not listed.
      for (Nat idx : {Nat(2 * e), Nat(2 * e + 1)}) {
        bool listed = false;
        for (auto r : range) listed = listed || sets[r] == sets[idx];
        if (!listed) {
          v.witness = {idx};
          v.ground_truth_agrees = true;
          break;
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// A set violated the one-even-element layout.
class LayoutError : public InputError {
 public:
  using InputError::InputError;
};

struct ProbePair {
  Nat i, j;
  bool probe_equal;
  bool truth_equal;
};

struct ProbeReport {
  std::vector<ProbePair> pairs;
  bool agrees = true;
};

/// Decides equality using only forward enumeration: wait for each set's
/// first even element; different evens mean different sets. With the same
/// even 2e, distinct codes are equal once both have listed 2e+1.
inline ProbeReport equality_complexity_probe(const CeFamily& f, Nat stages) {
  auto truth = f.final_sets(stages);
  for (Nat i = 0; i < truth.size(); ++i) {
    auto evens = std::count_if(truth[i].begin(), truth[i].end(), [](Nat x) { return x % 2 == 0; });
    if (evens != 1) {
      throw LayoutError("set " + std::to_string(i) + " has " + std::to_string(evens) + " even elements (layout needs exactly one)");
    }
  }
  // Each even 2e belongs to sets inside {2e, 2e+1}, at most one lacking 2e+1.
  std::map<Nat, int> partial;
  for (Nat i = 0; i < truth.size(); ++i) {
    Nat ev = *std::find_if(truth[i].begin(), truth[i].end(), [](Nat x) { return x % 2 == 0; });
    for (Nat x : truth[i])
      if (x != ev && x != ev + 1) throw LayoutError("set " + std::to_string(i) + " leaves {" + std::to_string(ev) + ", " + std::to_string(ev + 1) + "}");
    if (!truth[i].count(ev + 1) && ++partial[ev] > 1) {
      throw LayoutError("two codes share even element " + std::to_string(ev) + " without its partner");
    }
  }
  const Nat horizon = f.settled_stage() ? std::max(*f.settled_stage(), stages) : stages;
  auto first_even = [&](Nat idx) -> std::optional<Nat> {
    for (Nat s = 0; s <= horizon; ++s)
      for (Nat x : f.at(idx, s))
        if (x % 2 == 0) return x;
    return std::nullopt;
  };
  auto lists = [&](Nat idx, Nat x) {
    for (Nat s = 0; s <= horizon; ++s)
      if (f.at(idx, s).count(x)) return true;
    return false;
  };
  ProbeReport rep;
  for (Nat i = 0; i < truth.size(); ++i)
    for (Nat j = i; j < truth.size(); ++j) {
      bool eq;
      if (i == j) {
        eq = true;
      } else {
        auto ei = first_even(i), ej = first_even(j);
        if (!ei || !ej) throw LayoutError("a set enumerated no even element within the stage budget");
        eq = *ei == *ej && lists(i, *ei + 1) && lists(j, *ei + 1);
      }
      bool t = truth[i] == truth[j];
      rep.pairs.push_back({i, j, eq, t});
      rep.agrees = rep.agrees && eq == t;
    }
  return rep;
}

}  // namespace pcawb

#endif  // PCAWB_ENUMERATION_HPP
