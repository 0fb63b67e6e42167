#ifndef PCAWB_NUMBERING_HPP
#define PCAWB_NUMBERING_HPP

#include "pcawb/eval.hpp"
#include "pcawb/model.hpp"
#include "pcawb/outcome.hpp"
#include "pcawb/term.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pcawb {

/// Three-valued verdict of a property check. Fails always carries a
/// witness; Holds on a sampled (non-exhaustive) run is only a semi-verdict.
struct Verdict {
  enum class Tag { Holds, Fails, Unknown };
  using Witness = std::vector<std::pair<std::string, Element>>;

  Tag tag = Tag::Holds;
  Witness witness;
  std::string note;
  /// Every quantifier ranged over the whole (finite) carrier.
  bool exhaustive = false;
  /// False when a Fails can be overturned by a larger sample.
  bool conclusive = true;
  /// Comparisons left unresolved by fuel during the check.
  std::uint64_t unknowns = 0;

  static Verdict holds(bool exhaustive) {
    Verdict v;
    v.tag = Tag::Holds;
    v.exhaustive = exhaustive;
    v.conclusive = exhaustive;
    return v;
  }
  static Verdict fails(Witness w, std::string note = {}) {
    Verdict v;
    v.tag = Tag::Fails;
    v.witness = std::move(w);
    v.note = std::move(note);
    return v;
  }
  static Verdict unknown(std::string note) {
    Verdict v;
    v.tag = Tag::Unknown;
    v.note = std::move(note);
    v.conclusive = false;
    return v;
  }

  bool is_holds() const { return tag == Tag::Holds; }
  bool is_fails() const { return tag == Tag::Fails; }
  bool is_unknown() const { return tag == Tag::Unknown; }

  std::optional<Element> witness_of(const std::string& role) const {
    for (const auto& [r, e] : witness)
      if (r == role) return e;
    return std::nullopt;
  }
};

inline std::string to_string(Verdict::Tag t) {
  switch (t) {
    case Verdict::Tag::Holds: return "Holds";
    case Verdict::Tag::Fails: return "Fails";
    case Verdict::Tag::Unknown: return "Unknown";
  }
  return {};
}

/// Label for reports: "Holds", "Holds-on-samples", "Fails", "Unknown".
inline std::string verdict_label(const Verdict& v) {
  if (v.is_holds() && !v.exhaustive) return "Holds-on-samples";
  return to_string(v.tag);
}

/// A generalized numbering gamma : A -> S, presented through the
/// equivalence it induces. Label maps answer exactly; intensional
/// numbering procedures may answer Unknown.
class Numbering {
 public:
  explicit Numbering(const PasModel& m) : model_(&m) {}
  virtual ~Numbering() = default;

  const PasModel& model() const { return *model_; }
  virtual std::string name() const = 0;

  /// a ~gamma b. Throws DomainCoverageError for elements the numbering
  /// does not cover.
  virtual Truth equivalent(const Element& a, const Element& b, std::uint64_t fuel) const = 0;

  /// Label of an element, when the numbering has a computable label map.
  virtual std::optional<std::string> label(const Element&) const { return std::nullopt; }

 private:
  const PasModel* model_;
};

/// gamma_A: every element is its own label.
class IdentityNumbering : public Numbering {
 public:
  using Numbering::Numbering;
  std::string name() const override { return "identity"; }
  Truth equivalent(const Element& a, const Element& b, std::uint64_t) const override {
    return a == b ? Truth::True : Truth::False;
  }
  std::optional<std::string> label(const Element& e) const override { return e.str(); }
};

/// Explicit labels on a finite explored domain.
class LabelNumbering : public Numbering {
 public:
  LabelNumbering(const PasModel& m, std::map<Element, std::string> labels, std::string name = "labels")
      : Numbering(m), labels_(std::move(labels)), name_(std::move(name)) {}

  /// Labels for 0..n-1 of a finite model, given as integers.
  static LabelNumbering from_classes(const PasModel& m, const std::vector<int>& classes, std::string name = "partition") {
    std::map<Element, std::string> labels;
    for (std::size_t i = 0; i < classes.size(); ++i) labels.emplace(Element(i), std::to_string(classes[i]));
    return LabelNumbering(m, std::move(labels), std::move(name));
  }

  std::string name() const override { return name_; }
  Truth equivalent(const Element& a, const Element& b, std::uint64_t) const override {
    return lookup(a) == lookup(b) ? Truth::True : Truth::False;
  }
  std::optional<std::string> label(const Element& e) const override { return lookup(e); }
  const std::map<Element, std::string>& labels() const { return labels_; }

 private:
  const std::string& lookup(const Element& e) const {
    auto it = labels_.find(e);
    if (it == labels_.end()) {
      throw DomainCoverageError("element #" + e.str() + " is outside the explored domain of numbering '" + name_ + "'");
    }
    return it->second;
  }

  std::map<Element, std::string> labels_;
  std::string name_;
};

/// Labels computed by a procedure over the whole carrier.
class FunctionNumbering : public Numbering {
 public:
  FunctionNumbering(const PasModel& m, std::function<std::string(const Element&)> f, std::string name)
      : Numbering(m), f_(std::move(f)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  Truth equivalent(const Element& a, const Element& b, std::uint64_t) const override {
    return f_(a) == f_(b) ? Truth::True : Truth::False;
  }
  std::optional<std::string> label(const Element& e) const override { return f_(e); }

 private:
  std::function<std::string(const Element&)> f_;
  std::string name_;
};

/// Everything in one class.
inline FunctionNumbering single_class_numbering(const PasModel& m) {
  return FunctionNumbering(m, [](const Element&) { return std::string("*"); }, "single");
}

/// gamma_e: a ~e b iff a x ~= b x for every probe input x. On a finite
/// model with all elements as probes this is exact; otherwise it is the
/// sampled approximation. An agreement with unresolved probes answers
/// Unknown rather than True.
class ExtensionalNumbering : public Numbering {
 public:
  ExtensionalNumbering(const PasModel& m, std::vector<Element> probes)
      : Numbering(m), probes_(std::move(probes)) {}

  std::string name() const override { return "gamma-e"; }
  const std::vector<Element>& probes() const { return probes_; }

  Truth equivalent(const Element& a, const Element& b, std::uint64_t fuel) const override {
    if (a == b) return Truth::True;
    const auto pa = profile(a, fuel);
    const auto pb = profile(b, fuel);
    Truth acc = Truth::True;
    for (std::size_t i = 0; i < probes_.size(); ++i) {
      Truth t = kleene_equal(pa[i], pb[i]);
      if (t == Truth::False) return Truth::False;
      acc = truth_and(acc, t);
    }
    return acc;
  }

  /// The outcomes of a x for every probe x (memoized per fuel).
  std::vector<Outcome> profile(const Element& a, std::uint64_t fuel) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find({a, fuel});
      if (it != cache_.end()) return it->second;
    }
    std::vector<Outcome> out;
    out.reserve(probes_.size());
    for (const auto& x : probes_) out.push_back(model().apply(a, x, fuel));
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(std::make_pair(a, fuel), out);
    return out;
  }

 private:
  std::vector<Element> probes_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Element, std::uint64_t>, std::vector<Outcome>> cache_;
};

/// t1 ~gamma t2 on closed terms: both undefined, or both defined with
/// equivalent values.
inline Truth term_equiv_gamma(const Term& t1, const Term& t2, const Numbering& g, std::uint64_t fuel) {
  Outcome a = evaluate(t1, g.model(), fuel);
  Outcome b = evaluate(t2, g.model(), fuel);
  if (a.is_undefined() && b.is_undefined()) return Truth::True;
  if (a.is_defined() && b.is_defined()) return g.equivalent(a.value(), b.value(), fuel);
  if (a.is_unknown() || b.is_unknown()) return Truth::Unknown;
  return Truth::False;
}

/// Same comparison on already-evaluated outcomes.
inline Truth outcome_equiv_gamma(const Outcome& a, const Outcome& b, const Numbering& g, std::uint64_t fuel) {
  if (a.is_undefined() && b.is_undefined()) return Truth::True;
  if (a.is_defined() && b.is_defined()) return g.equivalent(a.value(), b.value(), fuel);
  if (a.is_unknown() || b.is_unknown()) return Truth::Unknown;
  return Truth::False;
}

inline Verdict term_equiv_verdict(const Term& t1, const Term& t2, const Numbering& g, std::uint64_t fuel) {
  switch (term_equiv_gamma(t1, t2, g, fuel)) {
    case Truth::True: return Verdict::holds(true);
    case Truth::False: return Verdict::fails({}, "terms are not ~gamma equivalent");
    case Truth::Unknown: return Verdict::unknown("fuel exhausted");
  }
  return Verdict::unknown("");
}

// Partition files: [[0, 2], [1], ...]. Labeling files: {"0": "a", ...}.

inline std::vector<int> classes_from_partition_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("partition: expected an array of blocks");
  std::vector<int> cls(n, -1);
  int block = 0;
  for (const auto& b : j) {
    if (!b.is_array() || b.empty()) throw InputError("partition: blocks must be non-empty arrays");
    for (const auto& e : b) {
      if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= n) throw InputError("partition: element out of range");
      auto id = e.get<std::size_t>();
      if (cls[id] != -1) throw InputError("partition: element " + std::to_string(id) + " in two blocks");
      cls[id] = block;
    }
    ++block;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cls[i] == -1) throw InputError("partition: element " + std::to_string(i) + " not covered");
  return cls;
}

inline std::map<Element, std::string> labels_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("labeling: expected an object id -> label");
  std::map<Element, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw InputError("labeling: labels must be strings");
    try {
      out.emplace(Element(k), v.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("labeling: bad element id '" + k + "'");
    }
  }
  return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace pcawb

#endif  // PCAWB_NUMBERING_HPP
