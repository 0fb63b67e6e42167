#ifndef PCAWB_CONSTRUCTIONS_HPP
#define PCAWB_CONSTRUCTIONS_HPP

#include "pcawb/eval.hpp"
#include "pcawb/finite_pas.hpp"
#include "pcawb/numbering.hpp"
#include "pcawb/properties.hpp"
#include "pcawb/term.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcawb {

namespace detail {

inline PcaWitnesses require_witnesses(const PasModel& m) {
  auto w = m.witnesses();
  if (!w) throw UnsupportedOperation("model '" + m.name() + "' has no designated k and s");
  return *w;
}

inline Element evaluate_compiled(const Term& t, const PasModel& m, std::uint64_t fuel, const char* what) {
  Outcome o = evaluate(t, m, fuel);
  if (!o.is_defined()) {
    throw std::runtime_error(std::string(what) + ": compiled combinator did not evaluate (" + to_string(o) + ")");
  }
  return o.value();
}

}  // namespace detail

/// The compiled code of [x][y] b x y. Its application to any a is
/// defined, since [y] b a y is an s-redex on values.
inline Element totalize(const Element& b, const PasModel& m, std::uint64_t fuel = kDefaultFuel) {
  auto w = detail::require_witnesses(m);
  Term body = Term::apps(Term::elem(b), {Term::var("x"), Term::var("y")});
  return detail::evaluate_compiled(abstract_all({"x", "y"}, body, w), m, fuel, "totalize");
}

/// e = w w with w = [x][y] f (x x) y, so e y ~= f e y.
inline Element fixpoint_element(const Element& f, const PasModel& m, std::uint64_t fuel = kDefaultFuel) {
  auto w = detail::require_witnesses(m);
  Term xx = Term::app(Term::var("x"), Term::var("x"));
  Term body = Term::apps(Term::elem(f), {xx, Term::var("y")});
  Term wt = abstract_all({"x", "y"}, body, w);
  return detail::evaluate_compiled(Term::app(wt, wt), m, fuel, "fixpoint");
}

/// z_x = [h] h x: applying z_x to f computes f x.
inline Element z_of(const Element& x, const PasModel& m, std::uint64_t fuel = kDefaultFuel) {
  auto w = detail::require_witnesses(m);
  return detail::evaluate_compiled(abstract("h", Term::app(Term::var("h"), Term::elem(x)), w), m, fuel, "z_x");
}

/// In a finite table, an element z whose row equals column x (z f ~= f x
/// for every f), found by scanning rows in order.
inline std::optional<std::uint32_t> column_evaluator(const FinitePas& m, std::uint32_t x) {
  for (std::uint32_t z = 0; z < m.size(); ++z) {
    bool ok = true;
    for (std::uint32_t f = 0; f < m.size() && ok; ++f) ok = m.at(z, f) == m.at(f, x);
    if (ok) return z;
  }
  return std::nullopt;
}

/// Non-congruence detected while building a quotient.
class CongruenceError : public std::runtime_error {
 public:
  explicit CongruenceError(Verdict v)
      : std::runtime_error("numbering is not a congruence: " + v.note), verdict_(std::move(v)) {}
  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

struct Quotient {
  FinitePas table;
  /// Class index of every original element; classes are numbered in
  /// order of their least member.
  std::vector<std::uint32_t> class_of;
};

/// A / ~gamma for a finite model. The congruence condition is re-checked
/// cell by cell; the first mismatch is reported as (a, a', b, b').
inline Quotient quotient(const Numbering& g, const FinitePas& m) {
  const std::uint32_t n = m.size();
  std::vector<std::uint32_t> cls(n);
  std::vector<std::uint32_t> reps;
  for (std::uint32_t a = 0; a < n; ++a) {
    bool placed = false;
    for (std::uint32_t c = 0; c < reps.size() && !placed; ++c) {
      if (g.equivalent(a, reps[c], kDefaultFuel) == Truth::True) {
        cls[a] = c;
        placed = true;
      }
    }
    if (!placed) {
      cls[a] = static_cast<std::uint32_t>(reps.size());
      reps.push_back(a);
    }
  }
  auto class_cell = [&](std::uint32_t a, std::uint32_t b) -> FinitePas::Cell {
    const auto& c = m.at(a, b);
    if (!c) return std::nullopt;
    return cls[*c];
  };
  const auto q = static_cast<std::uint32_t>(reps.size());
  std::vector<FinitePas::Cell> cells(static_cast<std::size_t>(q) * q);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      auto ra = reps[cls[a]], rb = reps[cls[b]];
      if (class_cell(a, b) != class_cell(ra, rb)) {
        throw CongruenceError(Verdict::fails({{"a", ra}, {"a'", a}, {"b", rb}, {"b'", b}},
                                             "a b and a' b' fall in different classes"));
      }
    }
  for (std::uint32_t i = 0; i < q; ++i)
    for (std::uint32_t j = 0; j < q; ++j) cells[static_cast<std::size_t>(i) * q + j] = class_cell(reps[i], reps[j]);
  std::optional<PcaWitnesses> w;
  if (auto mw = m.witnesses()) {
    w = PcaWitnesses{Element(cls[mw->k.convert_to<std::uint32_t>()]), Element(cls[mw->s.convert_to<std::uint32_t>()])};
  }
  return {FinitePas(q, std::move(cells), w, m.name() + "/" + g.name()), std::move(cls)};
}

}  // namespace pcawb

#endif  // PCAWB_CONSTRUCTIONS_HPP
