#ifndef PCAWB_EVAL_HPP
#define PCAWB_EVAL_HPP

#include "pcawb/model.hpp"
#include "pcawb/outcome.hpp"
#include "pcawb/term.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace pcawb {

inline constexpr std::uint64_t kDefaultFuel = 10000;

namespace detail {

inline Outcome eval_in(const Term& t, const PasModel& m, Fuel& fuel) {
  switch (t.kind()) {
    case Term::Kind::Var:
      throw InputError("cannot evaluate open term: free variable '" + t.name() + "'");
    case Term::Kind::Elem:
      if (!m.contains(t.id())) {
        throw InputError("element #" + t.id().str() + " is not in the carrier of '" + m.name() + "'");
      }
      return Outcome::defined(t.id());
    case Term::Kind::App: {
      Outcome l = eval_in(t.left(), m, fuel);
      if (l.is_undefined()) return l;
      Outcome r = eval_in(t.right(), m, fuel);
      if (r.is_undefined()) return r;
      if (l.is_unknown()) return l;
      if (r.is_unknown()) return r;
      return m.apply(l.value(), r.value(), fuel);
    }
  }
  return Outcome::unknown();
}

}  // namespace detail

/// Throws if `t` is open or mentions an element outside the carrier.
inline void validate_closed(const Term& t, const PasModel& m) {
  switch (t.kind()) {
    case Term::Kind::Var:
      throw InputError("cannot evaluate open term: free variable '" + t.name() + "'");
    case Term::Kind::Elem:
      if (!m.contains(t.id())) {
        throw InputError("element #" + t.id().str() + " is not in the carrier of '" + m.name() + "'");
      }
      return;
    case Term::Kind::App:
      validate_closed(t.left(), m);
      validate_closed(t.right(), m);
      return;
  }
}

/// Result of `evaluate`, with the number of fuel units spent.
struct Evaluation {
  Outcome outcome;
  std::uint64_t fuel_used = 0;
};

/// Strict bottom-up evaluation of a closed term. The left operand of an
/// application is evaluated before the right one; an Undefined operand
/// makes the application Undefined even when the other one is Unknown.
inline Evaluation evaluate_traced(const Term& t, const PasModel& m, std::uint64_t fuel = kDefaultFuel) {
  if (fuel == 0) throw InputError("fuel must be positive");
  Fuel f(fuel);
  Outcome o = detail::eval_in(t, m, f);
  return {std::move(o), f.used()};
}

inline Outcome evaluate(const Term& t, const PasModel& m, std::uint64_t fuel = kDefaultFuel) {
  return evaluate_traced(t, m, fuel).outcome;
}

/// Kleene equality of two outcomes: both undefined, or both defined and equal.
inline Truth kleene_equal(const Outcome& a, const Outcome& b) {
  if (a.is_defined() && b.is_defined()) return a.value() == b.value() ? Truth::True : Truth::False;
  if (a.is_undefined() && b.is_undefined()) return Truth::True;
  if ((a.is_defined() && b.is_undefined()) || (a.is_undefined() && b.is_defined())) return Truth::False;
  return Truth::Unknown;
}

/// t1 ~= t2, each side evaluated with its own budget of `fuel`.
inline Truth kleene_equiv(const Term& t1, const Term& t2, const PasModel& m, std::uint64_t fuel = kDefaultFuel) {
  if (t1 == t2) {
    // Deterministic evaluation: identical closed terms agree even when the
    // budget would not resolve them.
    validate_closed(t1, m);
    return Truth::True;
  }
  return kleene_equal(evaluate(t1, m, fuel), evaluate(t2, m, fuel));
}

/// Convenience: apply an element to a list of arguments, left-associated.
inline Term application(const Element& head, std::initializer_list<Element> args) {
  Term t = Term::elem(head);
  for (const auto& a : args) t = Term::app(std::move(t), Term::elem(a));
  return t;
}

}  // namespace pcawb

#endif  // PCAWB_EVAL_HPP
