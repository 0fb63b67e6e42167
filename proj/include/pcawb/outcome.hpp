#ifndef PCAWB_OUTCOME_HPP
#define PCAWB_OUTCOME_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace pcawb {

/// Carrier element id. Carriers are enumerated as 0, 1, 2, ...; infinite
/// carriers (ToyK1, SK normal forms) need ids far beyond 64 bits.
using Element = boost::multiprecision::cpp_int;

inline std::string to_string(const Element& e) { return e.str(); }

/// Element ids that fit in 64 bits; used to index finite tables.
inline std::optional<std::uint64_t> small_id(const Element& e) {
  if (e < 0 || e > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return e.convert_to<std::uint64_t>();
}

// Errors. These are input or usage problems, never evaluation outcomes.

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An element outside the explored domain of a numbering was compared.
class DomainCoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step budget shared by one evaluation. Every application step consumes a
/// unit; models that reduce internally consume one unit per reduction.
class Fuel {
 public:
  explicit Fuel(std::uint64_t budget) : budget_(budget) {}

  bool consume(std::uint64_t n = 1) {
    if (budget_ - used_ < n) {
      used_ = budget_;
      return false;
    }
    used_ += n;
    return true;
  }
  bool exhausted() const { return used_ >= budget_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t remaining() const { return budget_ - used_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

/// Result of evaluating a closed term or a single application.
class Outcome {
 public:
  enum class Tag { Defined, Undefined, Unknown };

  static Outcome defined(Element v) { return Outcome(Tag::Defined, std::move(v), {}); }
  static Outcome undefined() { return Outcome(Tag::Undefined, {}, {}); }
  static Outcome unknown(std::string reason = "fuel") {
    return Outcome(Tag::Unknown, {}, std::move(reason));
  }

  Tag tag() const { return tag_; }
  bool is_defined() const { return tag_ == Tag::Defined; }
  bool is_undefined() const { return tag_ == Tag::Undefined; }
  bool is_unknown() const { return tag_ == Tag::Unknown; }

  const Element& value() const {
    if (!is_defined()) throw std::logic_error("Outcome::value on a non-defined outcome");
    return value_;
  }
  /// Why an Unknown arose: "fuel", "size" or "capacity".
  const std::string& reason() const { return reason_; }

  friend bool operator==(const Outcome& a, const Outcome& b) {
    return a.tag_ == b.tag_ && (a.tag_ != Tag::Defined || a.value_ == b.value_);
  }

 private:
  Outcome(Tag t, Element v, std::string r) : tag_(t), value_(std::move(v)), reason_(std::move(r)) {}

  Tag tag_;
  Element value_;
  std::string reason_;
};

inline std::ostream& operator<<(std::ostream& os, const Outcome& o) {
  switch (o.tag()) {
    case Outcome::Tag::Defined: return os << "Defined(#" << o.value() << ")";
    case Outcome::Tag::Undefined: return os << "Undefined";
    case Outcome::Tag::Unknown: return os << "Unknown";
  }
  return os;
}

inline std::string to_string(const Outcome& o) {
  switch (o.tag()) {
    case Outcome::Tag::Defined: return "Defined(#" + o.value().str() + ")";
    case Outcome::Tag::Undefined: return "Undefined";
    case Outcome::Tag::Unknown: return "Unknown";
  }
  return {};
}

/// Three-valued comparison result (Kleene equality, ~gamma).
enum class Truth { True, False, Unknown };

inline Truth truth_and(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::True;
}

}  // namespace pcawb

#endif  // PCAWB_OUTCOME_HPP
