#ifndef PCAWB_TOYK1_HPP
#define PCAWB_TOYK1_HPP

#include "pcawb/model.hpp"
#include "pcawb/outcome.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcawb {
namespace lambda {

/// Untyped lambda term with de Bruijn indices. Nodes are immutable and
/// shared; size, hash and the free-index bound are cached per node.
class Db {
 public:
  enum class Kind : std::uint8_t { Var, Lam, App };

  static Db var(std::uint32_t i);
  static Db lam(Db body);
  static Db app(Db fun, Db arg);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_app() const { return kind() == Kind::App; }
  std::uint32_t index() const;
  const Db& body() const;
  const Db& fun() const;
  const Db& arg() const;
  /// Node count, saturating.
  std::uint64_t size() const;
  /// Smallest k such that every free index is below k (0 means closed).
  std::uint32_t free_bound() const;
  std::size_t hash() const;

  friend bool operator==(const Db& x, const Db& y) {
    if (x.node_ == y.node_) return true;
    if (x.hash() != y.hash() || x.size() != y.size() || x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::Var: return x.index() == y.index();
      case Kind::Lam: return x.body() == y.body();
      case Kind::App: return x.fun() == y.fun() && x.arg() == y.arg();
    }
    return false;
  }
  friend bool operator!=(const Db& x, const Db& y) { return !(x == y); }

 private:
  struct Node;

  static std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
    return x > std::numeric_limits<std::uint64_t>::max() - y ? std::numeric_limits<std::uint64_t>::max() : x + y;
  }
  static std::size_t mix(std::size_t tag, std::size_t x, std::size_t y) {
    std::size_t h = tag;
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= y + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  explicit Db(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Db::Node {
  Kind kind = Kind::Var;
  std::uint32_t index = 0;
  std::uint32_t free_bound = 0;
  std::uint64_t size = 0;
  std::size_t hash = 0;
  std::optional<Db> a;
  std::optional<Db> b;
};

inline Db::Kind Db::kind() const { return node_->kind; }
inline std::uint32_t Db::index() const { return node_->index; }
inline const Db& Db::body() const { return *node_->a; }
inline const Db& Db::fun() const { return *node_->a; }
inline const Db& Db::arg() const { return *node_->b; }
inline std::uint64_t Db::size() const { return node_->size; }
inline std::uint32_t Db::free_bound() const { return node_->free_bound; }
inline std::size_t Db::hash() const { return node_->hash; }

inline Db Db::var(std::uint32_t i) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = i;
  n->size = 1;
  n->free_bound = i + 1;
  n->hash = std::hash<std::uint64_t>{}(0x9e3779b97f4a7c15ULL ^ i);
  return Db(std::move(n));
}

inline Db Db::lam(Db body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->size = sat_add(1, body.size());
  n->free_bound = body.free_bound() == 0 ? 0 : body.free_bound() - 1;
  n->hash = mix(0x51ed27f1, body.hash(), 0);
  n->a = std::move(body);
  return Db(std::move(n));
}

inline Db Db::app(Db fun, Db arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->size = sat_add(1, sat_add(fun.size(), arg.size()));
  n->free_bound = std::max(fun.free_bound(), arg.free_bound());
  n->hash = mix(0x2545f491, fun.hash(), arg.hash());
  n->a = std::move(fun);
  n->b = std::move(arg);
  return Db(std::move(n));
}


inline bool is_value(const Db& t) { return t.is_lam(); }

/// body[depth := v] for a closed v; indices above depth drop by one.
inline Db subst(const Db& t, std::uint32_t depth, const Db& v) {
  if (t.free_bound() <= depth) return t;
  switch (t.kind()) {
    case Db::Kind::Var:
      if (t.index() == depth) return v;
      return Db::var(t.index() - 1);
    case Db::Kind::Lam: return Db::lam(subst(t.body(), depth + 1, v));
    case Db::Kind::App: return Db::app(subst(t.fun(), depth, v), subst(t.arg(), depth, v));
  }
  return t;
}

/// One call-by-value step on a closed term: reduce the function position
/// to a value, then the argument, then contract. nullopt for values.
inline std::optional<Db> cbv_step(const Db& t) {
  if (!t.is_app()) return std::nullopt;
  if (!is_value(t.fun())) {
    auto f = cbv_step(t.fun());
    return Db::app(std::move(*f), t.arg());
  }
  if (!is_value(t.arg())) {
    auto a = cbv_step(t.arg());
    return Db::app(t.fun(), std::move(*a));
  }
  return subst(t.fun().body(), 0, t.arg());
}

/// Renders with generated names: \x0. \x1. x0 x1.
inline void print(const Db& t, std::uint32_t depth, std::string& out, bool parens_app, bool parens_lam) {
  switch (t.kind()) {
    case Db::Kind::Var:
      if (t.index() < depth) {
        out += "x" + std::to_string(depth - 1 - t.index());
      } else {
        out += "?" + std::to_string(t.index() - depth);
      }
      break;
    case Db::Kind::Lam:
      if (parens_lam) out += '(';
      out += "\\x" + std::to_string(depth) + ". ";
      print(t.body(), depth + 1, out, false, false);
      if (parens_lam) out += ')';
      break;
    case Db::Kind::App:
      if (parens_app) out += '(';
      print(t.fun(), depth, out, false, true);
      out += ' ';
      print(t.arg(), depth, out, true, true);
      if (parens_app) out += ')';
      break;
  }
}

inline std::string to_string(const Db& t) {
  std::string out;
  print(t, 0, out, false, false);
  return out;
}

/// Named lambda syntax for writing codes by hand: `\x y. x (y x)`.
class NamedParser {
 public:
  explicit NamedParser(std::string_view s) : s_(s) {}

  Db parse() {
    Db t = term();
    ws();
    if (pos_ != s_.size()) throw ParseError("unexpected input in lambda term", pos_);
    return t;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_ident() {
    ws();
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }
  std::string ident() {
    ws();
    std::size_t st = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    if (st == pos_) throw ParseError("expected identifier", pos_);
    return std::string(s_.substr(st, pos_ - st));
  }

  Db term() {
    if (at('\\')) {
      ++pos_;
      std::vector<std::string> names;
      while (!at('.')) {
        if (pos_ >= s_.size()) throw ParseError("expected '.'", pos_);
        names.push_back(ident());
      }
      ++pos_;
      if (names.empty()) throw ParseError("expected binder", pos_);
      for (auto& n : names) scope_.push_back(n);
      Db body = term();
      for (std::size_t i = 0; i < names.size(); ++i) {
        scope_.pop_back();
        body = Db::lam(std::move(body));
      }
      return body;
    }
    Db t = atom();
    while (true) {
      if (at('\\')) return Db::app(std::move(t), term());
      if (!at('(') && !at_ident()) break;
      t = Db::app(std::move(t), atom());
    }
    return t;
  }

  Db atom() {
    if (at('(')) {
      ++pos_;
      Db t = term();
      if (!at(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    std::string n = ident();
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == n) return Db::var(static_cast<std::uint32_t>(scope_.size() - 1 - i));
    }
    throw ParseError("unbound variable '" + n + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

inline Db parse_named(std::string_view s) { return NamedParser(s).parse(); }

/// Counts and ranks lambda terms by size, then by structure: variables
/// (by index), then abstractions, then applications ordered by the size
/// of the function part, then function rank, then argument rank.
///
/// count(n, k) is the number of terms with n nodes whose free indices are
/// all below k. The table is filled on demand and shared; access is
/// serialized.
class TermCounter {
 public:
  static TermCounter& instance() {
    static TermCounter c;
    return c;
  }

  Element count(std::uint64_t n, std::uint64_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    return count_locked(n, k);
  }

  Element rank(const Db& t, std::uint64_t k) {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(t.size() + k + 1);
    return rank_locked(t, k);
  }

  Db unrank(std::uint64_t n, std::uint64_t k, Element r) {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(n + k + 1);
    return unrank_locked(n, k, std::move(r));
  }

  /// Number of closed abstractions with exactly n nodes.
  Element values_of_size(std::uint64_t n) { return n < 2 ? Element(0) : count(n - 1, 1); }

 private:
  // table_[n][k] valid for n >= 1, n + k <= limit_.
  void ensure(std::uint64_t limit) {
    if (limit <= limit_) return;
    std::uint64_t target = std::max<std::uint64_t>(limit, limit_ + limit_ / 2);
    // Entries with n + k <= limit_ are already final; only extend rows.
    table_.resize(target + 1);
    for (std::uint64_t n = 1; n <= target; ++n) {
      const std::uint64_t old = table_[n].size();
      table_[n].resize(target - n + 1, Element(0));
      for (std::uint64_t k = old; n + k <= target; ++k) {
        Element c = 0;
        if (n == 1) {
          c = k;
        } else {
          // Split sizes i and n-1-i pair up symmetrically.
          Element conv = 0;
          for (std::uint64_t i = 1; 2 * i < n - 1; ++i) conv += table_[i][k] * table_[n - 1 - i][k];
          conv *= 2;
          if ((n - 1) % 2 == 0) conv += table_[(n - 1) / 2][k] * table_[(n - 1) / 2][k];
          c = table_[n - 1][k + 1] + conv;
        }
        table_[n][k] = std::move(c);
      }
    }
    limit_ = target;
  }

  Element count_locked(std::uint64_t n, std::uint64_t k) {
    if (n == 0) return 0;
    ensure(n + k);
    return table_[n][k];
  }

  Element rank_locked(const Db& t, std::uint64_t k) {
    const std::uint64_t n = t.size();
    switch (t.kind()) {
      case Db::Kind::Var: return Element(t.index());
      case Db::Kind::Lam: return rank_locked(t.body(), k + 1);
      case Db::Kind::App: {
        Element r = table_[n - 1][k + 1];  // all abstractions of size n
        const std::uint64_t left = t.fun().size();
        for (std::uint64_t i = 1; i < left; ++i) r += table_[i][k] * table_[n - 1 - i][k];
        const std::uint64_t right = t.arg().size();
        r += rank_locked(t.fun(), k) * table_[right][k] + rank_locked(t.arg(), k);
        return r;
      }
    }
    return 0;
  }

  Db unrank_locked(std::uint64_t n, std::uint64_t k, Element r) {
    if (n == 1) return Db::var(r.convert_to<std::uint32_t>());
    const Element& lams = table_[n - 1][k + 1];
    if (r < lams) return Db::lam(unrank_locked(n - 1, k + 1, std::move(r)));
    r -= lams;
    for (std::uint64_t i = 1; i + 1 < n; ++i) {
      const Element& rc = table_[n - 1 - i][k];
      Element block = table_[i][k] * rc;
      if (r < block) {
        Element lr = r / rc;
        Element rr = r % rc;
        return Db::app(unrank_locked(i, k, std::move(lr)), unrank_locked(n - 1 - i, k, std::move(rr)));
      }
      r -= block;
    }
    throw std::logic_error("lambda unrank out of range");
  }

  std::mutex mu_;
  std::uint64_t limit_ = 0;
  std::vector<std::vector<Element>> table_;
};

}  // namespace lambda

/// Kleene's first model in miniature: the naturals as codes of closed
/// call-by-value values (abstractions), enumerated by size and then
/// structure. n.m is the code of the value of (value_n value_m).
///
/// Each beta step costs one unit of fuel. A reduction that revisits a
/// previous term is reported Undefined (it provably diverges); running out
/// of fuel, or growing past the size caps, is Unknown.
class ToyK1 : public PasModel {
 public:
  using PasModel::apply;

  static constexpr std::uint64_t kMaxTermSize = 1u << 15;
  static constexpr std::uint64_t kMaxCodeSize = 400;

  std::string name() const override { return "toyk1"; }
  std::optional<std::uint64_t> carrier_size() const override { return std::nullopt; }

  std::optional<PcaWitnesses> witnesses() const override { return PcaWitnesses{k_code(), s_code()}; }

  Outcome apply(const Element& a, const Element& b, Fuel& fuel) const override {
    lambda::Db t = lambda::Db::app(decode(a), decode(b));
    return run(std::move(t), fuel);
  }

  std::string describe(const Element& e) const override { return lambda::to_string(decode(e)); }

  /// Reduces a closed term to a value and encodes it.
  Outcome run(lambda::Db t, Fuel& fuel) const {
    if (t.free_bound() != 0) throw InputError("toyk1: term is not closed");
    // Brent's cycle detection over the deterministic reduction sequence.
    lambda::Db tortoise = t;
    std::uint64_t power = 1, lam = 0;
    while (!lambda::is_value(t)) {
      if (!fuel.consume()) return Outcome::unknown("fuel");
      t = *lambda::cbv_step(t);
      if (t.size() > kMaxTermSize) return Outcome::unknown("size");
      if (t == tortoise) return Outcome::undefined();
      if (++lam == power) {
        tortoise = t;
        power *= 2;
        lam = 0;
      }
    }
    if (t.size() > kMaxCodeSize) return Outcome::unknown("capacity");
    return Outcome::defined(encode(t));
  }

  static Element encode(const lambda::Db& v) {
    if (!v.is_lam() || v.free_bound() != 0) throw InputError("toyk1: only closed abstractions have codes");
    auto& c = lambda::TermCounter::instance();
    Element offset = 0;
    for (std::uint64_t m = 2; m < v.size(); ++m) offset += c.values_of_size(m);
    return offset + c.rank(v.body(), 1);
  }

  static lambda::Db decode(const Element& id) {
    if (id < 0) throw InputError("toyk1: negative code");
    auto& c = lambda::TermCounter::instance();
    Element r = id;
    for (std::uint64_t n = 2;; ++n) {
      Element block = c.values_of_size(n);
      if (r < block) return lambda::Db::lam(c.unrank(n - 1, 1, std::move(r)));
      r -= block;
    }
  }

  static Element code(std::string_view named) { return encode(lambda::parse_named(named)); }

  static const Element& k_code() {
    static const Element k = code("\\x y. x");
    return k;
  }
  static const Element& s_code() {
    static const Element s = code("\\x y z. x z (y z)");
    return s;
  }
};

}  // namespace pcawb

#endif  // PCAWB_TOYK1_HPP
