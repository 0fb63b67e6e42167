#ifndef PCAWB_SKNF_HPP
#define PCAWB_SKNF_HPP

#include "pcawb/model.hpp"
#include "pcawb/outcome.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pcawb {
namespace cl {

/// Closed combinator term over S and K.
class Cl {
 public:
  enum class Kind : std::uint8_t { K, S, App };

  static Cl k();
  static Cl s();
  static Cl app(Cl f, Cl a);

  Kind kind() const;
  bool is_app() const { return kind() == Kind::App; }
  const Cl& fun() const;
  const Cl& arg() const;
  /// Number of S/K leaves, saturating.
  std::uint64_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Cl& x, const Cl& y) {
    if (x.node_ == y.node_) return true;
    if (x.hash() != y.hash() || x.size() != y.size() || x.kind() != y.kind()) return false;
    if (!x.is_app()) return true;
    return x.fun() == y.fun() && x.arg() == y.arg();
  }
  friend bool operator!=(const Cl& x, const Cl& y) { return !(x == y); }

 private:
  struct Node;
  explicit Cl(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Cl::Node {
  Kind kind = Kind::K;
  std::uint64_t size = 1;
  std::size_t hash = 0;
  std::optional<Cl> f;
  std::optional<Cl> a;
};

inline Cl Cl::k() {
  static const Cl v(std::make_shared<const Node>(Node{Kind::K, 1, 0x4b, std::nullopt, std::nullopt}));
  return v;
}
inline Cl Cl::s() {
  static const Cl v(std::make_shared<const Node>(Node{Kind::S, 1, 0x53, std::nullopt, std::nullopt}));
  return v;
}
inline Cl Cl::app(Cl f, Cl a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  n->size = f.size() > kMax - a.size() ? kMax : f.size() + a.size();
  std::size_t h = 0x9e37;
  h ^= f.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= a.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  n->hash = h;
  n->f = std::move(f);
  n->a = std::move(a);
  return Cl(std::move(n));
}
inline Cl::Kind Cl::kind() const { return node_->kind; }
inline const Cl& Cl::fun() const { return *node_->f; }
inline const Cl& Cl::arg() const { return *node_->a; }
inline std::uint64_t Cl::size() const { return node_->size; }
inline std::size_t Cl::hash() const { return node_->hash; }

inline std::string to_string(const Cl& t) {
  if (t.kind() == Cl::Kind::K) return "K";
  if (t.kind() == Cl::Kind::S) return "S";
  std::string r = to_string(t.arg());
  if (t.arg().is_app()) r = "(" + r + ")";
  return to_string(t.fun()) + " " + r;
}

/// One leftmost-outermost weak reduction step; nullopt on normal forms.
inline std::optional<Cl> step(const Cl& t) {
  std::vector<Cl> args;  // innermost first after reversal
  Cl head = t;
  while (head.is_app()) {
    args.push_back(head.arg());
    head = head.fun();
  }
  std::reverse(args.begin(), args.end());
  auto rebuild = [&](Cl h, std::size_t from) {
    for (std::size_t i = from; i < args.size(); ++i) h = Cl::app(std::move(h), args[i]);
    return h;
  };
  if (head.kind() == Cl::Kind::K && args.size() >= 2) return rebuild(args[0], 2);
  if (head.kind() == Cl::Kind::S && args.size() >= 3) {
    Cl r = Cl::app(Cl::app(args[0], args[2]), Cl::app(args[1], args[2]));
    return rebuild(std::move(r), 3);
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (auto r = step(args[i])) {
      args[i] = std::move(*r);
      return rebuild(head, 0);
    }
  }
  return std::nullopt;
}

inline bool is_normal(const Cl& t) { return !step(t).has_value(); }

/// Counts and ranks normal forms by leaf count, then: K N, then S N, then
/// S N M ordered by the size of N, then rank of N, then rank of M.
/// Size 1 is K then S.
class NfCounter {
 public:
  static NfCounter& instance() {
    static NfCounter c;
    return c;
  }

  Element count(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(n);
    return table_[n];
  }

  Element rank(const Cl& t) {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(t.size());
    return rank_locked(t);
  }

  Cl unrank(std::uint64_t n, Element r) {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(n);
    return unrank_locked(n, std::move(r));
  }

 private:
  void ensure(std::uint64_t n) {
    if (table_.empty()) table_ = {Element(0), Element(2)};
    while (table_.size() <= n) {
      std::uint64_t m = table_.size();
      Element c = 2 * table_[m - 1];
      for (std::uint64_t i = 1; i + 1 < m; ++i) c += table_[i] * table_[m - 1 - i];
      table_.push_back(std::move(c));
    }
  }

  Element rank_locked(const Cl& t) {
    if (t.kind() == Cl::Kind::K) return 0;
    if (t.kind() == Cl::Kind::S) return 1;
    const std::uint64_t n = t.size();
    const Cl& f = t.fun();
    if (f.kind() == Cl::Kind::K) return rank_locked(t.arg());
    if (f.kind() == Cl::Kind::S) return table_[n - 1] + rank_locked(t.arg());
    // S N M
    Element r = 2 * table_[n - 1];
    const std::uint64_t left = f.arg().size();
    for (std::uint64_t i = 1; i < left; ++i) r += table_[i] * table_[n - 1 - i];
    r += rank_locked(f.arg()) * table_[t.arg().size()] + rank_locked(t.arg());
    return r;
  }

  Cl unrank_locked(std::uint64_t n, Element r) {
    if (n == 1) return r == 0 ? Cl::k() : Cl::s();
    const Element& prev = table_[n - 1];
    if (r < prev) return Cl::app(Cl::k(), unrank_locked(n - 1, std::move(r)));
    r -= prev;
    if (r < prev) return Cl::app(Cl::s(), unrank_locked(n - 1, std::move(r)));
    r -= prev;
    for (std::uint64_t i = 1; i + 1 < n; ++i) {
      const Element& rc = table_[n - 1 - i];
      Element block = table_[i] * rc;
      if (r < block) {
        Element lr = r / rc, rr = r % rc;
        return Cl::app(Cl::app(Cl::s(), unrank_locked(i, std::move(lr))), unrank_locked(n - 1 - i, std::move(rr)));
      }
      r -= block;
    }
    throw std::logic_error("normal form unrank out of range");
  }

  std::mutex mu_;
  std::vector<Element> table_;
};

}  // namespace cl

/// Closed S/K normal forms; a.b is the normal form of (a b) under
/// leftmost-outermost weak reduction. One unit of fuel per contraction
/// plus one for the application; revisiting a term is Undefined.
class SkNfModel : public PasModel {
 public:
  using PasModel::apply;

  static constexpr std::uint64_t kMaxTermSize = 1u << 10;

  std::string name() const override { return "sknf"; }
  std::optional<std::uint64_t> carrier_size() const override { return std::nullopt; }
  std::optional<PcaWitnesses> witnesses() const override { return PcaWitnesses{Element(0), Element(1)}; }

  Outcome apply(const Element& a, const Element& b, Fuel& fuel) const override {
    if (!fuel.consume()) return Outcome::unknown("fuel");
    cl::Cl t = cl::Cl::app(decode(a), decode(b));
    cl::Cl tortoise = t;
    std::uint64_t power = 1, lam = 0;
    while (auto next = cl::step(t)) {
      if (!fuel.consume()) return Outcome::unknown("fuel");
      t = std::move(*next);
      if (t.size() > kMaxTermSize) return Outcome::unknown("size");
      if (t == tortoise) return Outcome::undefined();
      if (++lam == power) {
        tortoise = t;
        power *= 2;
        lam = 0;
      }
    }
    return Outcome::defined(encode(t));
  }

  std::string describe(const Element& e) const override { return cl::to_string(decode(e)); }

  static Element encode(const cl::Cl& nf) {
    auto& c = cl::NfCounter::instance();
    Element offset = 0;
    for (std::uint64_t m = 1; m < nf.size(); ++m) offset += c.count(m);
    return offset + c.rank(nf);
  }

  static cl::Cl decode(const Element& id) {
    if (id < 0) throw InputError("sknf: negative id");
    auto& c = cl::NfCounter::instance();
    Element r = id;
    for (std::uint64_t n = 1;; ++n) {
      Element block = c.count(n);
      if (r < block) return c.unrank(n, std::move(r));
      r -= block;
    }
  }
};

}  // namespace pcawb

#endif  // PCAWB_SKNF_HPP
