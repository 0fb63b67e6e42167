#ifndef PCAWB_TERM_HPP
#define PCAWB_TERM_HPP

#include "pcawb/model.hpp"
#include "pcawb/outcome.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pcawb {

/// Strict applicative term: a variable, an element literal, or an
/// application. Immutable; subterms are shared.
class Term {
 public:
  enum class Kind { Var, Elem, App };

  static Term var(std::string name);
  static Term elem(Element id);
  static Term app(Term left, Term right);
  /// Left-associated application spine: apps(a, {b, c}) = (a b) c.
  static Term apps(Term head, std::initializer_list<Term> args) {
    for (const auto& a : args) head = app(std::move(head), a);
    return head;
  }

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_elem() const { return kind() == Kind::Elem; }
  bool is_app() const { return kind() == Kind::App; }

  const std::string& name() const;
  const Element& id() const;
  const Term& left() const;
  const Term& right() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct VarNode {
    std::string name;
  };
  struct ElemNode {
    Element id;
  };
  struct AppNode;
  struct Node;

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::AppNode {
  Term left;
  Term right;
};

struct Term::Node {
  std::variant<VarNode, ElemNode, AppNode> v;
};

inline Term Term::var(std::string name) { return Term(std::make_shared<const Node>(Node{VarNode{std::move(name)}})); }
inline Term Term::elem(Element id) { return Term(std::make_shared<const Node>(Node{ElemNode{std::move(id)}})); }
inline Term Term::app(Term left, Term right) {
  return Term(std::make_shared<const Node>(Node{AppNode{std::move(left), std::move(right)}}));
}

inline Term::Kind Term::kind() const { return static_cast<Kind>(node_->v.index()); }
inline const std::string& Term::name() const { return std::get<VarNode>(node_->v).name; }
inline const Element& Term::id() const { return std::get<ElemNode>(node_->v).id; }
inline const Term& Term::left() const { return std::get<AppNode>(node_->v).left; }
inline const Term& Term::right() const { return std::get<AppNode>(node_->v).right; }

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::Elem: return a.id() == b.id();
    case Term::Kind::App: return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

inline void collect_free_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.name()); break;
    case Term::Kind::Elem: break;
    case Term::Kind::App:
      collect_free_vars(t.left(), out);
      collect_free_vars(t.right(), out);
      break;
  }
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free_vars(t, out);
  return out;
}

inline bool occurs_free(const std::string& x, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return t.name() == x;
    case Term::Kind::Elem: return false;
    case Term::Kind::App: return occurs_free(x, t.left()) || occurs_free(x, t.right());
  }
  return false;
}

inline bool is_closed(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return false;
    case Term::Kind::Elem: return true;
    case Term::Kind::App: return is_closed(t.left()) && is_closed(t.right());
  }
  return false;
}

inline std::size_t term_size(const Term& t) {
  return t.is_app() ? 1 + term_size(t.left()) + term_size(t.right()) : 1;
}

/// Replaces every bound variable by its element; unbound variables stay.
inline Term substitute(const Term& t, const std::map<std::string, Element>& bindings) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = bindings.find(t.name());
      return it == bindings.end() ? t : Term::elem(it->second);
    }
    case Term::Kind::Elem: return t;
    case Term::Kind::App: {
      Term l = substitute(t.left(), bindings);
      Term r = substitute(t.right(), bindings);
      return Term::app(std::move(l), std::move(r));
    }
  }
  return t;
}

/// Bracket abstraction over designated k and s:
///
///   [x] x          = s k k
///   [x] y, [x] #c  = k y, k #c          (atoms other than x)
///   [x] (t1 t2)    = s ([x] t1) ([x] t2)
///
/// The k-rule is only used for atoms. Applying it to a compound term
/// without x would evaluate that term eagerly, so [x] t could be undefined
/// in a partial model. No eta shortcut.
inline Term abstract(const std::string& x, const Term& t, const PcaWitnesses& w) {
  const Term k = Term::elem(w.k);
  const Term s = Term::elem(w.s);
  switch (t.kind()) {
    case Term::Kind::Var:
      if (t.name() == x) return Term::apps(s, {k, k});
      return Term::app(k, t);
    case Term::Kind::Elem: return Term::app(k, t);
    case Term::Kind::App:
      return Term::apps(s, {abstract(x, t.left(), w), abstract(x, t.right(), w)});
  }
  return t;
}

inline Term abstract(const std::string& x, const Term& t, const PasModel& m) {
  auto w = m.witnesses();
  if (!w) throw UnsupportedOperation("model '" + m.name() + "' has no designated k and s");
  return abstract(x, t, *w);
}

/// Nested abstraction: abstract_all({x, y}, t) = [x] [y] t.
inline Term abstract_all(const std::vector<std::string>& xs, Term t, const PcaWitnesses& w) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) t = abstract(*it, t, w);
  return t;
}

struct PrintOptions {
  /// When set, elements equal to the witnesses print as S and K.
  std::optional<PcaWitnesses> witnesses;
};

inline void print_term(const Term& t, std::string& out, const PrintOptions& opts) {
  switch (t.kind()) {
    case Term::Kind::Var: out += t.name(); break;
    case Term::Kind::Elem:
      if (opts.witnesses && t.id() == opts.witnesses->k) {
        out += 'K';
      } else if (opts.witnesses && t.id() == opts.witnesses->s) {
        out += 'S';
      } else {
        out += '#';
        out += t.id().str();
      }
      break;
    case Term::Kind::App:
      print_term(t.left(), out, opts);
      out += ' ';
      if (t.right().is_app()) {
        out += '(';
        print_term(t.right(), out, opts);
        out += ')';
      } else {
        print_term(t.right(), out, opts);
      }
      break;
  }
}

/// Minimal-parenthesis rendering with left-associative application.
inline std::string to_string(const Term& t, const PrintOptions& opts = {}) {
  std::string out;
  print_term(t, out, opts);
  return out;
}

/// Parser for the surface syntax:
///
///   term  := lam | appl
///   lam   := '\' ident+ '.' term        (compiled away by bracket abstraction)
///   appl  := atom+                       (left associative)
///   atom  := ident | 'S' | 'K' | '#' digits | '(' term ')'
///
/// `S` and `K` denote the designated witnesses and need them, as does `\`.
class TermParser {
 public:
  TermParser(std::string_view text, std::optional<PcaWitnesses> w) : text_(text), w_(std::move(w)) {}

  Term parse() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return t;
  }

 private:
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_lambda() {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == '\\';
  }

  bool at_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == '#' || ident_start(c);
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) throw ParseError("expected identifier", pos_);
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  const PcaWitnesses& need_witnesses(const char* what) {
    if (!w_) throw ParseError(std::string(what) + " needs a model with designated k and s", pos_);
    return *w_;
  }

  Term parse_term() {
    if (at_lambda()) {
      ++pos_;
      std::vector<std::string> binders;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '.') {
        std::string x = parse_ident();
        if (x == "S" || x == "K") throw ParseError("cannot bind reserved name " + x, pos_);
        binders.push_back(std::move(x));
        skip_ws();
      }
      if (binders.empty()) throw ParseError("expected binder after '\\'", pos_);
      if (pos_ >= text_.size()) throw ParseError("expected '.'", pos_);
      ++pos_;
      const auto& w = need_witnesses("lambda abstraction");
      Term body = parse_term();
      return abstract_all(binders, std::move(body), w);
    }
    if (!at_atom()) throw ParseError("expected term", pos_);
    Term t = parse_atom();
    while (true) {
      if (at_lambda()) {
        // Trailing abstraction extends to the right: f \x. x = f (\x. x).
        Term r = parse_term();
        return Term::app(std::move(t), std::move(r));
      }
      if (!at_atom()) break;
      t = Term::app(std::move(t), parse_atom());
    }
    return t;
  }

  Term parse_atom() {
    skip_ws();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (c == '#') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected digits after '#'", pos_);
      return Term::elem(Element(std::string(text_.substr(start, pos_ - start))));
    }
    std::size_t at = pos_;
    std::string id = parse_ident();
    if (id == "S" || id == "K") {
      pos_ = at;
      const auto& w = need_witnesses(id == "S" ? "S" : "K");
      pos_ = at + 1;
      return Term::elem(id == "S" ? w.s : w.k);
    }
    return Term::var(std::move(id));
  }

  std::string_view text_;
  std::optional<PcaWitnesses> w_;
  std::size_t pos_ = 0;
};

inline Term parse_term(std::string_view text, std::optional<PcaWitnesses> w = std::nullopt) {
  return TermParser(text, std::move(w)).parse();
}

}  // namespace pcawb

#endif  // PCAWB_TERM_HPP
