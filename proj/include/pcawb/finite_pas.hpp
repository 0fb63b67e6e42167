#ifndef PCAWB_FINITE_PAS_HPP
#define PCAWB_FINITE_PAS_HPP

#include "pcawb/model.hpp"
#include "pcawb/outcome.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pcawb {

/// Partial application table over {0, ..., n-1}; an empty cell is Undefined.
class FinitePas : public PasModel {
 public:
  using PasModel::apply;

  using Cell = std::optional<std::uint32_t>;

  FinitePas(std::uint32_t n, std::vector<Cell> table, std::optional<PcaWitnesses> w = std::nullopt,
            std::string name = "finite")
      : n_(n), table_(std::move(table)), witnesses_(std::move(w)), name_(std::move(name)) {
    if (n_ == 0) throw InputError("finite pas needs at least one element");
    if (table_.size() != static_cast<std::size_t>(n_) * n_) throw InputError("table is not n x n");
    for (const auto& c : table_) {
      if (c && *c >= n_) throw InputError("table entry " + std::to_string(*c) + " out of range");
    }
    if (witnesses_ && (!contains(witnesses_->k) || !contains(witnesses_->s))) {
      throw InputError("designated k/s outside the carrier");
    }
    total_ = std::all_of(table_.begin(), table_.end(), [](const Cell& c) { return c.has_value(); });
  }

  /// The one-element pca {0} with 0.0 = 0 and k = s = 0.
  static FinitePas unit() { return FinitePas(1, {Cell{0}}, PcaWitnesses{0, 0}, "unit"); }

  std::string name() const override { return name_; }
  std::optional<std::uint64_t> carrier_size() const override { return n_; }
  std::optional<PcaWitnesses> witnesses() const override { return witnesses_; }
  bool total() const override { return total_; }

  Outcome apply(const Element& a, const Element& b, Fuel& fuel) const override {
    auto i = small_id(a), j = small_id(b);
    if (!i || !j || *i >= n_ || *j >= n_) throw InputError("element outside finite carrier");
    if (!fuel.consume()) return Outcome::unknown();
    const Cell& c = at(static_cast<std::uint32_t>(*i), static_cast<std::uint32_t>(*j));
    return c ? Outcome::defined(*c) : Outcome::undefined();
  }

  std::uint32_t size() const { return n_; }
  const Cell& at(std::uint32_t a, std::uint32_t b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<Cell>& cells() const { return table_; }

  bool row_total(std::uint32_t a) const {
    for (std::uint32_t b = 0; b < n_; ++b)
      if (!at(a, b)) return false;
    return true;
  }

  FinitePas with_witnesses(std::optional<PcaWitnesses> w) const { return FinitePas(n_, table_, std::move(w), name_); }

  friend bool operator==(const FinitePas& x, const FinitePas& y) {
    auto wx = x.witnesses_, wy = y.witnesses_;
    bool same_w = wx.has_value() == wy.has_value() && (!wx || (wx->k == wy->k && wx->s == wy->s));
    return x.n_ == y.n_ && x.table_ == y.table_ && same_w;
  }

 private:
  std::uint32_t n_;
  std::vector<Cell> table_;
  std::optional<PcaWitnesses> witnesses_;
  std::string name_;
  bool total_ = false;
};

// JSON file format:
//   {"size": n, "table": [[entry, ...], ...], "k": i?, "s": j?, "total": bool?}
// where entry is an integer or null. "total", when present, must match.

inline FinitePas finite_pas_from_json(const nlohmann::json& j, std::string name = "finite") {
  try {
    if (!j.is_object()) throw InputError("finite pas: expected a JSON object");
    if (!j.contains("size") || !j.at("size").is_number_unsigned()) throw InputError("finite pas: missing size");
    auto n = j.at("size").get<std::uint64_t>();
    if (n == 0 || n > 4096) throw InputError("finite pas: size out of range");
    const auto& rows = j.at("table");
    if (!rows.is_array() || rows.size() != n) throw InputError("finite pas: table must have size rows");
    std::vector<FinitePas::Cell> cells;
    cells.reserve(n * n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) throw InputError("finite pas: each row must have size entries");
      for (const auto& e : row) {
        if (e.is_null()) {
          cells.emplace_back(std::nullopt);
        } else if (e.is_number_unsigned() && e.get<std::uint64_t>() < n) {
          cells.emplace_back(static_cast<std::uint32_t>(e.get<std::uint64_t>()));
        } else {
          throw InputError("finite pas: entry " + e.dump() + " out of range");
        }
      }
    }
    bool has_k = j.contains("k") && !j.at("k").is_null();
    bool has_s = j.contains("s") && !j.at("s").is_null();
    if (has_k != has_s) throw InputError("finite pas: k and s must be given together");
    std::optional<PcaWitnesses> w;
    if (has_k) {
      if (!j.at("k").is_number_unsigned() || !j.at("s").is_number_unsigned())
        throw InputError("finite pas: k and s must be element ids");
      w = PcaWitnesses{Element(j.at("k").get<std::uint64_t>()), Element(j.at("s").get<std::uint64_t>())};
    }
    FinitePas m(static_cast<std::uint32_t>(n), std::move(cells), w, std::move(name));
    if (j.contains("total") && !j.at("total").is_null()) {
      if (!j.at("total").is_boolean()) throw InputError("finite pas: total must be a boolean");
      if (j.at("total").get<bool>() && !m.total()) throw InputError("finite pas: claimed total but has null entries");
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("finite pas: ") + e.what());
  }
}

inline nlohmann::json to_json(const FinitePas& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint32_t a = 0; a < m.size(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::uint32_t b = 0; b < m.size(); ++b) {
      const auto& c = m.at(a, b);
      row.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
    }
    rows.push_back(std::move(row));
  }
  nlohmann::json j = {{"size", m.size()}, {"table", std::move(rows)}};
  if (auto w = m.witnesses()) {
    j["k"] = w->k.convert_to<std::uint64_t>();
    j["s"] = w->s.convert_to<std::uint64_t>();
  }
  j["total"] = m.total();
  return j;
}

inline FinitePas load_finite_pas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return finite_pas_from_json(j, "finite:" + path);
}

inline void save_finite_pas(const FinitePas& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << to_json(m).dump(2) << '\n';
}

}  // namespace pcawb

#endif  // PCAWB_FINITE_PAS_HPP
