#ifndef PCAWB_CONCAT_HPP
#define PCAWB_CONCAT_HPP

#include "pcawb/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcawb {

/// Finite strings of naturals with concatenation as (total) application.
///
/// Ids use the binary-gap bijection: the set bits p1 < p2 < ... < pk of an
/// id encode the string [p1, p2-p1-1, ..., pk-p(k-1)-1]; id 0 is the empty
/// string and the length of a string is the popcount of its id.
class ConcatPas : public PasModel {
 public:
  using PasModel::apply;

  std::string name() const override { return "concat"; }
  std::optional<std::uint64_t> carrier_size() const override { return std::nullopt; }
  bool total() const override { return true; }

  Outcome apply(const Element& a, const Element& b, Fuel& fuel) const override {
    if (a < 0 || b < 0) throw InputError("negative element id");
    if (!fuel.consume()) return Outcome::unknown();
    if (a == 0) return Outcome::defined(b);
    Element shifted = b << (boost::multiprecision::msb(a) + 1);
    return Outcome::defined(a + shifted);
  }

  std::string describe(const Element& e) const override {
    std::string out = "[";
    bool first = true;
    for (auto v : decode(e)) {
      if (!first) out += ',';
      out += std::to_string(v);
      first = false;
    }
    return out + "]";
  }

  static std::vector<std::uint64_t> decode(const Element& id) {
    std::vector<std::uint64_t> out;
    if (id <= 0) return out;
    std::uint64_t prev = 0;
    bool first = true;
    auto top = boost::multiprecision::msb(id);
    for (std::uint64_t p = boost::multiprecision::lsb(id); p <= top; ++p) {
      if (!boost::multiprecision::bit_test(id, static_cast<unsigned>(p))) continue;
      out.push_back(first ? p : p - prev - 1);
      prev = p;
      first = false;
    }
    return out;
  }

  static Element encode(const std::vector<std::uint64_t>& seq) {
    Element id = 0;
    std::uint64_t pos = 0;
    bool first = true;
    for (auto v : seq) {
      pos = first ? v : pos + v + 1;
      boost::multiprecision::bit_set(id, static_cast<unsigned>(pos));
      first = false;
    }
    return id;
  }

  static std::size_t length(const Element& id) { return decode(id).size(); }
};

}  // namespace pcawb

#endif  // PCAWB_CONCAT_HPP
