#ifndef PCAWB_MODELS_HPP
#define PCAWB_MODELS_HPP

#include "pcawb/concat.hpp"
#include "pcawb/finite_pas.hpp"
#include "pcawb/model.hpp"
#include "pcawb/sknf.hpp"
#include "pcawb/toyk1.hpp"

#include <memory>
#include <string>

namespace pcawb {

/// Resolves a model name: unit, toyk1, sknf, concat, or finite:<path>.
inline std::unique_ptr<PasModel> make_model(const std::string& spec) {
  if (spec == "unit") return std::make_unique<FinitePas>(FinitePas::unit());
  if (spec == "toyk1") return std::make_unique<ToyK1>();
  if (spec == "sknf") return std::make_unique<SkNfModel>();
  if (spec == "concat") return std::make_unique<ConcatPas>();
  if (spec.rfind("finite:", 0) == 0) return std::make_unique<FinitePas>(load_finite_pas(spec.substr(7)));
  throw InputError("unknown model '" + spec + "' (expected unit, toyk1, sknf, concat or finite:<path>)");
}

/// The first n elements of a model as a table. Products outside the first
/// n ids, and products not resolved within `fuel`, become empty cells;
/// the counts say how far the table is from the real structure.
struct Restriction {
  FinitePas table;
  std::uint64_t out_of_range = 0;
  std::uint64_t unresolved = 0;
};

inline Restriction restrict_model(const PasModel& m, std::uint32_t n, std::uint64_t fuel) {
  if (n == 0) throw InputError("restriction needs at least one element");
  std::vector<FinitePas::Cell> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  std::uint64_t out = 0, unresolved = 0;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      Outcome o = m.apply(Element(a), Element(b), fuel);
      if (o.is_defined() && o.value() < n) {
        cells.emplace_back(o.value().convert_to<std::uint32_t>());
      } else {
        if (o.is_defined()) ++out;
        if (o.is_unknown()) ++unresolved;
        cells.emplace_back(std::nullopt);
      }
    }
  }
  return {FinitePas(n, std::move(cells), std::nullopt, m.name() + "|" + std::to_string(n)), out, unresolved};
}

}  // namespace pcawb

#endif  // PCAWB_MODELS_HPP
