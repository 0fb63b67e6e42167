#ifndef PCAWB_DEMOS_HPP
#define PCAWB_DEMOS_HPP

#include "pcawb/numbering.hpp"
#include "pcawb/properties.hpp"
#include "pcawb/toyk1.hpp"

#include <cstdint>
#include <vector>

namespace pcawb {

/// gamma_e on ToyK1 is extensional but not strongly extensional. With
/// d = code(\x. x) and e = code(\x. (\y. y) x), the constant maps k d and
/// k e agree up to ~e on every input yet differ as functions.
struct ExtensionalityDemo {
  Element d, e, kd, ke;
  std::vector<Element> samples;
  Verdict extensional;
  /// Strong extensionality over the pair (k d, k e).
  Verdict strong_on_pair;
  /// Strong extensionality over all sampled pairs (first witness in id order).
  Verdict strong_on_samples;
};

inline ExtensionalityDemo demo_extensional_not_strong(const ToyK1& m, std::size_t sample_count = 16,
                                                      std::uint64_t fuel = kDefaultFuel) {
  ExtensionalityDemo out;
  out.d = ToyK1::code("\\x. x");
  out.e = ToyK1::code("\\x. (\\y. y) x");
  out.kd = m.apply(ToyK1::k_code(), out.d, fuel).value();
  out.ke = m.apply(ToyK1::k_code(), out.e, fuel).value();
  out.samples = sample_elements(m, SamplePolicy{sample_count, {out.d, out.e, out.kd, out.ke}, true});
  ExtensionalNumbering gamma(m, out.samples);
  out.extensional = check_extensional(gamma, out.samples, fuel);
  out.strong_on_pair = check_strong_extensional(gamma, {out.kd, out.ke}, out.samples, fuel);
  out.strong_on_samples = check_strong_extensional(gamma, out.samples, fuel);
  return out;
}

}  // namespace pcawb

#endif  // PCAWB_DEMOS_HPP
