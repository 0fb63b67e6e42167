#ifndef PCAWB_REPORT_HPP
#define PCAWB_REPORT_HPP

#include "pcawb/numbering.hpp"
#include "pcawb/outcome.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace pcawb {

/// Element ids as JSON numbers when they fit, decimal strings otherwise.
inline nlohmann::json element_json(const Element& e) {
  if (auto s = small_id(e)) return *s;
  return e.str();
}

inline nlohmann::json witness_json(const Verdict::Witness& w) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [role, e] : w) out.push_back({{"role", role}, {"element", element_json(e)}});
  return out;
}

inline nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j{{"verdict", verdict_label(v)}, {"exhaustive", v.exhaustive}, {"conclusive", v.conclusive},
                   {"unresolved", v.unknowns}};
  if (!v.witness.empty()) j["witness"] = witness_json(v.witness);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

/// Exit status from the top-level verdict alone.
inline int exit_code(const Verdict& v) {
  switch (v.tag) {
    case Verdict::Tag::Holds: return 0;
    case Verdict::Tag::Fails: return 1;
    case Verdict::Tag::Unknown: return 4;
  }
  return 4;
}

inline constexpr int kExitUsage = 2;
inline constexpr int kExitModel = 3;

/// Skeleton of a run report; the comparable part holds no timing data.
inline nlohmann::json run_report(const std::string& command, const std::string& model, nlohmann::json parameters) {
  return {{"schema", "1"}, {"command", command}, {"model", model}, {"parameters", std::move(parameters)}};
}

inline nlohmann::json samples_json(const std::vector<Element>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(element_json(x));
  return out;
}

}  // namespace pcawb

#endif  // PCAWB_REPORT_HPP
