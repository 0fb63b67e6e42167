// pcawb: evaluate terms, check numbering properties, run fixed points and
// enumeration demos. Reports are JSON on stdout.

#include "pcawb/pcawb.hpp"
#include "pcawb/generate.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace pcawb;
using nlohmann::json;

namespace {

/// Model construction failed (bad name, malformed or invalid table).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::unique_ptr<PasModel> load_model(const std::string& spec) {
  try {
    return make_model(spec);
  } catch (const InputError& e) {
    throw ModelError(e.what());
  }
}

const FinitePas& require_finite(const PasModel& m) {
  auto* f = dynamic_cast<const FinitePas*>(&m);
  if (!f) throw ModelError("model '" + m.name() + "' is not a finite table");
  return *f;
}

std::unique_ptr<Numbering> make_numbering(const std::string& spec, const PasModel& m,
                                          const std::vector<Element>& samples) {
  if (spec == "identity") return std::make_unique<IdentityNumbering>(m);
  if (spec == "gamma-e") return std::make_unique<ExtensionalNumbering>(m, samples);
  if (spec == "single") return std::make_unique<FunctionNumbering>(single_class_numbering(m));
  if (spec.rfind("partition:", 0) == 0) {
    const auto& f = require_finite(m);
    auto cls = classes_from_partition_json(read_json_file(spec.substr(10)), f.size());
    return std::make_unique<LabelNumbering>(LabelNumbering::from_classes(m, cls));
  }
  if (spec.rfind("labels:", 0) == 0) {
    return std::make_unique<LabelNumbering>(m, labels_from_json(read_json_file(spec.substr(7))));
  }
  throw InputError("unknown numbering '" + spec + "' (identity, gamma-e, single, partition:<file>, labels:<file>)");
}

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

void emit(json report, const Clock& clock, bool timing) {
  if (timing) report["timing"] = {{"wall_ms", clock.ms()}};
  std::cout << report.dump(2) << "\n";
}

// ---- eval / compile ------------------------------------------------------

struct EvalArgs {
  std::string model = "unit";
  std::string term;
  std::uint64_t fuel = kDefaultFuel;
};

int cmd_eval(const EvalArgs& a) {
  auto m = load_model(a.model);
  Term t = parse_term(a.term, m->witnesses());
  auto ev = evaluate_traced(t, *m, a.fuel);
  std::cout << to_string(ev.outcome) << "\n";
  std::cout << "fuel used: " << ev.fuel_used << " of " << a.fuel << "\n";
  if (ev.outcome.is_defined()) std::cout << "value: " << m->describe(ev.outcome.value()) << "\n";
  if (ev.outcome.is_unknown()) std::cout << "reason: " << ev.outcome.reason() << "\n";
  return 0;
}

int cmd_compile(const EvalArgs& a) {
  auto m = load_model(a.model);
  Term t = parse_term(a.term, m->witnesses());
  PrintOptions opts{m->witnesses()};
  std::cout << to_string(t, opts) << "\n";
  if (is_closed(t)) {
    auto ev = evaluate_traced(t, *m, a.fuel);
    std::cout << to_string(ev.outcome) << "\n";
  }
  return 0;
}

// ---- check ---------------------------------------------------------------

struct CheckArgs {
  std::string property;
  std::string model = "unit";
  std::string numbering = "identity";
  std::uint64_t fuel = kDefaultFuel;
  std::size_t samples = 16;
  bool timing = true;
};

int cmd_check(const CheckArgs& a) {
  static const std::vector<std::string> known = {"precomplete",    "complete",       "algebraic",
                                                 "extensional",    "strong-extensional", "right-algebraic",
                                                 "left-algebraic", "inseparable",    "pca-witnesses"};
  if (std::find(known.begin(), known.end(), a.property) == known.end()) {
    throw InputError("unknown property '" + a.property + "'");
  }
  Clock clock;
  auto m = load_model(a.model);
  auto xs = sample_elements(*m, SamplePolicy{a.samples});
  json report = run_report("check " + a.property, m->name(),
                           {{"fuel", a.fuel}, {"samples", a.samples}, {"numbering", a.numbering}});
  report["property"] = a.property;
  report["samples"] = samples_json(xs);
  report["fuel"] = a.fuel;

  Verdict v;
  if (a.property == "pca-witnesses") {
    v = check_pca_witnesses(*m, xs, a.fuel);
  } else {
    auto g = make_numbering(a.numbering, *m, xs);
    if (a.property == "precomplete") {
      auto r = check_precomplete(*g, xs, a.fuel);
      v = r.verdict;
      if (v.is_holds()) {
        json tot = json::array();
        for (const auto& [b, f] : r.totalizers) tot.push_back({element_json(b), element_json(f)});
        report["totalizers"] = tot;
      }
    } else if (a.property == "complete") {
      v = check_complete(*g, xs, a.fuel);
    } else if (a.property == "algebraic") {
      v = check_algebraic(*g, xs, a.fuel);
    } else if (a.property == "extensional") {
      v = check_extensional(*g, xs, a.fuel);
    } else if (a.property == "strong-extensional") {
      v = check_strong_extensional(*g, xs, a.fuel);
    } else if (a.property == "right-algebraic") {
      v = check_right_algebraic(*g, xs, a.fuel);
    } else if (a.property == "left-algebraic") {
      v = check_left_algebraic(*g, xs, a.fuel);
    } else {
      v = check_inseparability(*g, xs, a.fuel);
    }
  }
  json vj = verdict_json(v);
  for (auto it = vj.begin(); it != vj.end(); ++it) report[it.key()] = it.value();
  emit(report, clock, a.timing);
  return exit_code(v);
}

// ---- fixpoint ------------------------------------------------------------

struct FixArgs {
  std::string model;
  std::string partition;
  std::string mode = "implication";
  std::string out;
  bool trace = false;
  std::uint64_t random = 0;
  std::uint32_t max_carrier = 4;
  bool oracle = false;
  std::uint64_t seed = 0;
  bool timing = true;
};

FixMode parse_mode(const std::string& s) {
  if (s == "implication") return FixMode::ImplicationOnly;
  if (s == "biconditional") return FixMode::Biconditional;
  throw InputError("mode must be implication or biconditional");
}

json direction_json(const DirectionStatus& d) {
  json j{{"holds", d.holds}};
  if (d.witness) j["pair"] = {d.witness->first, d.witness->second};
  if (d.x) j["x"] = *d.x;
  return j;
}

int cmd_fixpoint_batch(const FixArgs& a) {
  Clock clock;
  std::mt19937_64 rng(a.seed);
  std::uint64_t matches = 0;
  json first_mismatch;
  for (std::uint64_t i = 0; i < a.random; ++i) {
    std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % a.max_carrier);
    auto table = gen::random_table(rng, n, 0.25);
    auto seed_cls = gen::random_partition(rng, n, n);
    auto lfp = least_fixed_point(EqRel::from_classes(seed_cls), table);
    std::optional<std::vector<int>> brute;
    if (a.oracle) brute = oracle::minimal_fixed_point(EqRel::from_classes(seed_cls).classes(), table);
    bool ok = !a.oracle || (brute && *brute == lfp.relation.classes());
    if (ok) {
      ++matches;
    } else if (first_mismatch.is_null()) {
      first_mismatch = {{"instance", i}, {"table", to_json(table)}, {"lfp", lfp.relation.to_json()}};
    }
  }
  json report = run_report("fixpoint --random", "random", {{"instances", a.random}, {"max_carrier", a.max_carrier},
                                                           {"seed", a.seed}, {"oracle", a.oracle}});
  report["instances"] = a.random;
  if (a.oracle) {
    report["oracle-match"] = matches == a.random;
    report["matches"] = matches;
    if (!first_mismatch.is_null()) report["first_mismatch"] = first_mismatch;
    std::cerr << "oracle-match: " << (matches == a.random ? "true" : "false") << "\n";
  }
  emit(report, clock, a.timing);
  return a.oracle && matches != a.random ? 1 : 0;
}

int cmd_fixpoint(const FixArgs& a) {
  if (a.random > 0) return cmd_fixpoint_batch(a);
  if (a.model.empty()) throw InputError("fixpoint needs --model finite:<file> or --random N");
  Clock clock;
  auto m = load_model(a.model);
  const auto& table = require_finite(*m);
  EqRel seed = a.partition.empty() ? EqRel::identity(table.size())
                                   : EqRel::from_json(read_json_file(a.partition), table.size());
  auto mode = parse_mode(a.mode);
  auto res = least_fixed_point(seed, table, mode, a.trace);
  json report = run_report("fixpoint", m->name(), {{"mode", a.mode}, {"trace", a.trace}});
  report["seed"] = seed.to_json();
  report["partition"] = res.relation.to_json();
  report["iterations"] = res.iterations;
  if (a.trace) {
    json tr = json::array();
    for (const auto& r : res.trace) tr.push_back(r.to_json());
    report["trace"] = tr;
  }
  if (res.forward) report["forward"] = direction_json(*res.forward);
  if (res.backward) report["backward"] = direction_json(*res.backward);
  if (a.oracle) {
    auto brute = oracle::minimal_fixed_point(seed.classes(), table);
    report["oracle-match"] = brute && *brute == res.relation.classes();
  }
  if (!a.out.empty()) {
    std::ofstream o(a.out);
    if (!o) throw InputError("cannot write " + a.out);
    o << res.relation.to_json().dump() << "\n";
  }
  emit(report, clock, a.timing);
  return 0;
}

// ---- enumerate -----------------------------------------------------------

struct EnumArgs {
  std::string family;
  std::string oracle;
  std::string candidates;
  std::string emitted;
  std::uint64_t stages = 100;
  std::size_t width = 0;
  bool timing = true;
};

std::vector<Nat> parse_index_list(const std::string& s) {
  std::vector<Nat> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("bad index '" + tok + "'");
    }
  }
  return out;
}

json sets_json(const std::vector<NatSet>& sets) {
  json out = json::array();
  for (const auto& s : sets) out.push_back(std::vector<Nat>(s.begin(), s.end()));
  return out;
}

int cmd_one_one(const EnumArgs& a) {
  if (a.family.empty() || a.oracle.empty()) throw InputError("one-one needs --family and --oracle");
  Clock clock;
  auto fam = CeFamily::from_json(read_json_file(a.family));
  auto u = InequalityOracle::from_json(read_json_file(a.oracle));
  auto sets = fam.final_sets(a.stages);
  if (auto bad = u.unsound_pair(sets)) {
    throw InputError("oracle lists (" + std::to_string(bad->first) + "," + std::to_string(bad->second) +
                     ") but those sets are equal or out of range");
  }
  auto em = one_one_numbering(fam, u, a.stages);
  std::vector<Nat> idx;
  json emissions = json::array();
  for (const auto& e : em) {
    idx.push_back(e.index);
    emissions.push_back({{"index", e.index}, {"stage", e.stage}});
  }
  Verdict v = verify_one_one(sets, idx);
  json report = run_report("enumerate one-one", "family", {{"stages", a.stages}});
  report["emitted"] = idx;
  report["emissions"] = emissions;
  report["sets"] = sets_json(sets);
  report["note"] = "finite desk-scale family; infinitude of the class is not enforced";
  json vj = verdict_json(v);
  for (auto it = vj.begin(); it != vj.end(); ++it) report[it.key()] = it.value();
  emit(report, clock, a.timing);
  return exit_code(v);
}

int cmd_verify(const EnumArgs& a) {
  if (a.family.empty()) throw InputError("verify needs --family and --emitted");
  Clock clock;
  auto fam = CeFamily::from_json(read_json_file(a.family));
  auto sets = fam.final_sets(a.stages);
  auto idx = parse_index_list(a.emitted);
  Verdict v = verify_one_one(sets, idx);
  json report = run_report("enumerate verify", "family", {{"stages", a.stages}});
  report["emitted"] = idx;
  json vj = verdict_json(v);
  for (auto it = vj.begin(); it != vj.end(); ++it) report[it.key()] = it.value();
  emit(report, clock, a.timing);
  return exit_code(v);
}

int cmd_sigma1(const EnumArgs& a) {
  Clock clock;
  std::vector<Candidate> cands;
  if (!a.candidates.empty()) cands = candidates_from_json(read_json_file(a.candidates));
  auto cls = sigma1_counterexample_class(cands, a.stages, a.width);
  auto verdicts = diagonal_dichotomy(cands, cls, a.stages);
  auto probe = equality_complexity_probe(cls.family, a.stages);
  json report = run_report("enumerate sigma1-demo", "diagonal-class", {{"stages", a.stages}, {"width", cls.width}});
  report["layout"] = "x_e at 2e, y_e at 2e+1";
  report["sets"] = sets_json(cls.family.final_sets(a.stages));
  json vs = json::array();
  bool all_agree = true;
  for (const auto& d : verdicts) {
    vs.push_back({{"candidate", d.candidate}, {"verdict", d.verdict}, {"witness", d.witness},
                  {"ground-truth-agrees", d.ground_truth_agrees}});
    all_agree = all_agree && d.ground_truth_agrees;
  }
  report["candidates"] = vs;
  report["probe-agrees"] = probe.agrees;
  json pairs = json::array();
  for (const auto& p : probe.pairs)
    if (p.i != p.j) pairs.push_back({{"pair", {p.i, p.j}}, {"equal", p.probe_equal}});
  report["probe"] = pairs;
  Verdict v = all_agree && probe.agrees ? Verdict::holds(true)
                                        : Verdict::fails({}, "a verdict disagrees with the settled sets");
  report["verdict"] = verdict_label(v);
  emit(report, clock, a.timing);
  return exit_code(v);
}

// ---- demo ----------------------------------------------------------------

struct DemoArgs {
  std::string model;
  std::string partition;
  std::uint64_t fuel = kDefaultFuel;
  std::size_t samples = 16;
  bool timing = true;
};

int cmd_demo_extensional(const DemoArgs& a) {
  Clock clock;
  ToyK1 m;
  auto d = demo_extensional_not_strong(m, a.samples, a.fuel);
  json report = run_report("demo extensional", m.name(), {{"fuel", a.fuel}, {"samples", a.samples}});
  report["d"] = {{"id", element_json(d.d)}, {"term", m.describe(d.d)}};
  report["e"] = {{"id", element_json(d.e)}, {"term", m.describe(d.e)}};
  report["kd"] = element_json(d.kd);
  report["ke"] = element_json(d.ke);
  report["samples"] = samples_json(d.samples);
  report["extensional"] = verdict_json(d.extensional);
  report["strong-extensional"] = verdict_json(d.strong_on_pair);
  report["strong-extensional-all-pairs"] = verdict_json(d.strong_on_samples);
  bool shown = d.extensional.is_holds() && d.strong_on_pair.is_fails();
  report["verdict"] = shown ? "Holds" : "Fails";
  emit(report, clock, a.timing);
  return shown ? 0 : 1;
}

int cmd_demo_strong(const DemoArgs& a) {
  if (a.model.empty() || a.partition.empty()) throw InputError("demo strong-not-algebraic needs --model and --partition");
  Clock clock;
  auto m = load_model(a.model);
  const auto& table = require_finite(*m);
  EqRel seed = EqRel::from_json(read_json_file(a.partition), table.size());
  auto r = demo_strong_not_algebraic(table, seed);
  json report = run_report("demo strong-not-algebraic", m->name(), json::object());
  report["partition"] = r.relation.to_json();
  int code = 0;
  switch (r.status) {
    case StrongNotAlgebraicReport::Status::Degenerate:
      report["verdict"] = "degenerate-input";
      report["note"] = r.note;
      code = 4;
      break;
    case StrongNotAlgebraicReport::Status::NoWitness:
      report["verdict"] = "Unknown";
      report["note"] = r.note;
      report["strong-extensional"] = verdict_json(r.strong_extensional);
      code = 4;
      break;
    case StrongNotAlgebraicReport::Status::Witnessed: {
      report["strong-extensional"] = verdict_json(r.strong_extensional);
      report["left-algebraic"] = verdict_json(r.left_algebraic);
      auto cell = [](const std::optional<FinitePas::Cell>& c) { return c && *c ? json(**c) : json(nullptr); };
      report["witness"] = {{"f", *r.f}, {"g", *r.g}, {"z", *r.z}, {"zf", cell(r.a)}, {"zg", cell(r.b)}};
      report["verdict"] = r.strong_extensional.is_holds() ? "Holds" : "Fails";
      code = r.strong_extensional.is_holds() ? 0 : 1;
      break;
    }
  }
  emit(report, clock, a.timing);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcawb: partial combinatory algebras with numberings"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a closed term");
  eval->add_option("term", ev.term, "Term text, e.g. \"S K K #5\"")->required();
  eval->add_option("--model", ev.model, "unit, toyk1, sknf, concat or finite:<path>");
  eval->add_option("--fuel", ev.fuel, "Fuel budget")->check(CLI::PositiveNumber);

  EvalArgs co;
  auto* compile = app.add_subcommand("compile", "Show the combinator form of a term");
  compile->add_option("term", co.term)->required();
  compile->add_option("--model", co.model);
  compile->add_option("--fuel", co.fuel)->check(CLI::PositiveNumber);

  CheckArgs ck;
  bool ck_no_timing = false;
  auto* check = app.add_subcommand("check", "Check a property of a numbering");
  check->add_option("property", ck.property, "precomplete, complete, algebraic, extensional, strong-extensional, "
                                             "right-algebraic, left-algebraic, inseparable, pca-witnesses")
      ->required();
  check->add_option("--model", ck.model);
  check->add_option("--numbering", ck.numbering, "identity, gamma-e, single, partition:<file>, labels:<file>");
  check->add_option("--fuel", ck.fuel)->check(CLI::PositiveNumber);
  check->add_option("--samples", ck.samples, "Sample count for unbounded carriers");
  check->add_flag("--no-timing", ck_no_timing, "Omit the timing field");

  FixArgs fx;
  bool fx_no_timing = false;
  auto* fix = app.add_subcommand("fixpoint", "Least fixed point above a seed partition");
  fix->add_option("--model", fx.model, "finite:<path>");
  fix->add_option("--partition", fx.partition, "Seed partition file (default: identity)");
  fix->add_option("--mode", fx.mode, "implication or biconditional");
  fix->add_option("--out", fx.out, "Write the resulting partition here");
  fix->add_flag("--trace", fx.trace, "Include per-iteration partitions");
  fix->add_option("--random", fx.random, "Run a batch of random tables instead");
  fix->add_option("--max-carrier", fx.max_carrier)->check(CLI::Range(1u, 6u));
  fix->add_flag("--oracle", fx.oracle, "Compare against brute-force partition enumeration");
  fix->add_option("--seed", fx.seed, "Random seed");
  fix->add_flag("--no-timing", fx_no_timing);

  EnumArgs en;
  bool en_no_timing = false;
  auto* enumerate = app.add_subcommand("enumerate", "Staged enumeration demos");
  enumerate->require_subcommand(1);
  auto* one_one = enumerate->add_subcommand("one-one", "1-1 numbering from an inequality oracle");
  auto* sigma1 = enumerate->add_subcommand("sigma1-demo", "Diagonal class against candidate enumerations");
  auto* verify = enumerate->add_subcommand("verify", "Check an emitted index list");
  for (auto* sc : {one_one, verify}) sc->add_option("--family", en.family)->required();
  one_one->add_option("--oracle", en.oracle)->required();
  verify->add_option("--emitted", en.emitted, "Comma-separated indices")->required();
  sigma1->add_option("--candidates", en.candidates);
  sigma1->add_option("--width", en.width, "Number of (x_e, y_e) pairs (at least the candidate count)");
  for (auto* sc : {one_one, sigma1, verify}) {
    sc->add_option("--stages", en.stages);
    sc->add_flag("--no-timing", en_no_timing);
  }

  DemoArgs dm;
  bool dm_no_timing = false;
  auto* demo = app.add_subcommand("demo", "Bundled constructions");
  demo->require_subcommand(1);
  auto* d_ext = demo->add_subcommand("extensional", "ToyK1: extensional but not strongly extensional");
  auto* d_strong = demo->add_subcommand("strong-not-algebraic", "Finite table: strongly extensional, not left-algebraic");
  d_ext->add_option("--fuel", dm.fuel)->check(CLI::PositiveNumber);
  d_ext->add_option("--samples", dm.samples);
  d_strong->add_option("--model", dm.model)->required();
  d_strong->add_option("--partition", dm.partition)->required();
  for (auto* sc : {d_ext, d_strong}) sc->add_flag("--no-timing", dm_no_timing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(ev);
    if (*compile) return cmd_compile(co);
    if (*check) {
      ck.timing = !ck_no_timing;
      return cmd_check(ck);
    }
    if (*fix) {
      fx.timing = !fx_no_timing;
      return cmd_fixpoint(fx);
    }
    if (*enumerate) {
      en.timing = !en_no_timing;
      if (*one_one) return cmd_one_one(en);
      if (*sigma1) return cmd_sigma1(en);
      return cmd_verify(en);
    }
    if (*demo) {
      dm.timing = !dm_no_timing;
      if (*d_ext) return cmd_demo_extensional(dm);
      return cmd_demo_strong(dm);
    }
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const DomainCoverageError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const UnsupportedOperation& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
