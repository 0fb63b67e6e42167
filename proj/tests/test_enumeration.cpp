#include "support.hpp"

#include <gtest/gtest.h>

using namespace pcawb;

namespace {

std::vector<Nat> indices(const std::vector<Emission>& es) {
  std::vector<Nat> out;
  for (const auto& e : es) out.push_back(e.index);
  return out;
}

std::vector<Candidate> fixture_candidates() {
  return candidates_from_json(read_json_file(support::data_path("candidates.json")));
}

}  // namespace

// ---- families ------------------------------------------------------------------

TEST(CeFamily, ScheduleDelaysElements) {
  auto f = CeFamily::finite({{3, 1}, {5}}, {2, 0});
  EXPECT_TRUE(f.at(0, 1).empty());
  EXPECT_EQ(f.at(0, 2), (NatSet{3}));
  EXPECT_EQ(f.at(0, 3), (NatSet{1, 3}));
  EXPECT_EQ(f.at(1, 0), (NatSet{5}));
  EXPECT_TRUE(f.at(7, 100).empty());
  EXPECT_EQ(f.settled_stage(), Nat(4));
}

TEST(CeFamily, StagesAreMonotone) {
  support::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    auto rf = support::random_family(rng, 6, 8);
    auto f = CeFamily::finite(rf.seqs, rf.delays);
    for (Nat n = 0; n < rf.seqs.size(); ++n)
      for (Nat s = 0; s < 12; ++s) {
        auto a = f.at(n, s), b = f.at(n, s + 1);
        EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      }
    EXPECT_EQ(f.final_sets(0), rf.sets);
  }
}

TEST(CeFamily, JsonErrors) {
  using nlohmann::json;
  EXPECT_THROW(CeFamily::from_json(json::parse(R"({"sets": [[0]], "schedule": [0, 1]})")), InputError);
  EXPECT_THROW(CeFamily::from_json(json::parse(R"({"sets": [[-1]]})")), InputError);
  EXPECT_THROW(CeFamily::from_json(json::parse(R"([[0]])")), InputError);
}

// ---- oracle and one-one numbering ------------------------------------------------

TEST(InequalityOracle, Basics) {
  auto u = InequalityOracle::from_json(read_json_file(support::data_path("oracle3.json")));
  EXPECT_FALSE(u.listed(2, 0, 2));
  EXPECT_TRUE(u.listed(2, 0, 3));
  EXPECT_TRUE(u.listed(1, 2, 5));
  EXPECT_EQ(u.pairs_at(4), (std::set<std::pair<Nat, Nat>>{{0, 2}}));
  EXPECT_THROW(InequalityOracle::from_json(nlohmann::json::parse("[[1, 1, 0]]")), InputError);
}

TEST(OneOne, Fixture) {
  auto f = CeFamily::from_json(read_json_file(support::data_path("family3.json")));
  auto u = InequalityOracle::from_json(read_json_file(support::data_path("oracle3.json")));
  auto sets = f.final_sets(0);
  EXPECT_FALSE(u.unsound_pair(sets).has_value());
  auto es = one_one_numbering(f, u, 10);
  ASSERT_EQ(es.size(), 2u);
  EXPECT_EQ(es[0].index, 0u);
  EXPECT_EQ(es[0].stage, 0u);
  EXPECT_EQ(es[1].index, 2u);
  EXPECT_EQ(es[1].stage, 5u);
  EXPECT_TRUE(verify_one_one(sets, indices(es)).is_holds());
}

TEST(OneOne, DuplicateIsNeverEmitted) {
  // Sets 0 and 1 are equal, so (0, 1) never appears in a sound oracle.
  auto f = CeFamily::finite({{4}, {4}});
  auto u = oracle_from_sets(f.final_sets(0), [](Nat, Nat) { return 0; });
  EXPECT_EQ(indices(one_one_numbering(f, u, 50)), (std::vector<Nat>{0}));
}

TEST(OneOne, StageBudgetDelaysEmission) {
  auto f = CeFamily::finite({{0}, {1}});
  auto u = oracle_from_sets(f.final_sets(0), [](Nat, Nat) { return 7; });
  EXPECT_EQ(indices(one_one_numbering(f, u, 7)), (std::vector<Nat>{0}));
  EXPECT_EQ(one_one_numbering(f, u, 8).back().stage, 7u);
}

TEST(OneOne, UnsoundOracleDetected) {
  auto f = CeFamily::finite({{4}, {4}});
  InequalityOracle u({{0, 1, 0}});
  EXPECT_EQ(u.unsound_pair(f.final_sets(0)), (std::optional<std::pair<Nat, Nat>>{{0, 1}}));
}

TEST(OneOne, RandomFamiliesWithSoundOracles) {
  support::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    auto rf = support::random_family(rng, 8, 6);
    auto f = CeFamily::finite(rf.seqs, rf.delays);
    std::uniform_int_distribution<Nat> when(0, 9);
    auto u = oracle_from_sets(rf.sets, [&](Nat, Nat) { return when(rng); });
    auto es = one_one_numbering(f, u, 10);
    auto idx = indices(es);
    EXPECT_TRUE(verify_one_one(rf.sets, idx).is_holds()) << "family " << i;
    // Reference: an index is emitted iff no smaller index holds the same set.
    std::vector<Nat> expect;
    for (Nat n = 0; n < rf.sets.size(); ++n) {
      bool first = true;
      for (Nat m = 0; m < n; ++m) first = first && rf.sets[m] != rf.sets[n];
      if (first) expect.push_back(n);
    }
    std::sort(idx.begin(), idx.end());
    EXPECT_EQ(idx, expect);
    for (std::size_t k = 1; k < es.size(); ++k) EXPECT_LE(es[k - 1].stage, es[k].stage);
  }
}

TEST(VerifyOneOne, Failures) {
  std::vector<NatSet> sets{{0}, {0}, {1}};
  auto dup = verify_one_one(sets, {0, 1});
  ASSERT_TRUE(dup.is_fails());
  EXPECT_EQ(dup.witness_of("m"), Element(1));
  auto miss = verify_one_one(sets, {0});
  ASSERT_TRUE(miss.is_fails());
  EXPECT_EQ(miss.witness_of("missing"), Element(2));
  EXPECT_TRUE(verify_one_one(sets, {9}).is_fails());
}

// ---- diagonal class and dichotomy ---------------------------------------------------

TEST(Diagonal, FixtureCandidates) {
  auto cands = fixture_candidates();
  ASSERT_EQ(cands.size(), 11u);
  auto cls = sigma1_counterexample_class(cands, 20);
  auto verdicts = diagonal_dichotomy(cands, cls, 20);
  std::map<std::string, std::string> expect{
      {"lists-both-at-once", "repeats-a-set"}, {"only-x", "misses-a-set"},   {"late-pair", "repeats-a-set"},
      {"same-code-twice", "misses-a-set"},     {"silent", "misses-a-set"},   {"foreign-codes", "misses-a-set"},
      {"y-then-x", "repeats-a-set"},           {"mixed-miss", "misses-a-set"}, {"slow-pair", "repeats-a-set"},
      {"immediate-pair", "repeats-a-set"},     {"interleaved", "repeats-a-set"}};
  for (const auto& v : verdicts) {
    EXPECT_EQ(v.verdict, expect.at(v.candidate)) << v.candidate;
    EXPECT_TRUE(v.ground_truth_agrees) << v.candidate;
  }
  EXPECT_EQ(cls.fired[8], Nat(6));
}

TEST(Diagonal, ClassLayout) {
  auto cls = sigma1_counterexample_class(fixture_candidates(), 20);
  auto sets = cls.family.final_sets(20);
  ASSERT_EQ(sets.size(), 22u);
  for (Nat e = 0; e < 11; ++e) {
    EXPECT_EQ(sets[2 * e + 1], (NatSet{2 * e, 2 * e + 1}));
    EXPECT_EQ(sets[2 * e] == sets[2 * e + 1], cls.fired[e].has_value());
  }
  // x_e only grows after the search fires.
  EXPECT_EQ(cls.family.at(0, 0), (NatSet{0}));
  EXPECT_EQ(cls.family.at(0, 1), (NatSet{0, 1}));
}

TEST(Diagonal, RejectsCodesOutsideTheClass) {
  std::vector<Candidate> c{{"wide", {Nat(40)}}};
  EXPECT_THROW(sigma1_counterexample_class(c, 5), InputError);
}

TEST(Diagonal, GeneratedCandidatesNeverEnumerateTheClass) {
  // No candidate lists the class one-one: either it repeats a set or it
  // misses one, and the settled sets confirm which.
  support::Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const std::size_t w = 1 + rng() % 5;
    std::vector<Candidate> cands;
    std::uniform_int_distribution<Nat> code(0, 2 * w - 1);
    for (std::size_t e = 0; e < w; ++e) {
      Candidate c{"c" + std::to_string(e), {}};
      for (int s = 0, len = static_cast<int>(rng() % 8); s < len; ++s) {
        if (rng() % 4 == 0) c.emits.emplace_back(std::nullopt);
        else c.emits.emplace_back(code(rng));
      }
      cands.push_back(c);
    }
    const Nat stages = 10;
    auto cls = sigma1_counterexample_class(cands, stages, w);
    auto sets = cls.family.final_sets(stages);
    for (const auto& v : diagonal_dichotomy(cands, cls, stages)) {
      EXPECT_TRUE(v.ground_truth_agrees) << v.candidate;
    }
    // Independent check: no candidate is a one-one enumeration of the class.
    for (const auto& c : cands) {
      auto range = c.range_by(stages);
      std::set<NatSet> seen;
      bool repeats = false;
      for (auto r : range) repeats = !seen.insert(sets[r]).second || repeats;
      std::set<NatSet> all(sets.begin(), sets.end());
      EXPECT_TRUE(repeats || seen != all) << c.name;
    }
  }
}

// ---- equality probe -------------------------------------------------------------

TEST(Probe, AgreesOnTheDiagonalClass) {
  auto cands = fixture_candidates();
  auto cls = sigma1_counterexample_class(cands, 20);
  auto rep = equality_complexity_probe(cls.family, 20);
  EXPECT_TRUE(rep.agrees);
  EXPECT_EQ(rep.pairs.size(), 22u * 23u / 2u);
}

TEST(Probe, SmallExamples) {
  auto f = CeFamily::finite({{0, 1}, {1, 0}, {0}, {2}}, {0, 3, 0, 1});
  auto rep = equality_complexity_probe(f, 10);
  EXPECT_TRUE(rep.agrees);
  for (const auto& p : rep.pairs) {
    if (p.i == 0 && p.j == 1) EXPECT_TRUE(p.probe_equal);
    if (p.i == 0 && p.j == 2) EXPECT_FALSE(p.probe_equal);
    if (p.i == 2 && p.j == 3) EXPECT_FALSE(p.probe_equal);
  }
}

TEST(Probe, LayoutErrors) {
  EXPECT_THROW(equality_complexity_probe(CeFamily::finite({{0, 2}}), 5), LayoutError);
  EXPECT_THROW(equality_complexity_probe(CeFamily::finite({{1}}), 5), LayoutError);
  EXPECT_THROW(equality_complexity_probe(CeFamily::finite({{0, 3}}), 5), LayoutError);
  EXPECT_THROW(equality_complexity_probe(CeFamily::finite({{0}, {0}}), 5), LayoutError);
}
