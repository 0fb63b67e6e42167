#include "support.hpp"

#include <gtest/gtest.h>

using namespace pcawb;
using support::ids;

namespace {

using Cell = FinitePas::Cell;

FinitePas table(std::uint32_t n, std::vector<Cell> cells) { return FinitePas(n, std::move(cells)); }

/// Re-checks a Fails witness of a left-algebraic check with direct lookups.
bool separates_left(const FinitePas& m, const std::vector<int>& cls, const Verdict& v) {
  auto f = v.witness_of("f")->convert_to<std::uint32_t>(), g = v.witness_of("g")->convert_to<std::uint32_t>();
  auto z = v.witness_of("z")->convert_to<std::uint32_t>();
  return cls[f] == cls[g] && !support::related(cls, m.at(z, f), m.at(z, g));
}

}  // namespace

// ---- term equivalence -------------------------------------------------------

TEST(TermEquivGamma, Examples) {
  auto m = table(2, {Cell{0}, std::nullopt, Cell{1}, std::nullopt});
  IdentityNumbering id(m);
  EXPECT_TRUE(term_equiv_verdict(parse_term("#0 #1"), parse_term("#1 #1"), id, 10).is_holds());
  EXPECT_TRUE(term_equiv_verdict(parse_term("#1 #0"), parse_term("#1 #0"), id, 10).is_holds());
  EXPECT_TRUE(term_equiv_verdict(parse_term("#0 #0"), parse_term("#0 #1"), id, 10).is_fails());
  auto single = single_class_numbering(m);
  EXPECT_TRUE(term_equiv_verdict(parse_term("#0 #0"), parse_term("#1 #0"), single, 10).is_holds());
}

TEST(TermEquivGamma, DomainCoverage) {
  ToyK1 t;
  LabelNumbering partial(t, {{Element(0), "a"}, {Element(1), "b"}});
  EXPECT_EQ(partial.equivalent(0, 1, 10), Truth::False);
  EXPECT_THROW(partial.equivalent(0, 5, 10), DomainCoverageError);
}

// ---- precomplete / complete -------------------------------------------------

TEST(Precomplete, TotalTableIdentityHolds) {
  support::Rng rng(1);
  for (int i = 0; i < 30; ++i) {
    auto m = gen::random_table(rng, 1 + i % 4);
    IdentityNumbering id(m);
    auto r = check_precomplete(id, ids(m.size()), 10);
    EXPECT_TRUE(r.verdict.is_holds());
    EXPECT_TRUE(r.verdict.exhaustive);
    for (const auto& [b, f] : r.totalizers) EXPECT_TRUE(m.row_total(f.convert_to<std::uint32_t>()));
  }
}

TEST(Precomplete, PartialTwoElementTable) {
  // 0.1 undefined, everything else 0.
  auto m = load_finite_pas(support::data_path("partial2.json"));
  IdentityNumbering id(m);
  bool expected = support::precomplete_ref(m, {0, 1});
  auto r = check_precomplete(id, ids(2), 10);
  EXPECT_EQ(r.verdict.is_holds(), expected);
  EXPECT_TRUE(expected);
  EXPECT_EQ(r.totalizers.at(0), 1);
}

TEST(Precomplete, FailsNamesTheBlockingElement) {
  // Row 0 is partial and no row is total.
  auto m = table(2, {Cell{1}, std::nullopt, std::nullopt, Cell{0}});
  IdentityNumbering id(m);
  auto r = check_precomplete(id, ids(2), 10);
  ASSERT_TRUE(r.verdict.is_fails());
  EXPECT_EQ(r.verdict.witness_of("b"), Element(0));
  EXPECT_FALSE(support::precomplete_ref(m, {0, 1}));
}

TEST(Precomplete, MatchesReferenceOnAllTwoElementTables) {
  auto parts = support::all_partitions(2);
  support::for_each_table(2, true, [&](const FinitePas& m) {
    for (const auto& p : parts) {
      auto g = LabelNumbering::from_classes(m, p);
      EXPECT_EQ(check_precomplete(g, ids(2), 10).verdict.is_holds(), support::precomplete_ref(m, p));
    }
  });
}

TEST(Precomplete, UnitPca) {
  auto u = FinitePas::unit();
  EXPECT_TRUE(check_precomplete(IdentityNumbering(u), ids(1), 10).verdict.is_holds());
}

TEST(Complete, TotalTablesHold) {
  support::Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    auto m = gen::random_table(rng, 3);
    auto p = gen::random_partition(rng, 3, 3);
    EXPECT_TRUE(check_complete(LabelNumbering::from_classes(m, p), ids(3), 10).is_holds());
  }
  EXPECT_TRUE(check_complete(IdentityNumbering(FinitePas::unit()), ids(1), 10).is_holds());
}

TEST(Complete, NeedsOneSpecialClass) {
  // Exhaustive search for a two-element table that is precomplete but not
  // complete under the identity: the totalizers of different b must land in
  // different classes where b a is undefined.
  std::optional<FinitePas> found;
  support::for_each_table(2, true, [&](const FinitePas& m) {
    if (found) return;
    IdentityNumbering id(m);
    if (check_precomplete(id, ids(2), 10).verdict.is_holds() && !check_complete(id, ids(2), 10).is_holds()) found = m;
  });
  ASSERT_TRUE(found.has_value());
  // Reference: for every special label s some b has no total f sending its
  // undefined positions to s.
  const auto& m = *found;
  for (std::uint32_t s = 0; s < 2; ++s) {
    bool blocked = false;
    for (std::uint32_t b = 0; b < 2 && !blocked; ++b) {
      bool some = false;
      for (std::uint32_t f = 0; f < 2 && !some; ++f) {
        bool ok = m.row_total(f);
        for (std::uint32_t a = 0; a < 2 && ok; ++a) ok = *m.at(f, a) == (m.at(b, a) ? *m.at(b, a) : s);
        some = ok;
      }
      blocked = !some;
    }
    EXPECT_TRUE(blocked) << "special class " << s;
  }
}

// ---- totalize / fixpoint element ------------------------------------------

TEST(Totalize, ToyK1Projection) {
  ToyK1 t;
  Element b = ToyK1::code("\\x y. x");
  Element f = totalize(b, t);
  for (int a = 0; a < 10; ++a) {
    Outcome fa = t.apply(f, a, 10000);
    ASSERT_TRUE(fa.is_defined());
    for (int c = 0; c < 5; ++c) EXPECT_EQ(t.apply(fa.value(), c, 10000), Outcome::defined(a));
  }
}

TEST(Totalize, DefinedWhereBIsNot) {
  ToyK1 t;
  // b a diverges whenever a is self-application.
  Element b = ToyK1::code("\\x. x x");
  ASSERT_TRUE(t.apply(b, 6, 10000).is_undefined());
  Element f = totalize(b, t);
  EXPECT_TRUE(t.apply(f, 6, 10000).is_defined());
}

TEST(Totalize, UnitPca) { EXPECT_EQ(totalize(0, FinitePas::unit()), 0); }

TEST(Totalize, Unsupported) { EXPECT_THROW(totalize(0, ConcatPas()), UnsupportedOperation); }

TEST(FixpointElement, ConstantIdentityInToyK1) {
  ToyK1 t;
  Element i = ToyK1::code("\\x. x");
  Element f = t.apply(ToyK1::k_code(), i, 100).value();
  Element e = fixpoint_element(f, t);
  for (int y = 0; y < 10; ++y) {
    EXPECT_EQ(t.apply(e, y, 10000), Outcome::defined(y));
    EXPECT_NE(kleene_equal(t.apply(e, y, 10000), evaluate(application(f, {e, y}), t, 10000)), Truth::False);
  }
}

TEST(FixpointElement, UnitPca) {
  auto u = FinitePas::unit();
  Element e = fixpoint_element(0, u);
  EXPECT_EQ(e, 0);
  EXPECT_EQ(kleene_equiv(application(e, {0}), application(0, {e, 0}), u), Truth::True);
}

TEST(FixpointElement, GeneralEquationInToyK1) {
  ToyK1 t;
  for (int f = 0; f < 12; ++f) {
    Element e = fixpoint_element(f, t);
    for (int y = 0; y < 6; ++y)
      EXPECT_NE(kleene_equal(t.apply(e, y, 10000), evaluate(application(f, {e, y}), t, 10000)), Truth::False);
  }
}

// ---- algebraic ---------------------------------------------------------------

TEST(Algebraic, IdentityAlwaysHolds) {
  ToyK1 t;
  EXPECT_TRUE(check_algebraic(IdentityNumbering(t), sample_elements(t), 1000).is_holds());
  support::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    auto m = gen::random_table(rng, 3, 0.3);
    EXPECT_TRUE(check_algebraic(IdentityNumbering(m), ids(3), 10).is_holds());
  }
}

TEST(Algebraic, GammaEOnToyK1Fails) {
  ToyK1 t;
  auto xs = sample_elements(t, SamplePolicy{20});
  ExtensionalNumbering g(t, xs);
  Verdict v = check_algebraic(g, xs, 10000);
  ASSERT_TRUE(v.is_fails());
  // Re-check: a ~ a', b ~ b', but a b and a' b' are not ~e.
  auto a = *v.witness_of("a"), a2 = *v.witness_of("a'"), b = *v.witness_of("b"), b2 = *v.witness_of("b'");
  EXPECT_EQ(g.equivalent(a, a2, 10000), Truth::True);
  EXPECT_EQ(g.equivalent(b, b2, 10000), Truth::True);
  EXPECT_EQ(outcome_equiv_gamma(t.apply(a, b, 10000), t.apply(a2, b2, 10000), g, 10000), Truth::False);
}

TEST(Algebraic, SingleClassOnTotalTable) {
  support::Rng rng(5);
  auto m = gen::random_table(rng, 4);
  EXPECT_TRUE(check_algebraic(single_class_numbering(m), ids(4), 10).is_holds());
}

TEST(Algebraic, MatchesReferenceCongruence) {
  support::Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    auto m = gen::random_table(rng, 3, 0.25);
    auto p = gen::random_partition(rng, 3, 2);
    EXPECT_EQ(check_algebraic(LabelNumbering::from_classes(m, p), ids(3), 10).is_holds(), support::congruence(m, p));
  }
}

// ---- extensional -------------------------------------------------------------

TEST(Extensional, GammaEAlwaysExtensional) {
  ToyK1 t;
  auto xs = sample_elements(t, SamplePolicy{20});
  EXPECT_TRUE(check_extensional(ExtensionalNumbering(t, xs), xs, 10000).is_holds());
  support::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    auto m = gen::random_table(rng, 3, 0.3);
    EXPECT_TRUE(check_extensional(ExtensionalNumbering(m, ids(3)), ids(3), 10).is_holds());
  }
}

TEST(Extensional, StrongFailsOnConstantMaps) {
  ToyK1 t;
  auto demo = demo_extensional_not_strong(t);
  EXPECT_EQ(demo.d, 0);
  EXPECT_EQ(demo.e, 17);
  ASSERT_TRUE(demo.strong_on_pair.is_fails());
  EXPECT_EQ(demo.strong_on_pair.witness_of("f"), demo.kd);
  EXPECT_EQ(demo.strong_on_pair.witness_of("g"), demo.ke);
  EXPECT_NE(demo.d, demo.e);
  EXPECT_TRUE(demo.extensional.is_holds());
  // The full scan finds a (possibly different) witness too.
  EXPECT_TRUE(demo.strong_on_samples.is_fails());
}

TEST(Extensional, IdentityOnConcatIsVacuous) {
  ConcatPas c;
  auto xs = sample_elements(c, SamplePolicy{24});
  EXPECT_TRUE(check_extensional(IdentityNumbering(c), xs, 10).is_holds());
}

TEST(Extensional, StrongImpliesPlainOnRandomInstances) {
  support::Rng rng(8);
  for (int i = 0; i < 400; ++i) {
    auto m = gen::random_table(rng, 3, 0.25);
    auto g = LabelNumbering::from_classes(m, gen::random_partition(rng, 3, 3));
    if (check_strong_extensional(g, ids(3), 10).is_holds()) EXPECT_TRUE(check_extensional(g, ids(3), 10).is_holds());
  }
}

// ---- right / left / inseparable ---------------------------------------------

TEST(Sided, IdentityHoldsEverywhere) {
  ToyK1 t;
  IdentityNumbering id(t);
  auto xs = sample_elements(t);
  EXPECT_TRUE(check_right_algebraic(id, xs, 1000).is_holds());
  EXPECT_TRUE(check_left_algebraic(id, xs, 1000).is_holds());
  EXPECT_TRUE(check_inseparability(id, xs, 1000).is_holds());
}

TEST(Sided, GammaELeftAlgebraicFailsInToyK1) {
  ToyK1 t;
  auto xs = sample_elements(t, SamplePolicy{20});
  ExtensionalNumbering g(t, xs);
  Verdict v = check_left_algebraic(g, xs, 10000);
  ASSERT_TRUE(v.is_fails());
  auto f = *v.witness_of("f"), gg = *v.witness_of("g"), z = *v.witness_of("z");
  EXPECT_NE(f, gg);
  EXPECT_EQ(g.equivalent(f, gg, 10000), Truth::True);
  EXPECT_EQ(outcome_equiv_gamma(t.apply(z, f, 10000), t.apply(z, gg, 10000), g, 10000), Truth::False);
}

TEST(Sided, FailureWitnessesRecheck) {
  support::Rng rng(9);
  int fails = 0;
  for (int i = 0; i < 300; ++i) {
    auto m = gen::random_table(rng, 3, 0.25);
    auto p = gen::random_partition(rng, 3, 2);
    auto g = LabelNumbering::from_classes(m, p);
    Verdict v = check_left_algebraic(g, ids(3), 10);
    if (v.is_fails()) {
      ++fails;
      EXPECT_TRUE(separates_left(m, p, v));
    }
    Verdict r = check_right_algebraic(g, ids(3), 10);
    if (r.is_fails()) {
      auto f = r.witness_of("f")->convert_to<std::uint32_t>(), gg = r.witness_of("g")->convert_to<std::uint32_t>();
      auto x = r.witness_of("x")->convert_to<std::uint32_t>();
      EXPECT_EQ(p[f], p[gg]);
      EXPECT_FALSE(support::related(p, m.at(f, x), m.at(gg, x)));
    }
  }
  EXPECT_GT(fails, 0);
}

TEST(Sided, LeftImpliesRightWhenColumnsAreRows) {
  // Left-algebraic implies right-algebraic given an element evaluating each column.
  support::Rng rng(10);
  for (int i = 0; i < 300; ++i) {
    auto m = support::column_closed_table(rng, 2 + i % 3, 0.2);
    auto g = LabelNumbering::from_classes(m, gen::random_partition(rng, m.size(), 2));
    if (check_left_algebraic(g, ids(m.size()), 10).is_holds())
      EXPECT_TRUE(check_right_algebraic(g, ids(m.size()), 10).is_holds());
  }
}

TEST(Sided, AlgebraicAndStrongGiveInseparability) {
  support::Rng rng(11);
  for (int i = 0; i < 400; ++i) {
    auto m = gen::random_table(rng, 3, 0.25);
    auto g = LabelNumbering::from_classes(m, gen::random_partition(rng, 3, 3));
    if (check_algebraic(g, ids(3), 10).is_holds() && check_strong_extensional(g, ids(3), 10).is_holds())
      EXPECT_TRUE(check_inseparability(g, ids(3), 10).is_holds());
  }
}

TEST(Sided, AlgebraicEqualsLeftAlgebraicWhenColumnsAreRows) {
  support::Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    auto m = support::column_closed_table(rng, 2 + i % 3, 0.2);
    auto g = LabelNumbering::from_classes(m, gen::random_partition(rng, m.size(), 2));
    EXPECT_EQ(check_algebraic(g, ids(m.size()), 10).tag, check_left_algebraic(g, ids(m.size()), 10).tag);
  }
}

TEST(Sided, LeftAlgebraicWithoutRightOnPlainTables) {
  // Without an element evaluating columns, left-algebraicity can hold while congruence
  // fails: 0 ~ 1 with different rows, but every column agrees on 0 and 1.
  auto m = table(3, {Cell{2}, Cell{2}, Cell{2}, Cell{0}, Cell{0}, Cell{0}, Cell{1}, Cell{1}, Cell{1}});
  auto g = LabelNumbering::from_classes(m, {0, 0, 1});
  EXPECT_TRUE(check_left_algebraic(g, ids(3), 10).is_holds());
  EXPECT_TRUE(check_right_algebraic(g, ids(3), 10).is_fails());
  EXPECT_TRUE(check_algebraic(g, ids(3), 10).is_fails());
  EXPECT_FALSE(support::congruence(m, {0, 0, 1}));
}

TEST(Sided, ZxMapsRightWitnessesToLeftWitnessesInToyK1) {
  ToyK1 t;
  auto xs = sample_elements(t, SamplePolicy{12});
  FunctionNumbering g(t, [](const Element& e) { return std::to_string(static_cast<unsigned>(e % 3)); }, "mod3");
  int mapped = 0;
  for (const auto& f : xs)
    for (const auto& h : xs) {
      for (const auto& x : xs) {
        Truth r = outcome_equiv_gamma(t.apply(f, x, 10000), t.apply(h, x, 10000), g, 10000);
        if (r != Truth::False) continue;
        Element z = z_of(x, t);
        EXPECT_EQ(t.apply(z, f, 10000), t.apply(f, x, 10000));
        EXPECT_EQ(outcome_equiv_gamma(t.apply(z, f, 10000), t.apply(z, h, 10000), g, 10000), Truth::False);
        ++mapped;
        break;
      }
    }
  EXPECT_GT(mapped, 0);
}

// ---- quotient ------------------------------------------------------------

TEST(Quotient, IdentityIsIsomorphic) {
  support::Rng rng(13);
  auto m = gen::random_table(rng, 4, 0.2);
  auto q = quotient(IdentityNumbering(m), m);
  EXPECT_EQ(q.table.cells(), m.cells());
}

TEST(Quotient, UnitCollapsesToUnit) {
  auto u = FinitePas::unit();
  auto q = quotient(single_class_numbering(u), u);
  EXPECT_EQ(q.table, FinitePas::unit());
  EXPECT_TRUE(check_pca_witnesses(q.table, ids(1), 10).is_holds());
}

TEST(Quotient, TwoClassCongruencesOfAThreeElementTable) {
  auto m = table(3, {Cell{0}, Cell{1}, Cell{1}, Cell{2}, Cell{0}, Cell{0}, Cell{2}, Cell{0}, Cell{0}});
  int congruences = 0;
  for (const auto& p : support::all_partitions(3)) {
    std::set<int> blocks(p.begin(), p.end());
    if (blocks.size() != 2) continue;
    auto g = LabelNumbering::from_classes(m, p);
    if (!support::congruence(m, p)) {
      EXPECT_THROW(quotient(g, m), CongruenceError);
      continue;
    }
    ++congruences;
    auto q = quotient(g, m);
    ASSERT_EQ(q.table.size(), 2u);
    // Brute force: class of any product of representatives.
    for (std::uint32_t a = 0; a < 3; ++a)
      for (std::uint32_t b = 0; b < 3; ++b) {
        Cell expect = m.at(a, b) ? Cell{q.class_of[*m.at(a, b)]} : Cell{};
        EXPECT_EQ(q.table.at(q.class_of[a], q.class_of[b]), expect);
      }
  }
  EXPECT_EQ(congruences, 1);
}

TEST(Quotient, RejectsWithWitness) {
  auto m = table(3, {Cell{2}, Cell{2}, Cell{2}, Cell{0}, Cell{0}, Cell{0}, Cell{1}, Cell{1}, Cell{1}});
  auto g = LabelNumbering::from_classes(m, {0, 0, 1});
  try {
    quotient(g, m);
    FAIL();
  } catch (const CongruenceError& e) {
    const auto& v = e.verdict();
    auto a = v.witness_of("a")->convert_to<std::uint32_t>(), a2 = v.witness_of("a'")->convert_to<std::uint32_t>();
    auto b = v.witness_of("b")->convert_to<std::uint32_t>(), b2 = v.witness_of("b'")->convert_to<std::uint32_t>();
    std::vector<int> cls{0, 0, 1};
    EXPECT_FALSE(support::related(cls, m.at(a, b), m.at(a2, b2)));
  }
}

// ---- extensional gives precomplete ----------------------------------------------------

TEST(ExtensionalGivesPrecomplete, UnderTheTotalizerHypothesis) {
  support::Rng rng(14);
  int checked = 0;
  while (checked < 150) {
    auto m = gen::random_table(rng, 3, 0.15);
    if (!support::totalizer_hypothesis(m)) continue;
    auto g = LabelNumbering::from_classes(m, gen::random_partition(rng, 3, 3));
    if (check_extensional(g, ids(3), 10).is_holds()) EXPECT_TRUE(check_precomplete(g, ids(3), 10).verdict.is_holds());
    ++checked;
  }
}

// ---- JSON inputs -------------------------------------------------------------

TEST(NumberingFiles, PartitionAndLabels) {
  using nlohmann::json;
  EXPECT_EQ(classes_from_partition_json(json::parse("[[0, 2], [1]]"), 3), (std::vector<int>{0, 1, 0}));
  EXPECT_THROW(classes_from_partition_json(json::parse("[[0, 2]]"), 3), InputError);
  EXPECT_THROW(classes_from_partition_json(json::parse("[[0, 1], [1, 2]]"), 3), InputError);
  EXPECT_THROW(classes_from_partition_json(json::parse("[[0, 5], [1, 2]]"), 3), InputError);
  auto labels = labels_from_json(json::parse(R"({"0": "a", "1": "a", "2": "b"})"));
  EXPECT_EQ(labels.at(Element(2)), "b");
  EXPECT_THROW(labels_from_json(json::parse(R"({"x": "a"})")), InputError);
}
