#include <gtest/gtest.h>

#include <random>

#include "selkey/eval_harness.hpp"
#include "support/fixtures.hpp"

namespace {

using selkey::GoldSet;
using selkey::KeywordCandidate;
using selkey::Keyphrase;

std::vector<KeywordCandidate> cands(std::initializer_list<Keyphrase> phrases) {
  std::vector<KeywordCandidate> out;
  for (const auto& p : phrases) {
    KeywordCandidate c;
    c.words = p;
    out.push_back(c);
  }
  return out;
}

GoldSet gold(std::initializer_list<Keyphrase> phrases) { return {"d", {phrases}}; }

TEST(FMeasure, SymmetricPoint) {
  EXPECT_DOUBLE_EQ(selkey::f1_score(0.5, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(selkey::f2_score(0.5, 0.5), 0.5);
}

TEST(FMeasure, RecallHeavyPoint) {
  EXPECT_NEAR(selkey::f1_score(0.2, 0.8), 0.32, 1e-12);
  EXPECT_NEAR(selkey::f2_score(0.2, 0.8), 0.5, 1e-12);
}

TEST(FMeasure, ZeroIsDefined) {
  EXPECT_EQ(selkey::f1_score(0, 0), 0.0);
  EXPECT_EQ(selkey::f2_score(0, 0), 0.0);
}

TEST(FMeasureProperty, F2VersusF1FollowsRecallVersusPrecision) {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double p = i / 20.0, r = j / 20.0;
      const double f1 = selkey::f1_score(p, r), f2 = selkey::f2_score(p, r);
      EXPECT_GE(f1, 0.0);
      EXPECT_LE(f1, 1.0);
      EXPECT_LE(f2, 1.0);
      if (p == 0 || r == 0) {
        EXPECT_EQ(f1, 0.0);
        EXPECT_EQ(f2, 0.0);
        continue;
      }
      EXPECT_LE(std::min(p, r), f1 + 1e-15);
      EXPECT_LE(f1, std::max(p, r) + 1e-15);
      if (r > p) {
        EXPECT_GT(f2, f1);
      } else if (r < p) {
        EXPECT_LT(f2, f1);
      } else {
        EXPECT_NEAR(f2, f1, 1e-15);
      }
    }
}

TEST(Evaluate, HandCount) {
  const auto s = selkey::evaluate(cands({{"a"}, {"b"}, {"c"}}), gold({{"b"}, {"c"}, {"d"}, {"e"}}));
  EXPECT_EQ(s.tp, 2u);
  EXPECT_EQ(s.fp, 1u);
  EXPECT_EQ(s.fn, 2u);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_NEAR(s.f1, 4.0 / 7.0, 1e-12);
  EXPECT_EQ(s.matched, (std::vector<Keyphrase>{{"b"}, {"c"}}));
}

TEST(Evaluate, NoCandidatesGivesZeroPrecision) {
  const auto s = selkey::evaluate({}, gold({{"a"}}));
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
  EXPECT_EQ(s.fn, 1u);
}

TEST(Evaluate, OrderAndDuplicatesDoNotMatter) {
  const auto g = gold({{"x", "y"}, {"z"}});
  const auto a = selkey::evaluate(cands({{"x", "y"}, {"q"}}), g);
  const auto b = selkey::evaluate(cands({{"q"}, {"x", "y"}, {"x", "y"}, {"q"}}), g);
  EXPECT_EQ(a.tp, b.tp);
  EXPECT_EQ(a.fp, b.fp);
  EXPECT_EQ(a.fn, b.fn);
  EXPECT_EQ(a.f2, b.f2);
}

TEST(Evaluate, MatchingIsExactOnWordSequence) {
  const auto s = selkey::evaluate(cands({{"y", "x"}, {"x"}}), gold({{"x", "y"}}));
  EXPECT_EQ(s.tp, 0u);
}

TEST(Evaluate, GoldLengthRestriction) {
  const auto g = gold({{"a"}, {"a", "b"}, {"c", "d"}});
  const auto s = selkey::evaluate(cands({{"a"}}), g, {.gold_length = 1});
  EXPECT_EQ(s.tp, 1u);
  EXPECT_EQ(s.fn, 0u);
  EXPECT_EQ(s.recall, 1.0);
}

TEST(EvaluateProperty, AddingMatchNeverHurts) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> word(0, 15);
  for (int round = 0; round < 200; ++round) {
    GoldSet g{"d", {}};
    std::vector<KeywordCandidate> c;
    for (int i = 0; i < 6; ++i) g.keywords.insert({std::to_string(word(rng))});
    for (int i = 0; i < 5; ++i) c.push_back(cands({{std::to_string(word(rng))}})[0]);
    const auto before = selkey::evaluate(c, g);
    std::optional<Keyphrase> unmatched;
    for (const auto& k : g.keywords)
      if (std::none_of(c.begin(), c.end(), [&](const auto& x) { return x.words == k; })) unmatched = k;
    if (!unmatched) continue;
    c.push_back(cands({*unmatched})[0]);
    const auto after = selkey::evaluate(c, g);
    EXPECT_GE(after.precision, before.precision);
    EXPECT_GE(after.recall, before.recall);
    EXPECT_GE(after.f1, before.f1);
    EXPECT_GE(after.f2, before.f2);
    EXPECT_EQ(after.tp + after.fn, before.tp + before.fn);
  }
}

TEST(MacroAverage, SingleDocumentIdentity) {
  const auto s = selkey::score_counts("d", 2, 1, 2);
  const auto r = selkey::macro_average({s});
  EXPECT_EQ(r.macro.precision, s.precision);
  EXPECT_EQ(r.macro.f2, s.f2);
  EXPECT_EQ(r.macro.documents, 1u);
}

TEST(MacroAverage, UnweightedMean) {
  selkey::DocScore a, b;
  a.f1 = 0.2;
  b.f1 = 0.4;
  EXPECT_NEAR(selkey::macro_average({a, b}).macro.f1, 0.3, 1e-15);
  EXPECT_THROW(selkey::macro_average({}), std::invalid_argument);
}

TEST(Gold, UnionOverAnnotators) {
  const auto g = selkey::make_gold("d", {{"Vlada"}, {"vlada", "Sabor"}, {}});
  EXPECT_EQ(g.keywords, (std::set<Keyphrase>{{"vlada"}, {"sabor"}}));
}

TEST(Gold, LemmatisedLikeDocuments) {
  const auto g = selkey::make_gold("d", {{"Državnog proračuna", "EU-a"}},
                                   selkey::LemmaTable{{"državnog", "državni"}, {"proračuna", "proračun"}});
  EXPECT_EQ(g.keywords, (std::set<Keyphrase>{{"državni", "proračun"}, {"eu", "a"}}));
}

TEST(LoadGold, FixtureFile) {
  const auto lemmas = selkey::load_lemma_table(selkey::testing::data_dir() / "lemmas_hr.tsv");
  const auto all = selkey::load_gold(selkey::testing::data_dir() / "gold.json", lemmas);
  ASSERT_EQ(all.size(), 5u);
  EXPECT_EQ(all[0].doc_id, "hina_fixture_01");
  // Hand count: 9 phrases, "državni proračun" listed twice -> 8 distinct.
  EXPECT_EQ(all[0].keywords.size(), 8u);
  EXPECT_TRUE(all[0].keywords.count({"državni", "proračun"}));
  EXPECT_TRUE(all[0].keywords.count({"ministar", "financije"}));
  // Empty annotator list contributes nothing: 6 phrases.
  EXPECT_EQ(all[1].keywords.size(), 6u);
  // "istraživački centar" twice -> 5 distinct.
  EXPECT_EQ(all[3].keywords.size(), 5u);
}

TEST(LoadGold, MalformedJsonReportsLine) {
  const auto dir = selkey::testing::scratch_dir("gold_bad");
  selkey::testing::spit(dir / "g.json", "{\n  \"d1\": {\"a\": [\"x\"]},\n  \"d2\": {\"a\": [\"y\",]}\n}\n");
  try {
    selkey::load_gold(dir / "g.json");
    FAIL() << "expected LoadError";
  } catch (const selkey::LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(LoadGold, WrongShapeReportsLine) {
  const auto dir = selkey::testing::scratch_dir("gold_shape");
  selkey::testing::spit(dir / "g.json", "{\n  \"d1\": {\"a\": [\"x\"]},\n  \"d2\": [\"y\"]\n}\n");
  try {
    selkey::load_gold(dir / "g.json");
    FAIL() << "expected LoadError";
  } catch (const selkey::LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(selkey::load_gold(dir / "missing.json"), selkey::LoadError);
}

TEST(EvalTsv, RowsAndMacroBlock) {
  auto report = selkey::macro_average({selkey::score_counts("d1", 1, 1, 1)});
  std::ostringstream out;
  selkey::write_eval_tsv_header(out);
  selkey::write_eval_tsv("SET1", report, out);
  EXPECT_EQ(out.str(),
            "set\tdoc_id\ttp\tfp\tfn\tprecision\trecall\tf1\tf2\n"
            "SET1\td1\t1\t1\t1\t0.500000\t0.500000\t0.500000\t0.500000\n"
            "# macro\tSET1\tdocs=1\tprecision=0.500000\trecall=0.500000\tf1=0.500000\tf2=0.500000\n");
  const auto j = selkey::to_json(report);
  EXPECT_EQ(j["macro"]["documents"], 1);
  EXPECT_EQ(j["per_doc"][0]["doc_id"], "d1");
}

}  // namespace
