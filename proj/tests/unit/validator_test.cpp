#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "haraforge/asil.hpp"
#include "haraforge/corpus.hpp"
#include "haraforge/validator.hpp"

namespace haraforge {
namespace {

HazardEntry& entry(HaraDocument& doc, std::string_view id) {
  auto it = std::find_if(doc.entries.begin(), doc.entries.end(),
                         [&](const HazardEntry& e) { return e.id == parse_entry_id(id); });
  if (it == doc.entries.end()) throw std::logic_error("no entry " + std::string(id));
  return *it;
}

SafetyGoal& goal(HaraDocument& doc, int number) {
  for (SafetyGoal& g : doc.goals) {
    if (g.id == GoalId(number)) return g;
  }
  throw std::logic_error("no goal");
}

std::vector<RuleId> rules(const std::vector<Finding>& findings) {
  std::vector<RuleId> out;
  for (const Finding& f : findings) out.push_back(f.rule);
  return out;
}

class ValidatorTest : public ::testing::Test {
 protected:
  Corpus corpus = load_corpus();
  HaraDocument doc = corpus.latest();

  std::vector<Finding> run() { return validate(corpus.item, doc); }
};

TEST_F(ValidatorTest, CorpusRevisionsAreClean) {
  for (const HaraDocument& rev : corpus.history.revisions()) {
    EXPECT_TRUE(validate(corpus.item, rev, &corpus.history).empty()) << rev.revision;
  }
}

TEST_F(ValidatorTest, StatedAsilDisagreeingWithRiskGraph) {
  doc = corpus.previous();
  entry(doc, "37").asil = AsilLevel::B;
  const auto findings = run();
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule, RuleId::R3);
  EXPECT_EQ(findings[0].location, Location::entry(parse_entry_id("37")));
  EXPECT_EQ(findings[0].severity, FindingSeverity::kError);
  EXPECT_NE(findings[0].message.find("D"), std::string::npos);
}

TEST_F(ValidatorTest, DuplicateEntryId) {
  HazardEntry copy = entry(doc, "40");
  copy.id = EntryId(13);
  doc.entries.push_back(copy);
  EXPECT_EQ(rules(run()), std::vector<RuleId>{RuleId::R1});
}

TEST_F(ValidatorTest, DuplicateGoalAndWaiver) {
  doc.goals.push_back(doc.goals.front());
  doc.waivers.push_back(doc.waivers.front());
  EXPECT_EQ(rules(run()), (std::vector<RuleId>{RuleId::R1, RuleId::R1}));
}

TEST_F(ValidatorTest, UnknownReferences) {
  entry(doc, "1").scenario = "moon";
  EXPECT_EQ(rules(run()), std::vector<RuleId>{RuleId::R2});

  doc = corpus.latest();
  entry(doc, "1").goal = GoalId(99);
  auto findings = run();
  ASSERT_FALSE(findings.empty());
  EXPECT_EQ(findings[0].rule, RuleId::R2);
}

TEST_F(ValidatorTest, FunctionOutsideItsModes) {
  HazardEntry& e = entry(doc, "4");
  ASSERT_EQ(e.mode, "ManualMode");
  e.malfunction.function = "leader_tracking";
  const auto r = rules(run());
  EXPECT_NE(std::find(r.begin(), r.end(), RuleId::R2), r.end());
}

TEST_F(ValidatorTest, EntryModeOutsideGoalModes) {
  entry(doc, "6").goal = GoalId(4);
  const auto findings = run();
  ASSERT_FALSE(findings.empty());
  EXPECT_EQ(findings[0].rule, RuleId::R2);
}

TEST_F(ValidatorTest, KindBasedOnMismatch) {
  doc.based_on.reset();
  const auto findings = run();
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule, RuleId::R2);
  EXPECT_EQ(findings[0].location, Location::revision(doc.revision));
}

TEST_F(ValidatorTest, ClassesAndAsil) {
  entry(doc, "37a").controllability.level = ControllabilityClass(2);
  EXPECT_EQ(rules(run()), std::vector<RuleId>{RuleId::R3});
}

TEST_F(ValidatorTest, MissingGoalLink) {
  entry(doc, "38").goal.reset();
  EXPECT_EQ(rules(run()), std::vector<RuleId>{RuleId::R4});
}

TEST_F(ValidatorTest, GoalAsilBelowEntries) {
  goal(doc, 7).asil = AsilLevel::C;
  const auto findings = run();
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule, RuleId::R5);
  EXPECT_EQ(findings[0].location, Location::goal(GoalId(7)));
}

TEST_F(ValidatorTest, UnstatedGoalAsilIsNotChecked) {
  goal(doc, 7).asil.reset();
  EXPECT_TRUE(run().empty());
}

TEST_F(ValidatorTest, MissingRationale) {
  entry(doc, "5").severity.rationale = " ";
  EXPECT_EQ(rules(run()), std::vector<RuleId>{RuleId::R6});
  entry(doc, "5").exposure.rationale = "";
  EXPECT_EQ(rules(run()), (std::vector<RuleId>{RuleId::R6, RuleId::R6}));
}

TEST_F(ValidatorTest, ZeroClassNeedsNoRationale) {
  HazardEntry& e = entry(doc, "5");
  e.controllability = {ControllabilityClass(0), ""};
  e.asil = determine_asil(e);
  const auto r = rules(run());
  EXPECT_EQ(std::count(r.begin(), r.end(), RuleId::R6), 0);
}

TEST_F(ValidatorTest, UncoveredCandidateIsAWarning) {
  const Waiver removed = doc.waivers.front();
  doc.waivers.erase(doc.waivers.begin());
  const auto findings = run();
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule, RuleId::R7);
  EXPECT_EQ(findings[0].severity, FindingSeverity::kWarning);
  EXPECT_EQ(findings[0].location, Location::triple({removed.function, removed.guide_word, removed.mode}));
  EXPECT_FALSE(has_errors(findings));
}

TEST_F(ValidatorTest, GoalWithoutEntries) {
  entry(doc, "6").goal = GoalId(2);
  const auto findings = run();
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule, RuleId::R9);
  EXPECT_EQ(findings[0].location, Location::goal(GoalId(6)));
  EXPECT_EQ(findings[0].severity, FindingSeverity::kWarning);
}

TEST_F(ValidatorTest, ReusedIdNeedsHistory) {
  HaraDocument next = corpus.latest();
  next.revision = 7;
  next.based_on = 6;
  entry(next, "40").id = EntryId(36);
  normalize(next);
  const RevisionHistory history({corpus.previous(), corpus.latest(), next});
  EXPECT_TRUE(validate(corpus.item, next).empty());
  const auto findings = validate(corpus.item, next, &history);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].rule, RuleId::R8);
  EXPECT_EQ(findings[0].location, Location::revision(7));
}

TEST_F(ValidatorTest, SafetyRefinementMayNotChangeFunctionalRange) {
  HazardEntry& e = entry(doc, "40");
  e.malfunction.function = "right_lane_driving";
  const RevisionHistory history({corpus.previous(), doc});
  EXPECT_TRUE(run().empty());
  const auto findings = validate(corpus.item, doc, &history);
  ASSERT_EQ(findings.size(), 1u) << findings.front().message;
  EXPECT_EQ(findings[0].rule, RuleId::R10);
  EXPECT_EQ(findings[0].location, Location::revision(6));
}

TEST_F(ValidatorTest, DocumentMustBelongToHistory) {
  entry(doc, "1").consequence = "changed";
  try {
    validate(corpus.item, doc, &corpus.history);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentInput);
  }
}

TEST_F(ValidatorTest, FindingsAreSortedAndDeterministic) {
  entry(doc, "38").goal.reset();
  entry(doc, "37a").controllability.level = ControllabilityClass(2);
  HazardEntry copy = entry(doc, "40");
  copy.id = EntryId(13);
  doc.entries.push_back(copy);
  const auto findings = run();
  EXPECT_EQ(findings, run());
  auto sorted = findings;
  sort_findings(sorted);
  EXPECT_EQ(sorted, findings);
  EXPECT_EQ(rules(findings), (std::vector<RuleId>{RuleId::R1, RuleId::R3, RuleId::R4}));
}

TEST(Validator, FullyCoveredRandomDocumentsAreClean) {
  testing::Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    const ItemDefinition item = testing::random_item(rng);
    const HaraDocument doc = testing::fully_covered_document(rng, item);
    const auto findings = validate(item, doc);
    EXPECT_TRUE(findings.empty()) << findings.front().message;
  }
}

TEST(Validator, RandomDocumentsNeverThrow) {
  testing::Rng rng(6);
  for (int round = 0; round < 100; ++round) {
    const ItemDefinition item = testing::random_item(rng);
    const HaraDocument doc = testing::random_document(rng, item);
    EXPECT_NO_THROW(validate(item, doc));
  }
}

TEST(ExplainRule, EveryRuleHasText) {
  for (RuleId rule : kAllRules) {
    EXPECT_FALSE(explain_rule(rule).empty());
    EXPECT_EQ(explain_rule(to_string(rule)), explain_rule(rule));
  }
}

TEST(ExplainRule, UnknownRuleThrows) {
  for (std::string_view bad : {"R99", "R0", "r1", "", "R1 "}) {
    try {
      explain_rule(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUnknownRule);
    }
  }
}

}  // namespace
}  // namespace haraforge
