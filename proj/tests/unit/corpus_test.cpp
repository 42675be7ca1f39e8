#include <gtest/gtest.h>

#include <set>

#include "haraforge/asil.hpp"
#include "haraforge/corpus.hpp"
#include "haraforge/dsl.hpp"
#include "haraforge/validator.hpp"

namespace haraforge {
namespace {

TEST(Corpus, TwoRevisions) {
  const Corpus corpus = load_corpus();
  ASSERT_EQ(corpus.history.size(), 2u);
  EXPECT_EQ(corpus.previous().revision, 5);
  EXPECT_EQ(corpus.previous().kind, RevisionKind::kItemRefinement);
  EXPECT_EQ(corpus.latest().revision, 6);
  EXPECT_EQ(corpus.latest().kind, RevisionKind::kSafetyRefinement);
  EXPECT_EQ(corpus.latest().based_on, 5);
  EXPECT_TRUE(item_problems(corpus.item).empty());
  for (const HaraDocument& doc : corpus.history.revisions()) {
    EXPECT_TRUE(document_problems(corpus.item, doc).empty());
  }
}

TEST(Corpus, SeventeenGoalsInLatest) {
  const Corpus corpus = load_corpus();
  EXPECT_EQ(corpus.latest().goals.size(), 17u);
  EXPECT_EQ(corpus.previous().goals.size(), 16u);
  EXPECT_EQ(corpus.previous().find_goal(GoalId(3)), nullptr);
  const SafetyGoal* sg13 = corpus.latest().find_goal(GoalId(13));
  ASSERT_NE(sg13, nullptr);
  EXPECT_EQ(sg13->text,
            "Detection of and reaction to (deceleration to standstill) relevant obstacles (humans, vehicles, etc.) "
            "must be ensured.");
  EXPECT_EQ(sg13->asil, AsilLevel::QM);
  EXPECT_EQ(corpus.latest().find_goal(GoalId(17))->text, "Unintended steering actuation must be prevented");
}

TEST(Corpus, Entry37IsSplitInLatest) {
  const Corpus corpus = load_corpus();
  const HazardEntry* before = corpus.previous().find_entry(EntryId(37));
  const HazardEntry* after = corpus.latest().find_entry(EntryId(37));
  const HazardEntry* child = corpus.latest().find_entry(EntryId(37, 'a'));
  ASSERT_TRUE(before && after && child);
  EXPECT_EQ(before->asil, AsilLevel::D);
  EXPECT_EQ(after->asil, AsilLevel::B);
  EXPECT_EQ(child->asil, AsilLevel::D);
  EXPECT_EQ(child->goal, GoalId(3));
  EXPECT_EQ(after->goal, GoalId(12));
  EXPECT_EQ(corpus.latest().find_entry(EntryId(36)), nullptr);
}

TEST(Corpus, StatedAsilsMatchRiskGraph) {
  const Corpus corpus = load_corpus();
  for (const HaraDocument& doc : corpus.history.revisions()) {
    for (const HazardEntry& e : doc.entries) EXPECT_EQ(e.asil, determine_asil(e)) << e.id.to_string();
  }
}

TEST(Corpus, ValidatesClean) {
  const Corpus corpus = load_corpus();
  EXPECT_TRUE(validate(corpus.item, corpus.latest(), &corpus.history).empty());
}

TEST(Corpus, ManifestKeysAreUniqueAndCoverContent) {
  const Corpus corpus = load_corpus();
  std::set<std::string> keys;
  for (const ManifestEntry& m : corpus.manifest.entries) EXPECT_TRUE(keys.insert(m.key).second) << m.key;
  for (const HaraDocument& doc : corpus.history.revisions()) {
    const std::string prefix = "rev" + std::to_string(doc.revision) + ":";
    for (const SafetyGoal& g : doc.goals) {
      EXPECT_EQ(corpus.manifest.find(prefix + "goal:" + g.id.to_string() + ":text"), Provenance::kPaperVerbatim);
    }
    for (const HazardEntry& e : doc.entries) {
      EXPECT_TRUE(corpus.manifest.find(prefix + "entry:" + e.id.to_string() + ":classification").has_value())
          << e.id.to_string();
    }
    for (const Waiver& w : doc.waivers) {
      EXPECT_TRUE(corpus.manifest.find(prefix + "waiver:" + w.function + "/" + w.guide_word + "/" + w.mode))
          << w.function;
    }
  }
  EXPECT_FALSE(corpus.manifest.find("nothing").has_value());
}

TEST(Corpus, ProvenanceNames) {
  EXPECT_EQ(to_string(Provenance::kPaperVerbatim), "paper-verbatim");
  EXPECT_EQ(to_string(Provenance::kPaperDerived), "paper-derived");
  EXPECT_EQ(to_string(Provenance::kSyntheticConsistent), "synthetic-consistent");
}

TEST(Corpus, SurvivesTextRoundTrip) {
  const Corpus corpus = load_corpus();
  auto item = parse_item_file(serialize(corpus.item));
  ASSERT_TRUE(item.ok());
  EXPECT_EQ(*item.value, corpus.item);
  for (const HaraDocument& doc : corpus.history.revisions()) {
    auto parsed = parse_hara_file(serialize(doc), corpus.item);
    ASSERT_TRUE(parsed.ok()) << parsed.diagnostics.front().to_string();
    EXPECT_EQ(*parsed.value, doc);
  }
}

TEST(Corpus, Deterministic) {
  const Corpus a = load_corpus();
  const Corpus b = load_corpus();
  EXPECT_EQ(a.item, b.item);
  EXPECT_EQ(a.latest(), b.latest());
  EXPECT_EQ(serialize(a.latest()), serialize(b.latest()));
}

}  // namespace
}  // namespace haraforge
