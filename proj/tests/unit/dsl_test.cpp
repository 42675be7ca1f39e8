#include <gtest/gtest.h>

#include "generators.hpp"
#include "haraforge/corpus.hpp"
#include "haraforge/dsl.hpp"

namespace haraforge {
namespace {

constexpr const char* kItem = R"(# minimal item
item "Brake unit"
element ctl primary
mode auto "Automated" automated
function brake "braking" modes [auto]
guideword LOSS "Loss"
guideword MORE "Excess"
scenario road "On the road"
  exposure E4
  rationale "always driving"
param v_max 12 "km/h"
)";

ItemDefinition item() {
  auto result = parse_item_file(kItem, "brake.item");
  EXPECT_TRUE(result.ok());
  for (const auto& d : result.diagnostics) ADD_FAILURE() << d.to_string();
  return *result.value;
}

std::string hara(std::string_view entries) {
  return std::string("hara \"Brake HARA\" revision 1 kind initial\n"
                     "goal SG01 \"Braking must be ensured.\" modes [auto]\n") +
         std::string(entries);
}

constexpr const char* kEntry = R"(entry 1 mode auto function brake guideword LOSS
  malfunction "no braking" scenario road consequence "collision"
  S3 "fatal" E4 "always" C3 "uncontrollable" asil D goal SG01
)";

int error_line(const std::vector<ParseDiagnostic>& diags) {
  for (const auto& d : diags) {
    if (d.severity == DiagnosticSeverity::kError) return d.location.line;
  }
  return -1;
}

bool has_message(const std::vector<ParseDiagnostic>& diags, std::string_view needle) {
  for (const auto& d : diags) {
    if (d.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ParseItem, MinimalFile) {
  const ItemDefinition i = item();
  EXPECT_EQ(i.name, "Brake unit");
  ASSERT_EQ(i.modes.size(), 1u);
  EXPECT_TRUE(i.modes[0].automated);
  EXPECT_EQ(i.functions[0].modes, std::vector<std::string>{"auto"});
  EXPECT_EQ(i.scenarios[0].exposure, ExposureClass(4));
  EXPECT_EQ(i.parameters[0].value, 12.0);
  EXPECT_EQ(i.parameters[0].unit, "km/h");
}

TEST(ParseItem, CorpusItem) {
  const Corpus corpus = load_corpus();
  auto result = parse_item_file(serialize(corpus.item));
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->modes.size(), 4u);
  EXPECT_EQ(result.value->elements.size(), 5u);
  EXPECT_EQ(result.value->find_parameter("max_speed")->value, 12.0);
  EXPECT_EQ(result.value->find_parameter("follow_distance")->value, 90.0);
  EXPECT_EQ(result.value->find_parameter("coupled_distance")->unit, "m");
}

TEST(ParseItem, DanglingModeReportedAtReference) {
  const std::string text = "item \"x\"\nelement e primary\nmode a \"A\"\nfunction f \"d\" modes [a,\n  b]\nguideword LOSS \"lost\"\n";
  auto result = parse_item_file(text, "x.item");
  EXPECT_FALSE(result.ok());
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_EQ(result.diagnostics[0].location.line, 5);
  EXPECT_EQ(result.diagnostics[0].location.column, 3);
  EXPECT_EQ(result.diagnostics[0].to_string(), "x.item:5:3: error: unknown mode 'b'");
}

TEST(ParseItem, Errors) {
  struct Case {
    const char* text;
    const char* message;
  };
  const Case cases[] = {
      {"item \"x\nelement e primary\n", "unterminated string"},
      {"item \"x\"\nelement e primary\nwidget w\n", "unknown keyword 'widget'"},
      {"item \"x\"\nelement e primary\nelement e\n", "duplicate element 'e'"},
      {"item \"x\"\nelement e\n", "no element is marked 'primary'"},
      {"item \"x\"\nelement e primary\nelement f\n", "not connected"},
      {"item \"x\"\nelement e primary\nconnect e g\n", "unknown element 'g'"},
      {"element e primary\n", "missing 'item' statement"},
      {"item \"x\"\nelement e primary\nscenario s \"d\" exposure E5 rationale \"r\"\n", "out of range"},
      {"item \"x\"\nelement e primary\nparam p 1e999 \"m\"\n", "invalid number"},
      {"item \"x\"\nelement e primary\nmode m \"M\" \x01\n", "unexpected control character"},
      {"item \"bad \\q escape\"\nelement e primary\n", "unknown escape"},
      {"\xEF\xBB\xBFitem \"x\"\n", "byte order mark"},
      {"item \"\xC3\x28\"\n", "invalid UTF-8"},
  };
  for (const Case& c : cases) {
    auto result = parse_item_file(c.text);
    EXPECT_FALSE(result.ok()) << c.text;
    EXPECT_TRUE(has_message(result.diagnostics, c.message)) << c.text;
  }
}

TEST(ParseItem, RecoversAndReportsSeveralErrors) {
  auto result = parse_item_file("item \"x\"\nelement e primary\nmode 1 \"A\"\nmode b\nmode c \"C\"\nfunction f \"d\" modes [zz]\n");
  EXPECT_FALSE(result.ok());
  EXPECT_GE(result.diagnostics.size(), 3u);
}

TEST(ParseItem, DefaultGuideWordsWithWarning) {
  auto result = parse_item_file("item \"x\"\nelement e primary\nmode m \"M\"\nfunction f \"d\" modes [m]\n");
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->guide_words, default_guide_words());
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_EQ(result.diagnostics[0].severity, DiagnosticSeverity::kWarning);
}

TEST(ParseHara, MinimalDocument) {
  auto result = parse_hara_file(hara(kEntry), item());
  ASSERT_TRUE(result.ok()) << (result.diagnostics.empty() ? "" : result.diagnostics[0].to_string());
  const HaraDocument& doc = *result.value;
  EXPECT_EQ(doc.title, "Brake HARA");
  EXPECT_EQ(doc.item_name, "Brake unit");
  ASSERT_EQ(doc.entries.size(), 1u);
  EXPECT_EQ(doc.entries[0].severity.level, SeverityClass(3));
  EXPECT_EQ(doc.entries[0].controllability.rationale, "uncontrollable");
  EXPECT_EQ(doc.entries[0].goal, GoalId(1));
  EXPECT_EQ(doc.goals[0].ordinal, 1);
}

TEST(ParseHara, GoalsOnly) {
  auto result = parse_hara_file(hara(""), item());
  ASSERT_TRUE(result.ok());
  EXPECT_TRUE(result.value->entries.empty());
}

TEST(ParseHara, CorpusHasSeventeenGoals) {
  const Corpus corpus = load_corpus();
  auto result = parse_hara_file(serialize(corpus.latest()), corpus.item);
  ASSERT_TRUE(result.ok());
  ASSERT_EQ(result.value->goals.size(), 17u);
  for (int n = 1; n <= 17; ++n) EXPECT_NE(result.value->find_goal(GoalId(n)), nullptr);
  EXPECT_EQ(*result.value, corpus.latest());
}

TEST(ParseHara, SeverityOutOfRange) {
  std::string text = hara(kEntry);
  text.replace(text.find("S3"), 2, "S4");
  auto result = parse_hara_file(text, item());
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_message(result.diagnostics, "severity class S4 is out of range S0..S3"));
  EXPECT_EQ(error_line(result.diagnostics), 5);
}

TEST(ParseHara, StatedAsilMismatchIsNotAParseError) {
  std::string text = hara(kEntry);
  text.replace(text.find("asil D"), 6, "asil A");
  EXPECT_TRUE(parse_hara_file(text, item()).ok());
}

TEST(ParseHara, Errors) {
  struct Case {
    std::string text;
    const char* message;
  };
  auto entry_with = [](std::string_view from, std::string_view to) {
    std::string e = kEntry;
    e.replace(e.find(from), from.size(), to);
    return hara(e);
  };
  const Case cases[] = {
      {entry_with("entry 1", "entry 01"), "malformed entry id"},
      {entry_with("goal SG01", "goal SG1"), "malformed safety goal id"},
      {entry_with("goal SG01", "goal SG02"), "unknown safety goal SG02"},
      {entry_with("mode auto", "mode manual"), "unknown mode 'manual'"},
      {entry_with("scenario road", "scenario rail"), "unknown scenario 'rail'"},
      {entry_with("guideword LOSS", "guideword LATE"), "unknown guide word 'LATE'"},
      {entry_with("asil D", "asil E"), "expected ASIL"},
      {entry_with("E4 \"always\"", "\"always\""), "expected exposure class"},
      {hara(std::string(kEntry) + kEntry), "duplicate entry 1"},
      {hara("goal SG01 \"again\" modes [auto]\n"), "duplicate safety goal SG01"},
      {hara("goal SG02 \" \" modes [auto]\n"), "has no text"},
      {hara("goal SG02 \"x\" modes []\n"), "applies in no mode"},
      {hara("waive function brake guideword LOSS mode auto rationale \"\"\n"), "needs a rationale"},
      {hara("waive function brake guideword LOSS mode auto rationale \"a\"\n"
            "waive function brake guideword LOSS mode auto rationale \"b\"\n"),
       "duplicate waiver"},
      {"goal SG01 \"x\" modes [auto]\n", "missing 'hara' statement"},
      {"hara \"t\" revision 2 kind item-refinement\n", "needs 'based-on"},
      {"hara \"t\" revision 2 kind initial based-on 1\n", "cannot be based on"},
      {"hara \"t\" revision 0 kind initial\n", "positive integer"},
      {"hara \"t\" revision 1 kind sideways\n", "unknown revision kind"},
  };
  for (const Case& c : cases) {
    auto result = parse_hara_file(c.text, item());
    EXPECT_FALSE(result.ok()) << c.text;
    EXPECT_TRUE(has_message(result.diagnostics, c.message)) << c.message << "\n" << c.text;
  }
}

TEST(ParseHara, FunctionNotApplicableInMode) {
  ItemDefinition i = item();
  i.modes.push_back({"manual", "Manual", false});
  std::string e = kEntry;
  e.replace(e.find("mode auto"), 9, "mode manual");
  auto result = parse_hara_file(hara(e), i);
  EXPECT_FALSE(result.ok());
  EXPECT_TRUE(has_message(result.diagnostics, "does not apply in mode 'manual'"));
}

TEST(ParseHara, GoalOrderDefaultsToPosition) {
  auto result = parse_hara_file(hara("goal SG03 \"Third.\" modes [auto] asil B\ngoal SG02 \"Second.\" modes [auto] order 9\n"),
                                item());
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.value->find_goal(GoalId(1))->ordinal, 1);
  EXPECT_EQ(result.value->find_goal(GoalId(3))->ordinal, 2);
  EXPECT_EQ(result.value->find_goal(GoalId(3))->asil, AsilLevel::B);
  EXPECT_EQ(result.value->find_goal(GoalId(2))->ordinal, 9);
}

TEST(Serialize, EntriesInIdOrder) {
  std::string second = kEntry;
  second.replace(second.find("entry 1"), 7, "entry 1a");
  std::string third = kEntry;
  third.replace(third.find("entry 1"), 7, "entry 12");
  auto result = parse_hara_file(hara(third + second + kEntry), item());
  ASSERT_TRUE(result.ok());
  const std::string text = serialize(*result.value);
  EXPECT_LT(text.find("entry 1\n"), text.find("entry 1a\n"));
  EXPECT_LT(text.find("entry 1a\n"), text.find("entry 12\n"));
}

TEST(Serialize, CrlfInputGivesLfOutput) {
  std::string text = hara(kEntry);
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  auto result = parse_hara_file(crlf, item());
  ASSERT_TRUE(result.ok());
  const std::string out = serialize(*result.value);
  EXPECT_EQ(out.find('\r'), std::string::npos);
  EXPECT_EQ(*parse_hara_file(out, item()).value, *result.value);
}

TEST(Serialize, CanonicalFileIsFixpoint) {
  const Corpus corpus = load_corpus();
  for (const HaraDocument& doc : corpus.history.revisions()) {
    const std::string text = serialize(doc);
    auto parsed = parse_hara_file(text, corpus.item);
    ASSERT_TRUE(parsed.ok());
    EXPECT_EQ(serialize(*parsed.value), text);
  }
  const std::string item_text = serialize(corpus.item);
  EXPECT_EQ(serialize(*parse_item_file(item_text).value), item_text);
}

TEST(Serialize, EscapesSurviveRoundTrip) {
  ItemDefinition i = item();
  i.name = "quote \" backslash \\ newline \n tab \t cr \r end";
  auto parsed = parse_item_file(serialize(i));
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(parsed.value->name, i.name);
}

TEST(Serialize, RandomRoundTrips) {
  testing::Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    const ItemDefinition i = testing::random_item(rng);
    auto item_result = parse_item_file(serialize(i));
    ASSERT_TRUE(item_result.ok()) << serialize(i) << item_result.diagnostics[0].to_string();
    EXPECT_EQ(*item_result.value, i);
    const HaraDocument doc = testing::random_document(rng, i);
    auto doc_result = parse_hara_file(serialize(doc), i);
    ASSERT_TRUE(doc_result.ok()) << serialize(doc) << doc_result.diagnostics[0].to_string();
    EXPECT_EQ(*doc_result.value, doc);
  }
}

TEST(Diagnostics, LocationsInsideInput) {
  const std::string text = "item \"x\"\nelement e primary\nconnect e\n";
  auto result = parse_item_file(text);
  ASSERT_FALSE(result.ok());
  for (const auto& d : result.diagnostics) {
    EXPECT_GE(d.location.line, 1);
    EXPECT_LE(d.location.line, 4);
    EXPECT_FALSE(d.message.empty());
  }
}

}  // namespace
}  // namespace haraforge
