#include "generators.hpp"

#include <algorithm>
#include <set>

#include "haraforge/asil.hpp"
#include "haraforge/scenario_generator.hpp"

namespace haraforge::testing {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

std::vector<std::string> random_subset(Rng& rng, const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const std::string& id : ids) {
    if (chance(rng, 0.5)) out.push_back(id);
  }
  if (out.empty()) out.push_back(pick(rng, ids));
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

AsilLevel random_asil(Rng& rng) { return kAllAsilLevels[static_cast<std::size_t>(uniform(rng, 0, 4))]; }

}  // namespace

std::string random_text(Rng& rng, int max_length) {
  static const std::vector<std::string> kPieces = {
      "a", "b", "x", "Z", "0", "7", " ", " ", ";", "\"", "\\", ",", ":", "\n", "\r", "\t", "#", "[", "]",
      "\xC3\xA9", "\xE2\x86\x92", "\xF0\x9F\x9A\x97", "km/h", "SG07", "37a", "\"\""};
  const int length = uniform(rng, 0, max_length);
  std::string out;
  for (int i = 0; i < length; ++i) out += pick(rng, kPieces);
  return out;
}

std::string random_nonblank_text(Rng& rng, int max_length) {
  std::string out = random_text(rng, max_length);
  if (is_blank(out)) out += "t";
  return out;
}

ItemDefinition random_item(Rng& rng, const ItemLimits& limits) {
  ItemDefinition item;
  item.name = random_nonblank_text(rng);

  const int elements = uniform(rng, 1, 4);
  for (int i = 0; i < elements; ++i) {
    item.elements.push_back({"el_" + std::to_string(i), i == 0});
    if (i > 0) item.connections.push_back({"el_" + std::to_string(uniform(rng, 0, i - 1)), "el_" + std::to_string(i)});
  }

  std::vector<std::string> mode_ids;
  const int modes = uniform(rng, 1, limits.max_modes);
  for (int i = 0; i < modes; ++i) {
    mode_ids.push_back("m" + std::to_string(i));
    item.modes.push_back({mode_ids.back(), random_nonblank_text(rng, 8), chance(rng, 0.5)});
  }

  const int functions = uniform(rng, 1, limits.max_functions);
  for (int i = 0; i < functions; ++i) {
    item.functions.push_back({"fn-" + std::to_string(i), random_text(rng, 12), random_subset(rng, mode_ids)});
  }

  const int guide_words = uniform(rng, 1, limits.max_guide_words);
  for (int i = 0; i < guide_words; ++i) item.guide_words.push_back({"GW_" + std::to_string(i), random_text(rng, 8)});

  const int scenarios = uniform(rng, 1, limits.max_scenarios);
  for (int i = 0; i < scenarios; ++i) {
    item.scenarios.push_back({"sc" + std::to_string(i), random_text(rng), *ExposureClass::from_int(uniform(rng, 0, 4)),
                              random_text(rng)});
  }

  const int params = uniform(rng, 0, 2);
  for (int i = 0; i < params; ++i) {
    const double value = chance(rng, 0.5) ? uniform(rng, 0, 500)
                                          : std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    item.parameters.push_back({"p" + std::to_string(i), value, random_nonblank_text(rng, 4)});
  }
  return item;
}

HaraDocument random_document(Rng& rng, const ItemDefinition& item, int max_entries) {
  HaraDocument doc;
  doc.title = random_nonblank_text(rng);
  doc.item_name = item.name;
  doc.revision = uniform(rng, 1, 20);
  if (doc.revision == 1 || chance(rng, 0.3)) {
    doc.kind = RevisionKind::kInitial;
  } else {
    doc.kind = chance(rng, 0.5) ? RevisionKind::kItemRefinement : RevisionKind::kSafetyRefinement;
    doc.based_on = uniform(rng, 1, doc.revision - 1);
  }

  std::vector<std::string> mode_ids;
  for (const OperatingMode& m : item.modes) mode_ids.push_back(m.id);

  std::set<int> goal_numbers;
  const int goals = uniform(rng, 1, 5);
  while (static_cast<int>(goal_numbers.size()) < goals) goal_numbers.insert(uniform(rng, 1, 99));
  for (int n : goal_numbers) {
    SafetyGoal g;
    g.id = GoalId(n);
    g.text = random_nonblank_text(rng);
    g.modes = random_subset(rng, mode_ids);
    if (chance(rng, 0.4)) g.asil = random_asil(rng);
    g.ordinal = uniform(rng, 0, 20);
    doc.goals.push_back(std::move(g));
  }

  std::set<EntryId> ids;
  const int entries = uniform(rng, 0, max_entries);
  while (static_cast<int>(ids.size()) < entries) {
    std::optional<char> suffix;
    if (chance(rng, 0.2)) suffix = static_cast<char>('a' + uniform(rng, 0, 2));
    ids.insert(EntryId(static_cast<std::uint32_t>(uniform(rng, 1, 60)), suffix));
  }
  for (const EntryId& id : ids) {
    const FunctionDef& f = pick(rng, item.functions);
    HazardEntry e;
    e.id = id;
    e.mode = pick(rng, f.modes);
    e.malfunction = {f.id, pick(rng, item.guide_words).id, random_text(rng)};
    e.scenario = pick(rng, item.scenarios).id;
    e.consequence = random_text(rng);
    e.severity = {*SeverityClass::from_int(uniform(rng, 0, 3)), random_text(rng)};
    e.exposure = {*ExposureClass::from_int(uniform(rng, 0, 4)), random_text(rng)};
    e.controllability = {*ControllabilityClass::from_int(uniform(rng, 0, 3)), random_text(rng)};
    e.asil = chance(rng, 0.7) ? determine_asil(e) : random_asil(rng);
    e.goal = pick(rng, doc.goals).id;
    doc.entries.push_back(std::move(e));
  }

  for (const CandidateTriple& t : enumerate_candidates(item)) {
    if (chance(rng, 0.3)) doc.waivers.push_back({t.function, t.guide_word, t.mode, random_nonblank_text(rng)});
  }
  normalize(doc);
  return doc;
}

HaraDocument fully_covered_document(Rng& rng, const ItemDefinition& item) {
  HaraDocument doc;
  doc.title = "covered";
  doc.item_name = item.name;
  SafetyGoal goal;
  goal.id = GoalId(1);
  goal.text = "Keep it safe.";
  for (const OperatingMode& m : item.modes) goal.modes.push_back(m.id);
  goal.ordinal = 1;
  doc.goals.push_back(goal);

  std::uint32_t next_id = 1;
  for (const CandidateTriple& t : enumerate_candidates(item)) {
    if (next_id == 1 || chance(rng, 0.1)) {
      HazardEntry e;
      e.id = EntryId(next_id++);
      e.mode = t.mode;
      e.malfunction = {t.function, t.guide_word, "malfunction"};
      e.scenario = item.scenarios.front().id;
      e.consequence = "consequence";
      e.severity = {SeverityClass(uniform(rng, 1, 3)), "severity"};
      e.exposure = {ExposureClass(uniform(rng, 1, 4)), "exposure"};
      e.controllability = {ControllabilityClass(uniform(rng, 1, 3)), "controllability"};
      e.asil = determine_asil(e);
      e.goal = goal.id;
      doc.entries.push_back(std::move(e));
    } else {
      doc.waivers.push_back({t.function, t.guide_word, t.mode, "not hazardous"});
    }
  }
  normalize(doc);
  return doc;
}

}  // namespace haraforge::testing
