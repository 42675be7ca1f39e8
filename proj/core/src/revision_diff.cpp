#include "haraforge/revision_diff.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace haraforge {

namespace {

std::string goal_text(const std::optional<GoalId>& goal) { return goal ? goal->to_string() : std::string("-"); }

std::string asil_text(const std::optional<AsilLevel>& asil) {
  return asil ? std::string(to_string(*asil)) : std::string("-");
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

void compare_field(std::vector<FieldChange>& changes, std::string_view field, const std::string& before,
                   const std::string& after) {
  if (before != after) changes.push_back({std::string(field), before, after});
}

EntryChange compare_entries(const HazardEntry& a, const HazardEntry& b) {
  EntryChange change{a.id, {}, std::nullopt};
  auto& c = change.changes;
  compare_field(c, "mode", a.mode, b.mode);
  compare_field(c, "function", a.malfunction.function, b.malfunction.function);
  compare_field(c, "guideword", a.malfunction.guide_word, b.malfunction.guide_word);
  compare_field(c, "malfunction", a.malfunction.description, b.malfunction.description);
  compare_field(c, "scenario", a.scenario, b.scenario);
  compare_field(c, "consequence", a.consequence, b.consequence);
  compare_field(c, "S", a.severity.level.to_string(), b.severity.level.to_string());
  compare_field(c, "S rationale", a.severity.rationale, b.severity.rationale);
  compare_field(c, "E", a.exposure.level.to_string(), b.exposure.level.to_string());
  compare_field(c, "E rationale", a.exposure.rationale, b.exposure.rationale);
  compare_field(c, "C", a.controllability.level.to_string(), b.controllability.level.to_string());
  compare_field(c, "C rationale", a.controllability.rationale, b.controllability.rationale);
  compare_field(c, "asil", std::string(to_string(a.asil)), std::string(to_string(b.asil)));
  compare_field(c, "goal", goal_text(a.goal), goal_text(b.goal));
  if (a.asil != b.asil) change.asil_transition = std::make_pair(a.asil, b.asil);
  return change;
}

GoalChange compare_goals(const SafetyGoal& a, const SafetyGoal& b) {
  GoalChange change{a.id, {}};
  compare_field(change.changes, "text", a.text, b.text);
  compare_field(change.changes, "modes", join(a.modes), join(b.modes));
  compare_field(change.changes, "asil", asil_text(a.asil), asil_text(b.asil));
  compare_field(change.changes, "order", std::to_string(a.ordinal), std::to_string(b.ordinal));
  return change;
}

SetDelta set_delta(const std::set<std::string>& base, const std::set<std::string>& next) {
  SetDelta delta;
  std::set_difference(next.begin(), next.end(), base.begin(), base.end(), std::back_inserter(delta.added));
  std::set_difference(base.begin(), base.end(), next.begin(), next.end(), std::back_inserter(delta.removed));
  return delta;
}

auto waiver_key(const Waiver& w) { return std::tie(w.function, w.guide_word, w.mode); }

struct StemReuse {
  std::uint32_t stem;
  int revision;
};

// Stems present in some revision, missing from a later one and present
// again after that; each stem once, at its first reappearance.
std::vector<StemReuse> find_reused_stems(const std::vector<HaraDocument>& revisions) {
  struct State {
    bool discarded = false;
    bool reported = false;
  };
  std::vector<StemReuse> out;
  std::map<std::uint32_t, State> states;
  for (const HaraDocument& doc : revisions) {
    std::set<std::uint32_t> present;
    for (const HazardEntry& e : doc.entries) present.insert(e.id.stem());
    for (auto& [stem, state] : states) {
      if (present.count(stem) == 0) state.discarded = true;
    }
    for (std::uint32_t stem : present) {
      State& state = states[stem];
      if (state.discarded && !state.reported) {
        state.reported = true;
        out.push_back({stem, doc.revision});
      }
    }
  }
  return out;
}

}  // namespace

bool DiffReport::empty() const noexcept {
  return added_entries.empty() && removed_entries.empty() && modified_entries.empty() && added_goals.empty() &&
         removed_goals.empty() && modified_goals.empty() && added_waivers.empty() && removed_waivers.empty() &&
         splits.empty() && functions.empty() && modes.empty() && reused_stems.empty();
}

std::string_view to_string(RefinementClass c) noexcept {
  switch (c) {
    case RefinementClass::kItemRefinement: return "item-refinement";
    case RefinementClass::kSafetyRefinement: return "safety-refinement";
    case RefinementClass::kNone: return "none";
    case RefinementClass::kInvalid: return "invalid";
  }
  return "none";
}

std::set<std::string> functional_range(const HaraDocument& doc) {
  std::set<std::string> out;
  for (const HazardEntry& e : doc.entries) out.insert(e.malfunction.function);
  return out;
}

std::set<std::string> mode_range(const HaraDocument& doc) {
  std::set<std::string> out;
  for (const HazardEntry& e : doc.entries) out.insert(e.mode);
  return out;
}

DiffReport diff(const HaraDocument& base, const HaraDocument& next) {
  DiffReport report;
  report.base_revision = base.revision;
  report.next_revision = next.revision;
  report.based_on_mismatch = next.based_on != base.revision;

  std::map<EntryId, const HazardEntry*> base_entries, next_entries;
  for (const HazardEntry& e : base.entries) base_entries.emplace(e.id, &e);
  for (const HazardEntry& e : next.entries) next_entries.emplace(e.id, &e);

  for (const auto& [id, entry] : base_entries) {
    auto it = next_entries.find(id);
    if (it == next_entries.end()) {
      report.removed_entries.push_back(id);
      continue;
    }
    EntryChange change = compare_entries(*entry, *it->second);
    if (!change.changes.empty()) report.modified_entries.push_back(std::move(change));
  }
  std::map<EntryId, std::vector<EntryId>> splits;
  for (const auto& [id, entry] : next_entries) {
    if (base_entries.count(id) != 0) continue;
    report.added_entries.push_back(id);
    if (id.suffix()) {
      const EntryId parent(id.stem());
      if (base_entries.count(parent) != 0) splits[parent].push_back(id);
    }
  }
  for (auto& [parent, children] : splits) report.splits.push_back({parent, std::move(children)});

  std::map<GoalId, const SafetyGoal*> base_goals, next_goals;
  for (const SafetyGoal& g : base.goals) base_goals.emplace(g.id, &g);
  for (const SafetyGoal& g : next.goals) next_goals.emplace(g.id, &g);
  for (const auto& [id, goal] : base_goals) {
    auto it = next_goals.find(id);
    if (it == next_goals.end()) {
      report.removed_goals.push_back(id);
      continue;
    }
    GoalChange change = compare_goals(*goal, *it->second);
    if (!change.changes.empty()) report.modified_goals.push_back(std::move(change));
  }
  for (const auto& [id, goal] : next_goals) {
    if (base_goals.count(id) == 0) report.added_goals.push_back(id);
  }

  auto waiver_less = [](const Waiver& a, const Waiver& b) { return waiver_key(a) < waiver_key(b); };
  std::vector<Waiver> base_waivers = base.waivers, next_waivers = next.waivers;
  std::sort(base_waivers.begin(), base_waivers.end(), waiver_less);
  std::sort(next_waivers.begin(), next_waivers.end(), waiver_less);
  std::set_difference(next_waivers.begin(), next_waivers.end(), base_waivers.begin(), base_waivers.end(),
                      std::back_inserter(report.added_waivers), waiver_less);
  std::set_difference(base_waivers.begin(), base_waivers.end(), next_waivers.begin(), next_waivers.end(),
                      std::back_inserter(report.removed_waivers), waiver_less);

  report.functions = set_delta(functional_range(base), functional_range(next));
  report.modes = set_delta(mode_range(base), mode_range(next));
  return report;
}

DiffReport diff(const HaraDocument& base, const HaraDocument& next, const RevisionHistory& history) {
  DiffReport report = diff(base, next);
  std::vector<HaraDocument> upto;
  for (const HaraDocument& d : history.revisions()) {
    if (d.revision <= next.revision) upto.push_back(d);
  }
  for (const StemReuse& reuse : find_reused_stems(upto)) report.reused_stems.push_back(reuse.stem);
  std::sort(report.reused_stems.begin(), report.reused_stems.end());
  return report;
}

RefinementClass classify_refinement(const DiffReport& report) noexcept {
  if (!report.reused_stems.empty()) return RefinementClass::kInvalid;
  if (report.empty()) return RefinementClass::kNone;
  if (!report.functions.empty() || !report.modes.empty()) return RefinementClass::kItemRefinement;
  return RefinementClass::kSafetyRefinement;
}

std::vector<Finding> check_id_stability(const RevisionHistory& history) {
  std::vector<Finding> findings;
  for (const StemReuse& reuse : find_reused_stems(history.revisions())) {
    findings.push_back({RuleId::R8, Location::revision(reuse.revision), FindingSeverity::kError,
                        "entry id stem " + std::to_string(reuse.stem) +
                            " was discarded in an earlier revision and is reused in revision " +
                            std::to_string(reuse.revision)});
  }
  return findings;
}

}  // namespace haraforge
