#include "haraforge/validator.hpp"

#include <map>
#include <set>
#include <tuple>

#include "haraforge/asil.hpp"
#include "haraforge/revision_diff.hpp"
#include "haraforge/scenario_generator.hpp"

namespace haraforge {

namespace {

class Checker {
 public:
  Checker(const ItemDefinition& item, const HaraDocument& doc) : item_(item), doc_(doc) {}

  std::vector<Finding> take() { return std::move(findings_); }

  void add(RuleId rule, Location location, std::string message) {
    findings_.push_back({rule, std::move(location), default_severity(rule), std::move(message)});
  }

  void duplicate_ids() {
    std::map<EntryId, int> entries;
    for (const HazardEntry& e : doc_.entries) {
      if (++entries[e.id] == 2) add(RuleId::R1, Location::entry(e.id), "entry id " + e.id.to_string() + " is used more than once");
    }
    std::map<GoalId, int> goals;
    for (const SafetyGoal& g : doc_.goals) {
      if (++goals[g.id] == 2) add(RuleId::R1, Location::goal(g.id), "safety goal " + g.id.to_string() + " is declared more than once");
    }
    std::map<CandidateTriple, int> waivers;
    for (const Waiver& w : doc_.waivers) {
      CandidateTriple t{w.function, w.guide_word, w.mode};
      if (++waivers[t] == 2) add(RuleId::R1, Location::triple(t), "triple " + t.to_string() + " is waived more than once");
    }
  }

  void references() {
    const bool initial = doc_.kind == RevisionKind::kInitial;
    if (initial && doc_.based_on) {
      add(RuleId::R2, Location::revision(doc_.revision), "an initial revision must not name a based-on revision");
    } else if (!initial && !doc_.based_on) {
      add(RuleId::R2, Location::revision(doc_.revision), "a refinement revision must name its based-on revision");
    }

    for (const SafetyGoal& g : doc_.goals) {
      for (const std::string& m : g.modes) {
        if (!item_.find_mode(m)) add(RuleId::R2, Location::goal(g.id), "unknown operating mode '" + m + "'");
      }
    }

    for (const HazardEntry& e : doc_.entries) {
      const Location at = Location::entry(e.id);
      check_triple(at, e.malfunction.function, e.malfunction.guide_word, e.mode);
      if (!item_.find_scenario(e.scenario)) add(RuleId::R2, at, "unknown scenario '" + e.scenario + "'");
      if (!e.goal) continue;
      const SafetyGoal* goal = doc_.find_goal(*e.goal);
      if (goal == nullptr) {
        add(RuleId::R2, at, "links to undeclared safety goal " + e.goal->to_string());
      } else if (item_.find_mode(e.mode) &&
                 std::find(goal->modes.begin(), goal->modes.end(), e.mode) == goal->modes.end()) {
        add(RuleId::R2, at,
            "safety goal " + goal->id.to_string() + " does not apply in the entry's mode '" + e.mode + "'");
      }
    }

    for (const Waiver& w : doc_.waivers) {
      check_triple(Location::triple({w.function, w.guide_word, w.mode}), w.function, w.guide_word, w.mode);
    }
  }

  void stated_asils() {
    for (const HazardEntry& e : doc_.entries) {
      const AsilLevel derived = determine_asil(e);
      if (derived != e.asil) {
        add(RuleId::R3, Location::entry(e.id),
            "stated ASIL " + std::string(to_string(e.asil)) + " but " + e.severity.level.to_string() + "/" +
                e.exposure.level.to_string() + "/" + e.controllability.level.to_string() + " gives " +
                std::string(to_string(derived)));
      }
    }
  }

  void goal_links() {
    for (const HazardEntry& e : doc_.entries) {
      if (!e.goal) add(RuleId::R4, Location::entry(e.id), "entry is not linked to a safety goal");
    }
  }

  void goal_asils() {
    const auto linked = linked_entries();
    for (const SafetyGoal& g : doc_.goals) {
      auto it = linked.find(g.id);
      if (!g.asil || it == linked.end()) continue;
      const AsilLevel aggregate = aggregate_goal_asil(it->second);
      if (aggregate != *g.asil) {
        add(RuleId::R5, Location::goal(g.id),
            "stated ASIL " + std::string(to_string(*g.asil)) + " but the highest ASIL of its " +
                std::to_string(it->second.size()) + " linked entries is " + std::string(to_string(aggregate)));
      }
    }
  }

  void rationales() {
    for (const HazardEntry& e : doc_.entries) {
      const Location at = Location::entry(e.id);
      if (!e.severity.has_required_rationale()) add(RuleId::R6, at, e.severity.level.to_string() + " has no rationale");
      if (!e.exposure.has_required_rationale()) add(RuleId::R6, at, e.exposure.level.to_string() + " has no rationale");
      if (!e.controllability.has_required_rationale()) {
        add(RuleId::R6, at, e.controllability.level.to_string() + " has no rationale");
      }
    }
    for (const Waiver& w : doc_.waivers) {
      if (is_blank(w.rationale)) {
        add(RuleId::R6, Location::triple({w.function, w.guide_word, w.mode}), "waiver has no rationale");
      }
    }
  }

  void coverage() {
    for (const CoverageFinding& gap : coverage_report(item_, doc_)) {
      add(RuleId::R7, Location::triple(gap.triple), "no hazard entry and no waiver");
    }
  }

  void unused_goals() {
    const auto linked = linked_entries();
    for (const SafetyGoal& g : doc_.goals) {
      if (linked.count(g.id) == 0) add(RuleId::R9, Location::goal(g.id), "no hazard entry is linked to this goal");
    }
  }

  void functional_range_kept(const RevisionHistory& history) {
    if (doc_.kind != RevisionKind::kSafetyRefinement || !doc_.based_on) return;
    const HaraDocument* base = history.find(*doc_.based_on);
    if (base == nullptr) return;
    const DiffReport report = diff(*base, doc_);
    auto describe = [](const char* what, const SetDelta& delta) {
      std::string out;
      for (const std::string& s : delta.added) out += std::string(out.empty() ? "" : ", ") + "+" + what + " " + s;
      for (const std::string& s : delta.removed) out += std::string(out.empty() ? "" : ", ") + "-" + what + " " + s;
      return out;
    };
    std::string changes = describe("function", report.functions);
    const std::string mode_changes = describe("mode", report.modes);
    if (!mode_changes.empty()) changes += (changes.empty() ? "" : ", ") + mode_changes;
    if (changes.empty()) return;
    add(RuleId::R10, Location::revision(doc_.revision),
        "safety refinement changes the functional range of revision " + std::to_string(base->revision) + " (" +
            changes + ")");
  }

 private:
  std::map<GoalId, std::vector<HazardEntry>> linked_entries() const {
    std::map<GoalId, std::vector<HazardEntry>> out;
    for (const HazardEntry& e : doc_.entries) {
      if (e.goal) out[*e.goal].push_back(e);
    }
    return out;
  }

  void check_triple(const Location& at, const std::string& function, const std::string& guide_word,
                    const std::string& mode) {
    const FunctionDef* f = item_.find_function(function);
    if (f == nullptr) add(RuleId::R2, at, "unknown function '" + function + "'");
    if (!item_.find_guide_word(guide_word)) add(RuleId::R2, at, "unknown guide word '" + guide_word + "'");
    if (!item_.find_mode(mode)) {
      add(RuleId::R2, at, "unknown operating mode '" + mode + "'");
    } else if (f != nullptr && !f->applies_in(mode)) {
      add(RuleId::R2, at, "function '" + function + "' does not apply in mode '" + mode + "'");
    }
  }

  const ItemDefinition& item_;
  const HaraDocument& doc_;
  std::vector<Finding> findings_;
};

struct RuleText {
  RuleId rule;
  std::string_view text;
};

constexpr RuleText kRuleTexts[] = {
    {RuleId::R1,
     "Duplicate identifier. Entry ids, safety goal ids and waived triples must be unique within a revision. "
     "Entry ids are the anchor that keeps hazardous scenarios traceable across revisions, so two rows with the "
     "same id make every later comparison ambiguous."},
    {RuleId::R2,
     "Dangling or inapplicable reference. Every mode, function, guide word, scenario and safety goal named by "
     "an entry or waiver must exist in the item definition or the document, the function must be available in "
     "the entry's operating mode, and the linked safety goal must apply in that mode. A refinement revision must "
     "name the revision it is based on."},
    {RuleId::R3,
     "Stated ASIL differs from the risk graph. The ASIL of a hazardous scenario follows from its severity, "
     "exposure and controllability classes; any class 0 gives QM. A stated level that disagrees with its own "
     "ratings is either a transcription error or an undocumented override."},
    {RuleId::R4,
     "Entry without safety goal. Each hazardous scenario has to be covered by a safety goal, otherwise its risk "
     "is identified but never mitigated. Parsed documents always carry a link; this rule catches documents "
     "built in code."},
    {RuleId::R5,
     "Safety goal ASIL differs from its entries. A safety goal inherits the highest ASIL among the hazardous "
     "scenarios linked to it. Only goals that state an ASIL and have linked entries are checked."},
    {RuleId::R6,
     "Missing rationale. A nonzero severity, exposure or controllability class is an expert judgement and has "
     "to be argued in its rationale column; waivers need a rationale for the same reason."},
    {RuleId::R7,
     "Coverage gap (warning). The combination of function, guide word and operating mode has neither a "
     "hazardous scenario nor a waiver. Systematic enumeration of these combinations is what makes the analysis "
     "likely to be complete; each gap needs an entry or an explicit argument why none is needed."},
    {RuleId::R8,
     "Reused entry id. Ids of discarded hazardous scenarios are not renumbered and must never be reused, "
     "otherwise an id refers to different scenarios in different revisions. Needs the revision history."},
    {RuleId::R9,
     "Unused safety goal (warning). No hazardous scenario links to the goal, so nothing in the analysis "
     "justifies it or its ASIL."},
    {RuleId::R10,
     "Safety refinement changes the functional range. A safety refinement only revises hazardous scenarios, "
     "ratings and safety goals; adding or removing functions or operating modes is an item refinement and has "
     "to be marked as one. Needs the revision history to find the base revision."},
};

}  // namespace

std::vector<Finding> validate(const ItemDefinition& item, const HaraDocument& doc, const RevisionHistory* history) {
  if (history != nullptr) {
    const HaraDocument* found = history->find(doc.revision);
    if (found == nullptr || !(*found == doc)) {
      throw Error(ErrorCode::kInconsistentInput,
                  "revision " + std::to_string(doc.revision) + " is not part of the given history");
    }
  }

  Checker checker(item, doc);
  checker.duplicate_ids();
  checker.references();
  checker.stated_asils();
  checker.goal_links();
  checker.goal_asils();
  checker.rationales();
  checker.coverage();
  checker.unused_goals();
  std::vector<Finding> findings = checker.take();
  if (history != nullptr) {
    for (Finding& f : check_id_stability(*history)) findings.push_back(std::move(f));
    Checker range(item, doc);
    range.functional_range_kept(*history);
    for (Finding& f : range.take()) findings.push_back(std::move(f));
  }
  sort_findings(findings);
  return findings;
}

std::string_view explain_rule(RuleId rule) noexcept {
  for (const RuleText& t : kRuleTexts) {
    if (t.rule == rule) return t.text;
  }
  return {};
}

std::string_view explain_rule(std::string_view rule_id) {
  const auto rule = parse_rule_id(rule_id);
  if (!rule) throw Error(ErrorCode::kUnknownRule, "unknown rule '" + std::string(rule_id) + "'");
  return explain_rule(*rule);
}

}  // namespace haraforge
