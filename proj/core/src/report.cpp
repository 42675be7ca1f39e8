#include "haraforge/report.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace haraforge {

namespace {

std::string cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += "<br>";
    } else if (c != '\r') {
      out += c;
    }
  }
  return out;
}

std::string asil_cell(const std::optional<AsilLevel>& level) {
  return level ? std::string(to_string(*level)) : std::string("-");
}

std::string join_names(const std::vector<const OperatingMode*>& modes) {
  std::string out;
  for (const OperatingMode* m : modes) out += (out.empty() ? "" : ", ") + (m->name.empty() ? m->id : m->name);
  return out;
}

std::string join_ids(const std::vector<EntryId>& ids) {
  std::string out;
  for (const EntryId& id : ids) out += (out.empty() ? "" : ", ") + id.to_string();
  return out;
}

}  // namespace

SafetyGoalTable safety_goal_table(const ItemDefinition& item, const HaraDocument& doc) {
  SafetyGoalTable table;
  table.title = doc.title;
  table.revision = doc.revision;

  std::vector<const OperatingMode*> manual, automated;
  std::set<std::string> all_modes, manual_ids, automated_ids;
  for (const OperatingMode& m : item.modes) {
    all_modes.insert(m.id);
    (m.automated ? automated : manual).push_back(&m);
    (m.automated ? automated_ids : manual_ids).insert(m.id);
  }

  std::map<GoalId, AsilLevel> aggregates;
  for (const HazardEntry& e : doc.entries) {
    if (!e.goal) continue;
    auto [it, inserted] = aggregates.emplace(*e.goal, e.asil);
    if (!inserted) it->second = std::max(it->second, e.asil);
  }

  GoalGroup groups[4] = {
      {GoalGroupKind::kAllModes, "All operating modes", {}},
      {GoalGroupKind::kNonAutomated, join_names(manual), {}},
      {GoalGroupKind::kAutomated, join_names(automated), {}},
      {GoalGroupKind::kOther, "Other", {}},
  };
  for (const SafetyGoal& g : doc.goals) {
    const std::set<std::string> modes(g.modes.begin(), g.modes.end());
    auto within = [&](const std::set<std::string>& allowed) {
      return !modes.empty() && std::includes(allowed.begin(), allowed.end(), modes.begin(), modes.end());
    };
    GoalGroup* group = &groups[3];
    if (!modes.empty() && modes == all_modes) {
      group = &groups[0];
    } else if (within(manual_ids)) {
      group = &groups[1];
    } else if (within(automated_ids)) {
      group = &groups[2];
    } else {
      table.warnings.push_back("safety goal " + g.id.to_string() + " fits no applicability group");
    }
    std::optional<AsilLevel> aggregate;
    if (auto it = aggregates.find(g.id); it != aggregates.end()) aggregate = it->second;
    group->rows.push_back({g.id, g.text, g.asil, aggregate, g.ordinal});
  }
  for (GoalGroup& group : groups) {
    if (group.rows.empty()) continue;
    std::stable_sort(group.rows.begin(), group.rows.end(), [](const GoalRow& a, const GoalRow& b) {
      return std::tie(a.ordinal, a.id) < std::tie(b.ordinal, b.id);
    });
    table.groups.push_back(std::move(group));
  }
  return table;
}

std::map<AsilLevel, std::size_t> asil_histogram(const HaraDocument& doc) {
  std::map<AsilLevel, std::size_t> counts;
  for (AsilLevel level : kAllAsilLevels) counts[level] = 0;
  for (const HazardEntry& e : doc.entries) ++counts[e.asil];
  return counts;
}

std::string render_markdown(const SafetyGoalTable& table) {
  std::string out = "# " + cell(table.title) + ", revision " + std::to_string(table.revision) + "\n\n";
  out += "| ID | Safety goal | ASIL | Highest entry ASIL |\n";
  out += "|----|-------------|------|--------------------|\n";
  for (const GoalGroup& group : table.groups) {
    out += "| **" + cell(group.heading) + "** | | | |\n";
    for (const GoalRow& row : group.rows) {
      out += "| " + row.id.to_string() + " | " + cell(row.text) + " | " + asil_cell(row.stated) + " | " +
             asil_cell(row.aggregate) + " |\n";
    }
  }
  if (!table.warnings.empty()) {
    out += "\n";
    for (const std::string& w : table.warnings) out += "- warning: " + cell(w) + "\n";
  }
  return out;
}

std::string render_markdown(const std::map<AsilLevel, std::size_t>& histogram) {
  std::string out = "| ASIL | Entries |\n|------|---------|\n";
  for (const auto& [level, count] : histogram) {
    out += "| " + std::string(to_string(level)) + " | " + std::to_string(count) + " |\n";
  }
  return out;
}

std::string render_markdown(const DiffReport& report) {
  std::string out = "# Revision " + std::to_string(report.base_revision) + " to " +
                    std::to_string(report.next_revision) + "\n\n";
  out += "Classification: " + std::string(to_string(classify_refinement(report))) + "\n";
  if (report.based_on_mismatch) {
    out += "\nWarning: revision " + std::to_string(report.next_revision) + " is not based on revision " +
           std::to_string(report.base_revision) + ".\n";
  }

  auto section = [&out](const std::string& heading, const std::vector<std::string>& lines) {
    if (lines.empty()) return;
    out += "\n## " + heading + "\n\n";
    for (const std::string& line : lines) out += "- " + line + "\n";
  };
  auto ids = [](const auto& list) {
    std::vector<std::string> out;
    for (const auto& id : list) out.push_back(id.to_string());
    return out;
  };

  section("Added entries", ids(report.added_entries));
  section("Removed entries", ids(report.removed_entries));
  std::vector<std::string> lines;
  for (const EntryChange& change : report.modified_entries) {
    std::string line = change.id.to_string();
    if (change.asil_transition) {
      line += ": ASIL " + std::string(to_string(change.asil_transition->first)) + " -> " +
              std::string(to_string(change.asil_transition->second));
    }
    std::string fields;
    for (const FieldChange& f : change.changes) fields += (fields.empty() ? "" : ", ") + f.field;
    line += " (" + fields + ")";
    lines.push_back(line);
  }
  section("Modified entries", lines);
  lines.clear();
  for (const Split& split : report.splits) lines.push_back(split.parent.to_string() + " -> " + join_ids(split.children));
  section("Splits", lines);
  section("Added safety goals", ids(report.added_goals));
  section("Removed safety goals", ids(report.removed_goals));
  lines.clear();
  for (const GoalChange& change : report.modified_goals) {
    std::string line = change.id.to_string() + ":";
    for (const FieldChange& f : change.changes) line += " " + f.field + " " + cell(f.before) + " -> " + cell(f.after) + ";";
    line.pop_back();
    lines.push_back(line);
  }
  section("Modified safety goals", lines);
  lines.clear();
  for (const Waiver& w : report.added_waivers) lines.push_back("added " + w.function + "/" + w.guide_word + "/" + w.mode);
  for (const Waiver& w : report.removed_waivers) lines.push_back("removed " + w.function + "/" + w.guide_word + "/" + w.mode);
  section("Waivers", lines);
  lines.clear();
  for (const std::string& f : report.functions.added) lines.push_back("added function " + f);
  for (const std::string& f : report.functions.removed) lines.push_back("removed function " + f);
  for (const std::string& m : report.modes.added) lines.push_back("added mode " + m);
  for (const std::string& m : report.modes.removed) lines.push_back("removed mode " + m);
  section("Functional range", lines);
  lines.clear();
  for (std::uint32_t stem : report.reused_stems) lines.push_back("stem " + std::to_string(stem));
  section("Reused entry ids", lines);
  return out;
}

std::string render_markdown(const std::vector<Finding>& findings) {
  if (findings.empty()) return "No findings.\n";
  std::string out = "| Rule | Severity | Location | Message |\n|------|----------|----------|---------|\n";
  for (const Finding& f : findings) {
    out += "| " + std::string(to_string(f.rule)) + " | " + std::string(to_string(f.severity)) + " | " +
           cell(f.location.to_string()) + " | " + cell(f.message) + " |\n";
  }
  return out;
}

}  // namespace haraforge
