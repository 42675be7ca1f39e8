#pragma once

/// @file report.hpp
/// Safety goal table, ASIL histogram and Markdown rendering.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "haraforge/finding.hpp"
#include "haraforge/model.hpp"
#include "haraforge/revision_diff.hpp"

namespace haraforge {

/// Groups by mode applicability, in this order.
enum class GoalGroupKind {
  kAllModes,      ///< applies in every operating mode of the item
  kNonAutomated,  ///< only in non-automated modes
  kAutomated,     ///< only in automated modes
  kOther,         ///< any other mix
};

struct GoalRow {
  GoalId id;
  std::string text;
  std::optional<AsilLevel> stated;
  /// Highest ASIL among linked entries; empty when none is linked.
  std::optional<AsilLevel> aggregate;
  int ordinal = 0;

  bool operator==(const GoalRow&) const = default;
};

struct GoalGroup {
  GoalGroupKind kind = GoalGroupKind::kOther;
  std::string heading;
  std::vector<GoalRow> rows;  ///< by ordinal, then SG number

  bool operator==(const GoalGroup&) const = default;
};

struct SafetyGoalTable {
  std::string title;
  int revision = 0;
  std::vector<GoalGroup> groups;  ///< non-empty groups only
  std::vector<std::string> warnings;

  bool operator==(const SafetyGoalTable&) const = default;
};

/// Headings: "All operating modes", the names of the non-automated modes,
/// the names of the automated modes (comma separated, item order), "Other".
SafetyGoalTable safety_goal_table(const ItemDefinition& item, const HaraDocument& doc);

/// Entry count per stated ASIL; every level is present.
std::map<AsilLevel, std::size_t> asil_histogram(const HaraDocument& doc);

std::string render_markdown(const SafetyGoalTable& table);
std::string render_markdown(const std::map<AsilLevel, std::size_t>& histogram);
std::string render_markdown(const DiffReport& report);
std::string render_markdown(const std::vector<Finding>& findings);

}  // namespace haraforge
