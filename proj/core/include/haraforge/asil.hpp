#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "haraforge/model.hpp"

namespace haraforge {

/// ASIL from the S/E/C risk graph. Any class 0 yields QM.
AsilLevel determine_asil(SeverityClass s, ExposureClass e, ControllabilityClass c) noexcept;

/// Closed form of the risk graph: with all classes nonzero, s+e+c of
/// 10/9/8/7 gives D/C/B/A and anything lower QM. Kept separate from
/// determine_asil() so the two can be checked against each other.
AsilLevel asil_from_class_sum(SeverityClass s, ExposureClass e, ControllabilityClass c) noexcept;

inline AsilLevel determine_asil(const HazardEntry& entry) noexcept {
  return determine_asil(entry.severity.level, entry.exposure.level, entry.controllability.level);
}

/// True iff the entry's stated ASIL equals the one its ratings imply.
bool check_entry_consistency(const HazardEntry& entry) noexcept;

/// Maximum stated ASIL over entries that all link to the same goal.
/// Throws Error(kNoLinkedScenarios) on an empty set and
/// Error(kInconsistentInput) if the entries link to different goals.
AsilLevel aggregate_goal_asil(std::span<const HazardEntry> entries);

/// aggregate_goal_asil() for every goal of `doc` that has linked entries.
std::map<GoalId, AsilLevel> aggregate_goal_asils(const HaraDocument& doc);

struct GoalAllocation {
  GoalId goal;
  std::vector<std::string> elements;
};

/// Each allocated element receives the highest level among the goals
/// allocated to it. Inheritance is one hop: only elements named in an
/// allocation appear in the result.
/// Throws Error(kUnknownElement) / Error(kUnknownGoal) for unresolved
/// allocations and Error(kInvalidModel) for an allocation with no elements.
std::map<std::string, AsilLevel> propagate_to_elements(const ItemDefinition& item,
                                                       const std::map<GoalId, AsilLevel>& goals,
                                                       std::span<const GoalAllocation> allocations);

}  // namespace haraforge
