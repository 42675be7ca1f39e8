#include "haraforge/asil.hpp"

#include <algorithm>
#include <array>

namespace haraforge {

namespace {

using L = AsilLevel;

// Risk graph for S1..S3 x E1..E4 x C1..C3, indexed [s-1][e-1][c-1].
constexpr std::array<std::array<std::array<AsilLevel, 3>, 4>, 3> kRiskGraph = {{
    {{{L::QM, L::QM, L::QM}, {L::QM, L::QM, L::QM}, {L::QM, L::QM, L::A}, {L::QM, L::A, L::B}}},
    {{{L::QM, L::QM, L::QM}, {L::QM, L::QM, L::A}, {L::QM, L::A, L::B}, {L::A, L::B, L::C}}},
    {{{L::QM, L::QM, L::A}, {L::QM, L::A, L::B}, {L::A, L::B, L::C}, {L::B, L::C, L::D}}},
}};

}  // namespace

AsilLevel determine_asil(SeverityClass s, ExposureClass e, ControllabilityClass c) noexcept {
  if (s.value() == 0 || e.value() == 0 || c.value() == 0) return AsilLevel::QM;
  return kRiskGraph[s.value() - 1][e.value() - 1][c.value() - 1];
}

AsilLevel asil_from_class_sum(SeverityClass s, ExposureClass e, ControllabilityClass c) noexcept {
  if (s.value() == 0 || e.value() == 0 || c.value() == 0) return AsilLevel::QM;
  const int sum = s.value() + e.value() + c.value();
  if (sum <= 6) return AsilLevel::QM;
  return static_cast<AsilLevel>(sum - 6);
}

bool check_entry_consistency(const HazardEntry& entry) noexcept {
  return entry.asil == determine_asil(entry);
}

AsilLevel aggregate_goal_asil(std::span<const HazardEntry> entries) {
  if (entries.empty()) {
    throw Error(ErrorCode::kNoLinkedScenarios, "no hazardous scenarios linked to the safety goal");
  }
  const auto& goal = entries.front().goal;
  AsilLevel result = AsilLevel::QM;
  for (const HazardEntry& e : entries) {
    if (e.goal != goal) {
      throw Error(ErrorCode::kInconsistentInput,
                  "entry " + e.id.to_string() + " links to a different safety goal");
    }
    result = std::max(result, e.asil);
  }
  return result;
}

std::map<GoalId, AsilLevel> aggregate_goal_asils(const HaraDocument& doc) {
  std::map<GoalId, std::vector<HazardEntry>> by_goal;
  for (const HazardEntry& e : doc.entries) {
    if (e.goal) by_goal[*e.goal].push_back(e);
  }
  std::map<GoalId, AsilLevel> result;
  for (const auto& [goal, entries] : by_goal) result.emplace(goal, aggregate_goal_asil(entries));
  return result;
}

std::map<std::string, AsilLevel> propagate_to_elements(const ItemDefinition& item,
                                                       const std::map<GoalId, AsilLevel>& goals,
                                                       std::span<const GoalAllocation> allocations) {
  std::map<std::string, AsilLevel> result;
  for (const GoalAllocation& allocation : allocations) {
    auto level = goals.find(allocation.goal);
    if (level == goals.end()) {
      throw Error(ErrorCode::kUnknownGoal,
                  "allocation for unknown safety goal " + allocation.goal.to_string());
    }
    if (allocation.elements.empty()) {
      throw Error(ErrorCode::kInvalidModel,
                  "allocation of " + allocation.goal.to_string() + " names no element");
    }
    for (const std::string& element : allocation.elements) {
      if (item.find_element(element) == nullptr) {
        throw Error(ErrorCode::kUnknownElement, "allocation to unknown element '" + element + "'");
      }
      auto [it, inserted] = result.emplace(element, level->second);
      if (!inserted) it->second = std::max(it->second, level->second);
    }
  }
  return result;
}

}  // namespace haraforge
