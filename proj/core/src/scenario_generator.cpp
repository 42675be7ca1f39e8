#include "haraforge/scenario_generator.hpp"

#include <algorithm>
#include <set>

namespace haraforge {

namespace {

void require_enumerable(const ItemDefinition& item) {
  if (item.functions.empty()) {
    throw Error(ErrorCode::kNothingToEnumerate, "item '" + item.name + "' defines no functions");
  }
  if (item.guide_words.empty()) {
    throw Error(ErrorCode::kNothingToEnumerate, "item '" + item.name + "' defines no guide words");
  }
}

template <class T>
std::vector<const T*> sorted_by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  out.reserve(items.size());
  for (const T& x : items) out.push_back(&x);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

}  // namespace

std::vector<Malfunction> enumerate_malfunctions(const ItemDefinition& item) {
  require_enumerable(item);
  std::vector<Malfunction> out;
  out.reserve(item.functions.size() * item.guide_words.size());
  const auto guide_words = sorted_by_id(item.guide_words);
  for (const FunctionDef* f : sorted_by_id(item.functions)) {
    for (const GuideWord* g : guide_words) {
      out.push_back({f->id, g->id, g->interpretation + " of " + f->description});
    }
  }
  return out;
}

std::vector<CandidateTriple> enumerate_candidates(const ItemDefinition& item) {
  require_enumerable(item);
  if (item.modes.empty()) {
    throw Error(ErrorCode::kNothingToEnumerate, "item '" + item.name + "' defines no operating modes");
  }
  std::vector<CandidateTriple> out;
  const auto guide_words = sorted_by_id(item.guide_words);
  for (const FunctionDef* f : sorted_by_id(item.functions)) {
    std::vector<std::string> modes = f->modes;
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    for (const GuideWord* g : guide_words) {
      for (const std::string& m : modes) out.push_back({f->id, g->id, m});
    }
  }
  return out;
}

std::vector<CoverageFinding> coverage_report(const ItemDefinition& item, const HaraDocument& doc) {
  // An item without candidates has nothing left uncovered.
  if (item.functions.empty() || item.guide_words.empty() || item.modes.empty()) return {};

  std::set<CandidateTriple> covered;
  for (const HazardEntry& e : doc.entries) {
    covered.insert({e.malfunction.function, e.malfunction.guide_word, e.mode});
  }
  for (const Waiver& w : doc.waivers) covered.insert({w.function, w.guide_word, w.mode});

  std::vector<CoverageFinding> out;
  for (CandidateTriple& t : enumerate_candidates(item)) {
    if (covered.count(t) == 0) out.push_back({std::move(t), CoverageReason::kNoEntryNoWaiver});
  }
  return out;
}

}  // namespace haraforge
