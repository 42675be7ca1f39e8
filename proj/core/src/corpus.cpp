#include "haraforge/corpus.hpp"

#include <algorithm>
#include <set>

#include "haraforge/asil.hpp"
#include "haraforge/scenario_generator.hpp"

namespace haraforge {

namespace {

using P = Provenance;

const std::vector<std::string> kAllModes = {"ManualMode", "FollowMode", "CoupledMode", "SafeHalt"};
const std::vector<std::string> kManual = {"ManualMode"};
const std::vector<std::string> kAutomated = {"FollowMode", "CoupledMode", "SafeHalt"};

constexpr std::string_view kRightLaneWaiver =
    "Removed from the functional range during item refinement; unmanned operation restricted to hard "
    "shoulders and acceleration/deceleration lanes.";

class Builder {
 public:
  void tag(std::string key, Provenance provenance) { manifest_.entries.push_back({std::move(key), provenance}); }

  CorpusManifest take_manifest() { return std::move(manifest_); }

 private:
  CorpusManifest manifest_;
};

ItemDefinition build_item(Builder& b) {
  ItemDefinition item;
  item.name = "AFA Logic";
  b.tag("item:name", P::kPaperVerbatim);

  item.elements = {{"AFALogic", true},
                   {"Drivetrain", false},
                   {"Brakes", false},
                   {"Steering", false},
                   {"EnvironmentPerception", false}};
  for (const ElementNode& e : item.elements) {
    b.tag("item:element:" + e.id, P::kPaperDerived);
    if (!e.primary) {
      item.connections.push_back({"AFALogic", e.id});
      b.tag("item:connection:AFALogic-" + e.id, P::kPaperDerived);
    }
  }

  item.modes = {{"ManualMode", "Manual Mode", false},
                {"FollowMode", "Follow Mode", true},
                {"CoupledMode", "Coupled Mode", true},
                {"SafeHalt", "Safe Halt", true}};
  for (const OperatingMode& m : item.modes) b.tag("item:mode:" + m.id, P::kPaperVerbatim);

  item.functions = {
      {"mode_switching", "operating mode switching", kAllModes},
      {"mode_display", "operating mode display in the HMI", kAllModes},
      {"braking", "deceleration and anti-lock braking", kAllModes},
      {"acceleration", "longitudinal acceleration", kAllModes},
      {"steering", "steering actuation", kAllModes},
      {"obstacle_detection", "detection of obstacles on the path", kAutomated},
      {"leader_tracking", "identification and tracking of the leading vehicle", {"FollowMode", "CoupledMode"}},
      {"intervention_detection", "detection of driver intervention", kAutomated},
      {"right_lane_driving", "driving on the motorway's right lane", {"FollowMode"}},
  };
  for (const FunctionDef& f : item.functions) b.tag("item:function:" + f.id, P::kPaperDerived);

  item.guide_words = default_guide_words();
  for (const GuideWord& g : item.guide_words) b.tag("item:guideword:" + g.id, P::kSyntheticConsistent);

  item.scenarios = {
      {"hard_shoulder_works",
       "Roadworks on the motorway hard shoulder with flowing traffic on the adjacent right lane", ExposureClass(4),
       "unmanned operation takes place on the hard shoulder for the whole duration of the roadworks"},
      {"accel_decel_lane", "Passing an acceleration or deceleration lane with merging traffic", ExposureClass(3),
       "junctions are passed regularly during each roadworks shift"},
      {"stopped_vehicle", "Vehicle stopped in an emergency on the hard shoulder ahead of the AFA", ExposureClass(2),
       "rate of emergency stopping vehicles on the hard shoulder is low"},
      {"persons_on_shoulder", "Road workers or other persons on the hard shoulder near the AFA", ExposureClass(3),
       "road workers regularly leave the leading vehicle during roadworks"},
      {"public_traffic", "Manual driving in public motorway traffic", ExposureClass(4),
       "the AFA is driven manually to and from every roadworks site"},
      {"mode_handover", "AFA at standstill during handover between manual and automated operation",
       ExposureClass(2), "handover happens only at the start and end of a roadworks shift"},
  };
  for (const OperationalScenario& s : item.scenarios) {
    b.tag("item:scenario:" + s.id, P::kPaperDerived);
    b.tag("item:scenario:" + s.id + ":exposure", P::kSyntheticConsistent);
  }

  item.parameters = {{"max_speed", 12, "km/h"}, {"follow_distance", 90, "m"}, {"coupled_distance", 10, "m"}};
  for (const Parameter& p : item.parameters) b.tag("item:param:" + p.name, P::kPaperVerbatim);
  return item;
}

struct GoalSpec {
  int id;
  const char* text;
  const std::vector<std::string>* modes;
};

// Table order.
const GoalSpec kGoals[] = {
    {1, "Unintended and not permitted operating mode change must be prevented.", &kAllModes},
    {2, "Intended and permitted operating mode change must be ensured.", &kAllModes},
    {7, "Display of actual operating mode in HMI must be ensured.", &kAllModes},
    {4, "Unintended anti-lock brake actuation must be prevented.", &kManual},
    {5, "Unintended acceleration must be prevented.", &kManual},
    {16, "Anti-lock functionality must be ensured.", &kManual},
    {17, "Unintended steering actuation must be prevented", &kManual},
    {3, "Steering actuation beyond specification must be prevented.", &kAutomated},
    {6, "Detection of driver intervention must be ensured.", &kAutomated},
    {8, "Unintended slow acceleration must be prevented.", &kAutomated},
    {9, "Deceleration to standstill must be ensured.", &kAutomated},
    {10, "Leaving tolerance ranges must trigger operating mode change to Safe Halt.", &kAutomated},
    {11, "Maximum velocity must not be exceeded.", &kAutomated},
    {12, "Overrunning hard shoulder markings must be prevented.", &kAutomated},
    {13,
     "Detection of and reaction to (deceleration to standstill) relevant obstacles (humans, vehicles, etc.) must "
     "be ensured.",
     &kAutomated},
    {14, "Identification of leading vehicle must be ensured.", &kAutomated},
    {15, "Detection of missing leading vehicle and operating mode change to safe halt must be ensured.",
     &kAutomated},
};

struct EntrySpec {
  const char* id;
  const char* mode;
  const char* function;
  const char* guide_word;
  const char* malfunction;
  const char* scenario;
  const char* consequence;
  int s;
  const char* s_why;
  int c;
  const char* c_why;
  int goal;
};

// Rows present in both revisions with identical content.
const EntrySpec kSharedEntries[] = {
    {"1", "FollowMode", "mode_switching", "UNINTENDED", "Operating mode changes without a valid request",
     "hard_shoulder_works", "AFA leaves the hard shoulder track and enters the adjacent lane", 2,
     "collision with passing traffic at moderate relative speed", 2,
     "passing drivers usually notice the deviating AFA and can change lanes", 1},
    {"2", "CoupledMode", "mode_switching", "LOSS", "Requested change to Safe Halt is not performed",
     "accel_decel_lane", "AFA keeps following into merging traffic", 2,
     "side collision with merging vehicles at low AFA speed", 2,
     "merging drivers can usually brake or wait behind the AFA", 2},
    {"4", "ManualMode", "braking", "UNINTENDED", "Anti-lock brake actuation without driver demand",
     "public_traffic", "sudden deceleration in fast motorway traffic, rear-end collision", 3,
     "rear-end collision at motorway speed with fatal injuries", 3,
     "following traffic cannot react to an unexpected full brake actuation", 4},
    {"5", "ManualMode", "acceleration", "UNINTENDED", "Acceleration without driver demand", "public_traffic",
     "AFA accelerates into the vehicle ahead", 3, "collision at motorway speed", 2,
     "the driver can usually brake or steer against the unintended acceleration", 5},
    {"6", "SafeHalt", "intervention_detection", "LOSS", "Driver intervention is not detected", "mode_handover",
     "automation keeps control while the driver enters and operates the AFA", 2,
     "driver injured by unexpected vehicle movement", 3, "the driver cannot override the automation", 6},
    {"8", "FollowMode", "acceleration", "UNINTENDED", "Slow acceleration without request",
     "hard_shoulder_works", "AFA creeps towards the leading vehicle", 1,
     "low speed impact on the leading protective vehicle", 2,
     "the leading vehicle driver can usually move away", 8},
    {"9", "FollowMode", "braking", "LOSS", "Deceleration to standstill is not performed", "stopped_vehicle",
     "AFA collides with the stopped vehicle", 3, "persons may be inside or next to the stopped vehicle", 2,
     "persons at the stopped vehicle can usually step aside at the low AFA speed", 9},
    {"10", "CoupledMode", "mode_switching", "LATE", "Change to Safe Halt after leaving tolerance ranges is delayed",
     "accel_decel_lane", "AFA continues outside its tolerance range into merging traffic", 2,
     "side collision with merging vehicles", 2, "merging drivers can usually avoid the slow AFA", 10},
    {"11", "FollowMode", "acceleration", "MORE", "Speed limitation exceeded", "hard_shoulder_works",
     "AFA drives faster than specified and cannot stop for obstacles", 2,
     "impact at increased speed on the hard shoulder", 2,
     "other road users can usually evade at the still moderate speed", 11},
    {"13", "FollowMode", "obstacle_detection", "LOSS", "Relevant obstacle on the path is not detected",
     "persons_on_shoulder", "AFA does not react to a person on the hard shoulder", 3,
     "person hit by the AFA", 0, "persons can generally control the situation due to the low velocity of the AFA", 13},
    {"14", "FollowMode", "leader_tracking", "UNINTENDED", "Another vehicle is identified as the leading vehicle",
     "hard_shoulder_works", "AFA follows a vehicle on the adjacent lane", 2,
     "collision with traffic on the adjacent lane", 1,
     "the wrong target moves away quickly and the AFA stays behind", 14},
    {"15", "CoupledMode", "leader_tracking", "LOSS", "Missing leading vehicle is not detected",
     "accel_decel_lane", "AFA continues without a leader into merging traffic", 2,
     "side collision with merging vehicles", 2, "merging drivers can usually avoid the slow AFA", 15},
    {"16", "ManualMode", "braking", "LOSS", "Anti-lock functionality unavailable during braking",
     "public_traffic", "wheels lock and the driver loses steering control", 3,
     "departure from the lane at motorway speed", 2, "most drivers can reduce brake pressure and recover", 16},
    {"17", "ManualMode", "steering", "UNINTENDED", "Steering actuation without driver demand", "public_traffic",
     "AFA leaves its lane at motorway speed", 3, "collision with other vehicles at motorway speed", 3,
     "the driver cannot counteract a sudden steering actuation in time", 17},
    {"19", "SafeHalt", "mode_display", "UNINTENDED", "Automated mode displayed while the AFA is in Safe Halt",
     "mode_handover", "driver assumes automation is active and leaves the vehicle unattended", 2,
     "vehicle rolls into persons near the AFA", 3, "persons near the AFA do not expect any vehicle movement", 7},
    {"21", "SafeHalt", "obstacle_detection", "LOSS", "Obstacle is not detected before restart",
     "persons_on_shoulder", "AFA starts moving with a person directly in front of it", 3,
     "person hit by the AFA", 0, "persons can generally control the situation due to the low velocity of the AFA", 13},
    {"22", "CoupledMode", "obstacle_detection", "LOSS", "Vehicle entering the lane is not detected",
     "accel_decel_lane", "AFA does not react to a merging vehicle", 2, "low speed collision with a merging vehicle",
     0, "merging drivers control the situation due to the low velocity of the AFA", 13},
    {"25", "FollowMode", "leader_tracking", "LOSS", "Leading vehicle is lost while passing a stopped vehicle",
     "stopped_vehicle", "AFA does not follow the evasive path of the leading vehicle", 2,
     "collision with the stopped vehicle", 3, "nobody is present to intervene in unmanned operation", 15},
    {"30", "SafeHalt", "mode_switching", "UNINTENDED", "Automated mode engaged during handover",
     "mode_handover", "AFA starts moving while the driver is still entering", 2,
     "driver injured by vehicle movement", 2, "the driver can usually step back from the slowly starting AFA", 1},
    {"33", "FollowMode", "mode_display", "LOSS", "Operating mode display fails", "hard_shoulder_works",
     "leading vehicle driver is not informed of the automated operation", 1,
     "the leading vehicle driver stops without warning the AFA", 2,
     "the AFA usually still reacts to the leading vehicle", 7},
    {"38", "CoupledMode", "steering", "UNINTENDED", "Steering actuation within specification without demand",
     "accel_decel_lane", "AFA overruns the lane marking into merging traffic", 3,
     "collision with merging vehicles", 1, "merging drivers can easily avoid the limited lateral deviation", 12},
    {"40", "FollowMode", "obstacle_detection", "LOSS", "Stopped vehicle is not detected", "stopped_vehicle",
     "AFA does not react to the stopped vehicle", 3, "persons may be inside the stopped vehicle", 0,
     "persons can generally control the situation due to the low velocity of the AFA", 13},
};

const EntrySpec kEntry36 = {
    "36", "FollowMode", "steering", "UNINTENDED", "Steering actuation without demand", "hard_shoulder_works",
    "AFA intrudes the right lane of the motorway", 3, "collision with motorway traffic at high relative speed", 3,
    "motorway traffic cannot react to the lateral intrusion", 12};

const EntrySpec kEntry37Before = {
    "37", "FollowMode", "steering", "UNINTENDED", "Wrong steering actuation", "hard_shoulder_works",
    "AFA intrudes the right lane of the motorway", 3, "collision with motorway traffic at high relative speed", 3,
    "motorway traffic cannot react to the lateral intrusion", 12};

const EntrySpec kEntry37After = {
    "37", "FollowMode", "steering", "UNINTENDED", "Steering actuation within specification without demand",
    "hard_shoulder_works", "AFA intrudes the right lane of the motorway with low lateral velocity", 3,
    "collision with motorway traffic at high relative speed", 1,
    "the limited steering angle keeps the lateral velocity low so other traffic participants can react", 12};

const EntrySpec kEntry37a = {
    "37a", "FollowMode", "steering", "MORE", "Steering actuation beyond specification (up to full steering actuation)",
    "hard_shoulder_works", "AFA intrudes the right lane of the motorway with high lateral velocity", 3,
    "collision with motorway traffic at high relative speed", 3,
    "motorway traffic cannot react to the fast lateral intrusion", 3};

std::string waiver_rationale(const CandidateTriple& t) {
  if (t.function == "right_lane_driving") return std::string(kRightLaneWaiver);
  static const std::pair<std::string_view, std::string_view> kByGuideWord[] = {
      {"LOSS", "No hazardous scenario beyond those recorded for this function in other operating modes."},
      {"UNINTENDED", "Unintended activation has no hazardous effect in this operating mode."},
      {"MORE", "Magnitude is bounded by the speed limitation of the AFA; no hazardous scenario identified."},
      {"LESS", "A shortfall only reduces availability; the AFA remains in a safe state."},
      {"REVERSE", "Reversed direction is not possible in the planned implementation."},
      {"EARLY", "Premature activation leads to the same hazardous scenario as unintended activation."},
      {"LATE", "Delayed activation leads to the same hazardous scenario as loss of the function."},
      {"STUCK", "A frozen output is detected by plausibility checks and leads to Safe Halt."},
  };
  for (const auto& [word, text] : kByGuideWord) {
    if (word == t.guide_word) return std::string(text);
  }
  return "No hazardous scenario identified.";
}

HazardEntry make_entry(const ItemDefinition& item, const EntrySpec& spec) {
  HazardEntry e;
  e.id = parse_entry_id(spec.id);
  e.mode = spec.mode;
  e.malfunction = {spec.function, spec.guide_word, spec.malfunction};
  e.scenario = spec.scenario;
  e.consequence = spec.consequence;
  const OperationalScenario* scenario = item.find_scenario(spec.scenario);
  e.severity = {SeverityClass(spec.s), spec.s_why};
  e.exposure = {scenario->exposure, scenario->exposure_rationale};
  e.controllability = {ControllabilityClass(spec.c), spec.c_why};
  e.asil = determine_asil(e);
  e.goal = GoalId(spec.goal);
  return e;
}

HaraDocument build_revision(Builder& b, const ItemDefinition& item, int revision) {
  const bool split = revision == 6;
  const std::string prefix = "rev" + std::to_string(revision) + ":";

  HaraDocument doc;
  doc.title = "AFA Logic HARA";
  doc.item_name = item.name;
  doc.revision = revision;
  doc.kind = split ? RevisionKind::kSafetyRefinement : RevisionKind::kItemRefinement;
  doc.based_on = revision - 1;
  b.tag(prefix + "header", P::kSyntheticConsistent);

  int ordinal = 0;
  for (const GoalSpec& spec : kGoals) {
    ++ordinal;
    if (spec.id == 3 && !split) continue;
    SafetyGoal g;
    g.id = GoalId(spec.id);
    g.text = spec.text;
    g.modes = *spec.modes;
    g.ordinal = ordinal;
    const std::string key = prefix + "goal:" + g.id.to_string();
    b.tag(key + ":text", P::kPaperVerbatim);
    b.tag(key + ":modes", P::kPaperVerbatim);
    b.tag(key + ":order", P::kPaperVerbatim);
    switch (spec.id) {
      case 3: g.asil = AsilLevel::D; break;
      case 7: g.asil = AsilLevel::A; break;
      case 12: g.asil = split ? AsilLevel::B : AsilLevel::D; break;
      case 13: g.asil = AsilLevel::QM; break;
      default: break;
    }
    if (g.asil) b.tag(key + ":asil", P::kPaperDerived);
    doc.goals.push_back(std::move(g));
  }

  std::vector<const EntrySpec*> specs;
  for (const EntrySpec& spec : kSharedEntries) specs.push_back(&spec);
  if (split) {
    specs.push_back(&kEntry37After);
    specs.push_back(&kEntry37a);
  } else {
    specs.push_back(&kEntry36);
    specs.push_back(&kEntry37Before);
  }
  for (const EntrySpec* spec : specs) {
    doc.entries.push_back(make_entry(item, *spec));
    const std::string key = prefix + "entry:" + spec->id;
    const std::string_view id = spec->id;
    const bool from_text = id == "37" || id == "37a";
    b.tag(key + ":classification", from_text ? P::kPaperDerived : P::kSyntheticConsistent);
    b.tag(key + ":texts", P::kSyntheticConsistent);
    b.tag(key + ":ratings", P::kSyntheticConsistent);
    b.tag(key + ":goal", from_text ? P::kPaperDerived : P::kSyntheticConsistent);
  }

  std::set<CandidateTriple> covered;
  for (const HazardEntry& e : doc.entries) covered.insert({e.malfunction.function, e.malfunction.guide_word, e.mode});
  for (const CandidateTriple& t : enumerate_candidates(item)) {
    if (covered.count(t) != 0) continue;
    doc.waivers.push_back({t.function, t.guide_word, t.mode, waiver_rationale(t)});
    b.tag(prefix + "waiver:" + t.to_string(),
          t.function == "right_lane_driving" ? P::kPaperDerived : P::kSyntheticConsistent);
  }
  normalize(doc);
  return doc;
}

}  // namespace

std::string_view to_string(Provenance provenance) noexcept {
  switch (provenance) {
    case Provenance::kPaperVerbatim: return "paper-verbatim";
    case Provenance::kPaperDerived: return "paper-derived";
    case Provenance::kSyntheticConsistent: return "synthetic-consistent";
  }
  return "synthetic-consistent";
}

std::optional<Provenance> CorpusManifest::find(std::string_view key) const noexcept {
  for (const ManifestEntry& e : entries) {
    if (e.key == key) return e.provenance;
  }
  return std::nullopt;
}

Corpus load_corpus() {
  Builder builder;
  ItemDefinition item = build_item(builder);
  std::vector<HaraDocument> revisions;
  revisions.push_back(build_revision(builder, item, 5));
  revisions.push_back(build_revision(builder, item, 6));
  return Corpus{std::move(item), RevisionHistory(std::move(revisions)), builder.take_manifest()};
}

}  // namespace haraforge
