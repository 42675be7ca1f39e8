#include <charconv>

#include "haraforge/dsl.hpp"
#include "lexer.hpp"

namespace haraforge {

namespace {

using detail::quote;

std::string format_number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::string identifier_list(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  return out + "]";
}

// Appends `block` to `out`, separated from earlier blocks by one blank line.
void append_block(std::string& out, const std::string& block) {
  if (block.empty()) return;
  if (!out.empty()) out += '\n';
  out += block;
}

}  // namespace

std::string serialize(const ItemDefinition& item) {
  std::string out = "item " + quote(item.name) + "\n";

  std::string block;
  for (const ElementNode& e : item.elements) block += "element " + e.id + (e.primary ? " primary\n" : "\n");
  append_block(out, block);

  block.clear();
  for (const Connection& c : item.connections) block += "connect " + c.a + " " + c.b + "\n";
  append_block(out, block);

  block.clear();
  for (const OperatingMode& m : item.modes) {
    block += "mode " + m.id + " " + quote(m.name) + (m.automated ? " automated\n" : "\n");
  }
  append_block(out, block);

  block.clear();
  for (const FunctionDef& f : item.functions) {
    block += "function " + f.id + " " + quote(f.description) + " modes " + identifier_list(f.modes) + "\n";
  }
  append_block(out, block);

  block.clear();
  for (const GuideWord& g : item.guide_words) block += "guideword " + g.id + " " + quote(g.interpretation) + "\n";
  append_block(out, block);

  block.clear();
  for (const OperationalScenario& s : item.scenarios) {
    block += "scenario " + s.id + " " + quote(s.description) + "\n";
    block += "  exposure " + s.exposure.to_string() + "\n";
    block += "  rationale " + quote(s.exposure_rationale) + "\n";
  }
  append_block(out, block);

  block.clear();
  for (const Parameter& p : item.parameters) {
    block += "param " + p.name + " " + format_number(p.value) + " " + quote(p.unit) + "\n";
  }
  append_block(out, block);
  return out;
}

std::string serialize(const HaraDocument& input) {
  HaraDocument doc = input;
  normalize(doc);

  std::string out = "hara " + quote(doc.title) + " revision " + std::to_string(doc.revision) + " kind " +
                    std::string(to_string(doc.kind));
  if (doc.based_on) out += " based-on " + std::to_string(*doc.based_on);
  out += "\n";

  std::string block;
  for (const SafetyGoal& g : doc.goals) {
    block += "goal " + g.id.to_string() + " " + quote(g.text) + " modes " + identifier_list(g.modes) + "\n";
    if (g.asil) block += "  asil " + std::string(to_string(*g.asil)) + "\n";
    block += "  order " + std::to_string(g.ordinal) + "\n";
  }
  append_block(out, block);

  for (const HazardEntry& e : doc.entries) {
    block = "entry " + e.id.to_string() + "\n";
    block += "  mode " + e.mode + "\n";
    block += "  function " + e.malfunction.function + "\n";
    block += "  guideword " + e.malfunction.guide_word + "\n";
    block += "  malfunction " + quote(e.malfunction.description) + "\n";
    block += "  scenario " + e.scenario + "\n";
    block += "  consequence " + quote(e.consequence) + "\n";
    block += "  " + e.severity.level.to_string() + " " + quote(e.severity.rationale) + "\n";
    block += "  " + e.exposure.level.to_string() + " " + quote(e.exposure.rationale) + "\n";
    block += "  " + e.controllability.level.to_string() + " " + quote(e.controllability.rationale) + "\n";
    block += "  asil " + std::string(to_string(e.asil)) + "\n";
    if (e.goal) block += "  goal " + e.goal->to_string() + "\n";
    append_block(out, block);
  }

  block.clear();
  for (const Waiver& w : doc.waivers) {
    block += "waive function " + w.function + " guideword " + w.guide_word + " mode " + w.mode + "\n";
    block += "  rationale " + quote(w.rationale) + "\n";
  }
  append_block(out, block);
  return out;
}

}  // namespace haraforge
