#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "haraforge/asil.hpp"
#include "haraforge/corpus.hpp"
#include "haraforge/dsl.hpp"
#include "haraforge/report.hpp"
#include "haraforge/revision_diff.hpp"
#include "haraforge/scenario_generator.hpp"
#include "haraforge/validator.hpp"

namespace haraforge::cli {

namespace {

namespace fs = std::filesystem;

// Reported after the message has been written to the error stream.
struct Failure {};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err, const Options& options) : out_(out), err_(err), options_(options) {}

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) fail("error while reading '" + path + "'");
    return buffer.str();
  }

  void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) fail("cannot write '" + path.string() + "'");
  }

  template <class T>
  T take(ParseResult<T> result) {
    for (const ParseDiagnostic& d : result.diagnostics) err_ << d.to_string() << '\n';
    if (!result.ok()) throw Failure{};
    return std::move(*result.value);
  }

  ItemDefinition load_item(const std::string& path) { return take(parse_item_file(read_file(path), path)); }

  HaraDocument load_hara(const std::string& path, const ItemDefinition& item) {
    return take(parse_hara_file(read_file(path), item, path));
  }

  RevisionHistory load_history(const std::string& dir, const ItemDefinition& item) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) fail("history directory '" + dir + "' does not exist");
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (entry.path().extension() == ".hara") paths.push_back(entry.path().string());
    }
    if (ec) fail("cannot list '" + dir + "': " + ec.message());
    std::sort(paths.begin(), paths.end());
    std::vector<HaraDocument> revisions;
    for (const std::string& p : paths) revisions.push_back(load_hara(p, item));
    std::stable_sort(revisions.begin(), revisions.end(),
                     [](const HaraDocument& a, const HaraDocument& b) { return a.revision < b.revision; });
    try {
      return RevisionHistory(std::move(revisions));
    } catch (const Error& e) {
      fail(std::string("inconsistent history in '") + dir + "': " + e.what());
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    err_ << "haraforge: " << message << '\n';
    throw Failure{};
  }

  std::string paint(std::string_view text, const char* code) const {
    if (!options_.color) return std::string(text);
    return std::string("\x1b[") + code + "m" + std::string(text) + "\x1b[0m";
  }

  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  const Options& options_;
};

struct ValidateArgs {
  std::string item, hara, history;
  bool strict = false;
  bool machine = false;
};

int cmd_validate(Session& s, const ValidateArgs& a) {
  const ItemDefinition item = s.load_item(a.item);
  const HaraDocument doc = s.load_hara(a.hara, item);
  std::optional<RevisionHistory> history;
  if (!a.history.empty()) history = s.load_history(a.history, item);

  std::vector<Finding> findings;
  try {
    findings = validate(item, doc, history ? &*history : nullptr);
  } catch (const Error& e) {
    s.fail(e.what());
  }

  for (const Finding& f : findings) {
    if (a.machine) {
      nlohmann::ordered_json record;
      record["rule"] = to_string(f.rule);
      record["location"] = f.location.to_string();
      record["severity"] = to_string(f.severity);
      record["message"] = f.message;
      s.out() << record.dump() << '\n';
    } else {
      const char* color = f.severity == FindingSeverity::kError ? "31" : "33";
      s.out() << s.paint(to_string(f.rule), color) << '\t' << f.location.to_string() << '\t' << f.message << '\n';
    }
  }
  if (has_errors(findings)) return kExitFindings;
  if (a.strict && !findings.empty()) return kExitFindings;
  return kExitOk;
}

int cmd_generate(Session& s, const std::string& item_path, const std::string& uncovered) {
  const ItemDefinition item = s.load_item(item_path);
  if (!uncovered.empty()) {
    const HaraDocument doc = s.load_hara(uncovered, item);
    for (const CoverageFinding& gap : coverage_report(item, doc)) s.out() << gap.triple.to_string() << '\n';
    return kExitOk;
  }
  try {
    for (const CandidateTriple& t : enumerate_candidates(item)) s.out() << t.to_string() << '\n';
  } catch (const Error& e) {
    s.fail(e.what());
  }
  return kExitOk;
}

int cmd_asil(Session& s, const std::vector<std::string>& words) {
  std::vector<std::string> classes;
  for (const std::string& w : words) {
    std::istringstream split(w);
    for (std::string part; split >> part;) classes.push_back(part);
  }
  if (classes.size() != 3) s.fail("usage: haraforge asil S<n> E<n> C<n>");
  const auto sev = SeverityClass::parse(classes[0]);
  const auto exp = ExposureClass::parse(classes[1]);
  const auto ctl = ControllabilityClass::parse(classes[2]);
  if (!sev) s.fail("invalid severity class '" + classes[0] + "' (expected S0..S3)");
  if (!exp) s.fail("invalid exposure class '" + classes[1] + "' (expected E0..E4)");
  if (!ctl) s.fail("invalid controllability class '" + classes[2] + "' (expected C0..C3)");
  s.out() << display_name(determine_asil(*sev, *exp, *ctl)) << '\n';
  return kExitOk;
}

int cmd_diff(Session& s, const std::string& base_path, const std::string& next_path, const std::string& item_path,
             const std::string& history_dir) {
  const ItemDefinition item = s.load_item(item_path);
  const HaraDocument base = s.load_hara(base_path, item);
  const HaraDocument next = s.load_hara(next_path, item);
  DiffReport report;
  if (history_dir.empty()) {
    report = diff(base, next);
  } else {
    report = diff(base, next, s.load_history(history_dir, item));
  }
  s.out() << render_markdown(report);
  return classify_refinement(report) == RefinementClass::kInvalid ? kExitFindings : kExitOk;
}

int cmd_report(Session& s, const std::string& item_path, const std::string& hara_path, const std::string& format) {
  const ItemDefinition item = s.load_item(item_path);
  const HaraDocument doc = s.load_hara(hara_path, item);
  if (format == "csv") {
    s.out() << write_csv(doc, item);
    return kExitOk;
  }
  const SafetyGoalTable table = safety_goal_table(item, doc);
  for (const std::string& w : table.warnings) s.err() << "haraforge: warning: " << w << '\n';
  s.out() << render_markdown(table) << '\n' << render_markdown(asil_histogram(doc));
  return kExitOk;
}

int cmd_demo(Session& s, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) s.fail("cannot create '" + dir + "': " + ec.message());
  const Corpus corpus = load_corpus();
  const fs::path root(dir);
  s.write_file(root / "afas.item", serialize(corpus.item));
  s.write_file(root / "afas-r5.hara", serialize(corpus.previous()));
  s.write_file(root / "afas-r6.hara", serialize(corpus.latest()));
  s.write_file(root / "afas-r6.csv", write_csv(corpus.latest(), corpus.item));
  for (const char* name : {"afas.item", "afas-r5.hara", "afas-r6.hara", "afas-r6.csv"}) {
    s.out() << (root / name).string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Options& options) {
  CLI::App app{"Hazard analysis and risk assessment workbench", "haraforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  ValidateArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a HARA revision against rules R1..R10");
  validate->add_option("item", validate_args.item, "Item definition (.item)")->required();
  validate->add_option("hara", validate_args.hara, "HARA revision (.hara)")->required();
  validate->add_option("--history", validate_args.history, "Directory with all .hara revisions");
  validate->add_flag("--strict", validate_args.strict, "Exit 1 on warnings too");
  validate->add_flag("--machine", validate_args.machine, "One JSON object per finding");

  std::string generate_item, uncovered;
  auto* generate = app.add_subcommand("generate", "List candidate function/guide word/mode triples");
  generate->add_option("item", generate_item, "Item definition (.item)")->required();
  generate->add_option("--uncovered", uncovered, "Only triples without entry or waiver in this HARA");

  std::vector<std::string> classes;
  auto* asil = app.add_subcommand("asil", "ASIL for severity, exposure and controllability classes");
  asil->add_option("classes", classes, "S<n> E<n> C<n>")->required();

  std::string base_path, next_path, diff_item, diff_history;
  auto* diff_cmd = app.add_subcommand("diff", "Compare two revisions and classify the refinement");
  diff_cmd->add_option("base", base_path, "Base revision (.hara)")->required();
  diff_cmd->add_option("next", next_path, "Next revision (.hara)")->required();
  diff_cmd->add_option("item", diff_item, "Item definition (.item)")->required();
  diff_cmd->add_option("--history", diff_history, "Directory with all .hara revisions, for id reuse");

  std::string report_item, report_hara, format = "md";
  auto* report = app.add_subcommand("report", "Safety goal table and ASIL histogram, or CSV export");
  report->add_option("item", report_item, "Item definition (.item)")->required();
  report->add_option("hara", report_hara, "HARA revision (.hara)")->required();
  report->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));

  std::string demo_dir;
  auto* demo = app.add_subcommand("demo", "Write the bundled AFA Logic corpus");
  demo->add_option("outdir", demo_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "haraforge: " << e.what() << '\n';
    err << "Run 'haraforge --help' for usage.\n";
    return kExitFailure;
  }

  Session session(out, err, options);
  try {
    if (*validate) return cmd_validate(session, validate_args);
    if (*generate) return cmd_generate(session, generate_item, uncovered);
    if (*asil) return cmd_asil(session, classes);
    if (*diff_cmd) return cmd_diff(session, base_path, next_path, diff_item, diff_history);
    if (*report) return cmd_report(session, report_item, report_hara, format);
    if (*demo) return cmd_demo(session, demo_dir);
  } catch (const Failure&) {
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace haraforge::cli
