// pqposture: post-quantum posture of layered network communications.
//
// Exit codes: 0 success (for `analyze`: chain confidentiality is Q-Safe),
// 2 `analyze` finished but chain confidentiality is not Q-Safe, 1 error.

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pqposture/fixtures.hpp"
#include "pqposture/report.hpp"

namespace pq = pqposture;
namespace report = pqposture::report;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUnsafe = 2;

struct Options {
  std::string registry_file;
  std::string format = "table";
  std::string weights = "1,0,0";
  std::vector<std::string> scenarios;
  std::string registry_doc;
};

pq::Registry load_registry(const Options& o) {
  if (o.registry_file.empty()) return pq::Registry::builtin();
  return pq::Registry::load(pq::read_text_file(o.registry_file));
}

// A scenario argument is a file path when such a file exists, otherwise a
// fixture name or alias.
pq::ScenarioDoc load_scenario(const std::string& arg, const pq::Registry& reg) {
  if (std::filesystem::is_regular_file(arg)) return pq::parse_scenario(pq::read_text_file(arg), reg);
  if (auto doc = pq::fixtures::resolve_fixture_document(arg)) return pq::parse_scenario(*doc, reg);
  throw pq::Error("no scenario file or fixture named '" + arg + "'");
}

pq::RiskWeights parse_weights(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw pq::PlanError("bad weight '" + item + "'");
    }
  }
  if (parts.size() != 3) throw pq::PlanError("--weights takes three values: conf,auth,meta");
  pq::RiskWeights w{parts[0], parts[1], parts[2]};
  w.validate();
  return w;
}

report::Format format_of(const Options& o) {
  return o.format == "machine" ? report::Format::Machine : report::Format::Table;
}

int run(const std::string& command, const Options& o) {
  const auto reg = load_registry(o);
  const auto fmt = format_of(o);
  auto& out = std::cout;

  if (command == "registry-list") {
    report::render_registry(out, reg, fmt);
    return 0;
  }
  if (command == "registry-validate") {
    const auto loaded = pq::Registry::load(pq::read_text_file(o.registry_doc));
    out << o.registry_doc << ": ok (" << loaded.size() << " entries including built-ins)\n";
    return 0;
  }
  if (command == "fixtures-list") {
    report::render_fixtures(out, pq::fixtures::builtin_fixtures(reg), fmt);
    return 0;
  }

  const auto doc = load_scenario(o.scenarios.at(0), reg);
  if (command == "analyze") {
    const auto r = pq::compose(doc.chain);
    report::render_analyze(out, doc, r, fmt);
    return r.chain_conf.is_safe() ? 0 : kExitUnsafe;
  }
  if (command == "peel") {
    report::render_peel(out, doc, pq::compose(doc.chain), fmt);
    return 0;
  }
  if (command == "segments") {
    report::render_segments(out, doc, fmt);
    return 0;
  }
  if (command == "endpoints") {
    report::render_endpoints(out, doc, fmt);
    return 0;
  }
  if (command == "plan") {
    const auto w = parse_weights(o.weights);
    report::render_plan(out, doc, w, pq::minimal_conf_migrations(doc.chain),
                        pq::minimal_auth_migrations(doc.chain), pq::plan_ordering(doc.chain, w), fmt);
    return 0;
  }
  if (command == "compare") {
    const auto other = load_scenario(o.scenarios.at(1), reg);
    const auto r = pq::detect_inversion({doc.name, &doc.chain, doc.classical_rank},
                                        {other.name, &other.chain, other.classical_rank});
    report::render_compare(out, r, fmt);
    return 0;
  }
  throw pq::Error("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-quantum security posture of layered network communications"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string command;
  app.add_option("--registry", o.registry_file, "JSON file with extra algorithm entries")
      ->check(CLI::ExistingFile);
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "machine"}))
      ->capture_default_str();

  auto one_scenario = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", o.scenarios, "Scenario file, fixture name or alias")->required()->expected(1);
    sub->callback([&command, name] { command = name; });
    return sub;
  };
  one_scenario("analyze", "Per-layer statuses and chain verdicts");
  one_scenario("peel", "HNDL peel trace, one row per depth");
  one_scenario("segments", "Posture of each physical segment");
  one_scenario("endpoints", "What each node sees classically and under HNDL");
  auto* plan = one_scenario("plan", "Minimal migration sets and upgrade ordering");
  plan->add_option("--weights", o.weights, "Risk weights conf,auth,meta summing to 1")->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "Classical vs quantum comparison of two scenarios");
  cmp->add_option("scenarios", o.scenarios, "Baseline and candidate scenarios")->required()->expected(2);
  cmp->callback([&] { command = "compare"; });

  auto* registry = app.add_subcommand("registry", "Algorithm registry");
  registry->require_subcommand(1);
  registry->add_subcommand("list", "Print all entries")->callback([&] { command = "registry-list"; });
  auto* validate = registry->add_subcommand("validate", "Check a registry file");
  validate->add_option("file", o.registry_doc)->required()->check(CLI::ExistingFile);
  validate->callback([&] { command = "registry-validate"; });

  auto* fixtures = app.add_subcommand("fixtures", "Bundled scenarios");
  fixtures->require_subcommand(1);
  fixtures->add_subcommand("list", "Print bundled scenarios")->callback([&] { command = "fixtures-list"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    return run(command, o);
  } catch (const std::exception& e) {
    std::cerr << "pqposture: " << e.what() << '\n';
    return kExitError;
  }
}
