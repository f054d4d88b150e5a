// fsig: F-signature, cover and bound reports from JSON ring specs.

#include "fsig/cli/commands.hpp"
#include "fsig/error.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Args {
  std::string spec;
  std::string out;
  std::string golden;
  unsigned e_max = 0;
  std::string backend;
  double budget = -1;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fsig::InvalidInput("cannot read spec file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw fsig::InvalidInput("cannot write " + path);
  out << text;
}

int run(const std::string& command, const Args& args) {
  using namespace fsig::cli;
  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    auto doc = parse_document_text(read_file(args.spec));
    if (args.e_max) doc.options.e_max = args.e_max;
    if (!args.backend.empty()) doc.options.backend = parse_backend(args.backend);
    if (args.budget >= 0) doc.options.time_budget_secs = args.budget;
    result = run_command(command, doc);
  } catch (const std::exception& e) {
    result.exit_code = exit_code_for(e);
    result.report = error_report(command, e, result.exit_code);
    std::cerr << "fsig " << command << ": " << e.what() << "\n";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string text = result.report.dump(2) + "\n";

  if (!args.out.empty()) {
    write_file(args.out, text);
    write_file(args.out + ".timing.json", json{{"command", command}, {"elapsed_seconds", elapsed}}.dump(2) + "\n");
  }
  if (args.json || (args.out.empty() && result.table.empty())) {
    std::cout << text;
  } else {
    std::cout << result.table;
  }

  if (!args.golden.empty() && result.exit_code == kExitOk) {
    const auto path = std::filesystem::path(args.golden) /
                      (std::filesystem::path(args.spec).stem().string() + "." + command + ".json");
    if (std::filesystem::exists(path)) {
      const auto expected = json::parse(read_file(path.string()));
      if (auto diff = report_difference(expected, result.report)) {
        std::cerr << "golden mismatch " << path.string() << ": " << *diff << "\n";
        return kExitVerification;
      }
    } else {
      std::filesystem::create_directories(args.golden);
      write_file(path.string(), text);
      std::cerr << "golden written " << path.string() << "\n";
    }
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"F-signature, cover and bound reports from JSON ring specs"};
  app.require_subcommand(1);
  Args args;
  for (const char* name : {"compute", "verify", "bounds", "chain", "purity"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--spec", args.spec, "JSON spec file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "write the JSON report here (timing goes to FILE.timing.json)");
    sub->add_option("--e-max", args.e_max, "largest e for sequences")->check(CLI::Range(1, 12));
    sub->add_option("--backend", args.backend, "auto, toric or sequence")->check(CLI::IsMember({"auto", "toric", "sequence"}));
    sub->add_option("--budget", args.budget, "time budget in seconds")->check(CLI::NonNegativeNumber);
    sub->add_option("--golden", args.golden, "compare against (or create) DIR/<spec>.<command>.json");
    sub->add_flag("--json", args.json, "print the JSON report instead of the table");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fsig::cli::kExitInput;
  }
  return run(app.get_subcommands().front()->get_name(), args);
}
