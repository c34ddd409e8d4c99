// Command-line front end. Talks to the matching core exclusively through the
// C API in csmatch.h; every command prints one report document to stdout.
// Exit codes: 0 success, 1 failed verdict, 2 usage/parse error, 3 internal
// contract failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csmatch.h"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

int fail_current(sm_status status) {
  std::cerr << "error: " << sm_last_error() << "\n";
  return static_cast<int>(status);
}

// Prints the report to stdout (and optionally a file), frees it, and maps
// the status to the process exit code.
int emit_report(sm_status status, sm_report* report, const std::string& output_path) {
  if (report == nullptr) return fail_current(status);
  char* json = sm_report_json(report);
  if (json == nullptr) {
    sm_report_free(report);
    return fail_current(SM_INTERNAL);
  }
  std::fputs(json, stdout);
  int code = static_cast<int>(status);
  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (out) {
      out << json;
    } else {
      std::cerr << "error: cannot write report to '" << output_path << "'\n";
      code = static_cast<int>(SM_BAD_INPUT);
    }
  }
  sm_string_free(json);
  sm_report_free(report);
  return code;
}

// Loads the instance file and parses it through the C API; returns nullptr
// (with exit code in `code`) on failure.
sm_instance* load_instance(const std::string& path, int& code) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read instance file '" << path << "'\n";
    code = static_cast<int>(SM_BAD_INPUT);
    return nullptr;
  }
  sm_instance* inst = nullptr;
  sm_status status = sm_instance_from_json(text.c_str(), &inst);
  if (status != SM_OK) {
    code = fail_current(status);
    return nullptr;
  }
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled school choice: stable matching under "
               "assignment-dependent priorities"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string output_path;
  app.add_option("--seed", seed, "Seed for any randomized audit or generation");
  app.add_option("--output", output_path, "Also write the report to this file");

  std::string match_file;
  bool trace = false, timings = false, no_validate = false;
  CLI::App* match = app.add_subcommand("match", "Run the mechanism on an instance file");
  match->add_option("file", match_file, "Instance document")->required();
  match->add_flag("--trace", trace, "Include the round-by-round application log");
  match->add_flag("--timings", timings, "Include wall-clock timings (non-deterministic)");
  match->add_flag("--no-validate", no_validate, "Skip the structural axiom audit");

  std::string check_file;
  CLI::App* check = app.add_subcommand("check-rule", "Audit priority rules for the structural axioms");
  check->add_option("file", check_file, "Instance document")->required();

  std::string verify_file, verify_matching;
  CLI::App* verify = app.add_subcommand("verify", "Check a matching document for stability");
  verify->add_option("file", verify_file, "Instance document")->required();
  verify->add_option("matching", verify_matching, "Matching document")->required();

  std::string enumerate_file;
  CLI::App* enumerate =
      app.add_subcommand("enumerate-stable", "List every stable matching (desk scale)");
  enumerate->add_option("file", enumerate_file, "Instance document")->required();

  std::string audit_file;
  int max_group = 2;
  CLI::App* audit = app.add_subcommand("audit-sp", "Exhaustive misreport audit");
  audit->add_option("file", audit_file, "Instance document")->required();
  audit->add_option("--group", max_group, "Largest coalition size to audit (1 or 2)")
      ->check(CLI::Range(1, 2));

  std::string repro_name;
  CLI::App* repro = app.add_subcommand("repro", "Run a built-in pinned scenario");
  repro->add_option("name", repro_name, "example1, example2, example3, or appendixE")
      ->required();

  std::vector<int> sizes = {20, 40, 80};
  CLI::App* bench = app.add_subcommand("bench", "Time the mechanism at growing sizes");
  bench->add_option("--sizes", sizes, "Student counts to time")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(SM_BAD_INPUT);
  }

  sm_report* report = nullptr;
  if (app.got_subcommand(repro)) {
    sm_status status = sm_repro(repro_name.c_str(), &report);
    return emit_report(status, report, output_path);
  }
  if (app.got_subcommand(bench)) {
    sm_status status = sm_bench(sizes.data(), sizes.size(), seed, &report);
    return emit_report(status, report, output_path);
  }

  std::string instance_path;
  if (app.got_subcommand(match)) instance_path = match_file;
  if (app.got_subcommand(check)) instance_path = check_file;
  if (app.got_subcommand(verify)) instance_path = verify_file;
  if (app.got_subcommand(enumerate)) instance_path = enumerate_file;
  if (app.got_subcommand(audit)) instance_path = audit_file;

  int code = 0;
  sm_instance* inst = load_instance(instance_path, code);
  if (inst == nullptr) return code;

  sm_status status = SM_INTERNAL;
  if (app.got_subcommand(match)) {
    status = sm_match(inst, no_validate ? 0 : 1, trace ? 1 : 0, timings ? 1 : 0, seed, &report);
  } else if (app.got_subcommand(check)) {
    status = sm_check_rule(inst, seed, &report);
  } else if (app.got_subcommand(verify)) {
    std::string matching_text;
    if (!read_file(verify_matching, matching_text)) {
      std::cerr << "error: cannot read matching file '" << verify_matching << "'\n";
      sm_instance_free(inst);
      return static_cast<int>(SM_BAD_INPUT);
    }
    status = sm_verify(inst, matching_text.c_str(), &report);
  } else if (app.got_subcommand(enumerate)) {
    status = sm_enumerate_stable(inst, &report);
  } else if (app.got_subcommand(audit)) {
    status = sm_audit_sp(inst, max_group, &report);
  }

  int exit_code = emit_report(status, report, output_path);
  sm_instance_free(inst);
  return exit_code;
}
