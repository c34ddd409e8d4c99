#include "csmatch.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <utility>

#include "commands.hpp"
#include "errors.hpp"
#include "io.hpp"

struct sm_instance {
  csm::ParsedInstance pi;
};

struct sm_report {
  csm::ReportDocument doc;
};

namespace {

thread_local std::string g_last_error;

// Runs a command body, mapping the exception taxonomy onto status codes.
template <typename Fn>
sm_status guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const csm::ParseError& e) {
    g_last_error = e.what();
    return SM_BAD_INPUT;
  } catch (const csm::PreconditionError& e) {
    g_last_error = e.what();
    return SM_BAD_INPUT;
  } catch (const csm::InternalError& e) {
    g_last_error = e.what();
    return SM_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SM_INTERNAL;
  }
}

sm_status finish(csm::ReportDocument doc, sm_report** out) {
  auto* report = new sm_report{std::move(doc)};
  *out = report;
  return report->doc.verdict_pass ? SM_OK : SM_VERDICT_FAIL;
}

// C-owned copy of a string (released by sm_string_free).
char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

bool check_args(bool ok, const char* message) {
  if (!ok) g_last_error = message;
  return ok;
}

}  // namespace

extern "C" {

const char* sm_version(void) { return "1.0.0"; }

const char* sm_last_error(void) { return g_last_error.c_str(); }

sm_status sm_instance_from_json(const char* json_text, sm_instance** out) {
  if (!check_args(json_text != nullptr && out != nullptr,
                  "sm_instance_from_json: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status {
    auto* handle = new sm_instance{csm::parse_instance_text(json_text)};
    *out = handle;
    return SM_OK;
  });
}

void sm_instance_free(sm_instance* inst) { delete inst; }

char* sm_instance_to_json(const sm_instance* inst) {
  if (!check_args(inst != nullptr, "sm_instance_to_json: null instance")) return nullptr;
  try {
    g_last_error.clear();
    return copy_out(csm::to_text(csm::instance_to_json(inst->pi)));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

sm_status sm_match(const sm_instance* inst, int validate, int capture_trace, int with_timings,
                   uint64_t seed, sm_report** out) {
  if (!check_args(inst != nullptr && out != nullptr, "sm_match: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status {
    csm::MatchOptions opt;
    opt.validate = validate != 0;
    opt.trace = capture_trace != 0;
    opt.timings = with_timings != 0;
    opt.seed = seed;
    return finish(csm::cmd_match(inst->pi, opt), out);
  });
}

sm_status sm_check_rule(const sm_instance* inst, uint64_t seed, sm_report** out) {
  if (!check_args(inst != nullptr && out != nullptr, "sm_check_rule: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status { return finish(csm::cmd_check_rule(inst->pi, seed), out); });
}

sm_status sm_verify(const sm_instance* inst, const char* matching_json, sm_report** out) {
  if (!check_args(inst != nullptr && matching_json != nullptr && out != nullptr,
                  "sm_verify: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status {
    csm::Matching m = csm::parse_matching_text(inst->pi.inst, matching_json);
    return finish(csm::cmd_verify(inst->pi, m), out);
  });
}

sm_status sm_enumerate_stable(const sm_instance* inst, sm_report** out) {
  if (!check_args(inst != nullptr && out != nullptr, "sm_enumerate_stable: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status { return finish(csm::cmd_enumerate_stable(inst->pi), out); });
}

sm_status sm_audit_sp(const sm_instance* inst, int max_group, sm_report** out) {
  if (!check_args(inst != nullptr && out != nullptr, "sm_audit_sp: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded(
      [&]() -> sm_status { return finish(csm::cmd_audit_sp(inst->pi, max_group), out); });
}

sm_status sm_repro(const char* name, sm_report** out) {
  if (!check_args(name != nullptr && out != nullptr, "sm_repro: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status { return finish(csm::cmd_repro(name), out); });
}

sm_status sm_bench(const int* sizes, size_t n_sizes, uint64_t seed, sm_report** out) {
  if (!check_args(sizes != nullptr && n_sizes > 0 && out != nullptr, "sm_bench: null argument"))
    return SM_BAD_INPUT;
  *out = nullptr;
  return guarded([&]() -> sm_status {
    std::vector<int> list(sizes, sizes + n_sizes);
    return finish(csm::cmd_bench(list, seed), out);
  });
}

int sm_report_verdict(const sm_report* report) {
  return report != nullptr && report->doc.verdict_pass ? 1 : 0;
}

char* sm_report_json(const sm_report* report) {
  if (!check_args(report != nullptr, "sm_report_json: null report")) return nullptr;
  try {
    g_last_error.clear();
    return copy_out(csm::to_text(csm::report_to_json(report->doc)));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void sm_report_free(sm_report* report) { delete report; }

void sm_string_free(char* text) { std::free(text); }

}  // extern "C"
