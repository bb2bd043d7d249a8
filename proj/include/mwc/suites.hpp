#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwc/serialize.hpp"

namespace mwc {

inline constexpr int kReportSchema = 1;

/// A verification job. Suite-specific fields stay in `payload`.
struct Job {
  std::string suite;
  std::int64_t p = 3;
  int N = 3;
  std::uint64_t seed = 0;
  int cases = -1;  // -1: suite default
  json payload;    // the whole job object as given

  json normalized() const;
};

const std::vector<std::string>& suite_names();

/// Validates a job document; JobParseError on malformed or unknown input.
Job parse_job(const json& j);
Job parse_job_text(const std::string& text);

struct SuiteReport {
  std::string suite;
  json body;  // deterministic part
  int passed = 0;
  int failed = 0;
  double wall_ms = 0;
};

struct Report {
  Job job;
  std::vector<SuiteReport> suites;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }
};

Report run(const Job& job);

/// Report without timing: identical for identical jobs.
json report_body(const Report& r);
json report_json(const Report& r, bool with_timing = true);

enum class Format { Json, Text };
std::string emit(const Report& r, Format format, bool with_timing = true);

}  // namespace mwc
