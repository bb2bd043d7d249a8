// mwcheck: batch verification front-end.
//
// Exit status: 0 when every case passes, 1 when any case fails,
// 2 for malformed jobs or usage errors, 3 for I/O errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mwc/suites.hpp"

namespace {

struct Options {
  std::string job_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::string out;
  bool no_timing = false;
};

std::string read_job(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read job file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path default_out(const mwc::Job& job, const std::string& format) {
  const char* dir = std::getenv("MWCHECK_REPORT_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  std::ostringstream name;
  name << job.suite << "-p" << job.p << "-N" << job.N << "-seed" << job.seed << (format == "json" ? ".json" : ".txt");
  return std::filesystem::path(dir) / name.str();
}

int execute(const Options& opt, const std::string& forced_suite) {
  mwc::Job job;
  try {
    mwc::json doc;
    try {
      doc = mwc::json::parse(read_job(opt.job_path));
    } catch (const mwc::json::exception& e) {
      throw mwc::Error(mwc::ErrorKind::JobParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!forced_suite.empty() && doc.is_object()) doc["suite"] = forced_suite;
    if (opt.seed && doc.is_object()) doc["seed"] = *opt.seed;
    job = mwc::parse_job(doc);
  } catch (const mwc::Error& e) {
    std::cerr << "mwcheck: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mwcheck: " << e.what() << "\n";
    return 3;
  }

  mwc::Report report;
  try {
    report = mwc::run(job);
  } catch (const mwc::Error& e) {
    std::cerr << "mwcheck: " << e.what() << "\n";
    return e.kind() == mwc::ErrorKind::JobParseError ? 2 : 3;
  }

  const auto format = opt.format == "text" ? mwc::Format::Text : mwc::Format::Json;
  const std::string bytes = mwc::emit(report, format, !opt.no_timing);
  std::filesystem::path target = opt.out.empty() ? default_out(job, opt.format) : std::filesystem::path(opt.out);
  if (target.empty()) {
    std::cout << bytes;
  } else {
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!(out << bytes)) {
      std::cerr << "mwcheck: cannot write " << target << "\n";
      return 3;
    }
    std::cerr << "mwcheck: " << report.passed() << " passed, " << report.failed() << " failed; report written to "
              << target.string() << "\n";
  }
  return report.ok() ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--job", opt.job_path, "job file (JSON), or - for stdin")->required();
  cmd->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--seed", opt.seed, "overrides the job seed");
  cmd->add_option("--out", opt.out, "report path (default: stdout, or $MWCHECK_REPORT_DIR)");
  cmd->add_flag("--no-timing", opt.no_timing, "omit wall-clock timing from the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monsky-Washnitzer / de Rham-Witt verification suites"};
  app.require_subcommand(1);
  Options opt;

  struct Sub {
    const char* name;
    const char* help;
    const char* suite;
  };
  const Sub subs[] = {
      {"run", "run the suite named in the job", ""},
      {"homotopy-check", "chain-homotopy certificate for a congruent pair", "homotopy"},
      {"tf-map", "comparison map s_f / t_f on given elements", "comparison"},
      {"overconv-profile", "degree growth of t_f slots", "overconvergence"},
      {"cohomology", "integral cohomology of a windowed de Rham complex", "cohomology"},
  };
  std::vector<std::pair<CLI::App*, std::string>> cmds;
  for (const auto& s : subs) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, opt);
    cmds.emplace_back(cmd, s.suite);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [cmd, suite] : cmds)
    if (cmd->parsed()) return execute(opt, suite);
  return 2;
}
