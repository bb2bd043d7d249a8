#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mwc/suites.hpp"
#include "test_util.hpp"

using namespace mwc;

namespace {

const json& suite_body(const json& report, const std::string& name) {
  for (const auto& s : report["suites"])
    if (s["suite"] == name) return s;
  FAIL("suite missing: " << name);
  static const json none;
  return none;
}

int count_prefix(const json& suite, const std::string& prefix, bool pass) {
  int n = 0;
  for (const auto& c : suite["cases"])
    if (c["id"].get<std::string>().rfind(prefix, 0) == 0 && c["pass"].get<bool>() == pass) ++n;
  return n;
}

}  // namespace

TEST_CASE("job parsing") {
  CHECK_THROWS_KIND(parse_job_text(R"({"suite": "nope"})"), ErrorKind::JobParseError);
  CHECK_THROWS_KIND(parse_job_text(R"({"suite": "homotopy", "N": 3})"), ErrorKind::JobParseError);
  CHECK_THROWS_KIND(parse_job_text(R"({"suite": "homotopy", "p": 4, "N": 3})"), ErrorKind::JobParseError);
  CHECK_THROWS_KIND(parse_job_text(R"({"suite": "homotopy", "p": 3, "N": 0})"), ErrorKind::JobParseError);
  CHECK_THROWS_KIND(parse_job_text(R"({"suite": "homotopy", "p": 3, "N": 3, "seed": -1})"), ErrorKind::JobParseError);
  CHECK_THROWS_KIND(parse_job_text("{not json"), ErrorKind::JobParseError);
  CHECK_THROWS_KIND(parse_job_text("[1, 2]"), ErrorKind::JobParseError);

  Job job = parse_job_text(R"({"suite": "cohomology", "p": 2, "N": 3, "geometry": "A1", "window": 8})");
  CHECK(job.suite == "cohomology");
  CHECK(job.p == 2);
  CHECK(job.N == 3);
  CHECK(job.seed == 0);
  CHECK(job.cases == -1);
  CHECK(job.normalized()["window"] == 8);

  CHECK_THROWS_KIND(run(parse_job_text(R"({"suite": "cohomology", "p": 2, "N": 3, "geometry": "K3"})")),
                    ErrorKind::JobParseError);
}

TEST_CASE("homotopy suite with 50 random cases") {
  Report r = run(parse_job_text(R"({"suite": "homotopy", "p": 3, "N": 4, "seed": 1, "cases": 50})"));
  json body = report_body(r);
  const json& s = suite_body(body, "homotopy");
  CHECK(count_prefix(s, "homotopy/random/", true) == 50);
  CHECK(r.failed() == 0);
  CHECK(r.ok());
  CHECK(s["precision"]["asserted"] == 4);
  CHECK(s["precision"]["working"] == 5);
}

TEST_CASE("cohomology suite on A1") {
  Report r = run(parse_job_text(R"({"suite": "cohomology", "p": 2, "N": 3, "geometry": "A1", "window": 8})"));
  CHECK(r.ok());
  json body = report_body(r);
  const json& s = suite_body(body, "cohomology");
  std::vector<long> orders(9, 0);
  for (const auto& b : s["blocks"])
    if (b["degree"] == 1) orders[b["multidegree"][0].get<int>()] = b["order"].get<long>();
  CHECK(std::vector<long>(orders.begin() + 1, orders.end()) == std::vector<long>{1, 2, 1, 4, 1, 2, 1, 8});

  // Default exactness test: T dT for p = 2 has order p with witness T^2.
  bool seen = false;
  for (const auto& c : s["cases"]) {
    if (c["id"] != "cohomology/exactness/0") continue;
    seen = true;
    CHECK(c["exact"] == false);
    CHECK(c["order_exponent"] == 1);
    CHECK(c["verified"] == true);
    CHECK(c["witness"]["terms"][0]["coefficient"] == "1*T^2");
  }
  CHECK(seen);

  std::string text = emit(r, Format::Text, false);
  CHECK(text.find("elementary divisors") != std::string::npos);
  CHECK(text.find("(8)") != std::string::npos);
}

TEST_CASE("explicit exactness tests") {
  Report r = run(parse_job_text(R"({"suite": "cohomology", "p": 3, "N": 3, "variables": ["x", "y"],
    "invertible_flags": [false, true], "window": 3,
    "tests": [{"terms": [{"indices": ["x"], "coefficient": "2*x"}]},
              {"terms": [{"indices": ["x", "y"], "coefficient": "x^2*y^-1"}]}]})"));
  CHECK(r.ok());
  const json body = report_body(r);
  const json& s = suite_body(body, "cohomology");
  int tests = 0;
  for (const auto& c : s["cases"])
    if (c["id"].get<std::string>().rfind("cohomology/exactness/", 0) == 0) {
      ++tests;
      CHECK(c["verified"] == true);
    }
  CHECK(tests == 2);
  CHECK(s["cases"][2]["exact"] == true);
}

TEST_CASE("empty report") {
  Report r{parse_job_text(R"({"suite": "all", "p": 2, "N": 1})"), {}};
  json j = json::parse(emit(r, Format::Json));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["suites"].empty());
  CHECK(j["passed"] == 0);
  CHECK(j["failed"] == 0);
  CHECK(j["status"] == "pass");
  CHECK(emit(r, Format::Text).find("(no suites)") != std::string::npos);
}

TEST_CASE("emission is stable") {
  Report r = run(parse_job_text(R"({"suite": "witt-laws", "p": 2, "N": 2, "cases": 5})"));
  CHECK(emit(r, Format::Json) == emit(r, Format::Json));
  CHECK(emit(r, Format::Text) == emit(r, Format::Text));
  json j = report_json(r);
  CHECK(j.contains("timing_ms"));
  CHECK(!report_body(r).contains("timing_ms"));
}

TEST_CASE("reports are determined by the job") {
  for (const char* suite : {"witt-laws", "homotopy", "comparison", "functoriality", "cohomology", "overconvergence"}) {
    json job = {{"suite", suite}, {"p", 3}, {"N", 2}, {"seed", 11}, {"cases", 6}};
    const std::string a = emit(run(parse_job(job)), Format::Json, false);
    const std::string b = emit(run(parse_job(job)), Format::Json, false);
    CHECK_MESSAGE(a == b, suite);
  }
  json j1 = {{"suite", "homotopy"}, {"p", 3}, {"N", 2}, {"seed", 1}, {"cases", 6}};
  json j2 = j1;
  j2["seed"] = 2;
  CHECK(report_body(run(parse_job(j1)))["suites"] != report_body(run(parse_job(j2)))["suites"]);
}

TEST_CASE("failures carry counterexamples") {
  Report r = run(parse_job_text(R"({"suite": "homotopy", "p": 3, "N": 3, "generators": ["x"],
    "psi1": ["x^3"], "psi2": ["x^3+x"], "forms": []})"));
  CHECK(!r.ok());
  CHECK(r.failed() == 1);
  json body = report_body(r);
  CHECK(body["status"] == "fail");
  const json& s = suite_body(body, "homotopy");
  bool found = false;
  for (const auto& c : s["cases"])
    if (c["id"] == "homotopy/certificate") {
      found = true;
      CHECK(c["pass"] == false);
      CHECK(c["error"] == "NotCongruentModP");
      CHECK(c["message"].get<std::string>().find("1*x+1*x^3") != std::string::npos);
    }
  CHECK(found);
  CHECK(emit(r, Format::Text).find("FAIL  homotopy/certificate") != std::string::npos);

  Report steep = run(parse_job_text(R"({"suite": "overconvergence", "p": 3, "N": 3, "n": 2,
    "lift": ["x^3+3*x^4"], "elements": ["x"]})"));
  CHECK(steep.failed() == 1);
}

TEST_CASE("every suite passes at small parameters") {
  for (std::int64_t p : {2, 3, 5}) {
    Report r = run(parse_job(json{{"suite", "all"}, {"p", p}, {"N", 2}, {"seed", 3}, {"cases", 8}}));
    CHECK(r.suites.size() == 6);
    CHECK_MESSAGE(r.ok(), emit(r, Format::Text, false));
  }
}

TEST_CASE("explicit comparison and profile jobs") {
  Report tf = run(parse_job_text(R"({"suite": "comparison", "p": 3, "N": 3, "n": 3, "generators": ["x"],
    "lift": ["x^3+3*x"], "elements": ["x", "x^2+1"]})"));
  CHECK(tf.ok());
  const json body = report_body(tf);
  const json& s = suite_body(body, "comparison");
  const json& elems = s["cases"].back()["elements"];
  REQUIRE(elems.size() == 2);
  CHECK(elems[0]["s_f"]["slots"][1] == "1*x");
  CHECK(elems[0]["t_f"]["ledger"].size() == 3);

  Report prof = run(parse_job_text(R"({"suite": "overconvergence", "p": 2, "N": 2, "n": 4,
    "elements": ["x^3+x"]})"));
  CHECK(prof.ok());
}
