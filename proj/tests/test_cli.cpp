#include "milnor_forge/properties.hpp"
#include "milnor_forge/report.hpp"
#include "milnor_forge/runner.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sstream>

using namespace milnor_forge;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "verify");
  std::vector<char *> argv;
  for (auto &a : args)
    argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> parse_lines(const std::string &s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    out.push_back(nlohmann::json::parse(line));
  return out;
}

std::size_t count(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

} // namespace

TEST_CASE("report formats") {
  CHECK(report_json({}).empty());
  const CheckReport r{"x.y", 3, Status::pass, "fine", 4};
  const ReportList one{r};
  CHECK(report_json(one) ==
        "{\"check_id\":\"x.y\",\"prime\":3,\"status\":\"pass\",\"details\":\"fine\","
        "\"elapsed_ms\":4}\n");
  CHECK(count(report_text(one), "\n") == 2);
  CHECK(report_text(one).find("1 passed, 0 failed, 0 notes") != std::string::npos);
  CHECK_FALSE(any_failed(one));
  ReportList two{r, {"a.b", 5, Status::fail, "", 0}, {"a.b", 2, Status::note, "", 0}};
  CHECK(any_failed(two));
  sort_reports(two);
  CHECK(two[0].prime == 2);
  CHECK(two[1].prime == 5);
  CHECK(two[2].check_id == "x.y");
}

TEST_CASE("cli runs a single prime") {
  const auto r = run_cli({"all", "--primes", "3"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "  pass  ") >= 20);
  CHECK(count(r.out, "  fail  ") == 0);
}

TEST_CASE("cli scenario filter") {
  const auto r = run_cli({"ss", "--primes", "2", "--scenario", "bg1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(1,0,1,1,2)") != std::string::npos);
  CHECK(r.out.find("ss.bpu") == std::string::npos);
  CHECK(r.out.find("ss.iota") == std::string::npos);
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli({"matrices", "--primes", "4"}).code == 2);
  CHECK(run_cli({"matrices", "--primes", "3,x"}).code == 2);
  CHECK(run_cli({"matrices", "--primes", ""}).code == 0);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"ss", "--scenario", "bogus"}).code == 2);
  CHECK(run_cli({"ss", "--format", "xml"}).code == 2);
  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Exit codes") != std::string::npos);
}

TEST_CASE("caps skip with a warning") {
  const auto r = run_cli({"matrices", "--primes", "17"});
  CHECK(r.code == 0);
  CHECK(r.out.find("matrices.") == std::string::npos);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto m = run_cli({"milnor", "--primes", "11", "--dickson-cap", "5"});
  CHECK(m.code == 0);
  CHECK(m.err.find("Dickson") != std::string::npos);
}

TEST_CASE("json output is deterministic apart from timings") {
  const std::vector<std::string> args{"ss", "--primes", "3,5", "--format", "json"};
  auto a = parse_lines(run_cli(args).out), b = parse_lines(run_cli(args).out);
  REQUIRE(a.size() == b.size());
  REQUIRE_FALSE(a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].size() == 5);
    a[i].erase("elapsed_ms");
    b[i].erase("elapsed_ms");
    CHECK(a[i] == b[i]);
  }
}

TEST_CASE("thread count does not change results") {
  RunConfig c;
  c.primes = {2, 3};
  c.suites = {"invariants", "ss"};
  c.threads = 1;
  std::ostringstream warn;
  auto one = collect(c, warn);
  c.threads = 4;
  auto four = collect(c, warn);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].check_id == four[i].check_id);
    CHECK(one[i].prime == four[i].prime);
    CHECK(one[i].details == four[i].details);
  }
}

TEST_CASE("property suites") {
  for (unsigned p : {2u, 3u, 5u}) {
    const auto r = properties::run_properties(p);
    CHECK_FALSE(any_failed(r));
    CHECK(r.size() >= 12);
    const auto again = properties::run_properties(p);
    REQUIRE(again.size() == r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      CHECK(r[i].details == again[i].details);
  }
}
