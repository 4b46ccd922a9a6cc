#pragma once

// Suite orchestration behind the `verify` tool.

#include "milnor_forge/properties.hpp"
#include "milnor_forge/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace milnor_forge {

enum class Format { text, json };

struct RunConfig {
  std::vector<unsigned> primes{2, 3, 5, 7};
  // Any of matrices, milnor, invariants, ss, properties; "all" expands to every suite.
  std::set<std::string> suites{"all"};
  // Restricts the ss suite to one of bg1, bpu, iota.
  std::optional<std::string> scenario;
  bool sweep_scalars = false;
  unsigned matrix_cap = 13;
  unsigned dickson_cap = 7;
  Format format = Format::text;
  std::uint64_t seed = properties::default_seed;
  std::size_t cases = properties::default_cases;
  // 0 means MILNOR_FORGE_THREADS or hardware concurrency.
  unsigned threads = 0;
};

const std::vector<std::string> &suite_names();

// Runs the configured suites; skipped (prime, suite) pairs are reported on
// warn. Records come back in canonical order.
ReportList collect(const RunConfig &config, std::ostream &warn);

// collect, write the report, return 0 when nothing failed and 1 otherwise.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

// Command line front end; 2 on usage errors (including non-prime input).
int main_entry(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace milnor_forge
