#include "milnor_forge/runner.hpp"

#include "milnor_forge/cyclo.hpp"
#include "milnor_forge/errors.hpp"
#include "milnor_forge/ffla.hpp"
#include "milnor_forge/invariants.hpp"
#include "milnor_forge/milnor.hpp"
#include "milnor_forge/properties.hpp"
#include "milnor_forge/specseq.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

namespace milnor_forge {

namespace {

using Task = std::function<ReportList()>;

struct Job {
  std::string suite;
  unsigned prime;
  Task task;
};

void append(ReportList &out, ReportList more) {
  for (auto &r : more)
    out.push_back(std::move(r));
}

unsigned worker_count(const RunConfig &config, std::size_t jobs) {
  unsigned n = config.threads;
  if (n == 0) {
    if (const char *env = std::getenv("MILNOR_FORGE_THREADS")) {
      try {
        n = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception &) {
        n = 0;
      }
    }
  }
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

std::vector<Job> plan(const RunConfig &c, std::ostream &warn) {
  std::set<std::string> suites;
  for (const auto &s : c.suites) {
    if (s == "all")
      suites.insert(suite_names().begin(), suite_names().end());
    else
      suites.insert(s);
  }
  std::vector<Job> jobs;
  auto add = [&](const std::string &suite, unsigned p, Task t) {
    jobs.push_back({suite, p, std::move(t)});
  };
  for (const unsigned p : c.primes) {
    if (suites.count("matrices")) {
      if (p > c.matrix_cap) {
        warn << "warning: matrices suite skipped for p = " << p << " (cap " << c.matrix_cap
             << ")\n";
      } else if (p == 2) {
        add("matrices", p, [] {
          ReportList out = cyclo::verify_l2_generators();
          append(out, cyclo::verify_sl2_generation(2));
          return out;
        });
      } else {
        add("matrices", p, [p] {
          ReportList out = cyclo::verify_su_generators(p);
          append(out, cyclo::verify_weyl_conjugation(p));
          append(out, cyclo::verify_g1_relations(p));
          append(out, cyclo::verify_sl2_generation(p));
          return out;
        });
        add("matrices", p, [p] {
          ReportList out = cyclo::verify_root_power_sums(p);
          append(out, cyclo::verify_triangular_shift(p));
          return out;
        });
      }
    }
    if (suites.count("milnor")) {
      if (p == 2) {
        add("milnor", p, [] { return milnor::verify_q_expansion_two(); });
      } else {
        add("milnor", p, [p] { return milnor::verify_q_expansion_odd(p); });
        if (p > c.dickson_cap)
          warn << "warning: Dickson-Mui check skipped for p = " << p << " (cap "
               << c.dickson_cap << ")\n";
        else
          add("milnor", p, [p] { return milnor::dickson_mui_check(p); });
      }
    }
    if (suites.count("invariants")) {
      if (p == 2) {
        add("invariants", p, [] { return invariants::verify_two_primary_invariants(); });
      } else {
        add("invariants", p, [p] {
          ReportList out = invariants::verify_odd_invariants(p);
          append(out, invariants::f_star_sign_report(p));
          return out;
        });
      }
      add("invariants", p, [p] {
        ReportList out = invariants::dickson_invariance(p);
        append(out, invariants::convention_independence(p));
        return out;
      });
      if (p <= 5)
        add("invariants", p, [p] { return invariants::group_closure_oracle(p); });
    }
    if (suites.count("ss")) {
      const auto want = [&](const char *name) { return !c.scenario || *c.scenario == name; };
      if (want("bg1"))
        add("ss", p, [p, sweep = c.sweep_scalars] { return specseq::verify_bg1(p, sweep); });
      if (want("bpu") && p != 2)
        add("ss", p, [p] { return specseq::verify_bpu(p); });
      if (want("iota"))
        add("ss", p, [p] { return specseq::iota_image_check(p); });
    }
    if (suites.count("properties"))
      add("properties", p,
          [p, seed = c.seed, n = c.cases] { return properties::run_properties(p, seed, n); });
  }
  return jobs;
}

} // namespace

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names{"matrices", "milnor", "invariants", "ss",
                                              "properties"};
  return names;
}

ReportList collect(const RunConfig &config, std::ostream &warn) {
  for (const unsigned p : config.primes)
    ffla::require_prime(p);
  std::vector<Job> jobs = plan(config, warn);
  std::vector<ReportList> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size())
        return;
      try {
        results[i] = jobs[i].task();
      } catch (const std::exception &e) {
        results[i] = {CheckReport{jobs[i].suite + ".internal_error", jobs[i].prime, Status::fail,
                                  e.what(), 0}};
      }
    }
  };
  const unsigned n = worker_count(config, jobs.size());
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  ReportList all;
  for (auto &r : results)
    append(all, std::move(r));
  sort_reports(all);
  return all;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
  const ReportList reports = collect(config, err);
  out << (config.format == Format::json ? report_json(reports) : report_text(reports));
  out.flush();
  return any_failed(reports) ? 1 : 0;
}

int main_entry(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact verification of the mod-p cohomology computations: matrix identities, "
               "Milnor operations, Weyl invariants and spectral sequences."};
  app.name("verify");
  RunConfig config;
  std::string suite;
  std::string primes;
  std::string format = "text";
  app.add_option("suite", suite, "matrices | milnor | invariants | ss | properties | all")
      ->required()
      ->check(CLI::IsMember({"matrices", "milnor", "invariants", "ss", "properties", "all"}));
  app.add_option("--primes", primes, "comma separated primes (default 2,3,5,7)");
  std::string scenario;
  app.add_option("--scenario", scenario, "restrict ss to bg1, bpu or iota")
      ->check(CLI::IsMember({"bg1", "bpu", "iota"}));
  app.add_flag("--sweep-scalars", config.sweep_scalars,
               "sweep every nonzero (alpha1, alpha2) in the BG1 scenario, not only at p = 3");
  app.add_option("--dickson-cap", config.dickson_cap,
                 "largest prime for the Dickson-Mui check (default 7)");
  app.add_option("--matrix-cap", config.matrix_cap,
                 "largest prime for the matrices suite (default 13)");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", config.seed, "property-test seed");
  app.add_option("--cases", config.cases, "property-test cases per suite (default 200)");
  app.footer("Primes above the matrix cap (13) or the Dickson-Mui cap (7) are skipped with a\n"
             "warning on stderr. MILNOR_FORGE_THREADS caps the worker count.\n"
             "Exit codes: 0 all pass, 1 any fail, 2 usage error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  config.suites = {suite};
  config.format = format == "json" ? Format::json : Format::text;
  if (!scenario.empty())
    config.scenario = scenario;
  if (!primes.empty()) {
    config.primes.clear();
    std::size_t start = 0;
    while (start <= primes.size()) {
      const std::size_t comma = std::min(primes.find(',', start), primes.size());
      const std::string tok = primes.substr(start, comma - start);
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(tok, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (tok.empty() || used != tok.size() || !ffla::is_prime(value)) {
        err << "error: '" << tok << "' is not a prime\n";
        return 2;
      }
      config.primes.push_back(static_cast<unsigned>(value));
      start = comma + 1;
    }
  }
  try {
    return run(config, out, err);
  } catch (const NotPrime &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace milnor_forge
