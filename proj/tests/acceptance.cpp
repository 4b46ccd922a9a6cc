// Acceptance run: one line per criterion, exit 0 iff every selected criterion passes.

#include "milnor_forge/cyclo.hpp"
#include "milnor_forge/invariants.hpp"
#include "milnor_forge/milnor.hpp"
#include "milnor_forge/properties.hpp"
#include "milnor_forge/report.hpp"
#include "milnor_forge/specseq.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace milnor_forge;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::int64_t budget_ms;  // 0: no bound
  std::function<ReportList()> run;
  std::vector<std::string> required;  // check_ids that must appear
};

void append(ReportList &out, ReportList more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

template <class F> ReportList over(std::initializer_list<unsigned> primes, F f) {
  ReportList out;
  for (unsigned p : primes)
    append(out, f(p));
  return out;
}

std::vector<Criterion> criteria() {
  using namespace milnor_forge::cyclo;
  return {
      {1, "matrix identities, l in {3,5,7,11,13}", 5000,
       [] {
         return over({3, 5, 7, 11, 13}, [](unsigned p) {
           ReportList out = verify_su_generators(p);
           append(out, verify_weyl_conjugation(p));
           append(out, verify_g1_relations(p));
           return out;
         });
       },
       {"matrices.su.commutator", "matrices.su.t_gram", "matrices.weyl.t_beta",
        "matrices.g1.delta_commutator"}},
      {2, "l = 2 matrix identities in Z[i]", 100, [] { return verify_l2_generators(); },
       {"matrices.l2.sigma_candidate", "matrices.l2.t_gram"}},
      {3, "root power sums and triangular shift, l <= 13", 1000,
       [] {
         return over({3, 5, 7, 11, 13}, [](unsigned p) {
           ReportList out = verify_root_power_sums(p);
           append(out, verify_triangular_shift(p));
           return out;
         });
       },
       {"matrices.root_power_sum", "matrices.triangular_shift"}},
      {4, "Milnor operation expansions", 2000,
       [] {
         ReportList out = over({3, 5, 7}, milnor::verify_q_expansion_odd);
         append(out, milnor::verify_q_expansion_two());
         return out;
       },
       {"milnor.q1q0_xyz_exponent"}},
      {5, "Dickson-Mui product, l in {3,5,7}", 10000,
       [] { return over({3, 5, 7}, milnor::dickson_mui_check); }, {}},
      {6, "invariant dimensions", 2000,
       [] {
         ReportList out = over({3, 5, 7, 11}, invariants::verify_odd_invariants);
         append(out, invariants::verify_two_primary_invariants());
         return out;
       },
       {}},
      {7, "group closure oracle with the literal shape predicate", 0,
       [] {
         return over({2, 3, 5},
                     [](unsigned p) { return invariants::group_closure_oracle(p, Status::fail); });
       },
       {}},
      {8, "spectral sequences", 3000,
       [] {
         ReportList out = over({2, 3, 5, 7, 11},
                               [](unsigned p) { return specseq::verify_bg1(p, false); });
         append(out, over({3, 5}, specseq::verify_bpu));
         return out;
       },
       {"ss.bg1.h_dims", "ss.bg1.sweep", "ss.bpu.beta_nonzero", "ss.bpu.beta_zero"}},
      {9, "iota image check", 0,
       [] { return over({2, 3, 5, 7, 11}, specseq::iota_image_check); }, {"ss.iota"}},
      {10, "property suites", 0,
       [] {
         return over({2, 3, 5, 7}, [](unsigned p) { return properties::run_properties(p); });
       },
       {"prop.q_squared", "prop.q_anticommute", "prop.leibniz", "prop.graded_commutative",
        "prop.action_q0", "prop.dd_zero", "prop.page_monotone", "prop.rank_nullity"}},
  };
}

bool evaluate(const Criterion &c, std::ostream &os, bool verbose) {
  Stopwatch clock;
  ReportList reports;
  std::string problem;
  try {
    reports = c.run();
  } catch (const std::exception &e) {
    problem = std::string("exception: ") + e.what();
  }
  const std::int64_t ms = clock.elapsed_ms();
  std::size_t fails = 0;
  for (const auto &r : reports)
    fails += r.status == Status::fail;
  if (problem.empty() && reports.empty())
    problem = "no checks ran";
  if (problem.empty() && fails)
    problem = std::to_string(fails) + " failing checks";
  for (const auto &id : c.required) {
    const bool seen = std::any_of(reports.begin(), reports.end(),
                                  [&](const CheckReport &r) { return r.check_id == id; });
    if (problem.empty() && !seen)
      problem = "missing " + id;
  }
  if (problem.empty() && c.budget_ms && ms > c.budget_ms)
    problem = "over budget (" + std::to_string(c.budget_ms) + " ms)";
  os << "criterion " << c.number << ": " << (problem.empty() ? "PASS" : "FAIL") << "  " << c.title
     << "  " << reports.size() << " checks, " << ms << " ms";
  if (!problem.empty())
    os << "  " << problem;
  os << '\n';
  if (verbose || !problem.empty())
    for (const auto &r : reports)
      if (verbose || r.status == Status::fail)
        os << "    " << r.check_id << " p=" << r.prime << " " << to_string(r.status) << "  "
           << r.details << '\n';
  return problem.empty();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Acceptance criteria 1-10"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run one criterion")->check(CLI::Range(1, 10));
  app.add_flag("--verbose", verbose, "print every record");
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  for (const auto &c : criteria())
    if (only == 0 || c.number == only)
      ok = evaluate(c, std::cout, verbose) && ok;
  return ok ? 0 : 1;
}
