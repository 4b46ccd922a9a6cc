#pragma once

// First-quadrant multiplicative spectral sequences truncated by total degree.
//
// Every page E_r is held as a family of subquotients Z_r / B_r of the E_2
// algebra, one per bidegree. A differential d_r is specified on a set of page
// generators and extended to products by the Leibniz rule on representatives.

#include "milnor_forge/ffla.hpp"
#include "milnor_forge/galg.hpp"
#include "milnor_forge/milnor.hpp"
#include "milnor_forge/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace milnor_forge::specseq {

using galg::Bidegree;
using galg::ContextPtr;
using galg::Element;
using galg::Mode;
using galg::Monomial;

struct BidegreeGroup {
  std::vector<Monomial> monomials;
  ffla::Subquotient quotient;
};

struct PageTurn;
struct DifferentialSpec;

class SSPage {
public:
  // E_2 of a context whose generators carry bidegrees. valid_degree is the
  // largest total degree through which the input algebra is faithful.
  static SSPage initial(ContextPtr ctx, int valid_degree);

  int page() const { return r_; }
  const ContextPtr &context() const { return ctx_; }
  // Total degrees through which this page is known to be correct.
  int valid_degree() const { return valid_; }

  const std::map<Bidegree, BidegreeGroup> &groups() const { return groups_; }
  const BidegreeGroup *group(Bidegree b) const;
  std::size_t dim(Bidegree b) const;
  std::size_t dim_total(int t) const;

  // Bidegree of a nonzero element homogeneous in bidegree; nullopt otherwise.
  std::optional<Bidegree> bidegree_of(const Element &e) const;
  // Ambient coordinates of a bidegree-homogeneous element.
  ffla::FieldVector coordinates(Bidegree b, const Element &e) const;
  Element element(Bidegree b, const ffla::FieldVector &v) const;

  // Zero is a cycle. Elements outside the tabulated range are not.
  bool is_cycle(const Element &e) const;
  bool is_boundary(const Element &e) const;
  // A cycle whose class is nonzero.
  bool survives(const Element &e) const;
  std::optional<std::vector<ffla::Residue>> class_of(const Element &e) const;
  // Representatives of the basis classes of E_r^{p,q}.
  std::vector<Element> representatives(Bidegree b) const;

private:
  friend PageTurn turn_page(const SSPage &, const DifferentialSpec &);
  SSPage() = default;

  int r_ = 2;
  int valid_ = 0;
  ContextPtr ctx_;
  std::map<Bidegree, BidegreeGroup> groups_;
};

struct DifferentialEntry {
  Element source;
  Element target;
};

// d_r on page generators. Algebra generators that are cycles on page r map to
// the target of the entry whose source is exactly that generator, or to zero.
// Entries with any other source add page generators.
struct DifferentialSpec {
  int page = 2;
  std::vector<DifferentialEntry> entries;
};

struct PageTurn {
  SSPage next;
  // Class-level matrices of d_r, keyed by source bidegree (target dim x source dim).
  std::map<Bidegree, ffla::FieldMatrix> maps;
  // rank of d_r leaving total degree t, for t <= n_work.
  std::vector<std::size_t> rank_out;
  // Total degrees where products of page generators fail to span the page.
  std::vector<int> ungenerated;
};

// Throws DifferentialError when a source or image is not a cycle, an image
// has the wrong bidegree, the rule is inconsistent on a dependency, or d o d
// is nonzero (the message names a witness).
PageTurn turn_page(const SSPage &page, const DifferentialSpec &d);

// d(d(m)) for every basis monomial through max_degree, with truncating
// products; returns the first witness monomial with a nonzero value.
std::optional<Monomial> d_squared_witness(const milnor::Derivation &d, int max_degree);

enum class ExternalKind { permanent, killed };

// A class whose fate is settled outside the computation.
struct ExternalInput {
  ExternalKind kind;
  Element representative;
  std::string reason;
};

struct Scenario {
  std::string name;
  unsigned prime = 3;
  ContextPtr e2;
  int target_degree = 4;
  // Degree through which the E_2 algebra is faithful.
  int input_degree = 4;
  std::vector<DifferentialSpec> differentials;
  std::vector<ExternalInput> externals;
};

enum class Certificate { bidegree, product, external, uncertified };

struct FinalClass {
  Bidegree bidegree;
  Element representative;
  Certificate certificate;
  bool killed_externally = false;
};

struct ScenarioResult {
  std::string name;
  unsigned prime = 3;
  int target_degree = 4;
  std::vector<SSPage> pages;
  std::vector<PageTurn> turns;
  // Classes of the last page through target_degree.
  std::vector<FinalClass> classes;
  // Total-degree dims of the last page, and of E_infinity after external kills.
  std::vector<std::size_t> last_page_dims;
  std::vector<std::size_t> infinity_dims;
  // Every class certified permanent or externally settled.
  bool collapsed = false;
  // Target degree lies inside the last page's validity.
  bool valid = false;
  std::vector<std::string> remarks;

  const SSPage &last() const { return pages.back(); }
};

ScenarioResult run_scenario(const Scenario &s);

// dims through degree n of a page.
std::vector<std::size_t> page_dims(const SSPage &page, int n);

// Scenarios. n_work_extra is N_work - target_degree.
Scenario scenario_bg1(unsigned prime, std::int64_t alpha1 = 1, std::int64_t alpha2 = 1,
                      int n_work_extra = 3);
Scenario scenario_bg1_two(int n_work_extra = 3);
Scenario scenario_bpu(unsigned prime, bool beta_prime_zero, int n_work_extra = 3);

// Coefficient of t^degree in prod_{k=2..l} (1 - t^{2k})^{-2}.
std::uint64_t rational_dimension(unsigned prime, int degree);

// Suite entry points; the scalar sweep covers every nonzero pair when
// full_sweep is set, otherwise only p = 3.
ReportList verify_bg1(unsigned prime, bool full_sweep);
ReportList verify_bpu(unsigned prime);
ReportList iota_image_check(unsigned prime);

std::string render_dims(const std::vector<std::size_t> &dims);

} // namespace milnor_forge::specseq
