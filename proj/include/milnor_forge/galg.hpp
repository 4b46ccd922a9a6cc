#pragma once

// Truncated graded-commutative algebras over F_p: a polynomial algebra on the
// even generators tensored with an exterior algebra on the odd ones, cut off
// above a working degree. Optional monomial relations let the spectral
// sequence engine encode E_2 terms that are not free.

#include "milnor_forge/ffla.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace milnor_forge::galg {

struct Bidegree {
  int p = 0;
  int q = 0;
  bool operator==(const Bidegree &) const = default;
  auto operator<=>(const Bidegree &) const = default;
};

struct GeneratorSpec {
  std::string name;
  int degree = 1;
  bool odd = false;
  std::optional<Bidegree> bidegree;
  // Name of the generator equal to Q_0 of this one. At p = 2 a generator may
  // name itself: Q_0 is then squaring.
  std::optional<std::string> bockstein_partner;
};

using Exponent = std::uint16_t;

// Exponent vector in declaration order of the context's generators.
struct Monomial {
  std::vector<Exponent> exps;

  bool is_one() const;
  bool operator==(const Monomial &) const = default;
};

// Rendering order: larger exponent on an earlier generator comes first.
struct MonomialOrder {
  bool operator()(const Monomial &a, const Monomial &b) const { return a.exps > b.exps; }
};

class AlgebraContext;
using ContextPtr = std::shared_ptr<const AlgebraContext>;

class AlgebraContext {
public:
  // Validates primality, degrees, partner names, parity against the prime,
  // and bidegrees. Throws InvalidArgument.
  static ContextPtr create(unsigned prime, std::vector<GeneratorSpec> generators, int n_work,
                           std::vector<Monomial> zero_monomials = {});

  unsigned prime() const { return prime_; }
  int n_work() const { return n_work_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<GeneratorSpec> &generators() const { return gens_; }
  const GeneratorSpec &generator(std::size_t i) const { return gens_[i]; }
  // Throws InvalidArgument for an unknown name.
  std::size_t index_of(const std::string &name) const;
  std::optional<std::size_t> partner_of(std::size_t i) const { return partners_[i]; }
  const std::vector<Monomial> &zero_monomials() const { return zero_monomials_; }
  bool has_bidegrees() const { return has_bidegrees_; }

  int degree(const Monomial &m) const;
  // Sum of generator bidegrees; requires has_bidegrees().
  Bidegree bidegree(const Monomial &m) const;
  // Number of odd generator factors mod 2.
  bool is_odd(const Monomial &m) const;
  // Exterior squares and declared relations.
  bool vanishes(const Monomial &m) const;

  // Product of two monomials in canonical order with its Koszul sign, or
  // nullopt when it vanishes. Ignores the working degree.
  std::optional<std::pair<Monomial, bool>> multiply(const Monomial &a, const Monomial &b) const;

  Monomial unit() const;
  Monomial generator_monomial(std::size_t i, Exponent e = 1) const;

  std::string render(const Monomial &m) const;

private:
  AlgebraContext() = default;

  unsigned prime_ = 2;
  int n_work_ = 0;
  std::vector<GeneratorSpec> gens_;
  std::vector<std::optional<std::size_t>> partners_;
  std::vector<Monomial> zero_monomials_;
  bool has_bidegrees_ = false;
};

enum class Mode { exact, truncating };

class Element {
public:
  using Terms = std::map<Monomial, ffla::Residue, MonomialOrder>;

  explicit Element(ContextPtr ctx);
  static Element zero(ContextPtr ctx) { return Element(std::move(ctx)); }
  static Element one(ContextPtr ctx);
  static Element constant(ContextPtr ctx, std::int64_t c);
  static Element generator(ContextPtr ctx, const std::string &name);
  static Element generator(ContextPtr ctx, std::size_t index);
  static Element monomial(ContextPtr ctx, Monomial m, std::int64_t c = 1);

  const ContextPtr &context() const { return ctx_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ffla::Residue coefficient(const Monomial &m) const;

  // The common degree of all terms; nullopt when inhomogeneous. Zero has no degree.
  std::optional<int> homogeneous_degree() const;

  Element operator+(const Element &o) const;
  Element operator-(const Element &o) const;
  Element operator-() const;
  Element scaled(std::int64_t c) const;
  // Exact product.
  Element operator*(const Element &o) const;

  bool operator==(const Element &o) const;

  // Adds c * m, dropping it if it vanishes.
  void add_term(const Monomial &m, ffla::Residue c);

  std::string to_string() const;

private:
  void check_same(const Element &o) const;

  ContextPtr ctx_;
  Terms terms_;
};

// Exact mode throws TruncationOverflow when a product term exceeds n_work;
// truncating mode discards those terms.
Element multiply(const Element &a, const Element &b, Mode mode = Mode::exact);
Element power(const Element &a, unsigned e, Mode mode = Mode::exact);

// All nonvanishing monomials of total degree d, in rendering order.
// Throws InvalidArgument when d > n_work.
std::vector<Monomial> basis_of_degree(const AlgebraContext &ctx, int d);

// Degreewise basis with a coordinate map.
class DegreeBasis {
public:
  DegreeBasis(ContextPtr ctx, int degree);

  int degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial> &monomials() const { return monomials_; }
  std::optional<std::size_t> index(const Monomial &m) const;

  // Throws InvalidArgument if a term is outside this degree.
  ffla::FieldVector coordinates(const Element &e) const;
  Element element(const ffla::FieldVector &v) const;

private:
  ContextPtr ctx_;
  int degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t, MonomialOrder> index_;
};

// Algebra endomorphism determined by generator images.
class AlgebraMap {
public:
  const ContextPtr &context() const { return ctx_; }
  const std::vector<Element> &images() const { return images_; }

  Element apply(const Element &e) const;
  Element apply(const Monomial &m) const;

  // (this o other)(x) = this(other(x))
  AlgebraMap compose(const AlgebraMap &other) const;

  // Matrix of the map on the degree-d component (columns are images of basis monomials).
  ffla::FieldMatrix matrix(const DegreeBasis &basis) const;

private:
  friend AlgebraMap linear_substitution(ContextPtr, const std::map<std::string, Element> &);
  AlgebraMap(ContextPtr ctx, std::vector<Element> images)
      : ctx_(std::move(ctx)), images_(std::move(images)) {}

  ContextPtr ctx_;
  std::vector<Element> images_;
};

// Generators not mentioned map to themselves. Each image must be homogeneous
// of the generator's degree with the generator's parity. Throws InvalidArgument.
AlgebraMap linear_substitution(ContextPtr ctx, const std::map<std::string, Element> &images);

// H^*(BA_n; F_p) for n <= 3 with generators named x, y, z. Odd p: x1, x2, y1,
// y2, ... with x1 odd and x2 = Q_0 x1. p = 2: x1, y1, z1 polynomial, each its
// own Bockstein partner. When with_bidegrees is set, x and y sit in the base
// (p = degree) and z in the fiber (q = degree).
ContextPtr elementary_abelian(unsigned prime, std::size_t rank, int n_work,
                              bool with_bidegrees = false);

} // namespace milnor_forge::galg
