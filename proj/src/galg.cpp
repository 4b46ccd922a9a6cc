#include "milnor_forge/galg.hpp"

#include "milnor_forge/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace milnor_forge::galg {

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](Exponent e) { return e == 0; });
}

ContextPtr AlgebraContext::create(unsigned prime, std::vector<GeneratorSpec> generators,
                                  int n_work, std::vector<Monomial> zero_monomials) {
  ffla::require_prime(prime);
  if (n_work < 0)
    throw InvalidArgument("working degree must be non-negative");
  std::shared_ptr<AlgebraContext> ctx(new AlgebraContext());
  ctx->prime_ = prime;
  ctx->n_work_ = n_work;
  ctx->gens_ = std::move(generators);

  std::size_t with_bideg = 0;
  for (std::size_t i = 0; i < ctx->gens_.size(); ++i) {
    const auto &g = ctx->gens_[i];
    if (g.name.empty())
      throw InvalidArgument("generator without a name");
    for (std::size_t j = 0; j < i; ++j)
      if (ctx->gens_[j].name == g.name)
        throw InvalidArgument("duplicate generator " + g.name);
    if (g.degree <= 0)
      throw InvalidArgument("generator " + g.name + " must have positive degree");
    if (prime == 2 && g.odd)
      throw InvalidArgument("generator " + g.name + ": no exterior generators at p = 2");
    if (prime != 2 && g.odd != (g.degree % 2 == 1))
      throw InvalidArgument("generator " + g.name + ": parity must match degree");
    if (g.bidegree) {
      ++with_bideg;
      if (g.bidegree->p < 0 || g.bidegree->q < 0 ||
          g.bidegree->p + g.bidegree->q != g.degree)
        throw InvalidArgument("generator " + g.name + ": bidegree does not match degree");
    }
  }
  if (with_bideg != 0 && with_bideg != ctx->gens_.size())
    throw InvalidArgument("either every generator has a bidegree or none does");
  ctx->has_bidegrees_ = with_bideg != 0 && with_bideg == ctx->gens_.size();

  ctx->partners_.assign(ctx->gens_.size(), std::nullopt);
  for (std::size_t i = 0; i < ctx->gens_.size(); ++i) {
    const auto &g = ctx->gens_[i];
    if (!g.bockstein_partner)
      continue;
    const std::size_t j = ctx->index_of(*g.bockstein_partner);
    if (j == i) {
      if (prime != 2)
        throw InvalidArgument("generator " + g.name + " cannot be its own partner at odd p");
    } else if (ctx->gens_[j].degree != g.degree + 1) {
      throw InvalidArgument("partner of " + g.name + " must have degree " +
                            std::to_string(g.degree + 1));
    }
    ctx->partners_[i] = j;
  }

  for (const auto &m : zero_monomials)
    if (m.exps.size() != ctx->gens_.size())
      throw InvalidArgument("relation monomial has the wrong length");
  ctx->zero_monomials_ = std::move(zero_monomials);
  return ctx;
}

std::size_t AlgebraContext::index_of(const std::string &name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name)
      return i;
  throw InvalidArgument("unknown generator " + name);
}

int AlgebraContext::degree(const Monomial &m) const {
  int d = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    d += m.exps[i] * gens_[i].degree;
  return d;
}

Bidegree AlgebraContext::bidegree(const Monomial &m) const {
  if (!has_bidegrees_)
    throw InvalidArgument("context has no bidegrees");
  Bidegree b;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    b.p += m.exps[i] * gens_[i].bidegree->p;
    b.q += m.exps[i] * gens_[i].bidegree->q;
  }
  return b;
}

bool AlgebraContext::is_odd(const Monomial &m) const {
  bool odd = false;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].odd && (m.exps[i] % 2 == 1))
      odd = !odd;
  return odd;
}

bool AlgebraContext::vanishes(const Monomial &m) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].odd && m.exps[i] > 1)
      return true;
  for (const auto &z : zero_monomials_) {
    bool divides = true;
    for (std::size_t i = 0; i < gens_.size() && divides; ++i)
      divides = z.exps[i] <= m.exps[i];
    if (divides)
      return true;
  }
  return false;
}

std::optional<std::pair<Monomial, bool>> AlgebraContext::multiply(const Monomial &a,
                                                                  const Monomial &b) const {
  Monomial r;
  r.exps.resize(gens_.size());
  bool negative = false;
  std::size_t odd_in_a_after = 0;
  // Walk from the last generator down: each odd factor of b must pass every
  // odd factor of a sitting at a later position.
  for (std::size_t k = gens_.size(); k-- > 0;) {
    const unsigned sum = unsigned{a.exps[k]} + b.exps[k];
    if (sum > UINT16_MAX)
      throw ArithmeticOverflow("monomial exponent overflow");
    r.exps[k] = static_cast<Exponent>(sum);
    if (gens_[k].odd) {
      if (sum > 1)
        return std::nullopt;
      if (b.exps[k] == 1 && odd_in_a_after % 2 == 1)
        negative = !negative;
      if (a.exps[k] == 1)
        ++odd_in_a_after;
    }
  }
  if (vanishes(r))
    return std::nullopt;
  return std::pair{std::move(r), negative};
}

Monomial AlgebraContext::unit() const { return Monomial{std::vector<Exponent>(gens_.size(), 0)}; }

Monomial AlgebraContext::generator_monomial(std::size_t i, Exponent e) const {
  Monomial m = unit();
  m.exps.at(i) = e;
  return m;
}

std::string AlgebraContext::render(const Monomial &m) const {
  std::string out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (m.exps[i] == 0)
      continue;
    if (!out.empty())
      out += '*';
    out += gens_[i].name;
    if (m.exps[i] > 1)
      out += '^' + std::to_string(m.exps[i]);
  }
  return out.empty() ? "1" : out;
}

Element::Element(ContextPtr ctx) : ctx_(std::move(ctx)) {
  if (!ctx_)
    throw InvalidArgument("element without a context");
}

Element Element::one(ContextPtr ctx) { return constant(std::move(ctx), 1); }

Element Element::constant(ContextPtr ctx, std::int64_t c) {
  Monomial u = ctx->unit();
  return monomial(std::move(ctx), std::move(u), c);
}

Element Element::generator(ContextPtr ctx, const std::string &name) {
  const std::size_t i = ctx->index_of(name);
  return generator(std::move(ctx), i);
}

Element Element::generator(ContextPtr ctx, std::size_t index) {
  if (index >= ctx->size())
    throw InvalidArgument("generator index out of range");
  if (ctx->generator(index).degree > ctx->n_work())
    throw TruncationOverflow("generator " + ctx->generator(index).name +
                             " lies above the working degree");
  Monomial m = ctx->generator_monomial(index);
  return monomial(std::move(ctx), std::move(m));
}

Element Element::monomial(ContextPtr ctx, Monomial m, std::int64_t c) {
  if (m.exps.size() != ctx->size())
    throw InvalidArgument("monomial has the wrong length");
  Element e(std::move(ctx));
  e.add_term(m, ffla::reduce_signed(c, e.ctx_->prime()));
  return e;
}

ffla::Residue Element::coefficient(const Monomial &m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

std::optional<int> Element::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto &[m, c] : terms_) {
    const int dm = ctx_->degree(m);
    if (d && *d != dm)
      return std::nullopt;
    d = dm;
  }
  return d;
}

void Element::check_same(const Element &o) const {
  if (ctx_ != o.ctx_)
    throw ContextMismatch("elements from different algebra contexts");
}

void Element::add_term(const Monomial &m, ffla::Residue c) {
  const unsigned p = ctx_->prime();
  c %= p;
  if (c == 0 || ctx_->vanishes(m))
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = ffla::add_mod(it->second, c, p);
    if (it->second == 0)
      terms_.erase(it);
  }
}

Element Element::operator+(const Element &o) const {
  check_same(o);
  Element r = *this;
  for (const auto &[m, c] : o.terms_)
    r.add_term(m, c);
  return r;
}

Element Element::operator-(const Element &o) const { return *this + (-o); }

Element Element::operator-() const { return scaled(-1); }

Element Element::scaled(std::int64_t c) const {
  const unsigned p = ctx_->prime();
  const ffla::Residue s = ffla::reduce_signed(c, p);
  Element r(ctx_);
  if (s == 0)
    return r;
  for (const auto &[m, v] : terms_)
    r.terms_.emplace(m, ffla::mul_mod(v, s, p));
  return r;
}

Element Element::operator*(const Element &o) const { return multiply(*this, o, Mode::exact); }

bool Element::operator==(const Element &o) const {
  return ctx_ == o.ctx_ && terms_ == o.terms_;
}

std::string Element::to_string() const {
  if (terms_.empty())
    return "0";
  const unsigned p = ctx_->prime();
  std::string out;
  bool first = true;
  for (const auto &[m, c] : terms_) {
    const std::int64_t s = ffla::symmetric(c, p);
    const std::int64_t mag = s < 0 ? -s : s;
    if (first)
      out += s < 0 ? "-" : "";
    else
      out += s < 0 ? " - " : " + ";
    first = false;
    const std::string body = ctx_->render(m);
    if (m.is_one())
      out += std::to_string(mag);
    else if (mag == 1)
      out += body;
    else
      out += std::to_string(mag) + "*" + body;
  }
  return out;
}

Element multiply(const Element &a, const Element &b, Mode mode) {
  if (a.context() != b.context())
    throw ContextMismatch("elements from different algebra contexts");
  const auto &ctx = *a.context();
  const unsigned p = ctx.prime();
  Element r(a.context());
  for (const auto &[ma, ca] : a.terms()) {
    for (const auto &[mb, cb] : b.terms()) {
      auto prod = ctx.multiply(ma, mb);
      if (!prod)
        continue;
      if (ctx.degree(prod->first) > ctx.n_work()) {
        if (mode == Mode::truncating)
          continue;
        throw TruncationOverflow("product " + ctx.render(prod->first) +
                                 " exceeds working degree " + std::to_string(ctx.n_work()));
      }
      ffla::Residue c = ffla::mul_mod(ca, cb, p);
      if (prod->second)
        c = ffla::neg_mod(c, p);
      r.add_term(prod->first, c);
    }
  }
  return r;
}

Element power(const Element &a, unsigned e, Mode mode) {
  Element r = Element::one(a.context());
  Element base = a;
  while (e > 0) {
    if (e & 1)
      r = multiply(r, base, mode);
    e >>= 1;
    if (e > 0)
      base = multiply(base, base, mode);
  }
  return r;
}

std::vector<Monomial> basis_of_degree(const AlgebraContext &ctx, int d) {
  if (d < 0 || d > ctx.n_work())
    throw InvalidArgument("degree " + std::to_string(d) + " outside [0, " +
                          std::to_string(ctx.n_work()) + "]");
  std::vector<Monomial> out;
  Monomial cur = ctx.unit();
  const std::size_t n = ctx.size();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      if (left == 0 && !ctx.vanishes(cur))
        out.push_back(cur);
      return;
    }
    const auto &g = ctx.generator(i);
    int max_e = left / g.degree;
    if (g.odd)
      max_e = std::min(max_e, 1);
    for (int e = max_e; e >= 0; --e) {
      cur.exps[i] = static_cast<Exponent>(e);
      rec(i + 1, left - e * g.degree);
    }
    cur.exps[i] = 0;
  };
  rec(0, d);
  return out;
}

DegreeBasis::DegreeBasis(ContextPtr ctx, int degree)
    : ctx_(std::move(ctx)), degree_(degree), monomials_(basis_of_degree(*ctx_, degree)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    index_.emplace(monomials_[i], i);
}

std::optional<std::size_t> DegreeBasis::index(const Monomial &m) const {
  const auto it = index_.find(m);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

ffla::FieldVector DegreeBasis::coordinates(const Element &e) const {
  if (e.context() != ctx_)
    throw ContextMismatch("element from a different context");
  ffla::FieldVector v(ctx_->prime(), monomials_.size());
  for (const auto &[m, c] : e.terms()) {
    const auto i = index(m);
    if (!i)
      throw InvalidArgument("term " + ctx_->render(m) + " is not in degree " +
                            std::to_string(degree_));
    v[*i] = c;
  }
  return v;
}

Element DegreeBasis::element(const ffla::FieldVector &v) const {
  if (v.size() != monomials_.size())
    throw DimensionMismatch("coordinate vector has the wrong length");
  Element e(ctx_);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      e.add_term(monomials_[i], v[i]);
  return e;
}

Element AlgebraMap::apply(const Monomial &m) const {
  Element r = Element::one(ctx_);
  for (std::size_t i = 0; i < m.exps.size(); ++i)
    if (m.exps[i] != 0)
      r = multiply(r, power(images_[i], m.exps[i]));
  return r;
}

Element AlgebraMap::apply(const Element &e) const {
  if (e.context() != ctx_)
    throw ContextMismatch("map applied to an element of another context");
  Element r(ctx_);
  for (const auto &[m, c] : e.terms()) {
    const Element img = apply(m);
    for (const auto &[mi, ci] : img.terms())
      r.add_term(mi, ffla::mul_mod(c, ci, ctx_->prime()));
  }
  return r;
}

AlgebraMap AlgebraMap::compose(const AlgebraMap &other) const {
  if (ctx_ != other.ctx_)
    throw ContextMismatch("composing maps over different contexts");
  std::vector<Element> images;
  images.reserve(other.images_.size());
  for (const auto &img : other.images_)
    images.push_back(apply(img));
  return AlgebraMap(ctx_, std::move(images));
}

ffla::FieldMatrix AlgebraMap::matrix(const DegreeBasis &basis) const {
  const std::size_t n = basis.size();
  ffla::FieldMatrix m(n, n, ctx_->prime());
  for (std::size_t c = 0; c < n; ++c) {
    const auto col = basis.coordinates(apply(basis.monomials()[c]));
    for (std::size_t r = 0; r < n; ++r)
      m.set(r, c, col[r]);
  }
  return m;
}

AlgebraMap linear_substitution(ContextPtr ctx, const std::map<std::string, Element> &images) {
  std::vector<Element> imgs;
  imgs.reserve(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i)
    imgs.push_back(Element::monomial(ctx, ctx->generator_monomial(i)));
  for (const auto &[name, img] : images) {
    const std::size_t i = ctx->index_of(name);
    if (img.context() != ctx)
      throw ContextMismatch("image of " + name + " lives in another context");
    const auto &g = ctx->generator(i);
    for (const auto &[m, c] : img.terms()) {
      if (ctx->degree(m) != g.degree)
        throw InvalidArgument("image of " + name + " is not homogeneous of degree " +
                              std::to_string(g.degree));
      if (ctx->is_odd(m) != g.odd)
        throw InvalidArgument("image of " + name + " has the wrong parity");
    }
    imgs[i] = img;
  }
  return AlgebraMap(std::move(ctx), std::move(imgs));
}

ContextPtr elementary_abelian(unsigned prime, std::size_t rank, int n_work,
                              bool with_bidegrees) {
  static const char names[] = {'x', 'y', 'z'};
  if (rank == 0 || rank > 3)
    throw InvalidArgument("rank must be 1, 2 or 3");
  std::vector<GeneratorSpec> gens;
  const auto bideg = [&](std::size_t k, int degree) -> std::optional<Bidegree> {
    if (!with_bidegrees)
      return std::nullopt;
    return names[k] == 'z' ? Bidegree{0, degree} : Bidegree{degree, 0};
  };
  for (std::size_t k = 0; k < rank; ++k) {
    const std::string base(1, names[k]);
    if (prime == 2) {
      gens.push_back({base + "1", 1, false, bideg(k, 1), base + "1"});
    } else {
      gens.push_back({base + "1", 1, true, bideg(k, 1), base + "2"});
      gens.push_back({base + "2", 2, false, bideg(k, 2), std::nullopt});
    }
  }
  return AlgebraContext::create(prime, std::move(gens), n_work);
}

} // namespace milnor_forge::galg
