#include "milnor_forge/milnor.hpp"

#include "milnor_forge/errors.hpp"

namespace milnor_forge::milnor {

Derivation::Derivation(ContextPtr ctx, int shift, std::vector<Element> images)
    : ctx_(std::move(ctx)), shift_(shift), images_(std::move(images)) {
  if (images_.size() != ctx_->size())
    throw InvalidArgument("derivation needs one image per generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const auto &img = images_[i];
    if (img.context() != ctx_)
      throw ContextMismatch("derivation image from another context");
    if (img.is_zero())
      continue;
    const int want = ctx_->generator(i).degree + shift_;
    const auto d = img.homogeneous_degree();
    if (!d || *d != want)
      throw InvalidArgument("image of " + ctx_->generator(i).name +
                            " must be homogeneous of degree " + std::to_string(want));
  }
}

Derivation Derivation::from_map(ContextPtr ctx, int shift,
                                const std::map<std::string, Element> &images) {
  std::vector<Element> imgs(ctx->size(), Element::zero(ctx));
  for (const auto &[name, img] : images)
    imgs[ctx->index_of(name)] = img;
  return Derivation(std::move(ctx), shift, std::move(imgs));
}

Element Derivation::apply(const Monomial &m, Mode mode) const {
  Element out(ctx_);
  const std::size_t n = ctx_->size();
  Monomial prefix = ctx_->unit();
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned e = m.exps[i];
    if (e != 0 && !images_[i].is_zero()) {
      Monomial suffix = ctx_->unit();
      for (std::size_t k = i + 1; k < n; ++k)
        suffix.exps[k] = m.exps[k];
      // D(g^e) = e g^{e-1} D(g); g^{e-1} is central whenever e > 1.
      const Element middle = Element::monomial(ctx_, ctx_->generator_monomial(i, e - 1), e);
      const std::int64_t sign = ctx_->is_odd(prefix) ? -1 : 1;
      Element term = galg::multiply(Element::monomial(ctx_, prefix, sign), middle, mode);
      term = galg::multiply(term, images_[i], mode);
      term = galg::multiply(term, Element::monomial(ctx_, suffix), mode);
      out = out + term;
    }
    prefix.exps[i] = m.exps[i];
  }
  return out;
}

Element Derivation::apply(const Element &e, Mode mode) const {
  if (e.context() != ctx_)
    throw ContextMismatch("derivation applied to an element of another context");
  Element out(ctx_);
  for (const auto &[m, c] : e.terms())
    out = out + apply(m, mode).scaled(c);
  return out;
}

Derivation milnor_q(unsigned j, ContextPtr ctx) {
  const unsigned p = ctx->prime();
  unsigned long long pj = 1;
  for (unsigned k = 0; k < j; ++k) {
    pj *= p;
    if (pj > 1u << 20)
      throw TruncationOverflow("Q_" + std::to_string(j) + " images exceed any working degree");
  }
  const int shift = static_cast<int>(2 * pj - 1);

  std::vector<bool> is_partner(ctx->size(), false);
  for (std::size_t i = 0; i < ctx->size(); ++i)
    if (auto q = ctx->partner_of(i); q && *q != i)
      is_partner[*q] = true;

  std::vector<Element> images;
  images.reserve(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    const auto partner = ctx->partner_of(i);
    if (partner && *partner == i) {
      images.push_back(
          galg::power(Element::generator(ctx, i), static_cast<unsigned>(2 * pj)));
    } else if (partner) {
      if (ctx->generator(i).degree != 1)
        throw InvalidArgument("Q_j needs degree-1 generators with partners");
      images.push_back(galg::power(Element::generator(ctx, *partner), static_cast<unsigned>(pj)));
    } else if (is_partner[i]) {
      images.push_back(Element::zero(ctx));
    } else {
      throw InvalidArgument("generator " + ctx->generator(i).name + " has no Bockstein data");
    }
  }
  return Derivation(std::move(ctx), shift, std::move(images));
}

Element build(const ContextPtr &ctx, const std::vector<Term> &terms) {
  Element out(ctx);
  for (const auto &t : terms) {
    Element prod = Element::constant(ctx, t.coeff);
    for (const auto &[name, e] : t.factors)
      prod = prod * galg::power(Element::generator(ctx, name), e);
    out = out + prod;
  }
  return out;
}

namespace {

CheckReport expect(std::string id, unsigned prime, const Element &got, const Element &want,
                   const std::string &label, const Stopwatch &clock) {
  const bool ok = got == want && !got.is_zero();
  std::string details = label + " = " + got.to_string();
  if (!ok)
    details += "; expected " + want.to_string();
  return make_check(std::move(id), prime, ok, details, clock);
}

} // namespace

ReportList verify_q_expansion_odd(unsigned prime) {
  if (prime == 2)
    throw InvalidArgument("verify_q_expansion_odd needs an odd prime");
  const unsigned l = prime;
  ReportList out;
  try {
    const auto ctx = galg::elementary_abelian(l, 3, static_cast<int>(2 * l + 3));
    const Derivation q0 = milnor_q(0, ctx), q1 = milnor_q(1, ctx);
    const Element xy = build(ctx, {{1, {{"x1", 1}, {"y1", 1}}}});
    const Element xyz = build(ctx, {{1, {{"x1", 1}, {"y1", 1}, {"z1", 1}}}});

    {
      Stopwatch clock;
      out.push_back(expect("milnor.q0_xy", l, q0.apply(xy),
                           build(ctx, {{1, {{"x2", 1}, {"y1", 1}}}, {-1, {{"x1", 1}, {"y2", 1}}}}),
                           "Q0(x1*y1)", clock));
    }
    {
      Stopwatch clock;
      out.push_back(expect("milnor.q1_xy", l, q1.apply(xy),
                           build(ctx, {{1, {{"x2", l}, {"y1", 1}}}, {-1, {{"x1", 1}, {"y2", l}}}}),
                           "Q1(x1*y1)", clock));
    }
    {
      Stopwatch clock;
      out.push_back(expect("milnor.q1q0_xy", l, q1.apply(q0.apply(xy)),
                           build(ctx, {{1, {{"x2", 1}, {"y2", l}}}, {-1, {{"x2", l}, {"y2", 1}}}}),
                           "Q1Q0(x1*y1)", clock));
    }
    {
      Stopwatch clock;
      const Element want = build(ctx, {
                                          {-1, {{"x2", l}, {"y2", 1}, {"z1", 1}}},
                                          {1, {{"x2", l}, {"y1", 1}, {"z2", 1}}},
                                          {1, {{"x2", 1}, {"y2", l}, {"z1", 1}}},
                                          {-1, {{"x2", 1}, {"y1", 1}, {"z2", l}}},
                                          {-1, {{"x1", 1}, {"y2", l}, {"z2", 1}}},
                                          {1, {{"x1", 1}, {"y2", 1}, {"z2", l}}},
                                      });
      out.push_back(expect("milnor.q1q0_xyz", l, q1.apply(q0.apply(xyz)), want,
                           "Q1Q0(x1*y1*z1)", clock));
    }
    {
      Stopwatch clock;
      out.push_back(make_note("milnor.q1q0_xyz_exponent", l,
                              "the reference expansion lists -x2*y1*z2, of degree 5, as its fourth term; "
                              "the derivation gives -x2*y1*z2^" +
                                  std::to_string(l) + " of degree " + std::to_string(2 * l + 3) +
                                  " like the other five terms",
                              clock));
    }
  } catch (const Error &e) {
    out.push_back(make_check("milnor.q1q0_xyz", l, false, e.what(), Stopwatch{}));
  }
  return out;
}

ReportList verify_q_expansion_two() {
  const unsigned p = 2;
  ReportList out;
  try {
    const auto ctx = galg::elementary_abelian(p, 3, 7);
    const Derivation q0 = milnor_q(0, ctx), q1 = milnor_q(1, ctx);
    const Element xyz = build(ctx, {{1, {{"x1", 1}, {"y1", 1}, {"z1", 1}}}});
    const Element u2 =
        build(ctx, {{1, {{"x1", 2}}}, {1, {{"x1", 1}, {"y1", 1}}}, {1, {{"y1", 2}}}});
    const Element u3 = build(ctx, {{1, {{"x1", 1}, {"y1", 2}}}, {1, {{"x1", 2}, {"y1", 1}}}});
    const Element z1 = Element::generator(ctx, "z1");
    const Element six = build(ctx, {
                                       {1, {{"x1", 4}, {"y1", 2}, {"z1", 1}}},
                                       {1, {{"x1", 4}, {"y1", 1}, {"z1", 2}}},
                                       {1, {{"x1", 2}, {"y1", 4}, {"z1", 1}}},
                                       {1, {{"x1", 2}, {"y1", 1}, {"z1", 4}}},
                                       {1, {{"x1", 1}, {"y1", 4}, {"z1", 2}}},
                                       {1, {{"x1", 1}, {"y1", 2}, {"z1", 4}}},
                                   });
    {
      Stopwatch clock;
      out.push_back(expect("milnor.two.q1_xyz", p, q1.apply(xyz),
                           build(ctx, {{1, {{"x1", 4}, {"y1", 1}, {"z1", 1}}},
                                       {1, {{"x1", 1}, {"y1", 4}, {"z1", 1}}},
                                       {1, {{"x1", 1}, {"y1", 1}, {"z1", 4}}}}),
                           "Q1(x1*y1*z1)", clock));
    }
    {
      Stopwatch clock;
      out.push_back(
          expect("milnor.two.q0q1_xyz", p, q0.apply(q1.apply(xyz)), six, "Q0Q1(x1*y1*z1)", clock));
    }
    {
      Stopwatch clock;
      out.push_back(expect("milnor.two.q1q0_xyz", p, q1.apply(q0.apply(xyz)), six,
                           "Q1Q0(x1*y1*z1)", clock));
    }
    {
      Stopwatch clock;
      const Element inv = u3 * z1 + u2 * galg::power(z1, 2) + galg::power(z1, 4);
      out.push_back(expect("milnor.two.q1_invariant", p, q1.apply(inv), six,
                           "Q1(u3*z1 + u2*z1^2 + z1^4)", clock));
    }
  } catch (const Error &e) {
    out.push_back(make_check("milnor.two.q0q1_xyz", p, false, e.what(), Stopwatch{}));
  }
  return out;
}

ReportList dickson_mui_check(unsigned prime) {
  if (prime == 2)
    throw InvalidArgument("dickson_mui_check needs an odd prime");
  const unsigned l = prime;
  Stopwatch clock;
  try {
    const int top = static_cast<int>(2 * l * l + 2);
    const auto ctx = galg::elementary_abelian(l, 2, top);
    const Derivation q0 = milnor_q(0, ctx), q1 = milnor_q(1, ctx), q2 = milnor_q(2, ctx);
    const Element xy = build(ctx, {{1, {{"x1", 1}, {"y1", 1}}}});
    const Element q0xy = q0.apply(xy);
    const Element u_low = q1.apply(q0xy);
    std::vector<Term> sum;
    for (unsigned k = 0; k <= l; ++k)
      sum.push_back({1, {{"x2", k * (l - 1)}, {"y2", (l - k) * (l - 1)}}});
    const Element u_high = build(ctx, sum);
    const Element lhs = q2.apply(q0xy);
    const Element rhs = u_low * u_high;

    const auto d_low = u_low.homogeneous_degree();
    const auto d_high = u_high.homogeneous_degree();
    const auto d_lhs = lhs.homogeneous_degree();
    const bool degrees = d_low == static_cast<int>(2 * l + 2) &&
                         d_high == static_cast<int>(2 * l * l - 2 * l) && d_lhs == top;
    const bool ok = degrees && lhs == rhs && !lhs.is_zero();
    std::string details = "Q2Q0(x1*y1) = " + lhs.to_string() + " in degree " +
                          std::to_string(d_lhs.value_or(-1));
    if (!ok)
      details += "; product " + rhs.to_string();
    return {make_check("milnor.dickson_mui", l, ok, details, clock)};
  } catch (const Error &e) {
    return {make_check("milnor.dickson_mui", l, false, e.what(), clock)};
  }
}

} // namespace milnor_forge::milnor
