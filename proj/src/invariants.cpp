#include "milnor_forge/invariants.hpp"

#include "milnor_forge/errors.hpp"
#include "milnor_forge/milnor.hpp"

#include <deque>
#include <set>

namespace milnor_forge::invariants {

using milnor::build;
using milnor::Term;

ActionMatrix::ActionMatrix(ffla::FieldMatrix m, std::string label)
    : m_(std::move(m)), label_(std::move(label)) {
  if (m_.rows() != m_.cols() || !m_.is_invertible())
    throw InvalidArgument("action matrix " + label_ + " is not invertible");
}

ActionMatrix ActionMatrix::inverse() const { return ActionMatrix(m_.inverse(), label_ + "^-1"); }

WeylPresentation weyl_generators(unsigned prime) {
  ffla::require_prime(prime);
  const auto mk = [&](std::vector<std::vector<std::int64_t>> rows, std::string label) {
    return ActionMatrix(ffla::FieldMatrix::from_signed(prime, rows), std::move(label));
  };
  return WeylPresentation{prime,
                          3,
                          {mk({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}, "D(sigma)"),
                           mk({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}, "D(tau)"),
                           mk({{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}, "G(beta)")}};
}

WeylPresentation w0_generators(unsigned prime) {
  WeylPresentation w = weyl_generators(prime);
  w.generators.pop_back();
  return w;
}

WeylPresentation sl2_generators(unsigned prime) {
  ffla::require_prime(prime);
  return WeylPresentation{
      prime,
      2,
      {ActionMatrix(ffla::FieldMatrix::from_signed(prime, {{1, 1}, {0, 1}}), "upper"),
       ActionMatrix(ffla::FieldMatrix::from_signed(prime, {{1, 0}, {1, 1}}), "lower")}};
}

galg::AlgebraMap induced_action(const ffla::FieldMatrix &m, const ContextPtr &ctx) {
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    if (ctx->generator(i).degree == 1 && ctx->partner_of(i))
      ones.push_back(i);
  const std::size_t n = ones.size();
  if (m.rows() != n || m.cols() != n)
    throw DimensionMismatch("action matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " but the context has " +
                            std::to_string(n) + " degree-1 generators");
  if (m.modulus() != ctx->prime())
    throw ContextMismatch("action matrix over a different prime");

  std::map<std::string, Element> images;
  for (std::size_t j = 0; j < n; ++j) {
    Element e1(ctx), e2(ctx);
    const bool separate = *ctx->partner_of(ones[j]) != ones[j];
    for (std::size_t i = 0; i < n; ++i) {
      const ffla::Residue c = m.at(j, i);
      if (c == 0)
        continue;
      e1.add_term(ctx->generator_monomial(ones[i]), c);
      if (separate)
        e2.add_term(ctx->generator_monomial(*ctx->partner_of(ones[i])), c);
    }
    images.emplace(ctx->generator(ones[j]).name, e1);
    if (separate)
      images.emplace(ctx->generator(*ctx->partner_of(ones[j])).name, e2);
  }
  return galg::linear_substitution(ctx, images);
}

namespace {

ffla::FieldMatrix one_minus(const ffla::FieldMatrix &g) {
  const std::uint32_t p = g.modulus();
  ffla::FieldMatrix r(g.rows(), g.cols(), p);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      r.set(i, j, ffla::sub_mod(i == j ? 1 : 0, g.at(i, j), p));
  return r;
}

std::vector<Element> to_elements(const galg::DegreeBasis &basis,
                                 const std::vector<ffla::FieldVector> &vs) {
  std::vector<Element> out;
  out.reserve(vs.size());
  for (const auto &v : vs)
    out.push_back(basis.element(v));
  return out;
}

} // namespace

std::vector<Element> invariant_subspace(const ContextPtr &ctx, int d, const WeylPresentation &w) {
  const galg::DegreeBasis basis(ctx, d);
  std::vector<galg::AlgebraMap> maps;
  for (const auto &g : w.generators) {
    maps.push_back(induced_action(g.matrix(), ctx));
    maps.push_back(induced_action(g.inverse().matrix(), ctx));
  }

  std::vector<std::vector<ffla::FieldVector>> kernels;
  kernels.push_back({});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ffla::FieldVector e(ctx->prime(), basis.size());
    e[i] = 1;
    kernels.back().push_back(e);
  }
  for (const auto &f : maps)
    kernels.push_back(ffla::nullspace(one_minus(f.matrix(basis))));
  const auto common = ffla::subspace_intersection(kernels);
  const ffla::Subspace reduced = ffla::Subspace::span(ctx->prime(), basis.size(), common);

  std::vector<Element> out = to_elements(basis, reduced.basis());
  for (const auto &v : out)
    for (const auto &f : maps)
      if (!(f.apply(v) == v))
        throw Error("invariant " + v.to_string() + " is moved by a generator");
  return out;
}

std::vector<Element> fixed_subspace(const ContextPtr &ctx, int d,
                                    const std::vector<ffla::FieldMatrix> &elements) {
  const galg::DegreeBasis basis(ctx, d);
  const std::uint32_t p = ctx->prime();
  // Current subspace as column vectors V; restrict to combinations c with (1 - g) V c = 0.
  std::vector<ffla::FieldVector> current;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ffla::FieldVector e(p, basis.size());
    e[i] = 1;
    current.push_back(e);
  }
  for (const auto &g : elements) {
    if (current.empty())
      break;
    const galg::AlgebraMap f = induced_action(g, ctx);
    ffla::FieldMatrix av(basis.size(), current.size(), p);
    for (std::size_t c = 0; c < current.size(); ++c) {
      const Element v = basis.element(current[c]);
      const auto col = basis.coordinates(v - f.apply(v));
      for (std::size_t r = 0; r < basis.size(); ++r)
        av.set(r, c, col[r]);
    }
    std::vector<ffla::FieldVector> next;
    for (const auto &coeffs : ffla::nullspace(av)) {
      ffla::FieldVector v(p, basis.size());
      for (std::size_t c = 0; c < current.size(); ++c)
        v.add_scaled(current[c], coeffs[c]);
      next.push_back(v);
    }
    current = std::move(next);
  }
  const ffla::Subspace reduced = ffla::Subspace::span(p, basis.size(), current);
  return to_elements(basis, reduced.basis());
}

bool spans_contain(const std::vector<Element> &basis, const std::vector<Element> &elements) {
  if (elements.empty())
    return true;
  const auto &ctx = elements.front().context();
  std::optional<int> d;
  for (const auto &e : elements)
    if (auto de = e.homogeneous_degree())
      d = de;
  if (!d)
    return true;
  const galg::DegreeBasis db(ctx, *d);
  std::vector<ffla::FieldVector> vs;
  for (const auto &b : basis)
    vs.push_back(db.coordinates(b));
  const auto span = ffla::Subspace::span(ctx->prime(), db.size(), vs);
  for (const auto &e : elements)
    if (!span.contains(db.coordinates(e)))
      return false;
  return true;
}

std::vector<ffla::FieldMatrix> group_closure(const WeylPresentation &w, std::size_t cap) {
  const auto key = [](const ffla::FieldMatrix &m) {
    std::vector<ffla::Residue> k;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (auto v : m.row_span(i))
        k.push_back(v);
    return k;
  };
  const auto id = ffla::FieldMatrix::identity(w.rank, w.prime);
  std::vector<ffla::FieldMatrix> out{id};
  std::set<std::vector<ffla::Residue>> seen{key(id)};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const ffla::FieldMatrix m = out[queue.front()];
    queue.pop_front();
    for (const auto &g : w.generators) {
      ffla::FieldMatrix next = m * g.matrix();
      if (seen.insert(key(next)).second) {
        if (out.size() >= cap)
          throw Error("group closure exceeded " + std::to_string(cap) + " elements");
        out.push_back(std::move(next));
        queue.push_back(out.size() - 1);
      }
    }
  }
  return out;
}

namespace {

bool upper_block_sl2(const ffla::FieldMatrix &m) {
  if (m.rows() != 3 || m.cols() != 3)
    return false;
  const std::uint32_t p = m.modulus();
  const auto det = ffla::sub_mod(ffla::mul_mod(m.at(0, 0), m.at(1, 1), p),
                                 ffla::mul_mod(m.at(0, 1), m.at(1, 0), p), p);
  return det == 1 && m.at(0, 2) == 0 && m.at(1, 2) == 0 && m.at(2, 2) == 1;
}

} // namespace

bool literal_shape(const ffla::FieldMatrix &m) { return upper_block_sl2(m) && m.at(2, 1) == 0; }

bool block_shape(const ffla::FieldMatrix &m) { return upper_block_sl2(m); }

ContextPtr ba3_context(unsigned prime) {
  return galg::elementary_abelian(prime, 3, prime == 2 ? 7 : static_cast<int>(2 * prime + 3),
                                  true);
}

namespace {

std::string render(const std::vector<Element> &basis) {
  std::string s = "{";
  for (std::size_t i = 0; i < basis.size(); ++i)
    s += (i ? ", " : "") + basis[i].to_string();
  return s + "}";
}

CheckReport span_check(std::string id, unsigned prime, const std::vector<Element> &basis,
                       std::size_t want_dim, const std::vector<Element> &expected,
                       const Stopwatch &clock) {
  const bool ok = basis.size() == want_dim && spans_contain(basis, expected);
  return make_check(std::move(id), prime, ok,
                    "dim " + std::to_string(basis.size()) + " (expected " +
                        std::to_string(want_dim) + "), basis " + render(basis),
                    clock);
}

} // namespace

ReportList verify_odd_invariants(unsigned prime) {
  if (prime == 2)
    throw InvalidArgument("verify_odd_invariants needs an odd prime");
  const unsigned l = prime;
  ReportList out;
  const auto ctx = ba3_context(l);
  const Element xyz = build(ctx, {{1, {{"x1", 1}, {"y1", 1}, {"z1", 1}}}});
  const auto q0 = milnor::milnor_q(0, ctx), q1 = milnor::milnor_q(1, ctx);
  {
    Stopwatch clock;
    const auto basis = invariant_subspace(ctx, 4, w0_generators(l));
    const std::vector<Element> expected{
        build(ctx, {{1, {{"z2", 2}}}}),
        build(ctx, {{1, {{"x1", 1}, {"y1", 1}, {"z2", 1}}}}),
        build(ctx, {{1, {{"x2", 1}, {"y1", 1}, {"z1", 1}}}, {-1, {{"x1", 1}, {"y2", 1}, {"z1", 1}}}}),
    };
    out.push_back(span_check("invariants.h4_w0", l, basis, 3, expected, clock));
  }
  {
    Stopwatch clock;
    const auto basis = invariant_subspace(ctx, 4, weyl_generators(l));
    out.push_back(span_check("invariants.h4_w", l, basis, 1, {q0.apply(xyz)}, clock));

    Stopwatch clock2;
    bool ok = basis.size() == 1;
    std::string details = "no invariant class";
    if (ok) {
      const Element image = q1.apply(basis.front());
      ok = !image.is_zero() && image.homogeneous_degree() == static_cast<int>(2 * l + 3);
      details = "Q1(" + basis.front().to_string() + ") = " + image.to_string();
    }
    out.push_back(make_check("invariants.q1_nonzero", l, ok, details, clock2));
  }
  return out;
}

ReportList verify_two_primary_invariants() {
  const unsigned p = 2;
  ReportList out;
  const auto ctx = ba3_context(p);
  const Element u2 = build(ctx, {{1, {{"x1", 2}}}, {1, {{"x1", 1}, {"y1", 1}}}, {1, {{"y1", 2}}}});
  const Element u3 = build(ctx, {{1, {{"x1", 1}, {"y1", 2}}}, {1, {{"x1", 2}, {"y1", 1}}}});
  const Element z1 = Element::generator(ctx, "z1");
  const Element z1_2 = galg::power(z1, 2), z1_4 = galg::power(z1, 4);
  {
    Stopwatch clock;
    const auto basis = invariant_subspace(ctx, 2, w0_generators(p));
    out.push_back(make_check("invariants.two.u2_w0", p, spans_contain(basis, {u2}),
                             "degree-2 W0 invariants " + render(basis), clock));
  }
  {
    Stopwatch clock;
    const auto basis = invariant_subspace(ctx, 4, w0_generators(p));
    out.push_back(
        span_check("invariants.h4_w0", p, basis, 4, {u2 * u2, u3 * z1, u2 * z1_2, z1_4}, clock));
  }
  {
    Stopwatch clock;
    const Element mixed = u3 * z1 + u2 * z1_2 + z1_4;
    const auto basis = invariant_subspace(ctx, 4, weyl_generators(p));
    out.push_back(span_check("invariants.h4_w", p, basis, 2, {u2 * u2, mixed}, clock));

    Stopwatch clock2;
    const auto q1 = milnor::milnor_q(1, ctx);
    bool ok = false;
    std::string details;
    for (const auto &v : basis) {
      const Element image = q1.apply(v);
      details += (details.empty() ? "" : "; ") + ("Q1(" + v.to_string() + ") = " + image.to_string());
      ok = ok || (!image.is_zero() && image.homogeneous_degree() == 7);
    }
    out.push_back(make_check("invariants.q1_nonzero", p, ok, details, clock2));
  }
  return out;
}

ReportList dickson_invariance(unsigned prime) {
  const unsigned l = prime;
  Stopwatch clock;
  const WeylPresentation sl2 = sl2_generators(l);
  std::vector<std::pair<std::string, Element>> targets;
  galg::ContextPtr ctx;
  if (l == 2) {
    ctx = galg::elementary_abelian(2, 2, 4);
    targets.emplace_back("u2", build(ctx, {{1, {{"x1", 2}}}, {1, {{"x1", 1}, {"y1", 1}}}, {1, {{"y1", 2}}}}));
    targets.emplace_back("u3", build(ctx, {{1, {{"x1", 1}, {"y1", 2}}}, {1, {{"x1", 2}, {"y1", 1}}}}));
  } else {
    ctx = galg::elementary_abelian(l, 2, static_cast<int>(2 * l + 2));
    const auto q0 = milnor::milnor_q(0, ctx), q1 = milnor::milnor_q(1, ctx);
    const Element xy = build(ctx, {{1, {{"x1", 1}, {"y1", 1}}}});
    targets.emplace_back("x1*y1", xy);
    targets.emplace_back("Q0(x1*y1)", q0.apply(xy));
    targets.emplace_back("Q1(x1*y1)", q1.apply(xy));
    targets.emplace_back("u_{2l+2}", q1.apply(q0.apply(xy)));
  }
  bool ok = true;
  std::string details;
  const galg::AlgebraMap identity =
      induced_action(ffla::FieldMatrix::identity(2, l), ctx);
  for (const auto &[name, e] : targets) {
    ok = ok && identity.apply(e) == e;
    for (const auto &g : sl2.generators) {
      if (!(induced_action(g.matrix(), ctx).apply(e) == e)) {
        ok = false;
        details += name + " moved by " + g.label() + "; ";
      }
    }
  }
  if (ok) {
    details = "fixed by both SL_2 generators:";
    for (const auto &t : targets)
      details += " " + t.first;
  }
  return {make_check("invariants.dickson_invariance", l, ok, details, clock)};
}

ReportList group_closure_oracle(unsigned prime, Status literal_status) {
  const unsigned l = prime;
  ReportList out;
  Stopwatch clock;
  if (l > 5)
    throw InvalidArgument("closure enumeration is limited to primes up to 5");
  const WeylPresentation w = weyl_generators(l);
  const auto elements = group_closure(w);
  const std::size_t want = static_cast<std::size_t>(l) * l * (l * l * l - l);

  std::size_t block = 0, literal = 0;
  for (const auto &m : elements) {
    block += block_shape(m) ? 1 : 0;
    literal += literal_shape(m) ? 1 : 0;
  }
  out.push_back(make_check("invariants.closure.order", l,
                           elements.size() == want && block == elements.size(),
                           "|W| = " + std::to_string(elements.size()) + ", expected l^2 (l^3 - l) = " +
                               std::to_string(want) + "; " + std::to_string(block) +
                               " elements of shape [[a,b,0],[c,d,0],[*,*,1]] with ad-bc=1",
                           clock));

  {
    Stopwatch c2;
    std::string details = std::to_string(literal) + " of " + std::to_string(elements.size()) +
                          " elements have the literal shape [[a,b,0],[c,d,0],[*,0,1]]";
    if (literal != elements.size()) {
      for (const auto &m : elements)
        if (!literal_shape(m)) {
          details += "; e.g. " + m.to_string() + " has bottom row (" +
                     std::to_string(m.at(2, 0)) + "," + std::to_string(m.at(2, 1)) + "," +
                     std::to_string(m.at(2, 2)) + ")";
          break;
        }
      details += "; the literal set has only " + std::to_string(l * (l * l * l - l)) +
                 " elements and is not closed under products";
    }
    CheckReport r{"invariants.closure.shape_literal", l,
                  literal == elements.size() ? Status::pass : literal_status, details,
                  c2.elapsed_ms()};
    out.push_back(r);
  }

  {
    Stopwatch c3;
    const auto ctx = ba3_context(l);
    const auto from_gens = invariant_subspace(ctx, 4, w);
    const auto from_all = fixed_subspace(ctx, 4, elements);
    const bool ok = from_gens.size() == from_all.size() && spans_contain(from_gens, from_all) &&
                    spans_contain(from_all, from_gens);
    out.push_back(make_check("invariants.closure.agree", l, ok,
                             "generator invariants " + render(from_gens) + ", full-group invariants " +
                                 render(from_all),
                             c3));
  }
  return out;
}

ReportList f_star_sign_report(unsigned prime) {
  if (prime == 2)
    throw InvalidArgument("f_star_sign_report needs an odd prime");
  const unsigned l = prime;
  Stopwatch clock;
  const auto ctx = ba3_context(l);
  const std::vector<std::pair<std::string, Element>> inputs{
      {"z2^2", build(ctx, {{1, {{"z2", 2}}}})},
      {"x1*y1*z2", build(ctx, {{1, {{"x1", 1}, {"y1", 1}, {"z2", 1}}}})},
      {"(x2*y1 - x1*y2)*z1",
       build(ctx, {{1, {{"x2", 1}, {"y1", 1}, {"z1", 1}}}, {-1, {{"x1", 1}, {"y2", 1}, {"z1", 1}}}})},
  };
  std::string details;
  for (const auto &[label, sgn] : std::vector<std::pair<std::string, std::int64_t>>{
           {"z -> x + z", 1}, {"z -> z - x", -1}}) {
    const auto f = induced_action(
        ffla::FieldMatrix::from_signed(l, {{1, 0, 0}, {0, 1, 0}, {sgn, 0, 1}}), ctx);
    details += (details.empty() ? "" : "; ") + label + ":";
    for (const auto &[name, e] : inputs)
      details += " (1-f*)(" + name + ") = " + (e - f.apply(e)).to_string() + ",";
    details.pop_back();
  }
  details += "; the reference values -x2^2, x1*x2*y1, -x1*x2*y1 match neither convention "
             "exactly; the kernel is the same under both";
  return {make_note("invariants.f_star_sign", l, details, clock)};
}

ReportList convention_independence(unsigned prime) {
  Stopwatch clock;
  const auto ctx = ba3_context(prime);
  const WeylPresentation w = weyl_generators(prime);
  std::vector<ffla::FieldMatrix> plain, inverted;
  for (const auto &g : w.generators) {
    plain.push_back(g.matrix());
    inverted.push_back(g.inverse().matrix());
  }
  const auto a = fixed_subspace(ctx, 4, plain);
  const auto b = fixed_subspace(ctx, 4, inverted);
  const bool ok = a.size() == b.size() && spans_contain(a, b) && spans_contain(b, a);
  return {make_check("invariants.convention_independence", prime, ok,
                     "W invariants " + render(a) + ", inverted generators " + render(b), clock)};
}

} // namespace milnor_forge::invariants
