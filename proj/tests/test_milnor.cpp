#include "milnor_forge/errors.hpp"
#include "milnor_forge/milnor.hpp"

#include <doctest.h>

#include <random>

using namespace milnor_forge;
using namespace milnor_forge::galg;
using milnor_forge::milnor::Derivation;

namespace {

Element gen(const ContextPtr &c, const char *name) { return Element::generator(c, name); }

// Q_j on a monomial written as an ordered product of generators, expanded one
// factor at a time.
Element oracle_q(unsigned j, const ContextPtr &ctx, const Monomial &m) {
  const unsigned p = ctx->prime();
  std::vector<std::size_t> factors;
  for (std::size_t i = 0; i < ctx->size(); ++i)
    for (unsigned e = 0; e < m.exps[i]; ++e)
      factors.push_back(i);
  auto q_gen = [&](std::size_t i) {
    const auto &g = ctx->generator(i);
    if (p == 2)
      return power(Element::generator(ctx, i), 1u << (j + 1), Mode::truncating);
    if (!g.odd)
      return Element::zero(ctx);
    const auto partner = Element::generator(ctx, *ctx->partner_of(i));
    unsigned e = 1;
    for (unsigned k = 0; k < j; ++k)
      e *= p;
    return power(partner, e, Mode::truncating);
  };
  Element out = Element::zero(ctx);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Element left = Element::one(ctx);
    int odd_before = 0;
    for (std::size_t a = 0; a < k; ++a) {
      left = multiply(left, Element::generator(ctx, factors[a]), Mode::truncating);
      odd_before += ctx->generator(factors[a]).odd;
    }
    Element term = multiply(left, q_gen(factors[k]), Mode::truncating);
    for (std::size_t a = k + 1; a < factors.size(); ++a)
      term = multiply(term, Element::generator(ctx, factors[a]), Mode::truncating);
    out = out + (odd_before % 2 ? -term : term);
  }
  return out;
}

bool all_pass(const ReportList &r) {
  for (const auto &x : r)
    if (x.status == Status::fail)
      return false;
  return !r.empty();
}

} // namespace

TEST_CASE("hand values at odd primes") {
  for (unsigned p : {3u, 5u}) {
    const auto ctx = elementary_abelian(p, 2, 2 * p + 2);
    const auto x1 = gen(ctx, "x1"), x2 = gen(ctx, "x2"), y1 = gen(ctx, "y1"), y2 = gen(ctx, "y2");
    const auto q0 = milnor::milnor_q(0, ctx), q1 = milnor::milnor_q(1, ctx);
    CHECK(q0.apply(x1 * y1) == x2 * y1 - x1 * y2);
    CHECK(q1.apply(x1 * y1) == power(x2, p) * y1 - x1 * power(y2, p));
    CHECK(q0.apply(x2).is_zero());
    CHECK(q1.shift() == static_cast<int>(2 * p - 1));
  }
}

TEST_CASE("hand values at p = 2") {
  const auto ctx = elementary_abelian(2, 2, 8);
  const auto x = gen(ctx, "x1"), y = gen(ctx, "y1");
  const auto q0 = milnor::milnor_q(0, ctx), q1 = milnor::milnor_q(1, ctx);
  CHECK(q0.apply(x) == x * x);
  CHECK(q1.apply(x) == power(x, 4));
  CHECK(q0.apply(x * y) == x * x * y + x * y * y);
  CHECK(q0.apply(x * x).is_zero());
  CHECK(q0.apply(q0.apply(x * y * y)).is_zero());
}

TEST_CASE("Q_j agrees with a factor-by-factor Leibniz oracle") {
  for (unsigned p : {2u, 3u, 5u}) {
    const int n = p == 2 ? 12 : 2 * static_cast<int>(p) + 6;
    const auto ctx = elementary_abelian(p, 3, n);
    for (unsigned j = 0; j <= 1; ++j) {
      const auto q = milnor::milnor_q(j, ctx);
      for (int d = 0; d + q.shift() <= n && d <= 5; ++d)
        for (const auto &m : basis_of_degree(*ctx, d))
          CHECK(q.apply(m) == oracle_q(j, ctx, m));
    }
  }
}

TEST_CASE("Q_j square to zero and anticommute") {
  std::mt19937_64 rng(21);
  for (unsigned p : {3u, 5u}) {
    const int n = 4 * static_cast<int>(p) + 4;
    const auto ctx = elementary_abelian(p, 3, n);
    const auto q0 = milnor::milnor_q(0, ctx), q1 = milnor::milnor_q(1, ctx);
    for (int d = 1; d <= 4; ++d)
      for (const auto &m : basis_of_degree(*ctx, d)) {
        CHECK(q0.apply(q0.apply(m)).is_zero());
        CHECK(q1.apply(q1.apply(m), Mode::truncating).is_zero());
        CHECK(q0.apply(q1.apply(m)) == -q1.apply(q0.apply(m)));
      }
  }
}

TEST_CASE("errors") {
  const auto small = elementary_abelian(3, 1, 4);
  CHECK_THROWS_AS(milnor::milnor_q(1, small), TruncationOverflow);
  const auto bare = AlgebraContext::create(3, {{"a", 2, false, {}, {}}}, 6);
  CHECK_THROWS_AS(milnor::milnor_q(0, bare), InvalidArgument);
  const auto ctx = elementary_abelian(3, 1, 6);
  CHECK_THROWS_AS(Derivation::from_map(ctx, 1, {{"x1", gen(ctx, "x1")}}), InvalidArgument);
  CHECK_NOTHROW(Derivation::from_map(ctx, 1, {{"x1", gen(ctx, "x2")}}));
}

TEST_CASE("build multiplies factors in written order") {
  const auto ctx = elementary_abelian(3, 2, 6);
  const auto e = milnor::build(ctx, {{1, {{"y1", 1}, {"x1", 1}}}, {2, {{"x2", 2}}}});
  CHECK(e == gen(ctx, "y1") * gen(ctx, "x1") + (gen(ctx, "x2") * gen(ctx, "x2")).scaled(2));
}

TEST_CASE("expansion suites") {
  CHECK(all_pass(milnor::verify_q_expansion_two()));
  for (unsigned p : {3u, 5u, 7u}) {
    CHECK(all_pass(milnor::verify_q_expansion_odd(p)));
    CHECK(all_pass(milnor::dickson_mui_check(p)));
  }
}
