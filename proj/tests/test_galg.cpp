#include "milnor_forge/errors.hpp"
#include "milnor_forge/galg.hpp"

#include <doctest.h>

#include <random>

using namespace milnor_forge;
using namespace milnor_forge::galg;

namespace {

// Coefficients of prod (1 + t^d) over odd and prod 1/(1 - t^d) over even generators.
std::vector<long> poincare(const AlgebraContext &ctx) {
  const int n = ctx.n_work();
  std::vector<long> s(n + 1, 0);
  s[0] = 1;
  for (const auto &g : ctx.generators()) {
    if (g.odd) {
      for (int k = n; k >= g.degree; --k)
        s[k] += s[k - g.degree];
    } else {
      for (int k = g.degree; k <= n; ++k)
        s[k] += s[k - g.degree];
    }
  }
  return s;
}

Element random_homogeneous(std::mt19937_64 &rng, const ContextPtr &ctx, int d) {
  Element e(ctx);
  std::uniform_int_distribution<std::int64_t> c(0, ctx->prime() - 1);
  for (const auto &m : basis_of_degree(*ctx, d))
    e = e + Element::monomial(ctx, m, c(rng));
  return e;
}

} // namespace

TEST_CASE("basis dimensions follow the Poincare series") {
  for (unsigned p : {2u, 3u, 5u}) {
    for (std::size_t rank = 1; rank <= 3; ++rank) {
      const auto ctx = elementary_abelian(p, rank, 9);
      const auto want = poincare(*ctx);
      for (int d = 0; d <= 9; ++d)
        CHECK(static_cast<long>(basis_of_degree(*ctx, d).size()) == want[d]);
    }
  }
  CHECK_THROWS_AS(basis_of_degree(*elementary_abelian(3, 1, 4), 5), InvalidArgument);
}

TEST_CASE("monomial relations remove basis elements") {
  std::vector<GeneratorSpec> gens{{"b2", 2, false, {}, {}}, {"c2", 2, false, {}, {}}};
  const auto ctx = AlgebraContext::create(3, gens, 8, {Monomial{{1, 1}}});
  CHECK(basis_of_degree(*ctx, 4).size() == 2);
  CHECK(basis_of_degree(*ctx, 6).size() == 2);
  const auto b = Element::generator(ctx, "b2"), c = Element::generator(ctx, "c2");
  CHECK((b * c).is_zero());
  CHECK((b * b * c).is_zero());
  CHECK_FALSE((b * b).is_zero());
}

TEST_CASE("Koszul signs") {
  const auto ctx = elementary_abelian(3, 2, 6);
  const auto x1 = Element::generator(ctx, "x1"), y1 = Element::generator(ctx, "y1");
  const auto x2 = Element::generator(ctx, "x2");
  CHECK(x1 * y1 == -(y1 * x1));
  CHECK((x1 * x1).is_zero());
  CHECK(x1 * x2 == x2 * x1);
  CHECK(x1 * y1 * x2 == x2 * x1 * y1);
  CHECK(x1.to_string() != y1.to_string());

  const auto two = elementary_abelian(2, 2, 6);
  const auto a = Element::generator(two, "x1"), b = Element::generator(two, "y1");
  CHECK(a * b == b * a);
  CHECK_FALSE((a * a).is_zero());
}

TEST_CASE("graded commutativity on random elements") {
  std::mt19937_64 rng(5);
  for (unsigned p : {3u, 5u}) {
    const auto ctx = elementary_abelian(p, 3, 8);
    for (int trial = 0; trial < 30; ++trial) {
      const int da = 1 + trial % 3, db = 1 + (trial / 3) % 3;
      const auto a = random_homogeneous(rng, ctx, da), b = random_homogeneous(rng, ctx, db);
      const auto ab = a * b, ba = b * a;
      CHECK(ab == ((da * db) % 2 ? -ba : ba));
    }
  }
}

TEST_CASE("truncation") {
  const auto ctx = elementary_abelian(3, 1, 4);
  const auto x2 = Element::generator(ctx, "x2");
  CHECK_NOTHROW(multiply(x2, x2));
  CHECK_THROWS_AS(multiply(x2 * x2, x2), TruncationOverflow);
  CHECK(multiply(x2 * x2, x2, Mode::truncating).is_zero());
  CHECK_THROWS_AS(power(x2, 3), TruncationOverflow);
  CHECK(power(x2, 2) == x2 * x2);
  CHECK(power(x2, 0) == Element::one(ctx));
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(AlgebraContext::create(4, {{"a", 2, false, {}, {}}}, 4), NotPrime);
  CHECK_THROWS_AS(AlgebraContext::create(3, {{"a", 2, false, {}, {}}}, -1), InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(3, {{"a", 2, true, {}, {}}}, 4), InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(2, {{"a", 1, true, {}, {}}}, 4), InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(3, {{"a", 0, false, {}, {}}}, 4), InvalidArgument);
  CHECK_THROWS_AS(
      AlgebraContext::create(3, {{"a", 2, false, {}, {}}, {"a", 2, false, {}, {}}}, 4),
      InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(3, {{"a", 1, true, {}, "b"}}, 4), InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(3, {{"a", 1, true, {}, "a"}}, 4), InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(
                      3, {{"a", 2, false, Bidegree{2, 0}, {}}, {"b", 2, false, {}, {}}}, 4),
                  InvalidArgument);
  CHECK_THROWS_AS(AlgebraContext::create(3, {{"a", 2, false, Bidegree{1, 0}, {}}}, 4),
                  InvalidArgument);
  CHECK_THROWS_AS(elementary_abelian(3, 4, 4), InvalidArgument);
  const auto ctx = elementary_abelian(3, 1, 4);
  CHECK_THROWS_AS(ctx->index_of("w9"), InvalidArgument);
  CHECK_THROWS_AS(Element::generator(ctx, "w9"), InvalidArgument);
}

TEST_CASE("elements from different contexts do not mix") {
  const auto a = elementary_abelian(3, 1, 4), b = elementary_abelian(3, 1, 4);
  CHECK_THROWS_AS(Element::one(a) + Element::one(b), ContextMismatch);
  CHECK_THROWS_AS(Element::one(a) * Element::one(b), ContextMismatch);
}

TEST_CASE("degree basis round trip") {
  std::mt19937_64 rng(9);
  const auto ctx = elementary_abelian(5, 2, 7);
  for (int d = 0; d <= 7; ++d) {
    const DegreeBasis basis(ctx, d);
    for (int trial = 0; trial < 10; ++trial) {
      const auto e = random_homogeneous(rng, ctx, d);
      CHECK(basis.element(basis.coordinates(e)) == e);
    }
  }
  const DegreeBasis b2(ctx, 2);
  CHECK_THROWS_AS(b2.coordinates(Element::generator(ctx, "x1")), InvalidArgument);
  CHECK_THROWS_AS(b2.element(ffla::FieldVector(5, b2.size() + 1)), DimensionMismatch);
}

TEST_CASE("bidegrees") {
  const auto ctx = elementary_abelian(3, 3, 6, true);
  CHECK(ctx->has_bidegrees());
  const auto m = (Element::generator(ctx, "x2") * Element::generator(ctx, "z1")).terms();
  CHECK(ctx->bidegree(m.begin()->first) == Bidegree{2, 1});
  CHECK_THROWS_AS(elementary_abelian(3, 1, 4)->bidegree(Monomial{{0, 0}}), InvalidArgument);
}

TEST_CASE("linear substitution") {
  const auto ctx = elementary_abelian(3, 2, 6);
  const auto x1 = Element::generator(ctx, "x1"), y1 = Element::generator(ctx, "y1");
  const auto x2 = Element::generator(ctx, "x2"), y2 = Element::generator(ctx, "y2");
  const auto swap = linear_substitution(ctx, {{"x1", y1}, {"y1", x1}, {"x2", y2}, {"y2", x2}});
  CHECK(swap.apply(x1 * y1) == -(x1 * y1));
  CHECK(swap.compose(swap).apply(x1 * y2 * y2) == x1 * y2 * y2);
  CHECK_THROWS_AS(linear_substitution(ctx, {{"x1", x2}}), InvalidArgument);
  CHECK_THROWS_AS(linear_substitution(ctx, {{"x2", x1 + x2}}), InvalidArgument);
  CHECK_NOTHROW(linear_substitution(ctx, {{"x2", x1 * y1}}));
  const DegreeBasis b(ctx, 2);
  const auto m = swap.matrix(b);
  CHECK(m.rows() == b.size());
}
