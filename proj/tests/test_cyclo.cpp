#include "milnor_forge/cyclo.hpp"
#include "milnor_forge/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

using namespace milnor_forge;
using namespace milnor_forge::cyclo;

namespace {

using C = std::complex<double>;

// Numeric value with t = exp(2 pi i / n).
C evaluate(const CycInt &a) {
  const auto lift = a.lift();
  const double n = static_cast<double>(lift.size());
  C out = 0;
  for (std::size_t k = 0; k < lift.size(); ++k)
    out += static_cast<double>(lift[k]) * std::polar(1.0, 2 * std::numbers::pi * k / n);
  return out;
}

CycInt random_element(std::mt19937_64 &rng, unsigned p) {
  std::vector<std::int64_t> c(root_order(p));
  std::uniform_int_distribution<std::int64_t> d(-9, 9);
  for (auto &x : c)
    x = d(rng);
  return CycInt::from_group_ring(p, c);
}

bool all_pass(const ReportList &r) {
  for (const auto &x : r)
    if (x.status == Status::fail)
      return false;
  return !r.empty();
}

} // namespace

TEST_CASE("ring structure") {
  CHECK(root_order(2) == 4);
  CHECK(root_order(7) == 7);
  CHECK(ring_rank(2) == 2);
  CHECK(ring_rank(11) == 10);
  CHECK_THROWS_AS(CycInt(6), NotPrime);
  CHECK_THROWS_AS(CycInt::imaginary_unit(3), InvalidArgument);
}

TEST_CASE("arithmetic agrees with complex evaluation") {
  std::mt19937_64 rng(17);
  for (unsigned p : {2u, 3u, 5u, 7u, 13u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_element(rng, p), b = random_element(rng, p);
      CHECK(std::abs(evaluate(a * b) - evaluate(a) * evaluate(b)) < 1e-6);
      CHECK(std::abs(evaluate(a + b) - (evaluate(a) + evaluate(b))) < 1e-9);
      CHECK(std::abs(evaluate(a.conj()) - std::conj(evaluate(a))) < 1e-9);
    }
  }
}

TEST_CASE("roots of unity") {
  for (unsigned p : {3u, 5u, 7u}) {
    const auto xi = CycInt::root_of_unity(p, 1);
    CycInt acc = CycInt::integer(p, 1);
    for (unsigned k = 0; k < p; ++k)
      acc = acc * xi;
    CHECK(acc == CycInt::integer(p, 1));
    CHECK(CycInt::root_of_unity(p, -1) == xi.conj());
    // 1 + xi + ... + xi^{l-1} = 0
    CycInt sum(p);
    for (unsigned k = 0; k < p; ++k)
      sum = sum + CycInt::root_of_unity(p, k);
    CHECK(sum.is_zero());
  }
  const auto i = CycInt::imaginary_unit(2);
  CHECK(i * i == CycInt::integer(2, -1));
  CHECK(CycInt::root_of_unity(2, 1) == CycInt::integer(2, -1));
}

TEST_CASE("root power sums match a numeric oracle") {
  for (unsigned p : {3u, 5u, 7u, 11u, 13u}) {
    for (std::int64_t m = -3; m < static_cast<std::int64_t>(2 * p); ++m) {
      C s = 0;
      for (unsigned k = 1; k <= p; ++k)
        s += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k * m) / p);
      CHECK(root_power_sum(p, m) == std::llround(s.real()));
    }
  }
}

TEST_CASE("triangular shift identity against the closed form") {
  for (std::int64_t l : {3, 5, 7}) {
    for (std::int64_t i = 0; i < l; ++i)
      for (std::int64_t j = 0; j < l; ++j)
        for (std::int64_t k = 0; k < l; ++k) {
          auto a = [](std::int64_t n) { return n * (n + 1) / 2; };
          const std::int64_t lhs = a(j + k) - a(i + k), rhs = k * (j - i) + a(j) - a(i);
          CHECK(((lhs - rhs) % l == 0) == triangular_shift_holds(l, i, j, k));
        }
  }
  CHECK(triangular(4) == 10);
  CHECK_THROWS_AS(triangular(-1), InvalidArgument);
}

TEST_CASE("coefficient overflow is reported") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
  const auto a = CycInt::integer(3, big);
  CHECK_THROWS_AS(a + a, ArithmeticOverflow);
  CHECK_THROWS_AS(a * a, ArithmeticOverflow);
}

TEST_CASE("matrix helpers") {
  const auto g = su_generators(5);
  CHECK(g.alpha.monomial_determinant() == CycInt::integer(5, 1));
  CHECK(g.beta.monomial_determinant() == CycInt::integer(5, 1));
  CHECK(g.alpha * g.alpha.unitary_inverse() == CycMatrix::identity(5, 5));
  CHECK_THROWS_AS(g.T.monomial_determinant(), InvalidArgument);
  CHECK_THROWS_AS(g.T.unitary_inverse(), InvalidArgument);
  CHECK(commutator(g.alpha, g.alpha) == CycMatrix::identity(5, 5));
  CHECK_FALSE(g.alpha.first_mismatch(g.alpha));
  CHECK(g.alpha.first_mismatch(g.beta));
  CHECK_THROWS_AS(g.alpha * CycMatrix::identity(3, 5), ContextMismatch);
  CHECK_THROWS_AS(g.alpha * CycMatrix::identity(5, 3), DimensionMismatch);
  CHECK_THROWS_AS(su_generators(2), InvalidArgument);
}

TEST_CASE("matrix identity suites pass") {
  for (unsigned p : {3u, 5u, 7u}) {
    CHECK(all_pass(verify_su_generators(p)));
    CHECK(all_pass(verify_weyl_conjugation(p)));
    CHECK(all_pass(verify_g1_relations(p)));
    CHECK(all_pass(verify_sl2_generation(p)));
    CHECK(all_pass(verify_root_power_sums(p)));
    CHECK(all_pass(verify_triangular_shift(p)));
  }
  const auto two = verify_l2_generators();
  CHECK(all_pass(two));
  bool sigma_note = false;
  for (const auto &r : two)
    sigma_note |= r.check_id == "matrices.l2.sigma_candidate" && r.status == Status::note;
  CHECK(sigma_note);
  CHECK(all_pass(verify_sl2_generation(2)));
}

TEST_CASE("sl2 generation reaches the full group order") {
  for (unsigned p : {2u, 3u, 5u}) {
    const auto r = verify_sl2_generation(p);
    bool found = false;
    for (const auto &x : r)
      if (x.check_id == "matrices.sl2.order") {
        found = true;
        CHECK(x.status == Status::pass);
        CHECK(x.details.find(std::to_string(p * (p * p - 1))) != std::string::npos);
      }
    CHECK(found);
  }
}
