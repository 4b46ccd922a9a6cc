#include "milnor_forge/errors.hpp"
#include "milnor_forge/ffla.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace milnor_forge;
using namespace milnor_forge::ffla;

namespace {

// All vectors of F_p^n.
std::vector<std::vector<Residue>> all_vectors(unsigned p, std::size_t n) {
  std::vector<std::vector<Residue>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<Residue>> next;
    for (const auto &v : out)
      for (Residue a = 0; a < p; ++a) {
        auto w = v;
        w.push_back(a);
        next.push_back(w);
      }
    out = next;
  }
  return out;
}

// Span membership by enumerating every combination.
bool brute_in_span(unsigned p, const std::vector<FieldVector> &gens, const std::vector<Residue> &v) {
  const std::size_t n = v.size();
  for (const auto &coeffs : all_vectors(p, gens.size())) {
    std::vector<Residue> acc(n, 0);
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (std::size_t i = 0; i < n; ++i)
        acc[i] = add_mod(acc[i], mul_mod(coeffs[k], gens[k][i], p), p);
    if (acc == v)
      return true;
  }
  return false;
}

std::int64_t leibniz_det(const std::vector<std::vector<std::int64_t>> &m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    std::int64_t term = 1;
    for (std::size_t i = 0; i < n; ++i)
      term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        inversions += perm[i] > perm[j];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

FieldMatrix random_matrix(std::mt19937_64 &rng, unsigned p, std::size_t r, std::size_t c) {
  FieldMatrix m(r, c, p);
  std::uniform_int_distribution<Residue> d(0, p - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.set(i, j, d(rng));
  return m;
}

} // namespace

TEST_CASE("scalar arithmetic and primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(require_prime(4), NotPrime);
  CHECK_THROWS_AS(FieldScalar(1, 9), NotPrime);

  const FieldScalar a(3, 7), b(5, 7);
  CHECK((a * b).residue() == 1);
  CHECK((a / b).residue() == mul_mod(3, inverse_mod(5, 7), 7));
  CHECK((-a).residue() == 4);
  CHECK(reduce_signed(-1, 5) == 4);
  CHECK(symmetric(4, 5) == -1);
  CHECK_THROWS_AS(FieldScalar(0, 5).inverse(), InvalidArgument);
  CHECK_THROWS_AS(FieldScalar(1, 5) + FieldScalar(1, 7), DimensionMismatch);
  for (Residue x = 1; x < 13; ++x)
    CHECK(mul_mod(x, inverse_mod(x, 13), 13) == 1);
}

TEST_CASE("rref of a known matrix") {
  const auto m = FieldMatrix::from_signed(5, {{1, 2, 3}, {2, 4, 1}, {0, 0, 4}});
  const auto r = rref(m);
  CHECK(r.rank == 2);
  CHECK(r.pivot_columns == std::vector<std::size_t>{0, 2});
  CHECK(r.reduced.row(0) == FieldVector(5, std::vector<Residue>{1, 2, 0}));
  CHECK(r.reduced.row(1) == FieldVector(5, std::vector<Residue>{0, 0, 1}));
  CHECK(r.reduced.row(2).is_zero());
}

TEST_CASE("nullspace matches brute-force kernel count") {
  std::mt19937_64 rng(7);
  for (unsigned p : {2u, 3u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 4;
      const auto m = random_matrix(rng, p, rows, cols);
      const auto ker = nullspace(m);
      for (const auto &v : ker)
        CHECK((m * v).is_zero());
      std::size_t count = 0;
      for (const auto &v : all_vectors(p, cols))
        count += (m * FieldVector(p, v)).is_zero();
      std::size_t expected = 1;
      for (std::size_t i = 0; i < ker.size(); ++i)
        expected *= p;
      CHECK(count == expected);
      CHECK(m.rank() + ker.size() == cols);
    }
  }
}

TEST_CASE("determinant and inverse") {
  std::mt19937_64 rng(11);
  for (unsigned p : {2u, 5u, 13u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_matrix(rng, p, 4, 4);
      std::vector<std::vector<std::int64_t>> ints(4, std::vector<std::int64_t>(4));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          ints[i][j] = m.at(i, j);
      CHECK(m.determinant().residue() == reduce_signed(leibniz_det(ints), p));
      if (m.is_invertible()) {
        CHECK(m * m.inverse() == FieldMatrix::identity(4, p));
      } else {
        CHECK_THROWS_AS(m.inverse(), InvalidArgument);
      }
    }
  }
}

TEST_CASE("dimension mismatches throw") {
  const FieldMatrix a(2, 3, 5), b(2, 3, 5);
  CHECK_THROWS_AS(a * b, DimensionMismatch);
  CHECK_THROWS_AS(a * FieldVector(5, 2), DimensionMismatch);
  FieldVector v(5, 2);
  CHECK_THROWS_AS(v.add_scaled(FieldVector(5, 3), 1), DimensionMismatch);
  const std::vector<std::vector<FieldVector>> bad{{FieldVector(5, 2)}, {FieldVector(5, 3)}};
  CHECK_THROWS_AS(subspace_intersection(bad), DimensionMismatch);
}

TEST_CASE("subspace intersection agrees with enumeration") {
  std::mt19937_64 rng(3);
  const unsigned p = 3;
  const std::size_t n = 4;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FieldVector> a, b;
    for (std::size_t k = 0; k < 1 + rng() % 3; ++k)
      a.push_back(random_matrix(rng, p, 1, n).row(0));
    for (std::size_t k = 0; k < 1 + rng() % 3; ++k)
      b.push_back(random_matrix(rng, p, 1, n).row(0));
    const std::vector<std::vector<FieldVector>> both{a, b};
    const auto cap = Subspace::span(p, n, subspace_intersection(both));
    std::size_t count = 0;
    for (const auto &v : all_vectors(p, n)) {
      const bool in = brute_in_span(p, a, v) && brute_in_span(p, b, v);
      CHECK(cap.contains(FieldVector(p, v)) == in);
      count += in;
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < cap.dim(); ++i)
      expected *= p;
    CHECK(count == expected);
  }
}

TEST_CASE("subspace coordinates and reduction") {
  const unsigned p = 7;
  const std::vector<FieldVector> gens{FieldVector::from_signed(p, std::vector<std::int64_t>{1, 2, 0}),
                                      FieldVector::from_signed(p, std::vector<std::int64_t>{0, 1, 1})};
  const auto s = Subspace::span(p, 3, gens);
  CHECK(s.dim() == 2);
  auto v = gens[0];
  v.add_scaled(gens[1], 3);
  CHECK(s.contains(v));
  const auto c = s.coordinates(v);
  REQUIRE(c);
  FieldVector back(p, 3);
  for (std::size_t i = 0; i < c->size(); ++i)
    back.add_scaled(s.basis()[i], (*c)[i]);
  CHECK(back == v);
  CHECK_FALSE(s.contains(FieldVector::from_signed(p, std::vector<std::int64_t>{0, 0, 1})));
  CHECK(s.reduce(v).is_zero());
}

TEST_CASE("subquotient classes") {
  const unsigned p = 5;
  auto e = [&](std::size_t i) {
    FieldVector v(p, 3);
    v[i] = 1;
    return v;
  };
  const std::vector<FieldVector> z{e(0), e(1)}, b{e(0)};
  const Subquotient q(Subspace::span(p, 3, z), Subspace::span(p, 3, b));
  CHECK(q.dim() == 1);
  auto v = e(1);
  v.add_scaled(e(0), 4);
  const auto cls = q.class_of(v);
  REQUIRE(cls);
  CHECK(*cls == std::vector<Residue>{1});
  CHECK(q.is_zero_class(e(0)));
  CHECK_FALSE(q.class_of(e(2)));
  CHECK_THROWS_AS(Subquotient(Subspace::span(p, 3, b), Subspace::span(p, 3, z)), InvalidArgument);
}
