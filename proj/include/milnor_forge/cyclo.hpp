#pragma once

// Exact arithmetic in Z[xi] for xi a primitive l-th root of unity, plus the
// unitary matrix identities behind the elementary abelian subgroups of SU(l)
// and of SU(l) x SU(l).
//
// Odd l: the ring is Z[t]/(1 + t + ... + t^{l-1}) with basis 1, t, ..., t^{l-2}
// and xi = t. For l = 2 the matrices involve i, so the ring is Z[t]/(t^2 + 1)
// with basis 1, t, and xi = t^2 = -1.
//
// Both rings are quotients of the group ring Z[C_n] with n = l (odd) or 4.
// Products are formed there and canonicalized afterwards.

#include "milnor_forge/report.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace milnor_forge::cyclo {

// Order n of the generator t: l for odd l, 4 for l = 2.
unsigned root_order(unsigned prime);
// Rank of the ring as a Z-module: l - 1 for odd l, 2 for l = 2.
std::size_t ring_rank(unsigned prime);

class CycInt {
public:
  // Zero of Z[xi_prime]. Throws NotPrime.
  explicit CycInt(unsigned prime);

  static CycInt integer(unsigned prime, std::int64_t n);
  // xi^k for any integer k.
  static CycInt root_of_unity(unsigned prime, std::int64_t k);
  // t^k, the generator of the ambient cyclic group (t = xi for odd l, t = i for l = 2).
  static CycInt t_power(unsigned prime, std::int64_t k);
  // sqrt(-1); only defined for prime = 2.
  static CycInt imaginary_unit(unsigned prime);
  // Canonicalize a group-ring vector c_0 + c_1 t + ... + c_{n-1} t^{n-1}.
  static CycInt from_group_ring(unsigned prime, std::span<const std::int64_t> coeffs);

  unsigned prime() const { return prime_; }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  // Group-ring lift: canonical coefficients padded with zeros to length n.
  std::vector<std::int64_t> lift() const;

  bool is_zero() const;
  std::optional<std::int64_t> as_integer() const;

  CycInt operator+(const CycInt &o) const;
  CycInt operator-(const CycInt &o) const;
  CycInt operator*(const CycInt &o) const;
  CycInt operator-() const;
  CycInt scaled(std::int64_t c) const;
  // Complex conjugation t^k -> t^{-k}.
  CycInt conj() const;

  bool operator==(const CycInt &o) const = default;

  std::string to_string() const;

private:
  void check_same(const CycInt &o) const;

  unsigned prime_;
  std::vector<std::int64_t> coeffs_;
};

class CycMatrix {
public:
  CycMatrix(unsigned prime, std::size_t n);
  static CycMatrix identity(unsigned prime, std::size_t n);
  static CycMatrix scalar(const CycInt &c, std::size_t n);
  static CycMatrix diagonal(std::span<const CycInt> entries);

  unsigned prime() const { return prime_; }
  std::size_t size() const { return n_; }
  const CycInt &at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, CycInt v);

  CycMatrix operator*(const CycMatrix &o) const;
  CycMatrix scaled(std::int64_t c) const;
  CycMatrix conj_transpose() const;
  // Inverse of a unitary matrix; throws InvalidArgument if M M^* != I.
  CycMatrix unitary_inverse() const;
  // Determinant of a matrix with exactly one nonzero entry in every row and
  // column (diagonal and permutation-supported matrices). Throws otherwise.
  CycInt monomial_determinant() const;

  bool operator==(const CycMatrix &o) const = default;

  // First (row, col) where the two matrices differ.
  std::optional<std::pair<std::size_t, std::size_t>> first_mismatch(const CycMatrix &o) const;

  std::string to_string() const;

private:
  unsigned prime_;
  std::size_t n_;
  std::vector<CycInt> entries_;
};

// diag(Y, Y)
CycMatrix delta(const CycMatrix &y);
// diag(I, Y)
CycMatrix gamma(const CycMatrix &y);
CycMatrix block_diagonal(const CycMatrix &a, const CycMatrix &b);

// [g, h] = g^{-1} h^{-1} g h for unitary g, h.
CycMatrix commutator(const CycMatrix &g, const CycMatrix &h);
// g^h = h^{-1} g h for unitary h.
CycMatrix conjugate_by(const CycMatrix &g, const CycMatrix &h);

// Sum over k = 1..l of xi^{k m}, evaluated in Z[xi]. Throws if the sum does
// not canonicalize to an integer.
std::int64_t root_power_sum(unsigned prime, std::int64_t m);

// a_0 = 0, a_i = i + a_{i-1}.
std::int64_t triangular(std::int64_t i);

// a_{j+k} - a_{i+k} == k (j - i) + (a_j - a_i) (mod l).
bool triangular_shift_holds(std::int64_t ell, std::int64_t i, std::int64_t j, std::int64_t k);

// Generators for odd l, with 1-based index conventions:
//   alpha = diag(xi^1, ..., xi^l), beta_{ij} = [i == j + 1 mod l],
//   S = diag(xi^{a_1}, ..., xi^{a_l}), T_{ij} = xi^{a_{i+j}}.
struct GeneratorSet {
  unsigned prime;
  CycMatrix alpha;
  CycMatrix beta;
  CycMatrix xi;
  CycMatrix S;
  CycMatrix T;
};

GeneratorSet su_generators(unsigned prime);

// The l = 2 matrices over Z[i]: xi = -I, alpha = diag(i, -i),
// beta = [[0, i], [i, 0]], T2 = [[1, i], [i, 1]], and the candidate
// S2 = diag(1, i) standing in for the undefined sigma.
struct TwoGenerators {
  CycMatrix xi;
  CycMatrix alpha;
  CycMatrix beta;
  CycMatrix T2;
  CycMatrix S2;
};

TwoGenerators two_generators();

// Each returns one record per identity. check_ids are prefixed "matrices.".
// Root-of-unity sums for every m in [0, l).
ReportList verify_root_power_sums(unsigned prime);
// Exhaustive sweep of triangular_shift_holds over [0, l)^3.
ReportList verify_triangular_shift(unsigned prime);
ReportList verify_su_generators(unsigned prime);
ReportList verify_weyl_conjugation(unsigned prime);
ReportList verify_g1_relations(unsigned prime);
ReportList verify_l2_generators();
// The 2x2 action matrices of sigma, tau: their (l-1)-th powers and the
// order of the group they generate, |SL_2(F_l)| = l (l^2 - 1).
ReportList verify_sl2_generation(unsigned prime);

} // namespace milnor_forge::cyclo
