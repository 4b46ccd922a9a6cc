#pragma once

// Exact arithmetic and dense linear algebra over the prime field F_p.
// The modulus is a runtime value so one build serves every prime.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace milnor_forge::ffla {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

// Throws NotPrime.
void require_prime(std::uint64_t n);

inline Residue add_mod(Residue a, Residue b, std::uint32_t p) {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p ? s - p : s);
}

inline Residue sub_mod(Residue a, Residue b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p - b);
}

inline Residue mul_mod(Residue a, Residue b, std::uint32_t p) {
  return static_cast<Residue>(std::uint64_t{a} * b % p);
}

inline Residue neg_mod(Residue a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

Residue reduce_signed(std::int64_t value, std::uint32_t p);

// Throws InvalidArgument when a == 0.
Residue inverse_mod(Residue a, std::uint32_t p);

Residue pow_mod(Residue a, std::uint64_t e, std::uint32_t p);

// Representative in (-p/2, p/2], used for printing.
std::int64_t symmetric(Residue a, std::uint32_t p);

class FieldScalar {
public:
  // Checks primality of the modulus.
  FieldScalar(std::int64_t value, std::uint32_t modulus);

  Residue residue() const { return residue_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return residue_ == 0; }

  FieldScalar operator+(const FieldScalar &o) const;
  FieldScalar operator-(const FieldScalar &o) const;
  FieldScalar operator*(const FieldScalar &o) const;
  FieldScalar operator/(const FieldScalar &o) const;
  FieldScalar operator-() const;
  FieldScalar inverse() const;

  bool operator==(const FieldScalar &o) const = default;

private:
  struct Unchecked {};
  FieldScalar(Residue r, std::uint32_t m, Unchecked) : residue_(r), modulus_(m) {}
  void check_same(const FieldScalar &o) const;

  Residue residue_;
  std::uint32_t modulus_;
};

class FieldVector {
public:
  FieldVector() = default;
  FieldVector(std::uint32_t modulus, std::size_t size);
  FieldVector(std::uint32_t modulus, std::vector<Residue> entries);
  static FieldVector from_signed(std::uint32_t modulus,
                                 std::span<const std::int64_t> values);

  std::uint32_t modulus() const { return modulus_; }
  std::size_t size() const { return entries_.size(); }
  bool is_zero() const;

  Residue operator[](std::size_t i) const { return entries_[i]; }
  Residue &operator[](std::size_t i) { return entries_[i]; }
  std::span<const Residue> entries() const { return entries_; }

  // this += c * other
  void add_scaled(const FieldVector &other, Residue c);
  void scale(Residue c);

  bool operator==(const FieldVector &o) const = default;

  std::string to_string() const;

private:
  std::uint32_t modulus_ = 2;
  std::vector<Residue> entries_;
};

class FieldMatrix {
public:
  FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus);
  static FieldMatrix identity(std::size_t n, std::uint32_t modulus);
  static FieldMatrix from_rows(std::size_t cols, std::uint32_t modulus,
                               std::span<const FieldVector> rows);
  static FieldMatrix from_signed(std::uint32_t modulus,
                                 const std::vector<std::vector<std::int64_t>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return modulus_; }

  Residue at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Residue v) { data_[i * cols_ + j] = v % modulus_; }
  FieldScalar scalar(std::size_t i, std::size_t j) const;

  FieldVector row(std::size_t i) const;
  FieldVector column(std::size_t j) const;
  std::span<Residue> row_span(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Residue> row_span(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  FieldMatrix operator*(const FieldMatrix &o) const;
  FieldVector operator*(const FieldVector &v) const;
  FieldMatrix transpose() const;

  bool is_zero() const;
  std::size_t rank() const;
  FieldScalar determinant() const;
  bool is_invertible() const;
  // Throws InvalidArgument if singular.
  FieldMatrix inverse() const;

  bool operator==(const FieldMatrix &o) const = default;

  std::string to_string() const;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t modulus_;
  std::vector<Residue> data_;
};

struct RrefResult {
  std::size_t rank = 0;
  FieldMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

// Reduced row-echelon form. Pivot is the first nonzero entry in column order.
RrefResult rref(const FieldMatrix &m);

// Basis of {v : m v = 0}, one vector per free column, in column order.
std::vector<FieldVector> nullspace(const FieldMatrix &m);

// Basis of the intersection of the spans of each list.
// Throws DimensionMismatch if ambient dimensions or moduli differ.
std::vector<FieldVector>
subspace_intersection(std::span<const std::vector<FieldVector>> bases);

// A subspace of F_p^n held as a reduced row-echelon basis.
class Subspace {
public:
  Subspace(std::uint32_t modulus, std::size_t ambient_dim);
  static Subspace span(std::uint32_t modulus, std::size_t ambient_dim,
                       std::span<const FieldVector> vectors);

  std::uint32_t modulus() const { return modulus_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<FieldVector> &basis() const { return basis_; }
  const std::vector<std::size_t> &pivots() const { return pivots_; }

  // Clears every pivot coordinate of v using the basis.
  FieldVector reduce(FieldVector v) const;
  bool contains(const FieldVector &v) const;
  // Coefficients of v in the echelon basis; nullopt if v is outside.
  std::optional<std::vector<Residue>> coordinates(const FieldVector &v) const;

  Subspace plus(std::span<const FieldVector> vectors) const;
  Subspace plus(const Subspace &other) const { return plus(other.basis_); }
  bool contains(const Subspace &other) const;

  bool operator==(const Subspace &o) const {
    return modulus_ == o.modulus_ && ambient_ == o.ambient_ && basis_ == o.basis_;
  }

private:
  std::uint32_t modulus_;
  std::size_t ambient_;
  std::vector<FieldVector> basis_;
  std::vector<std::size_t> pivots_;
};

// cycles / boundaries with a fixed set of complement representatives.
class Subquotient {
public:
  Subquotient(Subspace cycles, Subspace boundaries);

  const Subspace &cycles() const { return cycles_; }
  const Subspace &boundaries() const { return boundaries_; }
  std::size_t dim() const { return reps_.size(); }
  std::size_t ambient_dim() const { return cycles_.ambient_dim(); }
  const std::vector<FieldVector> &representatives() const { return reps_; }

  // Coordinates of the class of v; nullopt if v is not a cycle.
  std::optional<std::vector<Residue>> class_of(const FieldVector &v) const;
  bool is_zero_class(const FieldVector &v) const { return boundaries_.contains(v); }

private:
  Subspace cycles_;
  Subspace boundaries_;
  Subspace complement_;
  std::vector<FieldVector> reps_;
};

} // namespace milnor_forge::ffla
