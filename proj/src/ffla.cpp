#include "milnor_forge/ffla.hpp"

#include "milnor_forge/errors.hpp"

#include <sstream>
#include <tuple>
#include <utility>

namespace milnor_forge::ffla {

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

void require_prime(std::uint64_t n) {
  if (n > UINT32_MAX || !is_prime(n))
    throw NotPrime(std::to_string(n) + " is not a prime");
}

Residue reduce_signed(std::int64_t value, std::uint32_t p) {
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0)
    r += p;
  return static_cast<Residue>(r);
}

Residue pow_mod(Residue a, std::uint64_t e, std::uint32_t p) {
  Residue result = 1 % p;
  Residue base = a % p;
  while (e > 0) {
    if (e & 1)
      result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

Residue inverse_mod(Residue a, std::uint32_t p) {
  if (a % p == 0)
    throw InvalidArgument("zero has no inverse mod " + std::to_string(p));
  // extended Euclid
  std::int64_t r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  return reduce_signed(s0, p);
}

std::int64_t symmetric(Residue a, std::uint32_t p) {
  return a > p / 2 ? static_cast<std::int64_t>(a) - p : static_cast<std::int64_t>(a);
}

// ---------------------------------------------------------------------------
// FieldScalar

FieldScalar::FieldScalar(std::int64_t value, std::uint32_t modulus)
    : residue_(0), modulus_(modulus) {
  require_prime(modulus);
  residue_ = reduce_signed(value, modulus);
}

void FieldScalar::check_same(const FieldScalar &o) const {
  if (modulus_ != o.modulus_)
    throw DimensionMismatch("scalars over different prime fields");
}

FieldScalar FieldScalar::operator+(const FieldScalar &o) const {
  check_same(o);
  return {add_mod(residue_, o.residue_, modulus_), modulus_, Unchecked{}};
}

FieldScalar FieldScalar::operator-(const FieldScalar &o) const {
  check_same(o);
  return {sub_mod(residue_, o.residue_, modulus_), modulus_, Unchecked{}};
}

FieldScalar FieldScalar::operator*(const FieldScalar &o) const {
  check_same(o);
  return {mul_mod(residue_, o.residue_, modulus_), modulus_, Unchecked{}};
}

FieldScalar FieldScalar::operator/(const FieldScalar &o) const {
  return *this * o.inverse();
}

FieldScalar FieldScalar::operator-() const {
  return {neg_mod(residue_, modulus_), modulus_, Unchecked{}};
}

FieldScalar FieldScalar::inverse() const {
  return {inverse_mod(residue_, modulus_), modulus_, Unchecked{}};
}

// ---------------------------------------------------------------------------
// FieldVector

FieldVector::FieldVector(std::uint32_t modulus, std::size_t size)
    : modulus_(modulus), entries_(size, 0) {}

FieldVector::FieldVector(std::uint32_t modulus, std::vector<Residue> entries)
    : modulus_(modulus), entries_(std::move(entries)) {
  for (auto &e : entries_)
    e %= modulus_;
}

FieldVector FieldVector::from_signed(std::uint32_t modulus,
                                     std::span<const std::int64_t> values) {
  FieldVector v(modulus, values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    v.entries_[i] = reduce_signed(values[i], modulus);
  return v;
}

bool FieldVector::is_zero() const {
  for (auto e : entries_)
    if (e != 0)
      return false;
  return true;
}

void FieldVector::add_scaled(const FieldVector &other, Residue c) {
  if (other.size() != size() || other.modulus_ != modulus_)
    throw DimensionMismatch("vector sizes or moduli differ");
  if (c == 0)
    return;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (other.entries_[i] != 0)
      entries_[i] = add_mod(entries_[i], mul_mod(c, other.entries_[i], modulus_), modulus_);
}

void FieldVector::scale(Residue c) {
  for (auto &e : entries_)
    e = mul_mod(e, c, modulus_);
}

std::string FieldVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i)
    os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// FieldMatrix

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {
  require_prime(modulus);
}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint32_t modulus) {
  FieldMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

FieldMatrix FieldMatrix::from_rows(std::size_t cols, std::uint32_t modulus,
                                   std::span<const FieldVector> rows) {
  FieldMatrix m(rows.size(), cols, modulus);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols || rows[i].modulus() != modulus)
      throw DimensionMismatch("row " + std::to_string(i) + " has the wrong shape");
    for (std::size_t j = 0; j < cols; ++j)
      m.data_[i * cols + j] = rows[i][j];
  }
  return m;
}

FieldMatrix FieldMatrix::from_signed(std::uint32_t modulus,
                                     const std::vector<std::vector<std::int64_t>> &rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FieldMatrix m(rows.size(), cols, modulus);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw DimensionMismatch("ragged matrix literal");
    for (std::size_t j = 0; j < cols; ++j)
      m.data_[i * cols + j] = reduce_signed(rows[i][j], modulus);
  }
  return m;
}

FieldScalar FieldMatrix::scalar(std::size_t i, std::size_t j) const {
  return FieldScalar(at(i, j), modulus_);
}

FieldVector FieldMatrix::row(std::size_t i) const {
  return FieldVector(modulus_, std::vector<Residue>(data_.begin() + i * cols_,
                                                    data_.begin() + (i + 1) * cols_));
}

FieldVector FieldMatrix::column(std::size_t j) const {
  FieldVector v(modulus_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    v[i] = at(i, j);
  return v;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix &o) const {
  if (cols_ != o.rows_ || modulus_ != o.modulus_)
    throw DimensionMismatch("matrix product shape mismatch");
  FieldMatrix out(rows_, o.cols_, modulus_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Residue a = at(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out.data_[i * o.cols_ + j] =
            add_mod(out.data_[i * o.cols_ + j], mul_mod(a, o.at(k, j), modulus_), modulus_);
    }
  return out;
}

FieldVector FieldMatrix::operator*(const FieldVector &v) const {
  if (cols_ != v.size() || modulus_ != v.modulus())
    throw DimensionMismatch("matrix-vector shape mismatch");
  FieldVector out(modulus_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Residue acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      acc = add_mod(acc, mul_mod(at(i, j), v[j], modulus_), modulus_);
    out[i] = acc;
  }
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_, modulus_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t.data_[j * rows_ + i] = at(i, j);
  return t;
}

bool FieldMatrix::is_zero() const {
  for (auto e : data_)
    if (e != 0)
      return false;
  return true;
}

std::size_t FieldMatrix::rank() const { return rref(*this).rank; }

FieldScalar FieldMatrix::determinant() const {
  if (rows_ != cols_)
    throw DimensionMismatch("determinant of a non-square matrix");
  FieldMatrix a = *this;
  const std::uint32_t p = modulus_;
  Residue det = 1 % p;
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t pivot = col;
    while (pivot < rows_ && a.at(pivot, col) == 0)
      ++pivot;
    if (pivot == rows_)
      return FieldScalar(0, p);
    if (pivot != col) {
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(a.data_[pivot * cols_ + j], a.data_[col * cols_ + j]);
      det = neg_mod(det, p);
    }
    const Residue d = a.at(col, col);
    det = mul_mod(det, d, p);
    const Residue inv = inverse_mod(d, p);
    for (std::size_t i = col + 1; i < rows_; ++i) {
      const Residue f = mul_mod(a.at(i, col), inv, p);
      if (f == 0)
        continue;
      for (std::size_t j = col; j < cols_; ++j)
        a.data_[i * cols_ + j] = sub_mod(a.at(i, j), mul_mod(f, a.at(col, j), p), p);
    }
  }
  return FieldScalar(det, p);
}

bool FieldMatrix::is_invertible() const {
  return rows_ == cols_ && !determinant().is_zero();
}

FieldMatrix FieldMatrix::inverse() const {
  if (rows_ != cols_)
    throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = rows_;
  FieldMatrix aug(n, 2 * n, modulus_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug.set(i, j, at(i, j));
    aug.set(i, n + i, 1);
  }
  const auto r = rref(aug);
  for (std::size_t i = 0; i < n; ++i)
    if (i >= r.pivot_columns.size() || r.pivot_columns[i] != i)
      throw InvalidArgument("matrix is singular");
  FieldMatrix inv(n, n, modulus_);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv.set(i, j, r.reduced.at(i, n + j));
  return inv;
}

std::string FieldMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

RrefResult rref(const FieldMatrix &m) {
  FieldMatrix a = m;
  const std::uint32_t p = m.modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a.at(pivot, c) == 0)
      ++pivot;
    if (pivot == rows)
      continue;
    if (pivot != r) {
      auto pr = a.row_span(pivot), rr = a.row_span(r);
      std::swap_ranges(pr.begin(), pr.end(), rr.begin());
    }
    const Residue inv = inverse_mod(a.at(r, c), p);
    auto prow = a.row_span(r);
    for (std::size_t j = c; j < cols; ++j)
      prow[j] = mul_mod(prow[j], inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r)
        continue;
      const Residue f = a.at(i, c);
      if (f == 0)
        continue;
      auto row = a.row_span(i);
      for (std::size_t j = c; j < cols; ++j)
        if (prow[j] != 0)
          row[j] = sub_mod(row[j], mul_mod(f, prow[j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return RrefResult{r, std::move(a), std::move(pivots)};
}

std::vector<FieldVector> nullspace(const FieldMatrix &m) {
  const auto r = rref(m);
  const std::uint32_t p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_columns)
    is_pivot[c] = true;
  std::vector<FieldVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    FieldVector v(p, m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.rank; ++i)
      v[r.pivot_columns[i]] = neg_mod(r.reduced.at(i, f), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

std::vector<FieldVector> intersect_pair(const std::vector<FieldVector> &u,
                                        const std::vector<FieldVector> &v,
                                        std::uint32_t p, std::size_t n) {
  if (u.empty() || v.empty())
    return {};
  // Solve sum a_i u_i - sum b_j v_j = 0 with the vectors as columns.
  FieldMatrix m(n, u.size() + v.size(), p);
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      m.set(i, j, u[j][i]);
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      m.set(i, u.size() + j, neg_mod(v[j][i], p));
  std::vector<FieldVector> out;
  for (const auto &kv : nullspace(m)) {
    FieldVector w(p, n);
    for (std::size_t j = 0; j < u.size(); ++j)
      w.add_scaled(u[j], kv[j]);
    out.push_back(std::move(w));
  }
  return Subspace::span(p, n, out).basis();
}

} // namespace

std::vector<FieldVector>
subspace_intersection(std::span<const std::vector<FieldVector>> bases) {
  if (bases.empty())
    throw InvalidArgument("intersection of an empty family");
  std::optional<std::size_t> n;
  std::optional<std::uint32_t> p;
  for (const auto &b : bases)
    for (const auto &v : b) {
      if (n && (*n != v.size() || *p != v.modulus()))
        throw DimensionMismatch("subspaces live in different ambient spaces");
      n = v.size();
      p = v.modulus();
    }
  if (!n)
    return {};
  auto current = Subspace::span(*p, *n, bases.front()).basis();
  for (std::size_t k = 1; k < bases.size(); ++k)
    current = intersect_pair(current, Subspace::span(*p, *n, bases[k]).basis(), *p, *n);
  return current;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::uint32_t modulus, std::size_t ambient_dim)
    : modulus_(modulus), ambient_(ambient_dim) {}

Subspace Subspace::span(std::uint32_t modulus, std::size_t ambient_dim,
                        std::span<const FieldVector> vectors) {
  return Subspace(modulus, ambient_dim).plus(vectors);
}

FieldVector Subspace::reduce(FieldVector v) const {
  if (v.size() != ambient_ || v.modulus() != modulus_)
    throw DimensionMismatch("vector does not live in this subspace's ambient space");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Residue c = v[pivots_[i]];
    if (c != 0)
      v.add_scaled(basis_[i], neg_mod(c, modulus_));
  }
  return v;
}

bool Subspace::contains(const FieldVector &v) const { return reduce(v).is_zero(); }

std::optional<std::vector<Residue>> Subspace::coordinates(const FieldVector &v) const {
  if (!contains(v))
    return std::nullopt;
  std::vector<Residue> c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::plus(std::span<const FieldVector> vectors) const {
  std::vector<FieldVector> rows = basis_;
  for (const auto &v : vectors) {
    if (v.size() != ambient_ || v.modulus() != modulus_)
      throw DimensionMismatch("vector does not live in this subspace's ambient space");
    auto r = reduce(v);
    if (!r.is_zero())
      rows.push_back(std::move(r));
  }
  Subspace out(modulus_, ambient_);
  if (rows.empty() || ambient_ == 0)
    return out;
  const auto r = rref(FieldMatrix::from_rows(ambient_, modulus_, rows));
  for (std::size_t i = 0; i < r.rank; ++i)
    out.basis_.push_back(r.reduced.row(i));
  out.pivots_ = r.pivot_columns;
  return out;
}

bool Subspace::contains(const Subspace &other) const {
  for (const auto &v : other.basis_)
    if (!contains(v))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subquotient

Subquotient::Subquotient(Subspace cycles, Subspace boundaries)
    : cycles_(std::move(cycles)), boundaries_(std::move(boundaries)),
      complement_(cycles_.modulus(), cycles_.ambient_dim()) {
  if (!cycles_.contains(boundaries_))
    throw InvalidArgument("boundaries are not contained in cycles");
  std::vector<FieldVector> reduced;
  for (const auto &z : cycles_.basis()) {
    auto r = boundaries_.reduce(z);
    if (!r.is_zero())
      reduced.push_back(std::move(r));
  }
  complement_ = Subspace::span(cycles_.modulus(), cycles_.ambient_dim(), reduced);
  reps_ = complement_.basis();
}

std::optional<std::vector<Residue>> Subquotient::class_of(const FieldVector &v) const {
  if (!cycles_.contains(v))
    return std::nullopt;
  return complement_.coordinates(boundaries_.reduce(v));
}

} // namespace milnor_forge::ffla
