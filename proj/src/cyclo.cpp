#include "milnor_forge/cyclo.hpp"

#include "milnor_forge/errors.hpp"
#include "milnor_forge/ffla.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <sstream>

namespace milnor_forge::cyclo {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw ArithmeticOverflow("cyclotomic coefficient overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw ArithmeticOverflow("cyclotomic coefficient overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ArithmeticOverflow("cyclotomic coefficient overflow in multiplication");
  return r;
}

std::size_t wrap(std::int64_t k, std::int64_t n) {
  std::int64_t r = k % n;
  if (r < 0)
    r += n;
  return static_cast<std::size_t>(r);
}

} // namespace

unsigned root_order(unsigned prime) {
  ffla::require_prime(prime);
  return prime == 2 ? 4 : prime;
}

std::size_t ring_rank(unsigned prime) {
  ffla::require_prime(prime);
  return prime == 2 ? 2 : prime - 1;
}

CycInt::CycInt(unsigned prime) : prime_(prime), coeffs_(ring_rank(prime), 0) {}

CycInt CycInt::integer(unsigned prime, std::int64_t n) {
  CycInt r(prime);
  r.coeffs_[0] = n;
  return r;
}

CycInt CycInt::t_power(unsigned prime, std::int64_t k) {
  std::vector<std::int64_t> g(root_order(prime), 0);
  g[wrap(k, static_cast<std::int64_t>(g.size()))] = 1;
  return from_group_ring(prime, g);
}

CycInt CycInt::root_of_unity(unsigned prime, std::int64_t k) {
  if (prime == 2)
    return t_power(prime, checked_mul(2, k));
  return t_power(prime, k);
}

CycInt CycInt::imaginary_unit(unsigned prime) {
  if (prime != 2)
    throw InvalidArgument("sqrt(-1) is only modelled for prime 2");
  return t_power(prime, 1);
}

CycInt CycInt::from_group_ring(unsigned prime, std::span<const std::int64_t> coeffs) {
  const unsigned n = root_order(prime);
  if (coeffs.size() != n)
    throw DimensionMismatch("group ring vector has length " +
                            std::to_string(coeffs.size()) + ", expected " +
                            std::to_string(n));
  CycInt r(prime);
  if (prime == 2) {
    // t^2 = -1
    r.coeffs_[0] = checked_sub(coeffs[0], coeffs[2]);
    r.coeffs_[1] = checked_sub(coeffs[1], coeffs[3]);
  } else {
    // t^{l-1} = -(1 + t + ... + t^{l-2})
    const std::int64_t top = coeffs[n - 1];
    for (std::size_t k = 0; k + 1 < n; ++k)
      r.coeffs_[k] = checked_sub(coeffs[k], top);
  }
  return r;
}

std::vector<std::int64_t> CycInt::lift() const {
  std::vector<std::int64_t> g(root_order(prime_), 0);
  std::copy(coeffs_.begin(), coeffs_.end(), g.begin());
  return g;
}

bool CycInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

std::optional<std::int64_t> CycInt::as_integer() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0)
      return std::nullopt;
  return coeffs_[0];
}

void CycInt::check_same(const CycInt &o) const {
  if (prime_ != o.prime_)
    throw ContextMismatch("cyclotomic operands over different primes");
}

CycInt CycInt::operator+(const CycInt &o) const {
  check_same(o);
  CycInt r(prime_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    r.coeffs_[k] = checked_add(coeffs_[k], o.coeffs_[k]);
  return r;
}

CycInt CycInt::operator-(const CycInt &o) const {
  check_same(o);
  CycInt r(prime_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    r.coeffs_[k] = checked_sub(coeffs_[k], o.coeffs_[k]);
  return r;
}

CycInt CycInt::operator-() const { return CycInt(prime_) - *this; }

CycInt CycInt::scaled(std::int64_t c) const {
  CycInt r(prime_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    r.coeffs_[k] = checked_mul(coeffs_[k], c);
  return r;
}

CycInt CycInt::operator*(const CycInt &o) const {
  check_same(o);
  const std::size_t n = root_order(prime_);
  std::vector<std::int64_t> g(n, 0);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] == 0)
      continue;
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b) {
      if (o.coeffs_[b] == 0)
        continue;
      auto &slot = g[(a + b) % n];
      slot = checked_add(slot, checked_mul(coeffs_[a], o.coeffs_[b]));
    }
  }
  return from_group_ring(prime_, g);
}

CycInt CycInt::conj() const {
  const auto g = lift();
  const std::int64_t n = static_cast<std::int64_t>(g.size());
  std::vector<std::int64_t> h(g.size(), 0);
  for (std::int64_t k = 0; k < n; ++k)
    h[wrap(-k, n)] = g[static_cast<std::size_t>(k)];
  return from_group_ring(prime_, h);
}

std::string CycInt::to_string() const {
  const char *var = prime_ == 2 ? "i" : "z";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    std::int64_t c = coeffs_[k];
    if (c == 0)
      continue;
    if (!first)
      os << (c < 0 ? " - " : " + ");
    else if (c < 0)
      os << "-";
    first = false;
    const std::int64_t mag = c < 0 ? -c : c;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1)
      os << mag << "*";
    os << var;
    if (k > 1)
      os << "^" << k;
  }
  if (first)
    os << "0";
  return os.str();
}

CycMatrix::CycMatrix(unsigned prime, std::size_t n)
    : prime_(prime), n_(n), entries_(n * n, CycInt(prime)) {}

CycMatrix CycMatrix::identity(unsigned prime, std::size_t n) {
  return scalar(CycInt::integer(prime, 1), n);
}

CycMatrix CycMatrix::scalar(const CycInt &c, std::size_t n) {
  CycMatrix m(c.prime(), n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, c);
  return m;
}

CycMatrix CycMatrix::diagonal(std::span<const CycInt> entries) {
  if (entries.empty())
    throw InvalidArgument("empty diagonal");
  CycMatrix m(entries.front().prime(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    m.set(i, i, entries[i]);
  return m;
}

void CycMatrix::set(std::size_t i, std::size_t j, CycInt v) {
  if (v.prime() != prime_)
    throw ContextMismatch("matrix entry over a different prime");
  entries_[i * n_ + j] = std::move(v);
}

CycMatrix CycMatrix::operator*(const CycMatrix &o) const {
  if (prime_ != o.prime_)
    throw ContextMismatch("matrix product over different primes");
  if (n_ != o.n_)
    throw DimensionMismatch("matrix sizes differ");
  CycMatrix r(prime_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const CycInt &a = at(i, k);
      if (a.is_zero())
        continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const CycInt &b = o.at(k, j);
        if (!b.is_zero())
          r.entries_[i * n_ + j] = r.entries_[i * n_ + j] + a * b;
      }
    }
  return r;
}

CycMatrix CycMatrix::scaled(std::int64_t c) const {
  CycMatrix r(prime_, n_);
  for (std::size_t k = 0; k < entries_.size(); ++k)
    r.entries_[k] = entries_[k].scaled(c);
  return r;
}

CycMatrix CycMatrix::conj_transpose() const {
  CycMatrix r(prime_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      r.entries_[j * n_ + i] = at(i, j).conj();
  return r;
}

CycMatrix CycMatrix::unitary_inverse() const {
  CycMatrix star = conj_transpose();
  if (!(*this * star == identity(prime_, n_)))
    throw InvalidArgument("matrix is not unitary");
  return star;
}

CycInt CycMatrix::monomial_determinant() const {
  std::vector<std::size_t> perm(n_);
  CycInt product = CycInt::integer(prime_, 1);
  for (std::size_t i = 0; i < n_; ++i) {
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n_; ++j) {
      if (at(i, j).is_zero())
        continue;
      if (col)
        throw InvalidArgument("row " + std::to_string(i) + " has two nonzero entries");
      col = j;
    }
    if (!col)
      return CycInt(prime_);
    perm[i] = *col;
    product = product * at(i, *col);
  }
  std::vector<bool> used(n_, false);
  for (std::size_t c : perm) {
    if (used[c])
      throw InvalidArgument("support is not a permutation");
    used[c] = true;
  }
  std::vector<bool> seen(n_, false);
  bool odd = false;
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t len = 0;
    for (std::size_t k = i; !seen[k]; k = perm[k]) {
      seen[k] = true;
      ++len;
    }
    if (len > 0 && len % 2 == 0)
      odd = !odd;
  }
  return odd ? -product : product;
}

std::optional<std::pair<std::size_t, std::size_t>>
CycMatrix::first_mismatch(const CycMatrix &o) const {
  if (n_ != o.n_ || prime_ != o.prime_)
    return std::pair<std::size_t, std::size_t>{0, 0};
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (!(at(i, j) == o.at(i, j)))
        return std::pair{i, j};
  return std::nullopt;
}

std::string CycMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < n_; ++j)
      os << (j ? ", " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

CycMatrix block_diagonal(const CycMatrix &a, const CycMatrix &b) {
  if (a.prime() != b.prime())
    throw ContextMismatch("blocks over different primes");
  const std::size_t n = a.size(), m = b.size();
  CycMatrix r(a.prime(), n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      r.set(n + i, n + j, b.at(i, j));
  return r;
}

CycMatrix delta(const CycMatrix &y) { return block_diagonal(y, y); }

CycMatrix gamma(const CycMatrix &y) {
  return block_diagonal(CycMatrix::identity(y.prime(), y.size()), y);
}

CycMatrix commutator(const CycMatrix &g, const CycMatrix &h) {
  return g.unitary_inverse() * h.unitary_inverse() * g * h;
}

CycMatrix conjugate_by(const CycMatrix &g, const CycMatrix &h) {
  return h.unitary_inverse() * g * h;
}

std::int64_t root_power_sum(unsigned prime, std::int64_t m) {
  CycInt sum(prime);
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(prime); ++k)
    sum = sum + CycInt::root_of_unity(prime, checked_mul(k, m));
  const auto value = sum.as_integer();
  if (!value)
    throw InvalidArgument("root power sum is not an integer: " + sum.to_string());
  return *value;
}

std::int64_t triangular(std::int64_t i) {
  if (i < 0)
    throw InvalidArgument("triangular index must be non-negative");
  std::int64_t a = 0;
  for (std::int64_t k = 1; k <= i; ++k)
    a = checked_add(a, k);
  return a;
}

bool triangular_shift_holds(std::int64_t ell, std::int64_t i, std::int64_t j, std::int64_t k) {
  ffla::require_prime(static_cast<std::uint64_t>(ell));
  const std::int64_t lhs = triangular(j + k) - triangular(i + k);
  const std::int64_t rhs = k * (j - i) + (triangular(j) - triangular(i));
  return wrap(lhs - rhs, ell) == 0;
}

GeneratorSet su_generators(unsigned prime) {
  if (prime == 2)
    throw InvalidArgument("su_generators needs an odd prime");
  const std::size_t l = prime;
  const auto xi_pow = [&](std::int64_t k) { return CycInt::root_of_unity(prime, k); };

  std::vector<CycInt> alpha_diag, s_diag;
  for (std::size_t i = 1; i <= l; ++i) {
    alpha_diag.push_back(xi_pow(static_cast<std::int64_t>(i)));
    s_diag.push_back(xi_pow(triangular(static_cast<std::int64_t>(i))));
  }

  CycMatrix beta(prime, l), T(prime, l);
  for (std::size_t i = 1; i <= l; ++i)
    for (std::size_t j = 1; j <= l; ++j) {
      if (i % l == (j + 1) % l)
        beta.set(i - 1, j - 1, CycInt::integer(prime, 1));
      T.set(i - 1, j - 1, xi_pow(triangular(static_cast<std::int64_t>(i + j))));
    }

  return GeneratorSet{prime,
                      CycMatrix::diagonal(alpha_diag),
                      beta,
                      CycMatrix::scalar(xi_pow(1), l),
                      CycMatrix::diagonal(s_diag),
                      T};
}

TwoGenerators two_generators() {
  const unsigned p = 2;
  const CycInt one = CycInt::integer(p, 1);
  const CycInt i = CycInt::imaginary_unit(p);
  const CycInt zero(p);

  const std::array alpha_diag{i, -i};
  CycMatrix beta(p, 2), t2(p, 2);
  beta.set(0, 1, i);
  beta.set(1, 0, i);
  t2.set(0, 0, one);
  t2.set(0, 1, i);
  t2.set(1, 0, i);
  t2.set(1, 1, one);
  const std::array s2_diag{one, i};

  return TwoGenerators{CycMatrix::scalar(-one, 2), CycMatrix::diagonal(alpha_diag), beta,
                       t2, CycMatrix::diagonal(s2_diag)};
}

namespace {

CheckReport compare(std::string id, unsigned prime, const CycMatrix &lhs,
                    const CycMatrix &rhs, const std::string &label) {
  Stopwatch clock;
  const auto bad = lhs.first_mismatch(rhs);
  std::string details = label;
  if (bad) {
    const auto [r, c] = *bad;
    details += ": mismatch at (" + std::to_string(r) + "," + std::to_string(c) +
               "), lhs " + lhs.at(r, c).to_string() + ", rhs " +
               rhs.at(r, c).to_string();
  }
  return make_check(std::move(id), prime, !bad, std::move(details), clock);
}

// The six block identities, given alpha, beta, xi of size l (or 2).
ReportList block_relations(unsigned prime, const CycMatrix &alpha, const CycMatrix &beta,
                           const CycMatrix &xi) {
  const CycMatrix da = delta(alpha), db = delta(beta), dxi = delta(xi);
  const CycMatrix gb = gamma(beta), gxi = gamma(xi);
  const CycMatrix id = CycMatrix::identity(prime, da.size());
  return {
      compare("matrices.g1.delta_commutator", prime, commutator(da, db), dxi,
              "[D(alpha), D(beta)] = D(xi)"),
      compare("matrices.g1.gamma_xi_delta_alpha", prime, commutator(gxi, da), id,
              "[G(xi), D(alpha)] = I"),
      compare("matrices.g1.gamma_xi_delta_beta", prime, commutator(gxi, db), id,
              "[G(xi), D(beta)] = I"),
      compare("matrices.g1.delta_alpha_conj", prime, conjugate_by(da, gb), gxi * da,
              "D(alpha)^G(beta) = G(xi) D(alpha)"),
      compare("matrices.g1.delta_beta_conj", prime, conjugate_by(db, gb), db,
              "D(beta)^G(beta) = D(beta)"),
      compare("matrices.g1.gamma_xi_conj", prime, conjugate_by(gxi, gb), gxi,
              "G(xi)^G(beta) = G(xi)"),
  };
}

using Mat2 = std::array<ffla::Residue, 4>;

Mat2 mul2(const Mat2 &a, const Mat2 &b, unsigned p) {
  using ffla::add_mod, ffla::mul_mod;
  return {add_mod(mul_mod(a[0], b[0], p), mul_mod(a[1], b[2], p), p),
          add_mod(mul_mod(a[0], b[1], p), mul_mod(a[1], b[3], p), p),
          add_mod(mul_mod(a[2], b[0], p), mul_mod(a[3], b[2], p), p),
          add_mod(mul_mod(a[2], b[1], p), mul_mod(a[3], b[3], p), p)};
}

Mat2 pow2(Mat2 a, unsigned e, unsigned p) {
  Mat2 r{1, 0, 0, 1};
  for (unsigned k = 0; k < e; ++k)
    r = mul2(r, a, p);
  return r;
}

Mat2 mat2(unsigned p, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return {ffla::reduce_signed(a, p), ffla::reduce_signed(b, p), ffla::reduce_signed(c, p),
          ffla::reduce_signed(d, p)};
}

std::string render2(const Mat2 &m) {
  return "[" + std::to_string(m[0]) + ", " + std::to_string(m[1]) + "; " +
         std::to_string(m[2]) + ", " + std::to_string(m[3]) + "]";
}

} // namespace

ReportList verify_root_power_sums(unsigned prime) {
  Stopwatch clock;
  ffla::require_prime(prime);
  bool ok = true;
  std::string details = "sum_k xi^{km} for m in [0," + std::to_string(prime) + ")";
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(prime); ++m) {
    const std::int64_t got = root_power_sum(prime, m);
    const std::int64_t want = m == 0 ? prime : 0;
    if (got != want) {
      ok = false;
      details += "; m=" + std::to_string(m) + " gives " + std::to_string(got);
    }
  }
  ReportList out;
  out.push_back(make_check("matrices.root_power_sum", prime, ok, details, clock));
  out.push_back(make_note("matrices.root_power_sum_index", prime,
                          "the Kronecker delta is indexed by n while the sum runs "
                          "over xi^{km}; read as delta_{m mod l, 0}, which the sums confirm",
                          clock));
  return out;
}

ReportList verify_triangular_shift(unsigned prime) {
  Stopwatch clock;
  ffla::require_prime(prime);
  const std::int64_t l = prime;
  std::size_t failures = 0;
  std::string first;
  for (std::int64_t i = 0; i < l; ++i)
    for (std::int64_t j = 0; j < l; ++j)
      for (std::int64_t k = 0; k < l; ++k)
        if (!triangular_shift_holds(l, i, j, k)) {
          if (failures++ == 0)
            first = " first failure (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ")";
        }
  return {make_check("matrices.triangular_shift", prime, failures == 0,
                     std::to_string(l * l * l) + " triples, " + std::to_string(failures) +
                         " failures" + first,
                     clock)};
}

ReportList verify_su_generators(unsigned prime) {
  const GeneratorSet g = su_generators(prime);
  const std::size_t l = prime;
  const CycMatrix id = CycMatrix::identity(prime, l);
  ReportList out;
  out.push_back(compare("matrices.su.alpha_unitary", prime, g.alpha * g.alpha.conj_transpose(),
                        id, "alpha alpha^* = I"));
  out.push_back(compare("matrices.su.beta_unitary", prime, g.beta * g.beta.conj_transpose(), id,
                        "beta beta^* = I"));
  {
    Stopwatch clock;
    bool ok = true;
    std::string details = "[alpha, beta] = xi I";
    try {
      const CycMatrix c = commutator(g.alpha, g.beta);
      if (const auto bad = c.first_mismatch(g.xi)) {
        ok = false;
        details += ": mismatch at (" + std::to_string(bad->first) + "," +
                   std::to_string(bad->second) + ")";
      }
    } catch (const Error &e) {
      ok = false;
      details += std::string(": ") + e.what();
    }
    out.push_back(make_check("matrices.su.commutator", prime, ok, details, clock));
  }
  out.push_back(compare("matrices.su.s_unitary", prime, g.S.conj_transpose() * g.S, id,
                        "S^* S = I"));
  out.push_back(compare("matrices.su.t_gram", prime, g.T.conj_transpose() * g.T,
                        CycMatrix::scalar(CycInt::integer(prime, prime), l), "T^* T = l I"));
  {
    Stopwatch clock;
    const CycInt one = CycInt::integer(prime, 1);
    const CycInt da = g.alpha.monomial_determinant();
    const CycInt db = g.beta.monomial_determinant();
    out.push_back(make_check("matrices.su.determinants", prime, da == one && db == one,
                             "det alpha = " + da.to_string() + ", det beta = " + db.to_string(),
                             clock));
  }
  return out;
}

ReportList verify_weyl_conjugation(unsigned prime) {
  const GeneratorSet g = su_generators(prime);
  const CycMatrix alpha_inv = g.alpha.unitary_inverse();
  const CycMatrix beta_inv = g.beta.unitary_inverse();
  const CycMatrix t_star = g.T.conj_transpose();
  return {
      compare("matrices.weyl.s_alpha", prime, conjugate_by(g.alpha, g.S), g.alpha,
              "S^-1 alpha S = alpha"),
      compare("matrices.weyl.s_beta", prime, conjugate_by(g.beta, g.S), alpha_inv * g.beta,
              "S^-1 beta S = alpha^-1 beta"),
      compare("matrices.weyl.t_alpha", prime, t_star * g.alpha * g.T,
              (alpha_inv * g.beta).scaled(prime), "T^* alpha T = l alpha^-1 beta"),
      compare("matrices.weyl.t_beta", prime, t_star * g.beta * g.T, beta_inv.scaled(prime),
              "T^* beta T = l beta^-1"),
  };
}

ReportList verify_g1_relations(unsigned prime) {
  if (prime == 2) {
    const TwoGenerators g = two_generators();
    return block_relations(prime, g.alpha, g.beta, g.xi);
  }
  const GeneratorSet g = su_generators(prime);
  return block_relations(prime, g.alpha, g.beta, g.xi);
}

ReportList verify_l2_generators() {
  const unsigned p = 2;
  const TwoGenerators g = two_generators();
  const CycMatrix t_star = g.T2.conj_transpose();
  ReportList out{
      compare("matrices.l2.beta_alpha", p, conjugate_by(g.alpha, g.beta), g.xi * g.alpha,
              "beta^-1 alpha beta = xi alpha"),
      compare("matrices.l2.t_gram", p, t_star * g.T2,
              CycMatrix::scalar(CycInt::integer(p, 2), 2), "T2^* T2 = 2 I"),
      compare("matrices.l2.t_alpha", p, t_star * g.alpha * g.T2, (g.alpha * g.beta).scaled(2),
              "T2^* alpha T2 = 2 alpha beta"),
      compare("matrices.l2.t_beta", p, t_star * g.beta * g.T2, g.beta.scaled(2),
              "T2^* beta T2 = 2 beta"),
  };
  {
    Stopwatch clock;
    const CycInt one = CycInt::integer(p, 1);
    bool ok = true;
    for (const CycMatrix *m : {&g.xi, &g.alpha, &g.beta})
      ok = ok && (*m * m->conj_transpose() == CycMatrix::identity(p, 2)) &&
           m->monomial_determinant() == one;
    out.push_back(make_check("matrices.l2.unitary_det", p, ok,
                             "xi, alpha, beta unitary with determinant 1", clock));
  }
  {
    Stopwatch clock;
    const bool fixes_alpha = conjugate_by(g.alpha, g.S2) == g.alpha;
    const bool beta_to_ab = conjugate_by(g.beta, g.S2) == g.alpha * g.beta;
    std::string details = "sigma is not defined for l = 2; candidate S2 = diag(1, i) gives "
                          "S2^-1 alpha S2 = alpha (" +
                          std::string(fixes_alpha ? "holds" : "fails") +
                          "), S2^-1 beta S2 = alpha beta (" +
                          std::string(beta_to_ab ? "holds" : "fails") +
                          "), det S2 = " + g.S2.monomial_determinant().to_string();
    if (fixes_alpha && beta_to_ab)
      out.push_back(make_note("matrices.l2.sigma_candidate", p, details, clock));
    else
      out.push_back(make_check("matrices.l2.sigma_candidate", p, false, details, clock));
  }
  for (auto &r : block_relations(p, g.alpha, g.beta, g.xi))
    out.push_back(std::move(r));
  return out;
}

ReportList verify_sl2_generation(unsigned prime) {
  Stopwatch clock;
  ffla::require_prime(prime);
  const unsigned p = prime;
  Mat2 sigma, tau;
  bool powers_ok = true;
  std::string details;
  if (p == 2) {
    sigma = mat2(p, 1, 0, 1, 1);
    tau = mat2(p, 1, 1, 0, 1);
    details = "sigma " + render2(sigma) + ", tau " + render2(tau);
  } else {
    sigma = mat2(p, 1, -1, 0, 1);
    tau = mat2(p, -1, 0, 1, -1);
    const Mat2 sp = pow2(sigma, p - 1, p), tp = pow2(tau, p - 1, p);
    powers_ok = sp == mat2(p, 1, 1, 0, 1) && tp == mat2(p, 1, 0, 1, 1);
    details = "sigma^(l-1) " + render2(sp) + ", tau^(l-1) " + render2(tp);
  }

  std::set<Mat2> seen{Mat2{1, 0, 0, 1}};
  std::deque<Mat2> queue{Mat2{1, 0, 0, 1}};
  while (!queue.empty()) {
    const Mat2 m = queue.front();
    queue.pop_front();
    for (const Mat2 &g : {sigma, tau}) {
      const Mat2 next = mul2(m, g, p);
      if (seen.insert(next).second)
        queue.push_back(next);
    }
  }
  const std::size_t want = static_cast<std::size_t>(p) * (p * p - 1);
  bool det_ok = true;
  for (const Mat2 &m : seen)
    det_ok = det_ok &&
             ffla::sub_mod(ffla::mul_mod(m[0], m[3], p), ffla::mul_mod(m[1], m[2], p), p) == 1;
  return {make_check("matrices.sl2.powers", p, powers_ok, details, clock),
          make_check("matrices.sl2.order", p, seen.size() == want && det_ok,
                     "generated group has " + std::to_string(seen.size()) +
                         " elements, |SL_2| = " + std::to_string(want),
                     clock)};
}

} // namespace milnor_forge::cyclo
