#include "milnor_forge/properties.hpp"

#include "milnor_forge/cyclo.hpp"
#include "milnor_forge/errors.hpp"
#include "milnor_forge/ffla.hpp"
#include "milnor_forge/galg.hpp"
#include "milnor_forge/invariants.hpp"
#include "milnor_forge/milnor.hpp"
#include "milnor_forge/specseq.hpp"

#include <functional>
#include <random>

namespace milnor_forge::properties {

using ffla::FieldMatrix;
using ffla::FieldVector;
using galg::Element;
using galg::Mode;

namespace {

using Rng = std::mt19937_64;

Rng stream(std::uint64_t seed, const std::string &id, unsigned prime) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(std::hash<std::string>{}(id)), prime};
  return Rng(seq);
}

std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Runs body for each case; body returns an empty string on success or a
// description of the counterexample.
CheckReport property(const std::string &id, unsigned prime, std::uint64_t seed, std::size_t cases,
                     const std::function<std::string(Rng &)> &body) {
  Stopwatch clock;
  Rng rng = stream(seed, id, prime);
  for (std::size_t k = 0; k < cases; ++k) {
    std::string bad;
    try {
      bad = body(rng);
    } catch (const Error &e) {
      bad = std::string("threw: ") + e.what();
    }
    if (!bad.empty())
      return make_check(id, prime, false, "case " + std::to_string(k) + ": " + bad, clock);
  }
  return make_check(id, prime, true,
                    std::to_string(cases) + " cases, seed " + std::to_string(seed), clock);
}

struct Pool {
  galg::ContextPtr ctx;
  std::vector<std::vector<galg::Monomial>> by_degree;

  Element random(Rng &rng, int max_degree) const {
    const int d = static_cast<int>(uniform(rng, 1, max_degree));
    const auto &mons = by_degree[static_cast<std::size_t>(d)];
    Element e(ctx);
    const int terms = static_cast<int>(uniform(rng, 1, 3));
    for (int t = 0; t < terms; ++t) {
      const auto &m = mons[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(mons.size()) - 1))];
      e = e + Element::monomial(ctx, m, uniform(rng, 1, ctx->prime() - 1));
    }
    return e.is_zero() ? random(rng, max_degree) : e;
  }
};

Pool make_pool(unsigned prime) {
  const int shift1 = prime == 2 ? 3 : static_cast<int>(2 * prime - 1);
  const int n_work = std::max(12, 4 + 2 * shift1);
  Pool pool{galg::elementary_abelian(prime, 3, n_work), {}};
  for (int d = 0; d <= 4; ++d)
    pool.by_degree.push_back(galg::basis_of_degree(*pool.ctx, d));
  return pool;
}

bool odd_degree(const Element &e) { return *e.homogeneous_degree() % 2 == 1; }

FieldMatrix random_invertible(Rng &rng, unsigned prime, std::size_t n) {
  for (;;) {
    FieldMatrix m(n, n, prime);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m.set(i, j, static_cast<ffla::Residue>(uniform(rng, 0, prime - 1)));
    if (m.is_invertible())
      return m;
  }
}

std::vector<FieldVector> random_vectors(Rng &rng, unsigned prime, std::size_t n, std::size_t count) {
  std::vector<FieldVector> out;
  for (std::size_t k = 0; k < count; ++k) {
    FieldVector v(prime, n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = static_cast<ffla::Residue>(uniform(rng, 0, prime - 1));
    out.push_back(std::move(v));
  }
  return out;
}

cyclo::CycInt random_cyc(Rng &rng, unsigned prime) {
  std::vector<std::int64_t> c(cyclo::root_order(prime));
  for (auto &x : c)
    x = uniform(rng, -6, 6);
  return cyclo::CycInt::from_group_ring(prime, c);
}

// Random two-stage spectral sequence on base b2, c2, b3, c3 and fiber z1, z2.
struct RandomSS {
  specseq::SSPage e2;
  std::vector<specseq::DifferentialSpec> specs;
};

RandomSS random_ss(Rng &rng, unsigned prime) {
  using galg::Bidegree;
  using galg::GeneratorSpec;
  const bool odd = prime != 2;
  auto base = [&](std::string n, int d) {
    return GeneratorSpec{std::move(n), d, odd && d % 2 == 1, Bidegree{d, 0}, std::nullopt};
  };
  auto fib = [&](std::string n, int d) {
    return GeneratorSpec{std::move(n), d, odd && d % 2 == 1, Bidegree{0, d}, std::nullopt};
  };
  std::vector<GeneratorSpec> gens{base("b2", 2), base("c2", 2), base("b3", 3), base("c3", 3),
                                  fib("z1", 1)};
  if (odd)
    gens.push_back(fib("z2", 2));
  const auto ctx = galg::AlgebraContext::create(prime, gens, 6);
  auto g = [&](const char *n) { return Element::generator(ctx, n); };
  auto coef = [&] { return uniform(rng, 0, prime - 1); };

  RandomSS out{specseq::SSPage::initial(ctx, 6), {}};
  const std::int64_t r1 = coef(), r2 = coef();
  const Element d2 = g("b2").scaled(r1) + g("c2").scaled(r2);
  out.specs.push_back({2, {{g("z1"), d2}}});
  const Element d3 = g("b3").scaled(coef()) + g("c3").scaled(coef());
  if (odd)
    out.specs.push_back({3, {{g("z2"), d3}}});
  else if (!d2.is_zero())
    out.specs.push_back({3, {{galg::power(g("z1"), 2), d3}}});
  else
    out.specs.push_back({3, {}});
  return out;
}

} // namespace

ReportList run_properties(unsigned prime, std::uint64_t seed, std::size_t cases) {
  ffla::require_prime(prime);
  ReportList out;
  const Pool pool = make_pool(prime);
  const auto &ctx = pool.ctx;
  const auto q0 = milnor::milnor_q(0, ctx), q1 = milnor::milnor_q(1, ctx);

  out.push_back(property("prop.q_squared", prime, seed, cases, [&](Rng &rng) {
    const Element a = pool.random(rng, 4);
    for (const auto *q : {&q0, &q1}) {
      const Element v = q->apply(q->apply(a));
      if (!v.is_zero())
        return "Q^2(" + a.to_string() + ") = " + v.to_string();
    }
    return std::string();
  }));

  if (prime != 2)
    out.push_back(property("prop.q_anticommute", prime, seed, cases, [&](Rng &rng) {
      const Element a = pool.random(rng, 4);
      const Element v = q0.apply(q1.apply(a)) + q1.apply(q0.apply(a));
      return v.is_zero() ? std::string() : "(Q0Q1 + Q1Q0)(" + a.to_string() + ") = " + v.to_string();
    }));

  out.push_back(property("prop.leibniz", prime, seed, cases, [&](Rng &rng) {
    const Element a = pool.random(rng, 4), b = pool.random(rng, 4);
    for (const auto *q : {&q0, &q1}) {
      Element rhs = q->apply(a) * b;
      const Element second = a * q->apply(b);
      rhs = odd_degree(a) && prime != 2 ? rhs - second : rhs + second;
      if (q->apply(a * b) != rhs)
        return "D(ab) mismatch for a = " + a.to_string() + ", b = " + b.to_string();
    }
    return std::string();
  }));

  out.push_back(property("prop.graded_commutative", prime, seed, cases, [&](Rng &rng) {
    const Element a = pool.random(rng, 4), b = pool.random(rng, 4);
    Element ba = b * a;
    if (odd_degree(a) && odd_degree(b))
      ba = -ba;
    return a * b == ba ? std::string() : a.to_string() + " and " + b.to_string() + " fail";
  }));

  out.push_back(property("prop.associative", prime, seed, cases, [&](Rng &rng) {
    const Element a = pool.random(rng, 4), b = pool.random(rng, 4), c = pool.random(rng, 4);
    return (a * b) * c == a * (b * c) ? std::string()
                                      : "(" + a.to_string() + ", " + b.to_string() + ", " +
                                            c.to_string() + ")";
  }));

  out.push_back(property("prop.distributive", prime, seed, cases, [&](Rng &rng) {
    const Element a = pool.random(rng, 4), b = pool.random(rng, 4), c = pool.random(rng, 4);
    const bool ok = a * (b + c) == a * b + a * c && (b + c) * a == b * a + c * a;
    return ok ? std::string()
              : "(" + a.to_string() + ", " + b.to_string() + ", " + c.to_string() + ")";
  }));

  out.push_back(property("prop.action_q0", prime, seed, cases, [&](Rng &rng) {
    const auto phi = invariants::induced_action(random_invertible(rng, prime, 3), ctx);
    const Element a = pool.random(rng, 4);
    return phi.apply(q0.apply(a)) == q0.apply(phi.apply(a))
               ? std::string()
               : "g Q0 != Q0 g on " + a.to_string();
  }));

  out.push_back(property("prop.action_multiplicative", prime, seed, cases, [&](Rng &rng) {
    const auto phi = invariants::induced_action(random_invertible(rng, prime, 3), ctx);
    const Element a = pool.random(rng, 4), b = pool.random(rng, 4);
    return phi.apply(a * b) == phi.apply(a) * phi.apply(b)
               ? std::string()
               : "g(ab) != g(a)g(b) for " + a.to_string() + ", " + b.to_string();
  }));

  // Spectral sequence properties share one generator of random cases.
  auto ss_property = [&](const std::string &id,
                         const std::function<std::string(const specseq::SSPage &,
                                                         const specseq::PageTurn &)> &check) {
    return property(id, prime, seed, cases, [&](Rng &rng) {
      RandomSS ss = random_ss(rng, prime);
      specseq::SSPage page = ss.e2;
      for (const auto &spec : ss.specs) {
        const auto turn = specseq::turn_page(page, spec);
        if (auto bad = check(page, turn); !bad.empty())
          return "E_" + std::to_string(page.page()) + ": " + bad;
        page = turn.next;
      }
      return std::string();
    });
  };

  out.push_back(ss_property("prop.dd_zero", [](const specseq::SSPage &page,
                                               const specseq::PageTurn &turn) {
    const int r = page.page();
    for (const auto &[b, d1] : turn.maps) {
      auto it = turn.maps.find({b.p + r, b.q + 1 - r});
      if (it == turn.maps.end() || d1.rows() == 0 || it->second.rows() == 0)
        continue;
      if (!(it->second * d1).is_zero())
        return "d o d nonzero from (" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
    }
    return std::string();
  }));

  out.push_back(ss_property("prop.page_monotone", [](const specseq::SSPage &page,
                                                     const specseq::PageTurn &turn) {
    for (const auto &[b, g] : page.groups())
      if (turn.next.dim(b) > g.quotient.dim())
        return "dimension grew in (" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
    return std::string();
  }));

  out.push_back(property("prop.rank_nullity", prime, seed, cases, [&](Rng &rng) {
    // Random matrices first, then one page turn per bidegree.
    const std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 6));
    const std::size_t cols = static_cast<std::size_t>(uniform(rng, 1, 6));
    const auto vs = random_vectors(rng, prime, cols, rows);
    const FieldMatrix m = FieldMatrix::from_rows(cols, prime, vs);
    const auto ker = ffla::nullspace(m);
    if (m.rank() + ker.size() != cols)
      return "rank " + std::to_string(m.rank()) + " + nullity " + std::to_string(ker.size()) +
             " != " + std::to_string(cols);
    for (const auto &v : ker)
      if (!(m * v).is_zero())
        return std::string("nullspace vector not in kernel");

    RandomSS ss = random_ss(rng, prime);
    specseq::SSPage page = ss.e2;
    for (const auto &spec : ss.specs) {
      const auto turn = specseq::turn_page(page, spec);
      const int r = page.page();
      for (const auto &[b, g] : page.groups()) {
        if (b.p + b.q > turn.next.valid_degree())
          continue;
        std::size_t out_rank = 0, in_rank = 0;
        if (auto it = turn.maps.find(b); it != turn.maps.end())
          out_rank = it->second.rank();
        if (auto it = turn.maps.find({b.p - r, b.q + r - 1}); it != turn.maps.end())
          in_rank = it->second.rank();
        if (turn.next.dim(b) + out_rank + in_rank != g.quotient.dim())
          return "page " + std::to_string(r + 1) + " bidegree (" + std::to_string(b.p) + "," +
                 std::to_string(b.q) + ")";
      }
      page = turn.next;
    }
    return std::string();
  }));

  out.push_back(property("prop.cyclo_canonical", prime, seed, cases, [&](Rng &rng) {
    const auto a = random_cyc(rng, prime);
    const auto again = cyclo::CycInt::from_group_ring(prime, a.lift());
    return again == a ? std::string() : a.to_string() + " changes on recanonicalization";
  }));

  out.push_back(property("prop.cyclo_conj", prime, seed, cases, [&](Rng &rng) {
    const auto a = random_cyc(rng, prime), b = random_cyc(rng, prime);
    const bool ok = (a * b).conj() == a.conj() * b.conj() && (a + b).conj() == a.conj() + b.conj() &&
                    a.conj().conj() == a;
    return ok ? std::string() : "conj fails on " + a.to_string() + ", " + b.to_string();
  }));

  out.push_back(property("prop.intersection", prime, seed, cases, [&](Rng &rng) {
    const std::size_t n = 6;
    const auto a = random_vectors(rng, prime, n, static_cast<std::size_t>(uniform(rng, 0, 5)));
    const auto b = random_vectors(rng, prime, n, static_cast<std::size_t>(uniform(rng, 0, 5)));
    const std::vector<std::vector<FieldVector>> ab{a, b}, ba{b, a};
    const auto i1 = ffla::Subspace::span(prime, n, ffla::subspace_intersection(ab));
    const auto i2 = ffla::Subspace::span(prime, n, ffla::subspace_intersection(ba));
    const auto sa = ffla::Subspace::span(prime, n, a), sb = ffla::Subspace::span(prime, n, b);
    if (!(i1 == i2))
      return std::string("intersection depends on order");
    if (i1.dim() + sa.plus(sb).dim() != sa.dim() + sb.dim())
      return std::string("dim(A cap B) + dim(A + B) != dim A + dim B");
    if (!sa.contains(i1) || !sb.contains(i1))
      return std::string("intersection not contained in both");
    return std::string();
  }));

  return out;
}

} // namespace milnor_forge::properties
