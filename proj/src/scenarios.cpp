#include "milnor_forge/specseq.hpp"

#include "milnor_forge/errors.hpp"
#include "milnor_forge/invariants.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace milnor_forge::specseq {

using ffla::FieldMatrix;
using ffla::FieldVector;
using ffla::Residue;
using ffla::Subspace;
using galg::GeneratorSpec;
using milnor::build;

namespace {

std::string show(Bidegree b) {
  return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

GeneratorSpec base(std::string name, int deg, bool odd) {
  return {std::move(name), deg, odd, Bidegree{deg, 0}, std::nullopt};
}

GeneratorSpec fiber(std::string name, int deg, bool odd) {
  return {std::move(name), deg, odd, Bidegree{0, deg}, std::nullopt};
}

Element gen(const ContextPtr &ctx, const std::string &name) { return Element::generator(ctx, name); }

std::size_t rank_of(std::uint32_t p, std::size_t n, const std::vector<FieldVector> &vs) {
  return Subspace::span(p, n, vs).dim();
}

FieldVector as_vector(std::uint32_t p, std::vector<Residue> v) { return FieldVector(p, std::move(v)); }

// Cross-context substitution of generator images.
Element substitute(const Element &e, const ContextPtr &target, const std::vector<Element> &images) {
  Element out(target);
  const auto &src = e.context();
  for (const auto &[m, c] : e.terms()) {
    Element term = Element::constant(target, static_cast<std::int64_t>(c));
    for (std::size_t i = 0; i < src->size(); ++i)
      if (m.exps[i] != 0)
        term = galg::multiply(term, galg::power(images[i], m.exps[i], Mode::truncating),
                              Mode::truncating);
    out = out + term;
  }
  return out;
}

} // namespace

Scenario scenario_bg1(unsigned prime, std::int64_t alpha1, std::int64_t alpha2, int n_work_extra) {
  if (prime == 2)
    throw InvalidArgument("scenario_bg1 needs an odd prime; use scenario_bg1_two");
  ffla::require_prime(prime);
  if (ffla::reduce_signed(alpha1, prime) == 0 || ffla::reduce_signed(alpha2, prime) == 0)
    throw InvalidArgument("scalars must be nonzero mod p");
  // c = 1 (x) v, b = v (x) 1; a = b - c.
  const int n = 4;
  std::vector<GeneratorSpec> gens{base("c2", 2, false), base("c3", 3, true),
                                  base("b2", 2, false), base("b3", 3, true),
                                  fiber("z1", 1, true),  fiber("z2", 2, false)};
  std::vector<galg::Monomial> rel;
  rel.push_back({{0, 0, 1, 1, 0, 0}});
  rel.push_back({{1, 1, 0, 0, 0, 0}});
  auto ctx = galg::AlgebraContext::create(prime, gens, n + n_work_extra, rel);

  const Element a2 = gen(ctx, "b2") - gen(ctx, "c2");
  const Element a3 = gen(ctx, "b3") - gen(ctx, "c3");
  Scenario s;
  s.name = "bg1";
  s.prime = prime;
  s.e2 = ctx;
  s.target_degree = n;
  s.input_degree = 6;
  s.differentials.push_back({2, {{gen(ctx, "z1"), a2.scaled(-alpha1)}}});
  s.differentials.push_back({3, {{gen(ctx, "z2"), a3.scaled(-alpha2)}}});
  return s;
}

Scenario scenario_bg1_two(int n_work_extra) {
  const int n = 4;
  std::vector<GeneratorSpec> gens{base("a2", 2, false), base("a3", 3, false),
                                  base("b2", 2, false), base("b3", 3, false),
                                  fiber("z1", 1, false)};
  auto ctx = galg::AlgebraContext::create(2, gens, n + n_work_extra);
  Scenario s;
  s.name = "bg1";
  s.prime = 2;
  s.e2 = ctx;
  s.target_degree = n;
  s.input_degree = ctx->n_work();
  const Element z1 = gen(ctx, "z1");
  s.differentials.push_back({2, {{z1, gen(ctx, "a2")}}});
  s.differentials.push_back({3, {{galg::power(z1, 2), gen(ctx, "a3")}}});
  s.externals.push_back({ExternalKind::permanent, galg::power(z1, 4),
                         "z1^4 is a permanent cycle: H^4 has rank 2 after inverting 2"});
  return s;
}

Scenario scenario_bpu(unsigned prime, bool beta_prime_zero, int n_work_extra) {
  if (prime == 2)
    throw InvalidArgument("scenario_bpu needs an odd prime");
  ffla::require_prime(prime);
  const int n = 6;
  std::vector<GeneratorSpec> gens{base("u3", 3, true)};
  if (2 * prime + 1 <= 7)
    gens.push_back(base("u" + std::to_string(2 * prime + 1), static_cast<int>(2 * prime + 1), true));
  gens.push_back(fiber("y2", 2, false));
  gens.push_back(fiber("y4", 4, false));
  gens.push_back(fiber("y6", 6, false));
  auto ctx = galg::AlgebraContext::create(prime, gens, n + n_work_extra);

  const Element u3 = gen(ctx, "u3"), y2 = gen(ctx, "y2"), y4 = gen(ctx, "y4"), y6 = gen(ctx, "y6");
  Scenario s;
  s.name = "bpu";
  s.prime = prime;
  s.e2 = ctx;
  s.target_degree = n;
  s.input_degree = 7;
  s.differentials.push_back({2, {}});
  Element d_y6 = y2 * y2 * u3;
  if (!beta_prime_zero)
    d_y6 = d_y6 + y4 * u3;
  s.differentials.push_back({3, {{y4, y2 * u3}, {y6, d_y6}}});
  if (beta_prime_zero)
    s.externals.push_back({ExternalKind::killed, y6 - y2 * y4,
                           "y6 - y2*y4 does not survive: H^6 has rank 1"});
  return s;
}

std::uint64_t rational_dimension(unsigned prime, int degree) {
  if (degree < 0)
    return 0;
  std::vector<std::uint64_t> series(static_cast<std::size_t>(degree) + 1, 0);
  series[0] = 1;
  for (unsigned k = 2; k <= prime; ++k)
    for (int copy = 0; copy < 2; ++copy) {
      const std::size_t step = 2 * k;
      for (std::size_t t = step; t < series.size(); ++t)
        series[t] += series[t - step];
    }
  return series[static_cast<std::size_t>(degree)];
}

ScenarioResult run_scenario(const Scenario &s) {
  ScenarioResult res;
  res.name = s.name;
  res.prime = s.prime;
  res.target_degree = s.target_degree;
  res.pages.push_back(SSPage::initial(s.e2, s.input_degree));
  for (const auto &d : s.differentials) {
    res.turns.push_back(turn_page(res.pages.back(), d));
    res.pages.push_back(res.turns.back().next);
  }
  const SSPage &last = res.pages.back();
  const SSPage &first = res.pages.front();
  const auto &ctx = s.e2;
  const std::uint32_t p = ctx->prime();
  const int N = s.target_degree;
  const int R = last.page();
  res.valid = N <= last.valid_degree();
  res.last_page_dims = page_dims(last, N);
  res.infinity_dims = res.last_page_dims;

  auto target_vanishes = [&](Bidegree t) {
    if (t.q < 0)
      return true;
    const int tt = t.p + t.q;
    if (tt <= last.valid_degree())
      return last.dim(t) == 0;
    if (tt <= first.valid_degree())
      return first.dim(t) == 0;
    return false;
  };
  auto bidegree_certified = [&](Bidegree b) {
    for (int r = R; r <= b.q + 1; ++r)
      if (!target_vanishes({b.p + r, b.q - r + 1}))
        return false;
    return true;
  };

  // Permanent cycles: algebra generators in certified bidegrees and external inputs.
  std::vector<Element> permanent;
  for (std::size_t i = 0; i < ctx->size(); ++i) {
    if (ctx->generator(i).degree > N)
      continue;
    const Element g = Element::generator(ctx, i);
    if (!last.is_cycle(g))
      continue;
    if (last.is_boundary(g) || bidegree_certified(*last.bidegree_of(g)))
      permanent.push_back(g);
  }
  std::map<Bidegree, std::vector<FieldVector>> product_span;
  {
    std::function<void(std::size_t, const Element &, int)> walk =
        [&](std::size_t from, const Element &acc, int deg) {
          if (acc.is_zero())
            return;
          const auto b = last.bidegree_of(acc);
          if (b && last.group(*b))
            if (auto cls = last.class_of(acc))
              product_span[*b].push_back(as_vector(p, *cls));
          for (std::size_t i = from; i < permanent.size(); ++i) {
            const int d = deg + *permanent[i].homogeneous_degree();
            if (d <= N)
              walk(i, galg::multiply(acc, permanent[i], Mode::truncating), d);
          }
        };
    walk(0, Element::one(ctx), 0);
  }

  bool all_settled = true;
  for (const auto &[b, grp] : last.groups()) {
    const int t = b.p + b.q;
    const std::size_t m = grp.quotient.dim();
    if (t > N || m == 0)
      continue;
    const auto reps = last.representatives(b);
    const bool by_bidegree = bidegree_certified(b);
    std::vector<FieldVector> prod = product_span[b];
    std::vector<FieldVector> ext = prod, killed;
    for (const auto &x : s.externals) {
      if (last.bidegree_of(x.representative) != b)
        continue;
      auto cls = last.class_of(x.representative);
      if (!cls || std::all_of(cls->begin(), cls->end(), [](Residue r) { return r == 0; })) {
        res.remarks.push_back("external input on " + x.representative.to_string() +
                              " does not name a nonzero class on E_" + std::to_string(R));
        continue;
      }
      (x.kind == ExternalKind::permanent ? ext : killed).push_back(as_vector(p, *cls));
    }
    const Subspace P = Subspace::span(p, m, prod);
    const Subspace E = Subspace::span(p, m, ext);
    const Subspace K = E.plus(killed);
    const std::size_t kill_rank = Subspace::span(p, m, killed).dim();
    res.infinity_dims[static_cast<std::size_t>(t)] -= kill_rank;
    if (!by_bidegree && K.dim() < m)
      all_settled = false;

    for (std::size_t i = 0; i < m; ++i) {
      FieldVector e(p, m);
      e[i] = 1;
      FinalClass fc{b, reps[i], Certificate::uncertified, false};
      const bool in_killed = kill_rank > 0 && !E.contains(e) && K.contains(e);
      if (by_bidegree)
        fc.certificate = Certificate::bidegree;
      else if (P.contains(e))
        fc.certificate = Certificate::product;
      else if (E.contains(e) || in_killed)
        fc.certificate = Certificate::external;
      fc.killed_externally = in_killed;
      res.classes.push_back(std::move(fc));
    }

    // Where a killed class could go, or come from.
    for (const auto &kv : killed) {
      std::vector<std::string> routes;
      for (int r = R; r <= b.q + 1; ++r) {
        const Bidegree tb{b.p + r, b.q - r + 1};
        if (!target_vanishes(tb))
          routes.push_back("d_" + std::to_string(r) + " into " + show(tb));
      }
      for (int r = R; r <= b.p; ++r) {
        const Bidegree sb{b.p - r, b.q + r - 1};
        if (last.dim(sb) > 0)
          routes.push_back("d_" + std::to_string(r) + " from " + show(sb));
      }
      const Element rep = last.element(b, [&] {
        FieldVector amb(p, grp.monomials.size());
        for (std::size_t i = 0; i < m; ++i)
          if (kv[i] != 0)
            amb.add_scaled(grp.quotient.representatives()[i], kv[i]);
        return amb;
      }());
      std::string text = "externally killed class " + rep.to_string() + " in " + show(b) + ": ";
      if (routes.empty()) {
        text += "no differential from E_" + std::to_string(R) +
                " on can kill it through degree " + std::to_string(first.valid_degree());
      } else {
        text += "possible ";
        for (std::size_t k = 0; k < routes.size(); ++k)
          text += (k ? ", " : "") + routes[k];
      }
      res.remarks.push_back(text);
    }
  }
  res.collapsed = all_settled && res.valid;
  return res;
}

namespace {

bool classes_span(const SSPage &page, const std::vector<Element> &expected, int n,
                  std::string &why) {
  std::map<Bidegree, std::vector<FieldVector>> per;
  const std::uint32_t p = page.context()->prime();
  for (const auto &e : expected) {
    if (!page.survives(e)) {
      why = e.to_string() + " does not survive to E_" + std::to_string(page.page());
      return false;
    }
    per[*page.bidegree_of(e)].push_back(as_vector(p, *page.class_of(e)));
  }
  std::vector<std::size_t> dims(static_cast<std::size_t>(n) + 1, 0);
  for (const auto &[b, vs] : per) {
    const std::size_t r = rank_of(p, page.dim(b), vs);
    if (r != vs.size()) {
      why = "expected classes in " + show(b) + " are dependent";
      return false;
    }
    if (b.p + b.q <= n)
      dims[static_cast<std::size_t>(b.p + b.q)] += r;
  }
  if (dims != page_dims(page, n)) {
    why = "expected classes give " + render_dims(dims) + ", page has " +
          render_dims(page_dims(page, n));
    return false;
  }
  return true;
}

std::string render_list(const std::vector<Element> &es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i)
    s += (i ? ", " : "") + es[i].to_string();
  return s + "}";
}

// dim E_{r+1}^t = dim E_r^t - rank out of t - rank out of t-1.
CheckReport euler_check(const std::string &id, const ScenarioResult &res) {
  Stopwatch clock;
  bool ok = true;
  std::string details = "rank bookkeeping holds on " + std::to_string(res.turns.size()) + " page turns";
  for (std::size_t k = 0; k < res.turns.size() && ok; ++k) {
    const SSPage &a = res.pages[k];
    const SSPage &b = res.pages[k + 1];
    const auto &ro = res.turns[k].rank_out;
    for (int t = 0; t <= b.valid_degree(); ++t) {
      const std::size_t out = ro[static_cast<std::size_t>(t)];
      const std::size_t in = t > 0 ? ro[static_cast<std::size_t>(t - 1)] : 0;
      if (a.dim_total(t) != b.dim_total(t) + out + in) {
        ok = false;
        details = "E_" + std::to_string(b.page()) + " degree " + std::to_string(t) +
                  " dim " + std::to_string(b.dim_total(t)) + " != " +
                  std::to_string(a.dim_total(t)) + " - " + std::to_string(out) + " - " +
                  std::to_string(in);
        break;
      }
    }
  }
  return make_check(id, res.prime, ok, details, clock);
}

std::string certificates(const ScenarioResult &res) {
  std::string s;
  for (const auto &c : res.classes) {
    const char *how = c.certificate == Certificate::bidegree  ? "bidegree"
                      : c.certificate == Certificate::product ? "product"
                      : c.certificate == Certificate::external ? "external"
                                                               : "uncertified";
    s += (s.empty() ? "" : "; ") + c.representative.to_string() + " " + show(c.bidegree) + " " +
         how + (c.killed_externally ? " killed" : "");
  }
  return s;
}

} // namespace

ReportList verify_bg1(unsigned prime, bool full_sweep) {
  ReportList out;
  const std::vector<std::size_t> expected_dims{1, 0, 1, 1, 2};
  Stopwatch total;
  const Scenario sc = prime == 2 ? scenario_bg1_two() : scenario_bg1(prime);
  const ScenarioResult res = run_scenario(sc);
  const auto &ctx = sc.e2;
  const SSPage &e3 = res.pages[1];
  const SSPage &e4 = res.pages[2];
  out.push_back(make_check("ss.bg1.dd_zero", prime, true,
                           "d_2 and d_3 satisfy d o d = 0 on classes through the valid range", total));

  if (prime == 2) {
    Stopwatch clock;
    const Element z1sq = galg::power(gen(ctx, "z1"), 2);
    const Element a3 = gen(ctx, "a3");
    bool ok = e3.survives(z1sq) && e3.survives(a3);
    std::string details = "z1^2 and a3 survive to E_3";
    if (ok) {
      const auto &d3 = res.turns[1].maps.at({0, 2});
      const auto src = *e3.class_of(z1sq);
      const auto tgt = *e3.class_of(a3);
      const FieldVector img = d3 * as_vector(2, src);
      ok = img == as_vector(2, tgt);
      details += ok ? ", d_3(z1^2) = a3" : ", d_3(z1^2) = " + img.to_string();
    }
    out.push_back(make_check("ss.bg1.z1_squared", prime, ok, details, clock));
  } else {
    {
      Stopwatch clock;
      const std::map<Bidegree, std::size_t> expected{{{0, 0}, 1}, {{0, 2}, 1}, {{0, 4}, 1},
                                                     {{2, 0}, 1}, {{2, 2}, 1}, {{4, 0}, 1},
                                                     {{3, 0}, 2}, {{3, 2}, 2}};
      bool ok = e3.valid_degree() >= 5;
      std::string details = "E_3 valid through degree " + std::to_string(e3.valid_degree());
      for (const auto &[b, g] : e3.groups()) {
        if (b.p + b.q > 5)
          continue;
        auto it = expected.find(b);
        const std::size_t want = it == expected.end() ? 0 : it->second;
        if (g.quotient.dim() != want) {
          ok = false;
          details = "E_3 " + show(b) + " has dim " + std::to_string(g.quotient.dim()) +
                    ", expected " + std::to_string(want);
          break;
        }
      }
      const Element z2 = gen(ctx, "z2"), b2 = gen(ctx, "b2"), b3 = gen(ctx, "b3");
      const Element a3 = b3 - gen(ctx, "c3");
      std::vector<Element> basis;
      for (const Element &m : {Element::one(ctx), b2, b2 * b2, a3, b3})
        for (int k = 0; k <= 2; ++k) {
          if (*m.homogeneous_degree() + 2 * k > 5)
            continue;
          const Element x = m * galg::power(z2, static_cast<unsigned>(k));
          if (!x.is_zero())
            basis.push_back(x);
        }
      std::string why;
      if (ok && !classes_span(e3, basis, 5, why)) {
        ok = false;
        details = why;
      } else if (ok) {
        details += "; free on 1, b2, b2^2, a3, b3 over F_p[z2]";
      }
      out.push_back(make_check("ss.bg1.e3_free", prime, ok, details, clock));
    }
    {
      Stopwatch clock;
      const Element a3b2 = (gen(ctx, "b3") - gen(ctx, "c3")) * gen(ctx, "b2");
      const bool ok = res.pages[0].survives(a3b2) && e3.is_boundary(a3b2);
      out.push_back(make_check("ss.bg1.a3b2", prime, ok,
                               "a3*b2 = " + a3b2.to_string() +
                                   (ok ? " is nonzero on E_2 and zero on E_3" : " misbehaves"),
                               clock));
    }
  }

  {
    Stopwatch clock;
    const Element b2 = gen(ctx, "b2"), b3 = gen(ctx, "b3");
    std::vector<Element> classes{Element::one(ctx), b2, b3, b2 * b2};
    classes.push_back(prime == 2 ? galg::power(gen(ctx, "z1"), 4) : b2 * gen(ctx, "z2"));
    const auto dims = page_dims(e4, 4);
    bool ok = dims == expected_dims && e4.valid_degree() >= 4;
    std::string details = "E_4 dims " + render_dims(dims) + ", valid through degree " +
                          std::to_string(e4.valid_degree());
    std::string why;
    if (ok && !classes_span(e4, classes, 4, why)) {
      ok = false;
      details += "; " + why;
    } else if (ok) {
      details += "; basis " + render_list(classes);
    }
    out.push_back(make_check("ss.bg1.e4_classes", prime, ok, details, clock));
  }
  {
    Stopwatch clock;
    const bool ok = res.collapsed && res.infinity_dims == expected_dims;
    out.push_back(make_check("ss.bg1.h_dims", prime, ok,
                             "H^i, i <= 4: " + render_dims(res.infinity_dims) +
                                 (res.collapsed ? " certified: " : " not certified: ") +
                                 certificates(res),
                             clock));
  }
  if (prime == 2) {
    Stopwatch clock;
    Scenario bare = sc;
    bare.externals.clear();
    const auto r2 = run_scenario(bare);
    out.push_back(make_note("ss.bg1.external_input", prime,
                            "z1^4 is permanent by external input (rational rank); without it E_4 "
                            "gives only dim H^4 <= " +
                                std::to_string(r2.last_page_dims[4]) +
                                (r2.collapsed ? "" : " and the certificate is incomplete"),
                            clock));
  }
  out.push_back(euler_check("ss.bg1.euler", res));
  {
    Stopwatch clock;
    const Scenario wide = prime == 2 ? scenario_bg1_two(5) : scenario_bg1(prime, 1, 1, 5);
    const auto r2 = run_scenario(wide);
    const bool ok = r2.infinity_dims == res.infinity_dims && r2.collapsed == res.collapsed;
    out.push_back(make_check("ss.bg1.stability", prime, ok,
                             "N_work " + std::to_string(wide.e2->n_work()) + ": " +
                                 render_dims(r2.infinity_dims) + " vs N_work " +
                                 std::to_string(ctx->n_work()) + ": " +
                                 render_dims(res.infinity_dims),
                             clock));
  }
  if (prime != 2) {
    Stopwatch clock;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    if (prime == 3 || full_sweep) {
      for (std::int64_t a = 1; a < prime; ++a)
        for (std::int64_t b = 1; b < prime; ++b)
          pairs.emplace_back(a, b);
    } else {
      pairs.emplace_back(2, 3);
    }
    bool ok = true;
    std::string details = std::to_string(pairs.size()) + " scalar pairs give " +
                          render_dims(res.infinity_dims);
    for (auto [a, b] : pairs) {
      const auto r2 = run_scenario(scenario_bg1(prime, a, b));
      if (r2.infinity_dims != res.infinity_dims || page_dims(r2.last(), 4) != page_dims(e4, 4)) {
        ok = false;
        details = "alpha = (" + std::to_string(a) + "," + std::to_string(b) + ") gives " +
                  render_dims(r2.infinity_dims);
        break;
      }
    }
    out.push_back(make_check("ss.bg1.sweep", prime, ok, details, clock));
  }
  return out;
}

ReportList verify_bpu(unsigned prime) {
  if (prime == 2)
    throw InvalidArgument("verify_bpu needs an odd prime");
  ReportList out;
  Stopwatch clock_run;
  const ScenarioResult nz = run_scenario(scenario_bpu(prime, false));
  const ScenarioResult zr = run_scenario(scenario_bpu(prime, true));
  out.push_back(make_check("ss.bpu.dd_zero", prime, true,
                           "d_3 o d_3 = 0 in both branches", clock_run));
  const auto &ctx = nz.last().context();
  const Element u3 = gen(ctx, "u3"), y2 = gen(ctx, "y2");
  {
    Stopwatch clock;
    const std::vector<std::size_t> want{1, 0, 1, 1, 1, 0, 1};
    std::vector<Element> classes{Element::one(ctx), y2, u3, y2 * y2, y2 * y2 * y2};
    bool ok = nz.last_page_dims == want && nz.collapsed && nz.infinity_dims == want;
    std::string details = "E_4 " + render_dims(nz.last_page_dims) + "; " + certificates(nz);
    std::string why;
    if (ok && !classes_span(nz.last(), classes, 6, why)) {
      ok = false;
      details += "; " + why;
    }
    out.push_back(make_check("ss.bpu.beta_nonzero", prime, ok, details, clock));
  }
  {
    Stopwatch clock;
    const auto &c2 = zr.last().context();
    const Element extra = gen(c2, "y6") - gen(c2, "y2") * gen(c2, "y4");
    const std::vector<std::size_t> want{1, 0, 1, 1, 1, 0, 2};
    std::vector<std::size_t> want_inf = want;
    want_inf[6] = 1;
    const bool tagged = std::any_of(zr.classes.begin(), zr.classes.end(),
                                    [](const FinalClass &c) { return c.killed_externally; });
    const bool ok = zr.last_page_dims == want && zr.last().survives(extra) && tagged &&
                    zr.infinity_dims == want_inf;
    out.push_back(make_check("ss.bpu.beta_zero", prime, ok,
                             "E_4 " + render_dims(zr.last_page_dims) + ", E_inf " +
                                 render_dims(zr.infinity_dims) + "; " + certificates(zr),
                             clock));
    Stopwatch clock2;
    std::string remark;
    for (const auto &r : zr.remarks)
      remark += (remark.empty() ? "" : "; ") + r;
    out.push_back(make_note("ss.bpu.beta_zero_kill", prime, remark, clock2));
  }
  if (nz.last().survives(y2 * y2 * y2)) {
    Stopwatch clock;
    out.push_back(make_note("ss.bpu.e4_span", prime,
                            "y2^3 survives to E_4 in (0,6), beyond the span of 1, y2, u3, y2^2",
                            clock));
  }
  out.push_back(euler_check("ss.bpu.euler", nz));
  return out;
}

ReportList iota_image_check(unsigned prime) {
  ReportList out;
  Stopwatch clock;
  const Scenario sc = prime == 2 ? scenario_bg1_two() : scenario_bg1(prime);
  const ScenarioResult res = run_scenario(sc);
  const auto ba3 = invariants::ba3_context(prime);
  const auto &src = sc.e2;

  std::vector<Element> images;
  for (std::size_t i = 0; i < src->size(); ++i) {
    const std::string name = src->generator(i).name;
    Element img(ba3);
    if (prime == 2) {
      if (name == "b2")
        img = build(ba3, {{1, {{"x1", 2}}}, {1, {{"x1", 1}, {"y1", 1}}}, {1, {{"y1", 2}}}});
      else if (name == "b3")
        img = build(ba3, {{1, {{"x1", 1}, {"y1", 2}}}, {1, {{"x1", 2}, {"y1", 1}}}});
      else if (name == "z1")
        img = Element::generator(ba3, "z1");
    } else {
      if (name == "b2" || name == "c2")
        img = build(ba3, {{1, {{"x1", 1}, {"y1", 1}}}});
      else if (name == "b3" || name == "c3")
        img = build(ba3, {{1, {{"x2", 1}, {"y1", 1}}}, {-1, {{"x1", 1}, {"y2", 1}}}});
      else if (name == "z1" || name == "z2")
        img = Element::generator(ba3, name);
    }
    images.push_back(img);
  }

  const auto inv = invariants::invariant_subspace(ba3, 4, invariants::weyl_generators(prime));
  const galg::DegreeBasis db(ba3, 4);
  std::vector<FieldVector> inv_coords;
  for (const auto &v : inv)
    inv_coords.push_back(db.coordinates(v));

  bool ok = res.collapsed;
  std::vector<Element> nonzero;
  std::string details;
  for (const auto &c : res.classes) {
    if (c.bidegree.p + c.bidegree.q != 4 || c.killed_externally)
      continue;
    const Element im = substitute(c.representative, ba3, images);
    details += (details.empty() ? "" : ", ") + c.representative.to_string() + " -> " + im.to_string();
    if (im.is_zero())
      continue;
    nonzero.push_back(im);
    // Some invariant must have im as its lowest-filtration component.
    const int p0 = c.bidegree.p;
    std::vector<std::size_t> low, at;
    for (std::size_t k = 0; k < db.size(); ++k) {
      const Bidegree mb = ba3->bidegree(db.monomials()[k]);
      if (mb.p < p0)
        low.push_back(k);
      else if (mb == c.bidegree)
        at.push_back(k);
    }
    FieldMatrix cons(low.size(), inv_coords.size(), prime);
    for (std::size_t i = 0; i < low.size(); ++i)
      for (std::size_t j = 0; j < inv_coords.size(); ++j)
        cons.set(i, j, inv_coords[j][low[i]]);
    std::vector<FieldVector> leads;
    const auto combos = low.empty() ? std::vector<FieldVector>{} : ffla::nullspace(cons);
    auto project = [&](const FieldVector &w) {
      FieldVector v(prime, at.size());
      for (std::size_t i = 0; i < at.size(); ++i)
        v[i] = w[at[i]];
      return v;
    };
    if (low.empty()) {
      for (const auto &w : inv_coords)
        leads.push_back(project(w));
    } else {
      for (const auto &cmb : combos) {
        FieldVector w(prime, db.size());
        for (std::size_t j = 0; j < inv_coords.size(); ++j)
          if (cmb[j] != 0)
            w.add_scaled(inv_coords[j], cmb[j]);
        leads.push_back(project(w));
      }
    }
    if (!Subspace::span(prime, at.size(), leads).contains(project(db.coordinates(im))))
      ok = false;
  }
  std::vector<FieldVector> nz_coords;
  for (const auto &e : nonzero)
    nz_coords.push_back(db.coordinates(e));
  const std::size_t image_rank = rank_of(prime, db.size(), nz_coords);
  const std::uint64_t rational = rational_dimension(prime, 4);
  ok = ok && image_rank == inv.size() && res.infinity_dims[4] == rational;
  if (prime == 2)
    ok = ok && inv.size() == res.infinity_dims[4];
  details += "; invariant dim " + std::to_string(inv.size()) + ", image rank " +
             std::to_string(image_rank) + ", dim H^4 " + std::to_string(res.infinity_dims[4]) +
             ", rational dim " + std::to_string(rational);
  if (prime != 2) {
    const auto q0 = milnor::milnor_q(0, ba3), q1 = milnor::milnor_q(1, ba3);
    const Element xyz = build(ba3, {{1, {{"x1", 1}, {"y1", 1}, {"z1", 1}}}});
    const Element w = q0.apply(xyz);
    const Element target = build(ba3, {{1, {{"x1", 1}, {"y1", 1}, {"z2", 1}}}});
    const bool coeff = w.coefficient(target.terms().begin()->first) == 1;
    const Element q1w = q1.apply(w);
    const bool q1ok = !q1w.is_zero() && q1w.homogeneous_degree() == static_cast<int>(2 * prime + 3);
    ok = ok && coeff && q1ok;
    details += std::string("; x1*y1*z2 coefficient ") + (coeff ? "1" : "wrong") +
               ", Q1 nonzero in degree " + std::to_string(2 * prime + 3) + (q1ok ? "" : " fails");
  }
  out.push_back(make_check("ss.iota", prime, ok, details, clock));
  return out;
}

} // namespace milnor_forge::specseq
