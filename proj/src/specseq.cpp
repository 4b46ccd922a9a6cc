#include "milnor_forge/specseq.hpp"

#include "milnor_forge/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace milnor_forge::specseq {

using ffla::FieldMatrix;
using ffla::FieldVector;
using ffla::Residue;
using ffla::Subquotient;
using ffla::Subspace;

namespace {

std::string show(Bidegree b) {
  return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")";
}

Subspace full_space(std::uint32_t p, std::size_t n) {
  std::vector<FieldVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    FieldVector v(p, n);
    v[i] = 1;
    basis.push_back(std::move(v));
  }
  return Subspace::span(p, n, basis);
}

FieldVector lift(const BidegreeGroup &g, std::span<const Residue> cls) {
  const auto &reps = g.quotient.representatives();
  FieldVector out(g.quotient.cycles().modulus(), g.quotient.ambient_dim());
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (cls[i] != 0)
      out.add_scaled(reps[i], cls[i]);
  return out;
}

struct PageGenerator {
  Element rep;
  Element image;
  Bidegree bidegree;
  int degree;
};

} // namespace

SSPage SSPage::initial(ContextPtr ctx, int valid_degree) {
  if (!ctx->has_bidegrees())
    throw InvalidArgument("E_2 context needs bidegrees on every generator");
  SSPage page;
  page.ctx_ = ctx;
  page.r_ = 2;
  page.valid_ = std::min(valid_degree, ctx->n_work());
  const unsigned p = ctx->prime();
  std::map<Bidegree, std::vector<Monomial>> split;
  for (int d = 0; d <= ctx->n_work(); ++d)
    for (auto &m : galg::basis_of_degree(*ctx, d))
      split[ctx->bidegree(m)].push_back(std::move(m));
  for (auto &[b, mons] : split) {
    const std::size_t n = mons.size();
    page.groups_.emplace(b, BidegreeGroup{std::move(mons),
                                          Subquotient(full_space(p, n), Subspace(p, n))});
  }
  return page;
}

const BidegreeGroup *SSPage::group(Bidegree b) const {
  auto it = groups_.find(b);
  return it == groups_.end() ? nullptr : &it->second;
}

std::size_t SSPage::dim(Bidegree b) const {
  const auto *g = group(b);
  return g ? g->quotient.dim() : 0;
}

std::size_t SSPage::dim_total(int t) const {
  std::size_t n = 0;
  for (const auto &[b, g] : groups_)
    if (b.p + b.q == t)
      n += g.quotient.dim();
  return n;
}

std::optional<Bidegree> SSPage::bidegree_of(const Element &e) const {
  std::optional<Bidegree> b;
  for (const auto &[m, c] : e.terms()) {
    const Bidegree mb = ctx_->bidegree(m);
    if (b && *b != mb)
      return std::nullopt;
    b = mb;
  }
  return b;
}

FieldVector SSPage::coordinates(Bidegree b, const Element &e) const {
  if (e.context() != ctx_)
    throw ContextMismatch("element from another context");
  const auto *g = group(b);
  if (!g)
    throw InvalidArgument("no group in bidegree " + show(b));
  FieldVector v(ctx_->prime(), g->monomials.size());
  for (const auto &[m, c] : e.terms()) {
    auto it = std::find(g->monomials.begin(), g->monomials.end(), m);
    if (it == g->monomials.end())
      throw InvalidArgument(ctx_->render(m) + " is not in bidegree " + show(b));
    v[static_cast<std::size_t>(it - g->monomials.begin())] = c;
  }
  return v;
}

Element SSPage::element(Bidegree b, const FieldVector &v) const {
  const auto *g = group(b);
  Element out(ctx_);
  if (!g)
    return out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0)
      out.add_term(g->monomials[i], v[i]);
  return out;
}

std::optional<std::vector<Residue>> SSPage::class_of(const Element &e) const {
  if (e.is_zero())
    return std::vector<Residue>{};
  const auto b = bidegree_of(e);
  if (!b || !group(*b))
    return std::nullopt;
  return group(*b)->quotient.class_of(coordinates(*b, e));
}

bool SSPage::is_cycle(const Element &e) const { return class_of(e).has_value(); }

bool SSPage::is_boundary(const Element &e) const {
  if (e.is_zero())
    return true;
  const auto b = bidegree_of(e);
  if (!b || !group(*b))
    return false;
  return group(*b)->quotient.is_zero_class(coordinates(*b, e));
}

bool SSPage::survives(const Element &e) const { return is_cycle(e) && !is_boundary(e); }

std::vector<Element> SSPage::representatives(Bidegree b) const {
  std::vector<Element> out;
  if (const auto *g = group(b))
    for (const auto &v : g->quotient.representatives())
      out.push_back(element(b, v));
  return out;
}

std::vector<std::size_t> page_dims(const SSPage &page, int n) {
  std::vector<std::size_t> out;
  for (int t = 0; t <= n; ++t)
    out.push_back(page.dim_total(t));
  return out;
}

std::string render_dims(const std::vector<std::size_t> &dims) {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i)
    s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

std::optional<Monomial> d_squared_witness(const milnor::Derivation &d, int max_degree) {
  const auto &ctx = d.context();
  for (int t = 0; t <= std::min(max_degree, ctx->n_work()); ++t)
    for (const auto &m : galg::basis_of_degree(*ctx, t))
      if (!d.apply(d.apply(m, Mode::truncating), Mode::truncating).is_zero())
        return m;
  return std::nullopt;
}

PageTurn turn_page(const SSPage &page, const DifferentialSpec &spec) {
  const int r = page.r_;
  if (spec.page != r)
    throw InvalidArgument("differential for page " + std::to_string(spec.page) +
                          " applied to page " + std::to_string(r));
  const auto &ctx = page.ctx_;
  const unsigned prime = ctx->prime();
  const int n_work = ctx->n_work();
  const int valid = page.valid_;
  const Bidegree shift{r, 1 - r};
  auto target_of = [&](Bidegree b) { return Bidegree{b.p + shift.p, b.q + shift.q}; };

  // Check entries.
  for (const auto &e : spec.entries) {
    const auto b = page.bidegree_of(e.source);
    if (!b)
      throw DifferentialError("source " + e.source.to_string() + " is not bidegree-homogeneous");
    if (!page.is_cycle(e.source))
      throw DifferentialError("source " + e.source.to_string() + " is not a cycle on E_" +
                              std::to_string(r));
    if (e.target.is_zero())
      continue;
    const auto tb = page.bidegree_of(e.target);
    if (!tb || *tb != target_of(*b))
      throw DifferentialError("d_" + std::to_string(r) + "(" + e.source.to_string() + ") = " +
                              e.target.to_string() + " does not lie in bidegree " +
                              show(target_of(*b)));
    if (!page.is_cycle(e.target))
      throw DifferentialError("image " + e.target.to_string() + " is not a cycle on E_" +
                              std::to_string(r));
  }

  // On E_2 with generator sources the differential is a derivation of the
  // algebra; check d o d on every basis monomial first.
  if (r == 2 && !spec.entries.empty()) {
    std::vector<Element> images(ctx->size(), Element(ctx));
    bool on_generators = true;
    for (const auto &e : spec.entries) {
      const auto &terms = e.source.terms();
      if (terms.size() != 1 || terms.begin()->second != 1) {
        on_generators = false;
        break;
      }
      const Monomial &m = terms.begin()->first;
      std::size_t hits = 0, idx = 0;
      for (std::size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] != 0) {
          hits += m.exps[i];
          idx = i;
        }
      if (hits != 1) {
        on_generators = false;
        break;
      }
      images[idx] = e.target;
    }
    if (on_generators) {
      const milnor::Derivation d(ctx, 1, images);
      if (auto w = d_squared_witness(d, n_work))
        throw DifferentialError("d_2 o d_2 is nonzero on " + ctx->render(*w));
    }
  }

  PageTurn out{page, {}, std::vector<std::size_t>(static_cast<std::size_t>(n_work) + 1, 0), {}};

  if (!spec.entries.empty()) {
    std::vector<PageGenerator> gens;
    for (std::size_t i = 0; i < ctx->size(); ++i) {
      if (ctx->generator(i).degree > n_work)
        continue;
      const Element g = Element::generator(ctx, i);
      if (!page.is_cycle(g))
        continue;
      Element image(ctx);
      for (const auto &e : spec.entries)
        if (e.source == g)
          image = e.target;
      gens.push_back({g, image, ctx->bidegree(ctx->generator_monomial(i)),
                      ctx->generator(i).degree});
    }
    for (const auto &e : spec.entries) {
      const bool is_gen = std::any_of(gens.begin(), gens.end(),
                                      [&](const PageGenerator &g) { return g.rep == e.source; });
      if (!is_gen)
        gens.push_back({e.source, e.target, *page.bidegree_of(e.source),
                        *e.source.homogeneous_degree()});
    }

    // Products of page generators, with Leibniz images, sorted by bidegree.
    std::map<Bidegree, std::vector<std::pair<Element, Element>>> products;
    std::vector<std::size_t> word;
    std::function<void(std::size_t, int, Bidegree)> walk = [&](std::size_t from, int deg,
                                                               Bidegree bd) {
      // Leibniz over the word.
      Element rep = Element::one(ctx);
      Element image(ctx);
      int pre = 0;
      for (std::size_t k = 0; k < word.size(); ++k) {
        const auto &g = gens[word[k]];
        image = galg::multiply(image, g.rep, Mode::truncating);
        Element term = galg::multiply(rep, g.image, Mode::truncating);
        if (prime != 2 && pre % 2 == 1)
          term = -term;
        image = image + term;
        rep = galg::multiply(rep, g.rep, Mode::truncating);
        pre += g.degree;
      }
      products[bd].emplace_back(rep, image);
      for (std::size_t i = from; i < gens.size(); ++i) {
        const auto &g = gens[i];
        if (deg + g.degree > n_work)
          continue;
        if (prime != 2 && g.degree % 2 == 1 && !word.empty() && word.back() == i)
          continue;
        word.push_back(i);
        walk(i, deg + g.degree, Bidegree{bd.p + g.bidegree.p, bd.q + g.bidegree.q});
        word.pop_back();
      }
    };
    walk(0, 0, Bidegree{0, 0});

    for (const auto &[b, grp] : page.groups_) {
      const int t = b.p + b.q;
      const std::size_t m = grp.quotient.dim();
      if (m == 0)
        continue;
      const Bidegree tb = target_of(b);
      const BidegreeGroup *tg = page.group(tb);
      const std::size_t n = tg ? tg->quotient.dim() : 0;
      const bool checked = t <= valid;
      bool broken = false;

      FieldMatrix aug(0, m + n, prime);
      std::vector<FieldVector> rows;
      for (const auto &[rep, image] : products[b]) {
        std::vector<Residue> s(m, 0), u(n, 0);
        if (!rep.is_zero()) {
          auto cls = grp.quotient.class_of(page.coordinates(b, rep));
          if (!cls) {
            if (checked)
              throw DifferentialError("product " + rep.to_string() + " is not a cycle on E_" +
                                      std::to_string(r));
            broken = true;
            continue;
          }
          s = *cls;
        }
        if (!image.is_zero() && n > 0) {
          const auto ib = page.bidegree_of(image);
          std::optional<std::vector<Residue>> cls;
          if (ib && *ib == tb)
            cls = tg->quotient.class_of(page.coordinates(tb, image));
          if (!cls) {
            if (checked)
              throw DifferentialError("d_" + std::to_string(r) + "(" + rep.to_string() +
                                      ") = " + image.to_string() + " is not a cycle in " +
                                      show(tb));
            broken = true;
            continue;
          }
          u = *cls;
        }
        std::vector<Residue> row(s);
        row.insert(row.end(), u.begin(), u.end());
        rows.emplace_back(prime, std::move(row));
      }

      FieldMatrix d(n, m, prime);
      std::size_t pivots_in_source = 0;
      if (!rows.empty()) {
        const auto red = ffla::rref(FieldMatrix::from_rows(m + n, prime, rows));
        for (std::size_t i = 0; i < red.rank; ++i) {
          const std::size_t c = red.pivot_columns[i];
          if (c >= m) {
            if (checked)
              throw DifferentialError("d_" + std::to_string(r) + " is not well defined on " +
                                      show(b) + ": a relation among products maps to a nonzero class");
            broken = true;
            continue;
          }
          ++pivots_in_source;
          for (std::size_t j = 0; j < n; ++j)
            d.set(j, c, red.reduced.at(i, m + j));
        }
      }
      if (pivots_in_source < m || broken)
        out.ungenerated.push_back(t);
      if (n > 0)
        out.rank_out[static_cast<std::size_t>(t)] += d.rank();
      out.maps.emplace(b, std::move(d));
    }

    // d o d on classes.
    for (const auto &[b, d1] : out.maps) {
      const int t = b.p + b.q;
      if (t + 2 > valid)
        continue;
      auto it = out.maps.find(target_of(b));
      if (it == out.maps.end() || it->second.rows() == 0 || d1.rows() == 0)
        continue;
      const FieldMatrix dd = it->second * d1;
      if (!dd.is_zero()) {
        for (std::size_t c = 0; c < dd.cols(); ++c)
          if (!dd.column(c).is_zero())
            throw DifferentialError("d_" + std::to_string(r) + " o d_" + std::to_string(r) +
                                    " is nonzero on the class of " +
                                    page.representatives(b)[c].to_string());
      }
    }
  }

  // Next page.
  SSPage &next = out.next;
  next.r_ = r + 1;
  for (auto &[b, grp] : next.groups_) {
    const BidegreeGroup &old = page.groups_.at(b);
    const std::size_t amb = old.monomials.size();
    std::vector<FieldVector> cycles(old.quotient.boundaries().basis());
    std::vector<FieldVector> bounds(old.quotient.boundaries().basis());
    auto mit = out.maps.find(b);
    if (mit == out.maps.end() || mit->second.rows() == 0) {
      for (const auto &rep : old.quotient.representatives())
        cycles.push_back(rep);
    } else {
      for (const auto &k : ffla::nullspace(mit->second))
        cycles.push_back(lift(old, k.entries()));
    }
    const Bidegree src{b.p - shift.p, b.q - shift.q};
    if (auto sit = out.maps.find(src); sit != out.maps.end())
      for (std::size_t c = 0; c < sit->second.cols(); ++c) {
        const FieldVector col = sit->second.column(c);
        if (!col.is_zero())
          bounds.push_back(lift(old, col.entries()));
      }
    grp.quotient = Subquotient(Subspace::span(prime, amb, cycles), Subspace::span(prime, amb, bounds));
  }

  int v = valid;
  if (!spec.entries.empty()) {
    for (int s = 0; s <= valid; ++s) {
      const bool ungen = std::find(out.ungenerated.begin(), out.ungenerated.end(), s) !=
                         out.ungenerated.end();
      const bool unknown_images =
          page.dim_total(s) > 0 &&
          (s + 1 > n_work || (s + 1 > valid && out.rank_out[static_cast<std::size_t>(s)] > 0));
      if (ungen || unknown_images) {
        v = s - 1;
        break;
      }
    }
  }
  next.valid_ = v;
  return out;
}

} // namespace milnor_forge::specseq
