#include "milnor_forge/errors.hpp"
#include "milnor_forge/specseq.hpp"

#include <doctest.h>

#include <functional>

using namespace milnor_forge;
using namespace milnor_forge::specseq;
using galg::AlgebraContext;
using galg::GeneratorSpec;

namespace {

GeneratorSpec base(const char *name, int d, bool odd) { return {name, d, odd, Bidegree{d, 0}, {}}; }
GeneratorSpec fiber(const char *name, int d, bool odd) { return {name, d, odd, Bidegree{0, d}, {}}; }

Element gen(const ContextPtr &c, const char *name) { return Element::generator(c, name); }

// Lambda(z1) (x) P(b2), or P(z1) (x) P(b2) at p = 2.
ContextPtr toy(unsigned p, int n) {
  return AlgebraContext::create(p, {base("b2", 2, false), fiber("z1", 1, p != 2)}, n);
}

// Number of monomials of degree d in generators of degrees 4,4,6,6,...,2l,2l.
std::uint64_t count_monomials(std::vector<int> degrees, int d) {
  std::function<std::uint64_t(std::size_t, int)> go = [&](std::size_t i, int left) {
    if (left == 0)
      return std::uint64_t{1};
    if (i == degrees.size())
      return std::uint64_t{0};
    std::uint64_t total = 0;
    for (int used = 0; used <= left; used += degrees[i])
      total += go(i + 1, left - used);
    return total;
  };
  return go(0, d);
}

bool all_pass(const ReportList &r) {
  for (const auto &x : r)
    if (x.status == Status::fail)
      return false;
  return !r.empty();
}

} // namespace

TEST_CASE("zero differential keeps the page") {
  for (unsigned p : {2u, 3u}) {
    const auto ctx = toy(p, 6);
    const auto e2 = SSPage::initial(ctx, 6);
    const auto turn = turn_page(e2, DifferentialSpec{2, {}});
    CHECK(turn.next.page() == 3);
    CHECK(turn.next.valid_degree() == 6);
    CHECK(page_dims(turn.next, 6) == page_dims(e2, 6));
    for (auto r : turn.rank_out)
      CHECK(r == 0);
  }
}

TEST_CASE("transgression kills the polynomial generator") {
  const auto ctx = toy(3, 6);
  const auto b2 = gen(ctx, "b2"), z1 = gen(ctx, "z1");
  const auto e2 = SSPage::initial(ctx, 6);
  CHECK(page_dims(e2, 4) == std::vector<std::size_t>{1, 1, 1, 1, 1});
  CHECK(e2.is_cycle(z1));
  const auto turn = turn_page(e2, DifferentialSpec{2, {{z1, b2}}});
  const auto &e3 = turn.next;
  CHECK(page_dims(e3, 4) == std::vector<std::size_t>{1, 0, 0, 0, 0});
  CHECK_FALSE(e3.is_cycle(z1));
  CHECK(e3.is_boundary(b2));
  CHECK_FALSE(e3.survives(b2 * b2));
  CHECK(e3.survives(Element::one(ctx)));
  CHECK(turn.rank_out[1] == 1);
  CHECK(turn.rank_out[3] == 1);
  CHECK(e3.representatives(Bidegree{0, 0}).size() == 1);
}

TEST_CASE("dimension bookkeeping of one page turn") {
  const auto ctx = toy(5, 8);
  const auto b2 = gen(ctx, "b2"), z1 = gen(ctx, "z1");
  const auto e2 = SSPage::initial(ctx, 8);
  const auto turn = turn_page(e2, DifferentialSpec{2, {{z1, b2.scaled(3)}}});
  for (int t = 1; t <= 6; ++t)
    CHECK(turn.next.dim_total(t) == e2.dim_total(t) - turn.rank_out[t] - turn.rank_out[t - 1]);
}

TEST_CASE("ill-formed differentials are rejected") {
  const auto ctx = AlgebraContext::create(
      3, {base("b2", 2, false), base("b3", 3, true), fiber("z1", 1, true), fiber("z2", 2, false)},
      6);
  const auto b2 = gen(ctx, "b2"), b3 = gen(ctx, "b3"), z1 = gen(ctx, "z1"), z2 = gen(ctx, "z2");
  const auto e2 = SSPage::initial(ctx, 6);
  CHECK_THROWS_AS(turn_page(e2, DifferentialSpec{2, {{z1, b3}}}), DifferentialError);
  CHECK_THROWS_AS(turn_page(e2, DifferentialSpec{2, {{z1, b2}, {z2, b2 * z1}}}),
                  DifferentialError);
  CHECK_NOTHROW(turn_page(e2, DifferentialSpec{2, {{z1, b2}}}));

  const auto d = milnor::Derivation::from_map(ctx, 1, {{"z1", b2}, {"z2", b2 * z1}});
  const auto w = d_squared_witness(d, 6);
  REQUIRE(w);
  CHECK(ctx->render(*w) == "z2");
  CHECK_FALSE(d_squared_witness(milnor::Derivation::from_map(ctx, 1, {{"z1", b2}}), 6));
}

TEST_CASE("BG1 scenario") {
  for (unsigned p : {3u, 5u, 7u}) {
    const auto res = run_scenario(scenario_bg1(p));
    REQUIRE(res.last_page_dims.size() >= 5);
    CHECK(std::vector<std::size_t>(res.last_page_dims.begin(), res.last_page_dims.begin() + 5) ==
          std::vector<std::size_t>{1, 0, 1, 1, 2});
    CHECK(res.last_page_dims[1] == 0);
    CHECK(res.collapsed);
    CHECK(res.valid);
    CHECK(res.last().page() == 4);
  }
  const auto two = run_scenario(scenario_bg1_two());
  CHECK(std::vector<std::size_t>(two.last_page_dims.begin(), two.last_page_dims.begin() + 5) ==
        std::vector<std::size_t>{1, 0, 1, 1, 2});
  CHECK(two.collapsed);
  bool external = false;
  for (const auto &c : two.classes)
    external |= c.certificate == Certificate::external;
  CHECK(external);
}

TEST_CASE("BG1 scalars only rescale the answer") {
  const auto base_dims = run_scenario(scenario_bg1(5)).last_page_dims;
  for (std::int64_t a : {1, 2, 4})
    for (std::int64_t b : {1, 3})
      CHECK(run_scenario(scenario_bg1(5, a, b)).last_page_dims == base_dims);
}

TEST_CASE("BPU scenario") {
  for (unsigned p : {3u, 5u}) {
    const auto nz = run_scenario(scenario_bpu(p, false));
    const auto zr = run_scenario(scenario_bpu(p, true));
    CHECK(nz.last_page_dims == std::vector<std::size_t>{1, 0, 1, 1, 1, 0, 1});
    CHECK(nz.infinity_dims == nz.last_page_dims);
    CHECK(zr.last_page_dims == std::vector<std::size_t>{1, 0, 1, 1, 1, 0, 2});
    CHECK(zr.infinity_dims == std::vector<std::size_t>{1, 0, 1, 1, 1, 0, 1});
    CHECK_FALSE(zr.remarks.empty());
  }
}

TEST_CASE("scenario runs are deterministic") {
  const auto a = run_scenario(scenario_bpu(3, true)), b = run_scenario(scenario_bpu(3, true));
  CHECK(a.last_page_dims == b.last_page_dims);
  CHECK(a.remarks == b.remarks);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    CHECK(a.classes[i].representative.to_string() == b.classes[i].representative.to_string());
    CHECK(a.classes[i].certificate == b.classes[i].certificate);
  }
}

TEST_CASE("extra working degree does not change the answer") {
  for (unsigned p : {3u, 5u}) {
    const auto a = run_scenario(scenario_bg1(p, 1, 1, 3)), b = run_scenario(scenario_bg1(p, 1, 1, 5));
    CHECK(std::equal(a.last_page_dims.begin(), a.last_page_dims.begin() + 5,
                     b.last_page_dims.begin()));
  }
}

TEST_CASE("rational dimension against monomial counting") {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    std::vector<int> degrees;
    for (int k = 2; k <= static_cast<int>(p); ++k) {
      degrees.push_back(2 * k);
      degrees.push_back(2 * k);
    }
    for (int d = 0; d <= 16; ++d)
      CHECK(rational_dimension(p, d) == count_monomials(degrees, d));
  }
  CHECK(rational_dimension(3, 4) == 2);
}

TEST_CASE("render_dims") { CHECK(render_dims({1, 0, 2}) == "(1,0,2)"); }

TEST_CASE("scenario suites") {
  CHECK(all_pass(verify_bg1(2, false)));
  CHECK(all_pass(iota_image_check(2)));
  CHECK_THROWS_AS(verify_bpu(2), InvalidArgument);
  for (unsigned p : {3u, 5u}) {
    CHECK(all_pass(verify_bg1(p, false)));
    CHECK(all_pass(verify_bpu(p)));
    CHECK(all_pass(iota_image_check(p)));
  }
}
