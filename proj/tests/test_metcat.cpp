#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fraisse/metcat/instances.hpp"
#include "fraisse/metcat/search.hpp"
#include "support/met_gen.hpp"

using namespace fraisse;
using namespace fraisse::metcat;

static_assert(core::NormedCategory<EmbedInstance>);
static_assert(core::NormedCategory<QuotientInstance>);

using testing::random_map;
using testing::random_metric_space;

TEST_CASE("finite metric spaces are audited") {
  CHECK_THROWS_AS(FinMetSpace::from_matrix({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}), MetricError);
  CHECK_THROWS_AS(FinMetSpace::from_matrix({{0, 0}, {0, 0}}), MetricError);
  CHECK_THROWS_AS(FinMetSpace::from_matrix({{0, 1}, {2, 0}}), MetricError);
  auto line = FinMetSpace::line({0, q(1, 2), 1});
  CHECK(line.d(0, 2) == 1);
  CHECK(line.diameter() == 1);
  CHECK(line.separation() == q(1, 2));
  CHECK(FinMetSpace(3, q(2)).is_discrete());
}

TEST_CASE("rho_map examples") {
  auto x = FinMetSpace(3);
  auto y = FinMetSpace::line({0, q(2, 3), 1});
  NonExpMap f{{0, 0, 2}};
  CHECK(rho_map(y, f, f) == 0);
  NonExpMap g{{0, 1, 2}};
  CHECK(rho_map(y, f, g) == q(2, 3));
  auto pt = FinMetSpace(1);
  auto two = FinMetSpace(2);
  CHECK(rho_map(two, NonExpMap{{0}}, NonExpMap{{1}}) == 1);
  (void)x;
  (void)pt;
}

TEST_CASE("mu_quotient examples and brute oracle") {
  auto dom = FinMetSpace::line({0, 1});
  auto cod = FinMetSpace::line({0, q(1, 2), 1});
  CHECK(mu_quotient(dom, cod, NonExpMap{{0, 2}}) == q(1, 2));
  auto two = FinMetSpace(2);
  CHECK(mu_quotient(two, two, NonExpMap{{0, 0}}) == 1);
  CHECK(mu_quotient(two, two, NonExpMap{{1, 0}}) == 0);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    auto a = random_metric_space(rng, 1 + rng() % 5);
    auto b = random_metric_space(rng, 1 + rng() % 5);
    auto f = random_map(rng, a, b);
    // Oracle: least candidate radius r among all distances such that every
    // point of b is within r of the image.
    std::set<Q> radii{Q(0)};
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) radii.insert(b.d(i, j));
    Q best = -1;
    for (const auto& r : radii) {
      bool dense = true;
      for (std::size_t y = 0; y < b.size() && dense; ++y) {
        bool near = false;
        for (auto v : f.table) near = near || b.d(y, v) <= r;
        dense = near;
      }
      if (dense) {
        best = r;
        break;
      }
    }
    CHECK(mu_quotient(a, b, f) == best);
    CHECK((mu_quotient(a, b, f) == 0) == is_surjective(b, f));
  }
}

TEST_CASE("amalgamate_quotient commutes and counts fibers") {
  auto two = FinMetSpace(2);
  auto pt = FinMetSpace(1);
  NonExpMap c{{0, 0}};
  auto pb = amalgamate_quotient(two, two, pt, c, c);
  REQUIRE(pb.w.size() == 4);
  // (0,0) and (1,1) are at sum distance 2.
  CHECK(pb.w.d(0, 3) == 2);
  CHECK(pb.w.d(0, 1) == 1);

  auto x = FinMetSpace::line({0, 1, 2});
  auto z = FinMetSpace(2);
  NonExpMap f{{0, 0, 1}};
  NonExpMap g{{0, 1}};
  auto pb2 = amalgamate_quotient(x, two, z, f, g);
  CHECK(pb2.w.size() == 2 * 1 + 1 * 1);

  auto id = identity_map(3);
  auto pb3 = amalgamate_quotient(x, x, x, id, id);
  CHECK(pb3.w.size() == 3);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto zz = random_metric_space(rng, 1 + rng() % 3);
    auto xx = random_metric_space(rng, zz.size() + rng() % 3);
    auto yy = random_metric_space(rng, zz.size() + rng() % 3);
    auto ff = random_map(rng, xx, zz, true);
    auto gg = random_map(rng, yy, zz, true);
    if (ff.table.empty() || gg.table.empty()) continue;
    auto w = amalgamate_quotient(xx, yy, zz, ff, gg);
    CHECK(compose_maps(ff, w.to_x) == compose_maps(gg, w.to_y));
    CHECK(is_non_expansive(w.w, xx, w.to_x));
    CHECK(is_non_expansive(w.w, yy, w.to_y));
    CHECK(is_surjective(xx, w.to_x));
    CHECK(is_surjective(yy, w.to_y));
  }
}

TEST_CASE("amalgamate_embedding glues along the common part") {
  auto two = FinMetSpace(2);
  auto pt = FinMetSpace(1);
  auto g = amalgamate_embedding(pt, two, two, NonExpMap{{0}}, NonExpMap{{0}});
  REQUIRE(g.z.size() == 3);
  CHECK(g.z.d(g.from_a.table[1], g.from_b.table[1]) == 2);

  auto b = FinMetSpace::line({0, 1, 3});
  auto a = FinMetSpace::line({0, 1});
  auto g2 = amalgamate_embedding(a, a, b, identity_map(2), NonExpMap{{0, 1}});
  CHECK(g2.z == b);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto c = random_metric_space(rng, 1 + rng() % 3);
    // Extend c twice by random one-point extensions via gluing with itself.
    auto aa = disjoint_union(c, random_metric_space(rng, 1 + rng() % 2));
    auto bb = disjoint_union(c, random_metric_space(rng, 1 + rng() % 2));
    auto glued = amalgamate_embedding(c, aa.z, bb.z, aa.from_a, bb.from_a);
    CHECK(is_isometric(aa.z, glued.z, glued.from_a));
    CHECK(is_isometric(bb.z, glued.z, glued.from_b));
    CHECK(compose_maps(glued.from_a, aa.from_a) == compose_maps(glued.from_b, bb.from_a));
  }
}

TEST_CASE("embedding bound examples") {
  auto one = FinMetSpace(2);
  auto wide = FinMetSpace(2, q(3, 2));
  // Expanding map is rejected; the shrinking direction has distortion 1/2.
  CHECK_THROWS(mu_embedding_bound(one, wide, NonExpMap{{0, 1}}));
  auto e = mu_embedding_bound(wide, one, NonExpMap{{0, 1}});
  CHECK(e.bound == q(1, 4));
  CHECK(e.distortion == q(1, 2));
  CHECK(rho_map(e.z, compose_maps(e.j, NonExpMap{{0, 1}}), e.i) == q(1, 4));
  auto iso = mu_embedding_bound(one, one, NonExpMap{{1, 0}});
  CHECK(iso.bound == 0);
  CHECK_THROWS_AS(mu_embedding_bound(one, one, NonExpMap{{0, 0}}), MetricError);
}

TEST_CASE("rationalize keeps Lipschitz bounds") {
  auto coarse = rationalize({{0, 1}, {1, 0}}, q(1, 2), 2);
  CHECK(coarse.y == FinMetSpace(2));
  CHECK(coarse.h == identity_map(2));

  std::vector<std::vector<Q>> x = {{0, q(7, 5), 1}, {q(7, 5), 0, 1}, {1, 1, 0}};
  auto r = rationalize(x, q(1, 2), 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(denom(r.y.d(i, j) * Q(r.denominator)) == 1);
      CHECK(r.y.d(i, j) >= x[i][j]);
      CHECK(r.y.d(i, j) < q(3, 2) * x[i][j]);
    }
  CHECK(r.denominator == 2);

  auto tight = rationalize(x, q(1, 10), 2);
  CHECK(tight.eta == q(1, 21));
  // Oracle: (1 + eta)/(1 - eta) <= 1 + eps.
  CHECK((1 + tight.eta) / (1 - tight.eta) <= q(11, 10));
  CHECK(tight.lip_inverse <= 1 + tight.eta);
  CHECK(tight.denominator > 2);
}

TEST_CASE("cantor tuples are bijective on small ranges") {
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t c = 0; c < 500; ++c) {
    auto t = cantor_tuple(c, 3);
    CHECK(seen.insert(t).second);
    CHECK(cantor_pair(t[0], cantor_pair(t[1], t[2])) == c);
  }
}

TEST_CASE("object enumeration is fair") {
  // Oracle: encode a target space by hand and check the decoder reaches it.
  EmbedInstance c;
  auto encode = [](std::size_t n, std::uint64_t den, const std::vector<std::uint64_t>& ks) {
    std::uint64_t code = ks.empty() ? 0 : ks.back();
    for (std::size_t i = ks.size(); i-- > 1;) code = cantor_pair(ks[i - 1], code);
    std::uint64_t size_code = (std::uint64_t(1) << (n - 1)) - 1;
    return cantor_pair(size_code, cantor_pair(den - 1, code));
  };
  std::vector<Q> vals = {q(1, 2), 1, q(3, 2)};
  int expected = 0;
  for (auto a : vals)
    for (auto b : vals)
      for (auto d : vals) {
        if (a > b + d || b > a + d || d > a + b) continue;
        ++expected;
        std::vector<std::uint64_t> ks;
        for (auto v : {a, b, d}) ks.push_back(static_cast<std::uint64_t>(numer(v * 2)) - 1);
        auto space = c.dominating_object(encode(3, 2, ks));
        CHECK(space.rows() == std::vector<std::vector<Q>>{{0, a, b}, {a, 0, d}, {b, d, 0}});
      }
  CHECK(expected == 24);
  CHECK(c.dominating_object(encode(1, 1, {})).size() == 1);
  CHECK(c.dominating_object(encode(4, 1, std::vector<std::uint64_t>(6, 0))) == FinMetSpace(4));
}

TEST_CASE("enumerated arrows are small and well formed") {
  EmbedInstance e;
  QuotientInstance qi;
  QuotientInstance qd(true);
  std::mt19937_64 rng(3);
  for (std::size_t r = 0; r < 300; ++r) {
    auto x = e.dominating_object(rng() % 200);
    auto a = e.dominating_arrow(x, r);
    CHECK(a.is_small());
    CHECK(is_isometric(a.dom, a.cod, a.payload));
    auto b = qi.dominating_arrow(x, r);
    CHECK(b.is_small());
    CHECK(is_surjective(b.dom, b.payload));
    CHECK(is_non_expansive(b.cod, b.dom, b.payload));
    auto dx = qd.dominating_object(r % 6);
    auto d = qd.dominating_arrow(dx, r);
    CHECK(d.cod.is_discrete());
    CHECK(is_surjective(d.dom, d.payload));
  }
}

TEST_CASE("norm witnesses realize the bound") {
  EmbedInstance e;
  QuotientInstance qi;
  std::mt19937_64 rng(13);
  for (int t = 0; t < 150; ++t) {
    auto a = random_metric_space(rng, 1 + rng() % 4);
    auto b = random_metric_space(rng, 1 + rng() % 4);
    auto m = random_map(rng, a, b);
    auto f = e.make_arrow(a, b, m);
    auto w = e.mu_bound(f);
    REQUIRE(w.i);
    CHECK(w.i->is_small());
    CHECK(w.j->is_small());
    CHECK(core::rho(e, core::compose(e, *w.j, f), *w.i) == w.bound);
    CHECK(w.bound == e.mu_value(f));

    auto g = qi.make_arrow(b, a, m);
    auto wq = qi.mu_bound(g);
    REQUIRE(wq.i);
    CHECK(core::rho(qi, core::compose(qi, *wq.j, g), *wq.i) == wq.bound);
    CHECK(wq.bound == qi.mu_value(g));
  }
}

TEST_CASE("composition is non-expansive in each flavor") {
  EmbedInstance e;
  QuotientInstance qi;
  std::mt19937_64 rng(17);
  for (int t = 0; t < 300; ++t) {
    auto a = random_metric_space(rng, 1 + rng() % 4);
    auto b = random_metric_space(rng, 1 + rng() % 4);
    auto c = random_metric_space(rng, 1 + rng() % 4);
    auto f1 = e.make_arrow(a, b, random_map(rng, a, b));
    auto f2 = e.make_arrow(a, b, random_map(rng, a, b));
    auto g1 = e.make_arrow(b, c, random_map(rng, b, c));
    auto g2 = e.make_arrow(b, c, random_map(rng, b, c));
    auto lhs = core::rho(e, core::compose(e, g1, f1), core::compose(e, g2, f2));
    CHECK(lhs <= core::rho(e, f1, f2) + core::rho(e, g1, g2));

    // Quotient arrows a -> b store maps b -> a.
    auto h1 = qi.make_arrow(a, b, random_map(rng, b, a));
    auto h2 = qi.make_arrow(a, b, random_map(rng, b, a));
    auto k1 = qi.make_arrow(b, c, random_map(rng, c, b));
    auto k2 = qi.make_arrow(b, c, random_map(rng, c, b));
    auto lq = core::rho(qi, core::compose(qi, k1, h1), core::compose(qi, k2, h2));
    CHECK(lq <= core::rho(qi, h1, h2) + core::rho(qi, k1, k2));
  }
}

TEST_CASE("search_absorb finds exact factorizations") {
  QuotientInstance qi;
  // bond: 3-point line onto 2 points; f: 2 points split from 1 point.
  auto x3 = FinMetSpace::line({0, 1, 2});
  auto x1 = FinMetSpace(1);
  auto x2 = FinMetSpace(2);
  auto bond = qi.make_arrow(x1, x3, NonExpMap{{0, 0, 0}});
  auto f = qi.make_arrow(x1, x2, NonExpMap{{0, 0}});
  auto g = qi.search_absorb(f, bond, q(1, 2), {});
  REQUIRE(g);
  CHECK(g->is_small());
  CHECK(core::rho(qi, core::compose(qi, *g, f), bond) == 0);
  // A 2-discrete target cannot be covered by a 1-point top space.
  auto far = qi.make_arrow(x1, FinMetSpace(2, 2), NonExpMap{{0, 0}});
  CHECK_FALSE(qi.search_absorb(far, qi.identity(x1), q(1, 2), {}));

  EmbedInstance e;
  auto inc = e.make_arrow(x1, x2, NonExpMap{{0}});
  auto bond_e = e.make_arrow(x1, x3, NonExpMap{{1}});
  auto ge = e.search_absorb(inc, bond_e, q(1, 2), {true, 1000});
  REQUIRE(ge);
  CHECK(core::rho(e, core::compose(e, *ge, inc), bond_e) == 0);
}
