#include <catch_amalgamated.hpp>

#include <random>

#include "fraisse/engine/builder.hpp"
#include "fraisse/plcat/probes.hpp"
#include "support/pl_gen.hpp"

using namespace fraisse;
using namespace fraisse::plcat;
using fraisse::testing::random_quotient;
using fraisse::testing::random_zigzag;

static_assert(core::NormedCategory<PLInstance>);

namespace {

Q sample_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 997);
  return q(d(rng), 997);
}

// Pointwise evaluation at random and breakpoint arguments.
bool same_function(const PLMap& a, const PLMap& b, std::mt19937_64& rng) {
  for (int i = 0; i < 64; ++i) {
    Q x = sample_point(rng);
    if (a(x) != b(x)) return false;
  }
  for (const auto& x : a.t())
    if (a(x) != b(x)) return false;
  for (const auto& x : b.t())
    if (a(x) != b(x)) return false;
  return true;
}

const engine::BuildResult<PLInstance>& pl_build() {
  static const auto b = engine::build_fraisse(PLInstance{}, 40, 0);
  return b;
}

}  // namespace

TEST_CASE("PL maps are stored canonically") {
  PLMap f({Q(0), q(1, 4), q(1, 2), Q(1)}, {Q(0), q(1, 4), q(1, 2), Q(1)});
  CHECK(f == PLMap());
  CHECK(f.pieces() == 1);
  CHECK_THROWS_AS(PLMap({Q(0), q(1, 2)}, {Q(0), Q(1)}), PLError);
  CHECK_THROWS_AS(PLMap({Q(0), Q(1)}, {Q(0), Q(2)}), PLError);
}

TEST_CASE("compose_pl examples") {
  std::mt19937_64 rng(1);
  auto z = zigzag({q(1, 3), q(2, 3)});
  CHECK(compose_pl(PLMap(), z) == z);
  CHECK(compose_pl(z, PLMap()) == z);
  auto tt = compose_pl(tent_map(), tent_map());
  CHECK(tt.t() == std::vector<Q>{Q(0), q(1, 4), q(1, 2), q(3, 4), Q(1)});
  CHECK(tt.y() == std::vector<Q>{Q(0), Q(1), Q(0), Q(1), Q(0)});
}

TEST_CASE("compose_pl agrees with pointwise composition and is associative") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto f = random_quotient(rng), g = random_quotient(rng), h = random_quotient(rng);
    auto fg = compose_pl(f, g);
    for (int k = 0; k < 32; ++k) {
      Q x = sample_point(rng);
      REQUIRE(fg(x) == f(g(x)));
    }
    REQUIRE(compose_pl(fg, h) == compose_pl(f, compose_pl(g, h)));
    REQUIRE(lipschitz(fg) <= lipschitz(f) * lipschitz(g));
  }
}

TEST_CASE("rho_pl examples and grid oracle") {
  CHECK(rho_pl(tent_map(), tent_map()) == 0);
  CHECK(rho_pl(tent_map(), PLMap()) == 1);
  CHECK(rho_pl(tent_map(), PLMap(), Q(3)) == 3);
  std::mt19937_64 rng(3);
  const int steps = 2048;
  for (int i = 0; i < 100; ++i) {
    auto f = random_quotient(rng), g = random_quotient(rng);
    Q exact = rho_pl(f, g);
    Q sampled = 0;
    for (int k = 0; k <= steps; ++k) {
      Q x = q(k, steps);
      sampled = std::max(sampled, abs(f(x) - g(x)));
    }
    REQUIRE(sampled <= exact);
    // |f - g| is (Lip f + Lip g)-Lipschitz; every point is within 1/4096 of the grid.
    REQUIRE(exact - sampled <= (lipschitz(f) + lipschitz(g)) * q(1, 2 * steps));
  }
}

TEST_CASE("constant maps are not arrows") {
  PLInstance c;
  IntervalObject one(1);
  PLMap constant({Q(0), Q(1)}, {q(1, 2), q(1, 2)});
  CHECK_THROWS_AS(c.make_arrow(one, one, constant), PLError);
}

TEST_CASE("lipschitz examples") {
  CHECK(lipschitz(PLMap()) == 1);
  CHECK(lipschitz(tent_map()) == 2);
  CHECK(lipschitz(tent_map(), Q(2), Q(1)) == 1);
  CHECK(lipschitz(zigzag({q(1, 3), q(2, 3)}), Q(3), Q(1)) == 1);
}

TEST_CASE("normalize_endpoints") {
  CHECK(normalize_endpoints(zigzag({q(1, 3), q(2, 3)})) == PLMap());
  PLMap flip({Q(0), Q(1)}, {Q(1), Q(0)});
  CHECK(normalize_endpoints(flip) == flip);
  PLMap half({Q(0), q(1, 2), Q(1)}, {q(1, 2), Q(0), Q(1)});
  auto f1 = normalize_endpoints(half);
  CHECK(f1(q(1, 2)) == 0);
  CHECK(f1(Q(1)) == 1);
  CHECK(f1.is_onto());
  CHECK(compose_pl(f1, half).fixes_endpoints());
  CHECK_THROWS_AS(normalize_endpoints(tent_map()), PLError);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto f = random_quotient(rng);
    if (f(Q(0)) == f(Q(1))) continue;
    auto g = normalize_endpoints(f);
    REQUIRE(g.is_onto());
    REQUIRE(g.has_monotone_pieces());
    REQUIRE(compose_pl(g, f).fixes_endpoints());
  }
}

TEST_CASE("endpoint_lift makes f . a endpoint fixing") {
  std::mt19937_64 rng(5);
  auto a = endpoint_lift(tent_map());
  CHECK(a.is_onto());
  CHECK(compose_pl(tent_map(), a).fixes_endpoints());
  for (int i = 0; i < 100; ++i) {
    auto f = random_quotient(rng);
    auto l = endpoint_lift(f);
    REQUIRE(l.is_onto());
    REQUIRE(l.has_monotone_pieces());
    REQUIRE(compose_pl(f, l).is_rational_quotient());
  }
}

TEST_CASE("mountain_climb examples") {
  std::mt19937_64 rng(6);
  auto z = zigzag({q(1, 3), q(2, 3)});
  auto [a, b] = mountain_climb(z, z);
  CHECK(a == PLMap());
  CHECK(b == PLMap());
  auto [fp, gp] = mountain_climb(PLMap(), z);
  CHECK(fp == compose_pl(z, gp));
  CHECK(fp.is_rational_quotient());
  CHECK(gp.is_rational_quotient());
  auto f = zigzag({q(1, 4), q(1, 2)});
  auto [f2, g2] = mountain_climb(f, z);
  CHECK(compose_pl(f, f2) == compose_pl(z, g2));
  CHECK(same_function(compose_pl(f, f2), compose_pl(z, g2), rng));
  CHECK_THROWS_AS(mountain_climb(tent_map(), z), PLError);
  PLMap plateau({Q(0), q(1, 3), q(2, 3), Q(1)}, {Q(0), q(1, 2), q(1, 2), Q(1)});
  CHECK_THROWS_AS(mountain_climb(plateau, z), PLError);
}

TEST_CASE("mountain_climb on random zigzags") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto f = random_zigzag(rng), g = random_zigzag(rng);
    auto [fp, gp] = mountain_climb(f, g);
    REQUIRE(fp.is_rational_quotient());
    REQUIRE(gp.is_rational_quotient());
    auto lhs = compose_pl(f, fp);
    REQUIRE(lhs == compose_pl(g, gp));
    REQUIRE(same_function(lhs, compose_pl(g, gp), rng));
  }
}

TEST_CASE("PL instance arrows, identities and amalgamation") {
  PLInstance c;
  std::mt19937_64 rng(8);
  auto r1 = c.dominating_arrow(IntervalObject(1), 1);
  CHECK(r1.payload == zigzag({q(1, 3), q(2, 3)}));
  CHECK(r1.cod.scale == 3);
  CHECK(c.dominating_arrow(IntervalObject(2), 0) == c.identity(IntervalObject(2)));
  for (std::size_t r = 0; r < 60; ++r) {
    auto f = c.dominating_arrow(IntervalObject(2), r);
    REQUIRE(f.payload.is_rational_quotient());
    REQUIRE(f.payload.has_monotone_pieces());
  }
  for (int i = 0; i < 40; ++i) {
    IntervalObject base(1 + static_cast<long>(i % 3));
    auto fm = random_quotient(rng), gm = random_quotient(rng);
    auto f = c.make_arrow(base, c.fitted_cod(base, fm), fm);
    auto g = c.make_arrow(base, c.fitted_cod(base, gm), gm);
    auto span = c.amalgamate(f, g, q(1, 8));
    REQUIRE(core::rho(c, core::compose(c, span.left, f), core::compose(c, span.right, g)) == 0);
    auto mb = c.mu_bound(f);
    REQUIRE(mb.bound == 0);
    REQUIRE(core::rho(c, core::compose(c, *mb.j, f), *mb.i) == 0);
  }
  auto j = c.joint(IntervalObject(2), IntervalObject(5));
  CHECK(j.left.cod.scale == 5);
  CHECK(c.search_into(IntervalObject(3), IntervalObject(2), Q(1), {}) == std::nullopt);
  CHECK(c.search_into(IntervalObject(2), IntervalObject(3), Q(1), {}).has_value());
}

TEST_CASE("integer rescaling makes every bonding non-expansive") {
  PLInstance c;
  std::mt19937_64 rng(9);
  for (int run = 0; run < 20; ++run) {
    std::vector<PLMap> seq;
    for (int i = 0; i < 6; ++i) seq.push_back(random_quotient(rng, 4, 6));
    auto k = lipschitz_scales(seq);
    REQUIRE(k.size() == seq.size() + 1);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      REQUIRE(lipschitz(seq[i], Q(k[i + 1]), Q(k[i])) <= 1);
      REQUIRE_NOTHROW(c.make_arrow(IntervalObject(k[i]), IntervalObject(k[i + 1]), seq[i]));
    }
  }
}

TEST_CASE("40-step PL build replays") {
  PLInstance c;
  const auto& b = pl_build();
  auto rep = engine::replay_log(c, b);
  INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
  CHECK(rep.ok);
  CHECK(rep.checked == 40);
  CHECK(b.tower.size() > 2);
}

TEST_CASE("check_P examples") {
  PLInstance c;
  const auto& t = pl_build().tower;
  auto id = check_P(c, t, 0, PLMap(), q(1, 8), t.size());
  REQUIRE(id.found());
  CHECK(id.witness->m == 1);
  CHECK(id.witness->g == t.bond(c, 0, 1).payload);
  CHECK(id.witness->margin == 0);
  auto big = check_P(c, t, 0, zigzag({q(1, 5), q(2, 5), q(3, 5), q(4, 5)}), Q(2), t.size());
  REQUIRE(big.found());
  CHECK(big.witness->m == 1);
  auto tent = check_P(c, t, 0, tent_map(), q(1, 8), t.size());
  REQUIRE(tent.found());
  CHECK(verify_P(c, t, 0, tent_map(), q(1, 8), *tent.witness));
  auto tampered = *tent.witness;
  tampered.margin += q(1, 100);
  CHECK_FALSE(verify_P(c, t, 0, tent_map(), q(1, 8), tampered));
}

TEST_CASE("indecomposability probe") {
  PLInstance c;
  const auto& t = pl_build().tower;
  Q a = q(1, 2), b = q(1, 2), eps = q(1, 8);
  auto rep = indecomposability_probe(c, t, 0, a, b, eps, t.size());
  REQUIRE(rep.verdict == Verdict::Contradiction);
  REQUIRE(rep.witness);
  CHECK(rep.tent_dom_scale == 2);
  CHECK(lipschitz(tent_map(), Q(rep.tent_dom_scale), Q(t.object(0).scale)) == 1);
  // Replay the interval argument from the stored numbers.
  const auto& w = *rep.witness;
  CHECK(verify_P(c, t, 0, tent_map(), eps, w));
  CHECK(w.g(rep.r0) == 0);
  CHECK(w.g(rep.r1) == 1);
  const auto& bond = t.bond(c, 0, w.m).payload;
  CHECK(bond(rep.r0) == rep.b_r0);
  CHECK(bond(rep.r1) == rep.b_r1);
  CHECK(rep.b_r0 < b);
  CHECK(rep.b_r1 < b);
  Q e = eps / Q(t.object(0).scale);
  CHECK(rep.s == (a + e) / 2);
  CHECK(rep.s < rep.t);
  CHECK(tent_map()(q(1, 2)) > a + e);
  CHECK_THROWS_AS(indecomposability_probe(c, t, 0, a, b, q(1, 2), t.size()), PLError);
  CHECK_THROWS_AS(indecomposability_probe(c, t, 0, Q(1), b, eps, t.size()), PLError);
}
