#include <catch_amalgamated.hpp>

#include <random>

#include "fraisse/bancat/gurarii.hpp"
#include "fraisse/engine/builder.hpp"
#include "fraisse/engine/checks.hpp"
#include "support/ban_gen.hpp"

using namespace fraisse;
using namespace fraisse::bancat;
using fraisse::testing::random_near_isometry;
using fraisse::testing::random_space;
using fraisse::testing::sampled_min;

static_assert(core::NormedCategory<BanachInstance>);

namespace {

PolySpace real_line() { return PolySpace(1, {{Q(1)}}); }

PolySpace hexagonal() { return PolySpace(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(-1)}}); }

QVector vec(std::initializer_list<Q> xs) { return QVector(xs); }

QMatrix col(std::initializer_list<Q> xs) {
  QMatrix m(xs.size(), 1);
  std::size_t i = 0;
  for (const auto& x : xs) m(i++, 0) = x;
  return m;
}


}  // namespace

TEST_CASE("norm evaluation") {
  CHECK(PolySpace::linf(2).norm(vec({3, -4})) == 4);
  CHECK(PolySpace::l1(2).norm(vec({1, 2})) == 3);
  CHECK(PolySpace::l1(2).norm(vec({0, 0})) == 0);
  CHECK_THROWS_AS(PolySpace::linf(2).norm(vec({1})), BanachError);
  CHECK_THROWS_AS(PolySpace(2, {{Q(1), Q(1)}}), BanachError);
  CHECK_THROWS_AS(PolySpace(2, {{Q(0), Q(0)}, {Q(1), Q(0)}}), BanachError);
}

TEST_CASE("norm axioms on random spaces") {
  std::mt19937_64 rng(11);
  for (int c = 0; c < 50; ++c) {
    auto x = random_space(rng);
    for (int k = 0; k < 10; ++k) {
      QVector u(x.dim()), v(x.dim()), w(x.dim());
      Q lam = testing::random_entry(rng);
      for (std::size_t i = 0; i < x.dim(); ++i) {
        u[i] = testing::random_entry(rng);
        v[i] = testing::random_entry(rng);
        w[i] = u[i] + v[i];
      }
      QVector s = u;
      for (auto& e : s) e *= lam;
      CHECK(x.norm(s) == abs(lam) * x.norm(u));
      CHECK(x.norm(w) <= x.norm(u) + x.norm(v));
    }
  }
}

TEST_CASE("unit ball vertices") {
  auto sorted = [](std::vector<QVector> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(PolySpace::linf(2).vertices() == sorted({vec({1, 1}), vec({1, -1}), vec({-1, 1}), vec({-1, -1})}));
  CHECK(PolySpace::l1(2).vertices() == sorted({vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})}));
  CHECK(hexagonal().vertices().size() == 6);
  CHECK(hexagonal().facets().size() == 3);
  CHECK(PolySpace::linf(3).vertices().size() == 8);
  CHECK(PolySpace::l1(3).vertices().size() == 6);
  CHECK_THROWS_AS(unit_ball_vertices(PolySpace::linf(5)), BanachError);
  // A redundant functional is not a facet.
  PolySpace red(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {q(1, 2), q(1, 2)}});
  CHECK(red.vertices().size() == 4);
  CHECK(red.facets().size() == 2);
}

TEST_CASE("space from generators is the polar") {
  auto x = space_from_generators(2, {vec({1, 0}), vec({0, 1})});
  auto box = PolySpace::linf(2);
  for (const auto& v : box.vertices()) CHECK(x.norm(v) == PolySpace::l1(2).norm(v));
  auto h = hexagonal();
  auto back = space_from_generators(2, h.vertices());
  for (const auto& v : box.vertices()) CHECK(back.norm(v) == h.norm(v));
}

TEST_CASE("operator norms and sphere minima") {
  auto id = LinOp(PolySpace::linf(2), PolySpace::linf(2), QMatrix::identity(2));
  CHECK(op_norm(id) == 1);
  CHECK(min_on_sphere(id).value == 1);
  auto f = LinOp(real_line(), PolySpace::linf(2), col({q(3, 4), 0}));
  CHECK(op_norm(f) == q(3, 4));
  CHECK(min_on_sphere(f).value == q(3, 4));
  auto z = LinOp(PolySpace::linf(2), PolySpace::linf(2), QMatrix(2, 2));
  CHECK(op_norm(z) == 0);
  CHECK(min_on_sphere(z).value == 0);
}

TEST_CASE("mu_op") {
  auto iso = LinOp(real_line(), PolySpace::linf(2), col({1, q(1, 2)}));
  CHECK(mu_op(iso).value == 0);
  CHECK(is_isometric(iso));
  auto f = LinOp(real_line(), PolySpace::linf(2), col({q(3, 4), 0}));
  CHECK(mu_op(f).value == q(1, 4));
  auto g = LinOp(PolySpace::linf(2), PolySpace::linf(2), QMatrix::from_rows({{1, 0}, {0, q(7, 8)}}, 2));
  CHECK(min_on_sphere(g).value == q(7, 8));
  CHECK(mu_op(g).value == q(1, 8));
  auto flat = LinOp(PolySpace::linf(2), real_line(), QMatrix::from_rows({{1, 0}}, 2));
  CHECK(mu_op(flat).status == MuStatus::NotInjective);
  CHECK(mu_op(flat).value == 1);
  auto big = LinOp(real_line(), real_line(), col({2}));
  CHECK(mu_op(big).status == MuStatus::NormAboveOne);
}

TEST_CASE("mu_op against a sampling oracle") {
  std::mt19937_64 rng(5);
  for (int c = 0; c < 20; ++c) {
    auto f = random_near_isometry(rng, 3, 6, Q(1));
    Q exact = 1 - mu_op(f).value;
    Q sampled = sampled_min(f, rng, 4096);
    CHECK(exact <= sampled);
    CHECK(sampled - exact <= q(1, 64));
  }
}

TEST_CASE("submultiplicativity and (N1)/(N2)") {
  std::mt19937_64 rng(9);
  for (int c = 0; c < 30; ++c) {
    auto f = random_near_isometry(rng, 3, 5, q(1, 2));
    auto y = f.dom;
    auto g = testing::random_near_isometry_into(rng, y, q(1, 2));
    auto fg = compose(f, g);
    CHECK(op_norm(fg) <= op_norm(f) * op_norm(g));
    auto mfg = mu_op(fg);
    REQUIRE(mfg.status == MuStatus::Exact);
    CHECK(mfg.value <= mu_op(f).value + mu_op(g).value);
    CHECK(mu_op(g).value <= mu_op(f).value + mfg.value);
  }
}

TEST_CASE("correction amalgam in R") {
  auto f = LinOp(real_line(), real_line(), col({q(3, 4)}));
  Q eps = q(1, 4);
  CHECK(correction_norm(f, eps, vec({1}), vec({0})) == 1);
  CHECK(correction_norm(f, eps, vec({1}), vec({q(-3, 4)})) == q(1, 4));
  CHECK(correction_norm(f, eps, vec({0}), vec({1})) == 1);
  auto cert = correction_amalgam(f, eps);
  CHECK(cert.holds());
  CHECK(cert.defect == q(1, 4));
  CHECK(cert.lower == q(1, 4));
  CHECK_THROWS_AS(correction_amalgam(f, q(1, 8)), BanachError);

  auto a = correction_space(f, eps);
  CHECK(is_isometric(a.i));
  CHECK(is_isometric(a.j));
  CHECK(op_distance(a.i, compose(a.j, f)) == q(1, 4));
}

TEST_CASE("correction amalgam with eps = 0 collapses the diagonal") {
  auto f = LinOp(real_line(), PolySpace::linf(2), col({1, q(1, 3)}));
  auto cert = correction_amalgam(f, Q(0));
  CHECK(cert.holds());
  CHECK(cert.defect == 0);
}

TEST_CASE("correction amalgam on random maps") {
  std::mt19937_64 rng(21);
  for (int c = 0; c < 25; ++c) {
    auto f = random_near_isometry(rng);
    Q eps = mu_op(f).value;
    auto cert = correction_amalgam(f, eps);
    CHECK(cert.i_isometric);
    CHECK(cert.j_isometric);
    CHECK(cert.defect <= eps);
    CHECK(cert.lower >= eps);
  }
}

TEST_CASE("pushout of isometric embeddings") {
  auto r = real_line();
  auto l2 = PolySpace::linf(2);
  auto inc = LinOp(r, l2, col({1, 0}));
  auto p = pushout_isometric(inc, inc);
  CHECK(p.w.dim() == 3);
  CHECK(compose(p.i2, inc).m == compose(p.j2, inc).m);
  CHECK(is_isometric(p.i2));
  CHECK(is_isometric(p.j2));
  for (const auto& v : l2.vertices())
    for (const auto& u : l2.vertices()) {
      QVector s = p.i2(v);
      QVector t = p.j2(u);
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += t[k];
      CHECK(p.w.norm(s) == pushout_norm(inc, inc, v, u));
    }

  auto idx = LinOp(l2, l2, QMatrix::identity(2));
  auto hex = hexagonal();
  auto j = LinOp(l2, PolySpace(2, {{Q(1), Q(0)}, {Q(0), Q(1)}}), QMatrix::identity(2));
  auto q2 = pushout_isometric(idx, j);
  CHECK(q2.w.dim() == 2);
  CHECK(is_isometric(q2.j2));

  auto zero = PolySpace();
  auto zx = LinOp(zero, r, QMatrix(1, 0));
  auto zy = LinOp(zero, hex, QMatrix(2, 0));
  auto s = pushout_isometric(zx, zy);
  CHECK(s.w.dim() == 3);
  CHECK(s.w.norm(vec({1, 1, 1})) == 1 + hex.norm(vec({1, 1})));
  CHECK_THROWS_AS(pushout_isometric(LinOp(r, l2, col({q(1, 2), 0})), inc), BanachError);
}

TEST_CASE("random pushouts commute and embed isometrically") {
  std::mt19937_64 rng(4);
  for (int c = 0; c < 10; ++c) {
    auto y = random_space(rng, 3, 4);
    auto x = random_space(rng, 2, 4);
    // Z = R into both via unit vectors.
    auto vx = x.vertices().front(), vy = y.vertices().front();
    QMatrix mx(x.dim(), 1), my(y.dim(), 1);
    for (std::size_t k = 0; k < x.dim(); ++k) mx(k, 0) = vx[k];
    for (std::size_t k = 0; k < y.dim(); ++k) my(k, 0) = vy[k];
    auto i = LinOp(real_line(), x, mx), j = LinOp(real_line(), y, my);
    REQUIRE(is_isometric(i));
    REQUIRE(is_isometric(j));
    auto p = pushout_isometric(i, j);
    CHECK(compose(p.i2, i).m == compose(p.j2, j).m);
    CHECK(is_isometric(p.i2));
    CHECK(is_isometric(p.j2));
  }
}

TEST_CASE("rationalization") {
  auto h = hexagonal();
  auto same = rationalize_space(h, 0, 1);
  REQUIRE(same);
  CHECK(same->space == h);
  PolySpace coarse(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {q(7, 5), q(1, 3)}});
  auto c15 = rationalize_space(coarse, 0, 15);
  REQUIRE(c15);
  CHECK(c15->space == coarse);
  PolySpace fine(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {q(2, 3), q(1, 7)}});
  auto r10 = rationalize_space(fine, 2, 10);
  REQUIRE(r10);
  CHECK(r10->space.functionals()[2] == vec({q(7, 10), q(1, 10)}));
  CHECK(r10->distortion <= r10->bound);
  auto w = rationalize_within(fine, 2, q(1, 100));
  CHECK(w.distortion <= 1 + q(1, 100));
}

TEST_CASE("operator correction") {
  std::mt19937_64 rng(8);
  for (int c = 0; c < 20; ++c) {
    auto t = random_near_isometry(rng, 3, 5, Q(1));
    std::size_t n = 2 + c % 6;
    // Perturbation of norm at most 1 + 1/n.
    auto e = testing::random_matrix(rng, t.cod.dim(), t.dom.dim());
    LinOp pert(t.dom, t.cod, e);
    Q pn = op_norm(pert);
    QMatrix m1 = t.m;
    if (pn != 0) {
      Q s = Q(1, static_cast<long>(n)) / pn;
      for (std::size_t k = 0; k < m1.a.size(); ++k) m1.a[k] += s * e.a[k];
    }
    LinOp t1(t.dom, t.cod, m1);
    REQUIRE(op_norm(t1) <= 1 + Q(1, static_cast<long>(n)));
    auto corr = operator_correction(t, t1, n);
    CHECK(corr.norm <= 1);
    CHECK(corr.distance < Q(2, static_cast<long>(n)));
  }
}

namespace {

const engine::BuildResult<BanachInstance>& ban_build() {
  static const auto b = engine::build_fraisse(BanachInstance(3), 25, 0);
  return b;
}

}  // namespace

TEST_CASE("isometric extension search") {
  auto l2 = PolySpace::linf(2);
  auto zero = PolySpace();
  auto from0 = [&](const PolySpace& x) { return LinOp(zero, x, QMatrix(x.dim(), 0)); };
  auto h = isometric_extension(from0(l2), from0(PolySpace::linf(3)));
  REQUIRE(h);
  CHECK(is_isometric(LinOp(l2, PolySpace::linf(3), *h)));
  // l_1^2 is a rotated l_inf^2.
  CHECK(isometric_extension(from0(PolySpace::l1(2)), from0(l2)));
  CHECK_FALSE(isometric_extension(from0(hexagonal()), from0(l2)));
  CHECK_FALSE(isometric_extension(from0(PolySpace::linf(3)), from0(l2)));
  // Over R -> l_inf^2: e1 cannot go to the vertex (1, 1).
  auto e1 = LinOp(real_line(), l2, col({1, 0}));
  auto v = LinOp(real_line(), l2, col({1, 1}));
  CHECK_FALSE(isometric_extension(e1, v));
  auto h2 = isometric_extension(e1, LinOp(real_line(), l2, col({0, -1})));
  REQUIRE(h2);
  CHECK(*h2 * e1.m == col({0, -1}));
}

TEST_CASE("banach instance arrows") {
  BanachInstance c(3);
  auto r = c.seed();
  auto l2 = PolySpace::linf(2);
  auto f = c.make_arrow(r, l2, col({q(3, 4), 0}));
  CHECK_FALSE(f.is_small());
  CHECK(c.mu_value(f) == ExtRational(q(1, 4)));
  auto w = c.mu_bound(f);
  REQUIRE(w.i);
  REQUIRE(w.j);
  CHECK(w.bound == ExtRational(q(1, 4)));
  CHECK(core::rho(c, core::compose(c, *w.j, f), *w.i) == w.bound);
  CHECK(c.make_arrow(r, l2, col({1, 0})).is_small());
  CHECK_THROWS_AS(c.make_arrow(r, l2, col({2, 0})), BanachError);
  auto id = c.identity(l2);
  CHECK(c.mu_bound(id).bound == ExtRational(0));
  CHECK(c.admits(PolySpace::linf(3)));
  CHECK_FALSE(c.admits(PolySpace::linf(4)));
}

TEST_CASE("banach joint and amalgamation commute exactly") {
  BanachInstance c(4);
  auto j = c.joint(hexagonal(), c.seed());
  CHECK(is_isometric(BanachInstance::as_op(j.left)));
  CHECK(is_isometric(BanachInstance::as_op(j.right)));
  auto o = PolySpace::linf(2);
  for (std::size_t a = 1; a < 12; ++a)
    for (std::size_t b = 1; b < 6; ++b) {
      auto f = c.dominating_arrow(o, a);
      auto g = c.dominating_arrow(o, b);
      REQUIRE(f.is_small());
      REQUIRE(is_isometric(BanachInstance::as_op(f)));
      auto s = c.amalgamate(f, g, q(1, 2));
      CHECK(core::rho(c, core::compose(c, s.left, f), core::compose(c, s.right, g)) == ExtRational(0));
      CHECK(is_isometric(BanachInstance::as_op(s.left)));
      CHECK(is_isometric(BanachInstance::as_op(s.right)));
    }
}

TEST_CASE("dominating enumeration") {
  BanachInstance c(3);
  CHECK(c.dominating_arrow(c.seed(), 0) == c.identity(c.seed()));
  auto sum = c.dominating_arrow(c.seed(), 1);
  CHECK(sum.cod.dim() == 2);
  CHECK(isometric_extension(LinOp(PolySpace(), sum.cod, QMatrix(2, 0)), LinOp(PolySpace(), PolySpace::linf(2), QMatrix(2, 0))));
  for (std::size_t r = 0; r < 40; ++r) {
    auto o = c.dominating_object(r);
    CHECK(c.admits(o));
    CHECK(o == c.dominating_object(r));
  }
}

TEST_CASE("banach build replays") {
  BanachInstance c(3);
  const auto& b = ban_build();
  auto rep = engine::replay_log(c, b);
  CHECK(rep.ok);
  CHECK(rep.checked > 10);
  for (std::size_t l = 0; l < b.tower.size(); ++l) CHECK(b.tower.object(l).dim() <= 3);
}

TEST_CASE("banach (U) and (A) on the built tower") {
  BanachInstance c(3);
  const auto& t = ban_build().tower;
  auto u = engine::check_U(c, t, PolySpace::l1(2), q(1, 4), 10);
  REQUIRE(u.found());
  CHECK(u.witness->mu == ExtRational(0));
  auto f = c.dominating_arrow(t.object(0), 1);
  auto a = engine::check_A(c, t, 0, f, q(1, 4), 10);
  REQUIRE(a.found());
  CHECK(a.witness->margin == ExtRational(0));
}

TEST_CASE("check_G") {
  BanachInstance c(3);
  const auto& t = ban_build().tower;
  auto r = real_line();
  auto incl = LinOp(r, PolySpace::linf(2), col({1, 0}));
  auto f = LinOp(r, t.object(0), col({1}));
  auto g = check_G(c, t, 0, incl, f, q(1, 4), 10);
  REQUIRE(g.found());
  CHECK(g.witness->norm <= 1);
  CHECK(g.witness->mu < q(1, 4));
  CHECK(g.witness->margin < q(1, 4));
  CHECK(verify_G(c, t, 0, incl, f, q(1, 4), *g.witness));
  auto bad = *g.witness;
  bad.margin = q(1, 8);
  CHECK_FALSE(verify_G(c, t, 0, incl, f, q(1, 4), bad));

  // Y = X: the bonding maps themselves.
  auto same = check_G(c, t, 0, LinOp(r, r, col({1})), f, q(1, 4), 10);
  REQUIRE(same.found());
  CHECK(same.witness->margin == 0);

  auto loose = check_G(c, t, 1, LinOp(r, PolySpace::linf(2), col({1, q(1, 2)})), LinOp(r, t.object(1), col({1, 1})),
                       Q(2), 10);
  REQUIRE(loose.found());
  CHECK(verify_G(c, t, 1, LinOp(r, PolySpace::linf(2), col({1, q(1, 2)})), LinOp(r, t.object(1), col({1, 1})), Q(2),
                 *loose.witness));
  CHECK_THROWS_AS(check_G(c, t, 0, LinOp(r, PolySpace::linf(2), col({q(1, 2), 0})), f, q(1, 4), 10), BanachError);
}
