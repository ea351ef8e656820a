#include "fraisse/bancat/gurarii.hpp"

#include "fraisse/engine/checks.hpp"

namespace fraisse::bancat {

namespace {

void validate(const BanachTower& t, std::size_t n, const LinOp& incl, const LinOp& f) {
  if (n >= t.size()) throw BanachError("check_G: level beyond tower");
  if (!(f.cod == t.object(n))) throw BanachError("check_G: f does not land in u_n");
  if (!(incl.dom == f.dom)) throw BanachError("check_G: incl and f need a common domain");
  if (!is_isometric(incl) || !is_isometric(f)) throw BanachError("check_G: incl and f must be isometric");
}

}  // namespace

GResult check_G(const BanachInstance& c, const BanachTower& t, std::size_t n, const LinOp& incl, const LinOp& f,
                const Q& eps, std::size_t depth, const core::SearchOptions& opts) {
  validate(t, n, incl, f);
  if (!(eps > 0)) throw BanachError("check_G: eps must be positive");
  GResult out;
  auto p = pushout_isometric(f, incl);
  BanachInstance::Arrow leg{p.i2.dom, p.w, p.i2.m, core::ArrowKind::Small};
  auto a = engine::check_A(c, t, n, leg, eps, depth, opts);
  out.depth = a.depth;
  if (!a.found()) {
    if (eps > 1) {
      // The zero map: mu = 1 and margin ||u_n^n . f|| = 1, both below eps.
      LinOp zero(incl.cod, t.object(n), QMatrix(t.object(n).dim(), incl.cod.dim()));
      out.witness = GWitness{n, zero.m, Q(0), Q(1), op_norm(f)};
      out.note = "zero extension";
      return out;
    }
    out.note = "exhausted";
    return out;
  }
  const auto& w = *a.witness;
  LinOp g(incl.cod, t.object(w.m), w.g.payload * p.j2.m);
  GWitness gw{w.m, g.m, op_norm(g), Q(1), Q(0)};
  auto mu = mu_op(g);
  if (mu.status == MuStatus::NormAboveOne) {
    out.note = "extension has norm above 1";
    return out;
  }
  gw.mu = mu.value;
  LinOp lhs(incl.dom, g.cod, g.m * incl.m);
  LinOp rhs(incl.dom, g.cod, t.bond(c, n, w.m).payload * f.m);
  gw.margin = op_distance(lhs, rhs);
  if (gw.norm <= 1 && gw.mu < eps && gw.margin < eps) {
    out.witness = gw;
  } else {
    out.note = "extension misses eps";
  }
  return out;
}

bool verify_G(const BanachInstance& c, const BanachTower& t, std::size_t n, const LinOp& incl, const LinOp& f,
              const Q& eps, const GWitness& w) {
  validate(t, n, incl, f);
  if (w.m >= t.size()) return false;
  LinOp g(incl.cod, t.object(w.m), w.g);
  auto mu = mu_op(g);
  if (mu.status == MuStatus::NormAboveOne) return false;
  LinOp lhs(incl.dom, g.cod, g.m * incl.m);
  LinOp rhs(incl.dom, g.cod, t.bond(c, n, w.m).payload * f.m);
  Q margin = op_distance(lhs, rhs);
  return op_norm(g) == w.norm && mu.value == w.mu && margin == w.margin && w.norm <= 1 && w.mu < eps &&
         w.margin < eps;
}

}  // namespace fraisse::bancat
