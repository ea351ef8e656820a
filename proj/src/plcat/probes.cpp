#include "fraisse/plcat/probes.hpp"

#include <algorithm>

namespace fraisse::plcat {

PResult check_P(const PLInstance& c, const PLTower& t, std::size_t n, const PLMap& f, const Q& eps,
                std::size_t depth) {
  if (n >= t.size()) throw PLError("check_P: level beyond tower");
  if (!(eps > 0)) throw PLError("check_P: eps must be positive");
  if (!f.is_onto()) throw PLError("check_P: f is not onto");
  PResult out;
  out.depth = std::min(depth, t.size() - 1);
  Q scale(t.object(n).scale);
  for (std::size_t m = n + 1; m <= out.depth; ++m) {
    const PLMap& b = t.bond(c, n, m).payload;
    auto g = lift_pl(f, b, eps / scale);
    if (!g) continue;
    PWitness w{m, *g, rho_pl(compose_pl(f, *g), b, scale)};
    if (w.margin < eps) {
      out.witness = std::move(w);
      return out;
    }
  }
  out.note = "exhausted";
  return out;
}

bool verify_P(const PLInstance& c, const PLTower& t, std::size_t n, const PLMap& f, const Q& eps,
              const PWitness& w) {
  if (n >= t.size() || w.m <= n || w.m >= t.size() || !w.g.is_onto()) return false;
  Q margin = rho_pl(compose_pl(f, w.g), t.bond(c, n, w.m).payload, Q(t.object(n).scale));
  return margin == w.margin && margin < eps;
}

std::string to_string(Verdict v) { return v == Verdict::Contradiction ? "contradiction" : "inconclusive"; }

ProbeReport indecomposability_probe(const PLInstance& c, const PLTower& t, std::size_t n, const Q& a, const Q& b,
                                    const Q& eps, std::size_t depth) {
  if (n >= t.size()) throw PLError("indecomposability_probe: level beyond tower");
  if (!(0 < b && b <= a && a < 1)) throw PLError("indecomposability_probe: need 0 < b <= a < 1");
  Q scale(t.object(n).scale);
  Q e = eps / scale;
  if (!(eps > 0) || !(eps < scale * b)) throw PLError("indecomposability_probe: need 0 < eps < d(0, b)");
  if (!(a + e < 1)) throw PLError("indecomposability_probe: tent preimage of [0, a + eps] is not split");
  ProbeReport rep;
  rep.tent_dom_scale = 2 * t.object(n).scale;
  rep.s = (a + e) / 2;
  rep.t = 1 - rep.s;
  PLMap tent = tent_map();
  auto res = check_P(c, t, n, tent, eps, depth);
  if (!res.found()) {
    rep.note = "no (P) witness up to depth " + std::to_string(res.depth);
    return rep;
  }
  rep.witness = res.witness;
  const auto& w = *res.witness;
  const PLMap& bond = t.bond(c, n, w.m).payload;
  rep.r0 = preimages(w.g, Q(0)).front();
  rep.r1 = preimages(w.g, Q(1)).front();
  rep.b_r0 = bond(rep.r0);
  rep.b_r1 = bond(rep.r1);
  if (rep.b_r0 < b && rep.b_r1 < b && rep.s < rep.t) {
    rep.verdict = Verdict::Contradiction;
  } else {
    rep.note = "witness does not separate";
  }
  return rep;
}

}  // namespace fraisse::plcat
