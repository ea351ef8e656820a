#include "fraisse/plcat/instance.hpp"

#include <algorithm>

#include "fraisse/metcat/instances.hpp"

namespace fraisse::plcat {

using Arrow = PLInstance::Arrow;

Arrow PLInstance::make_arrow(const Object& dom, const Object& cod, PLMap map) const {
  if (!map.is_onto()) throw PLError("pl-interval: arrow map is not onto");
  if (lipschitz(map, Q(cod.scale), Q(dom.scale)) > 1) throw PLError("pl-interval: arrow map is not non-expansive");
  return Arrow{dom, cod, std::move(map), core::ArrowKind::Small};
}

IntervalObject PLInstance::fitted_cod(const Object& dom, const PLMap& map) const {
  Z s = fraisse::ceil(lipschitz(map) * Q(dom.scale));
  return IntervalObject(std::max(s, Z(1)));
}

Arrow PLInstance::identity(const Object& o) const { return Arrow{o, o, PLMap(), core::ArrowKind::Small}; }

PLMap PLInstance::compose_payloads(const Arrow& f, const Arrow& g) const {
  // g: A -> B stores B -> A, f: B -> C stores C -> B.
  return compose_pl(g.payload, f.payload);
}

ExtRational PLInstance::rho_payloads(const Arrow& f, const Arrow& g) const {
  return ExtRational(rho_pl(f.payload, g.payload, Q(f.dom.scale)));
}

core::MuBound<Arrow> PLInstance::mu_bound(const Arrow& f) const {
  return {ExtRational(0), f, identity(f.cod)};
}

core::Cospan<Arrow> PLInstance::amalgamate(const Arrow& f, const Arrow& g, const Q&) const {
  if (!(f.dom == g.dom)) throw core::CompositionError("pl-interval: amalgamation needs a common domain");
  PLMap alpha = endpoint_lift(f.payload);
  PLMap beta = endpoint_lift(g.payload);
  auto [fp, gp] = mountain_climb(compose_pl(f.payload, alpha), compose_pl(g.payload, beta));
  PLMap left = compose_pl(alpha, fp);
  PLMap right = compose_pl(beta, gp);
  Z s = std::max(fitted_cod(f.cod, left).scale, fitted_cod(g.cod, right).scale);
  IntervalObject w(s);
  return {make_arrow(f.cod, w, std::move(left)), make_arrow(g.cod, w, std::move(right))};
}

core::Cospan<Arrow> PLInstance::joint(const Object& a, const Object& b) const {
  IntervalObject w(std::max(a.scale, b.scale));
  return {make_arrow(a, w, PLMap()), make_arrow(b, w, PLMap())};
}

Arrow PLInstance::dominating_arrow(const Object& o, std::size_t rank) const {
  if (rank == 0) return identity(o);
  auto head = metcat::cantor_tuple(rank - 1, 3);
  std::size_t folds = 1 + head[0] % 3;
  long den = 1 + static_cast<long>(head[1] % 4);
  std::uint64_t digits = head[2];
  auto next_digit = [&] {
    long d = static_cast<long>(digits % static_cast<std::uint64_t>(den));
    digits /= static_cast<std::uint64_t>(den);
    return d;
  };
  std::vector<Q> y{Q(0)};
  for (std::size_t i = 0; i < folds; ++i) {
    y.push_back(1 - q(next_digit(), 2 * den));
    y.push_back(q(next_digit(), 2 * den));
  }
  y.push_back(Q(1));
  std::vector<Q> t;
  long pieces = static_cast<long>(y.size() - 1);
  for (long k = 0; k <= pieces; ++k) t.push_back(q(k, pieces));
  PLMap map(std::move(t), std::move(y));
  auto cod = fitted_cod(o, map);
  return make_arrow(o, cod, std::move(map));
}

IntervalObject PLInstance::dominating_object(std::size_t rank) const {
  long s = 1;
  for (std::size_t r = rank + 1; r > 1; r >>= 1) ++s;
  return IntervalObject(Z(s));
}

std::optional<Arrow> PLInstance::search_absorb(const Arrow& f, const Arrow& bond, const Q& eps,
                                               const core::SearchOptions&) const {
  if (!(f.dom == bond.dom)) throw core::CompositionError("pl-interval: search_absorb needs a common domain");
  Q tol = eps / Q(f.dom.scale);
  Q lip = Q(bond.cod.scale) / Q(f.cod.scale);
  auto k = lift_pl(f.payload, bond.payload, tol, lip);
  if (!k) return std::nullopt;
  auto g = make_arrow(f.cod, bond.cod, std::move(*k));
  if (!(core::rho(*this, core::compose(*this, g, f), bond) < ExtRational(eps))) return std::nullopt;
  return g;
}

std::optional<Arrow> PLInstance::search_into(const Object& x, const Object& target, const Q&,
                                             const core::SearchOptions&) const {
  if (x.scale > target.scale) return std::nullopt;
  return make_arrow(x, target, PLMap());
}

std::vector<Z> lipschitz_scales(const std::vector<PLMap>& bondings) {
  std::vector<Z> k{Z(1)};
  for (const auto& g : bondings) k.push_back(std::max(Z(1), fraisse::ceil(Q(k.back()) * lipschitz(g))));
  return k;
}

}  // namespace fraisse::plcat
