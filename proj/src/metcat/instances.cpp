#include "fraisse/metcat/instances.hpp"

#include <cmath>

#include "fraisse/metcat/search.hpp"

namespace fraisse::metcat {

std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y) { return (x + y) * (x + y + 1) / 2 + y; }

namespace {

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  using U = unsigned __int128;
  auto tri = [](U w) { return w * (w + 1) / 2; };
  U w = static_cast<U>((std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
  while (w > 0 && tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  auto y = static_cast<std::uint64_t>(z - tri(w));
  return {static_cast<std::uint64_t>(w) - y, y};
}

/// Distances e from a new point to the points of x form a one-point metric
/// extension (Katetov condition).
bool is_extension(const FinMetSpace& x, const std::vector<Q>& e) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (e[i] <= 0) return false;
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (abs(e[i] - e[j]) > x.d(i, j) || x.d(i, j) > e[i] + e[j]) return false;
    }
  }
  return true;
}

FinMetSpace extend(const FinMetSpace& x, const std::vector<Q>& e) {
  SpaceBuilder b(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) b.set(i, j, x.d(i, j));
    b.set(i, x.size(), e[i]);
  }
  return b.finish();
}

FinMetSpace enumerate_space(std::size_t rank) {
  auto head = cantor_tuple(rank, 3);
  // Sizes grow logarithmically in the first coordinate so that early ranks
  // stay small; every size still occurs.
  std::size_t n = 1;
  for (std::uint64_t v = head[0] + 1; v > 1; v >>= 1) ++n;
  Z den = head[1] + 1;
  auto ks = cantor_tuple(head[2], n * (n - 1) / 2);
  std::vector<Q> dist(n * n, Q(0));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      dist[i * n + j] = Q(Z(ks[k] + 1), den);
      dist[j * n + i] = dist[i * n + j];
    }
  try {
    audit_metric(n, dist);
  } catch (const MetricError&) {
    return FinMetSpace(n);
  }
  std::vector<std::vector<Q>> rows(n, std::vector<Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = dist[i * n + j];
  return FinMetSpace::from_matrix(rows);
}

}  // namespace

std::vector<std::uint64_t> cantor_tuple(std::uint64_t code, std::size_t k) {
  std::vector<std::uint64_t> out;
  if (k == 0) return out;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    auto [x, rest] = cantor_unpair(code);
    out.push_back(x);
    code = rest;
  }
  out.push_back(code);
  return out;
}

// ---------------------------------------------------------------------------
// Embedding flavor

EmbedInstance::Arrow EmbedInstance::make_arrow(const Object& dom, const Object& cod, NonExpMap map) const {
  require_map(dom, cod, map);
  bool small = is_isometric(dom, cod, map) && is_injective(map);
  return Arrow{dom, cod, std::move(map), small ? ArrowKind::Small : ArrowKind::Ambient};
}

EmbedInstance::Arrow EmbedInstance::identity(const Object& o) const {
  return Arrow{o, o, identity_map(o.size()), ArrowKind::Small};
}

EmbedInstance::Payload EmbedInstance::compose_payloads(const Arrow& f, const Arrow& g) const {
  return compose_maps(f.payload, g.payload);
}

ExtRational EmbedInstance::rho_payloads(const Arrow& f, const Arrow& g) const {
  return rho_map(f.cod, f.payload, g.payload);
}

ExtRational EmbedInstance::mu_value(const Arrow& f) const { return distortion(f.dom, f.cod, f.payload) / 2; }

core::MuBound<EmbedInstance::Arrow> EmbedInstance::mu_bound(const Arrow& f) const {
  auto glued = glue_along(f.dom, f.cod, f.payload);
  core::MuBound<Arrow> out;
  out.bound = glued.bound;
  out.i = Arrow{f.dom, glued.z, glued.i, ArrowKind::Small};
  out.j = Arrow{f.cod, glued.z, glued.j, ArrowKind::Small};
  return out;
}

core::Cospan<EmbedInstance::Arrow> EmbedInstance::amalgamate(const Arrow& f, const Arrow& g, const Q&) const {
  if (!(f.dom == g.dom)) throw core::CompositionError("metric-embed: span legs must share a domain");
  // An identity leg amalgamates trivially.
  if (g == identity(g.dom)) return {identity(f.cod), f};
  if (f == identity(f.dom)) return {g, identity(g.cod)};
  auto glued = amalgamate_embedding(f.dom, f.cod, g.cod, f.payload, g.payload);
  return {Arrow{f.cod, glued.z, glued.from_a, ArrowKind::Small}, Arrow{g.cod, glued.z, glued.from_b, ArrowKind::Small}};
}

core::Cospan<EmbedInstance::Arrow> EmbedInstance::joint(const Object& a, const Object& b) const {
  auto glued = disjoint_union(a, b);
  return {Arrow{a, glued.z, glued.from_a, ArrowKind::Small}, Arrow{b, glued.z, glued.from_b, ArrowKind::Small}};
}

EmbedInstance::Object EmbedInstance::dominating_object(std::size_t rank) const { return enumerate_space(rank); }

EmbedInstance::Arrow EmbedInstance::dominating_arrow(const Object& o, std::size_t rank) const {
  auto head = cantor_tuple(rank, 2);
  Z den = head[0] + 1;
  auto ks = cantor_tuple(head[1], o.size());
  std::vector<Q> e(o.size());
  for (std::size_t i = 0; i < o.size(); ++i) e[i] = Q(Z(ks[i] + 1), den);
  if (!is_extension(o, e)) {
    std::size_t p = head[1] % o.size();
    for (std::size_t i = 0; i < o.size(); ++i) e[i] = o.d(p, i) + Q(Z(1), den);
  }
  FinMetSpace b = extend(o, e);
  return Arrow{o, b, identity_map(o.size()), ArrowKind::Small};
}

std::optional<EmbedInstance::Arrow> EmbedInstance::search_absorb(const Arrow& f, const Arrow& bond, const Q& eps,
                                                                 const SearchOptions& opts) const {
  const FinMetSpace& y = f.cod;
  const FinMetSpace& target = bond.cod;
  MapSearch s;
  s.budget = opts.budget;
  s.domains.assign(y.size(), {});
  std::vector<bool> anchored(y.size(), false);
  for (std::size_t p = 0; p < f.dom.size(); ++p) {
    std::size_t v = f.payload.table[p];
    std::vector<std::size_t> dom;
    for (std::size_t w = 0; w < target.size(); ++w)
      if (target.d(w, bond.payload.table[p]) < eps) dom.push_back(w);
    std::stable_sort(dom.begin(), dom.end(), [&](std::size_t a, std::size_t b) {
      return target.d(a, bond.payload.table[p]) < target.d(b, bond.payload.table[p]);
    });
    if (anchored[v]) {
      std::vector<std::size_t> both;
      for (auto w : dom)
        if (std::find(s.domains[v].begin(), s.domains[v].end(), w) != s.domains[v].end()) both.push_back(w);
      dom = both;
    }
    s.domains[v] = dom;
    anchored[v] = true;
  }
  for (std::size_t v = 0; v < y.size(); ++v)
    if (!anchored[v])
      for (std::size_t w = 0; w < target.size(); ++w) s.domains[v].push_back(w);
  bool exact = opts.small_only;
  Q slack = 2 * eps;
  s.compatible = [&](std::size_t a, std::size_t va, std::size_t b, std::size_t vb) {
    const Q& dy = y.d(a, b);
    const Q& dt = target.d(va, vb);
    if (dt > dy) return false;
    return exact ? dt == dy : dy - dt < slack;
  };
  auto sol = s.solve();
  if (!sol) return std::nullopt;
  return make_arrow(y, target, NonExpMap{*sol});
}

std::optional<EmbedInstance::Arrow> EmbedInstance::search_into(const Object& x, const Object& target, const Q& eps,
                                                               const SearchOptions& opts) const {
  MapSearch s;
  s.budget = opts.budget;
  s.domains.assign(x.size(), {});
  for (auto& d : s.domains)
    for (std::size_t w = 0; w < target.size(); ++w) d.push_back(w);
  bool exact = opts.small_only;
  Q slack = 2 * eps;
  s.compatible = [&](std::size_t a, std::size_t va, std::size_t b, std::size_t vb) {
    const Q& dx = x.d(a, b);
    const Q& dt = target.d(va, vb);
    if (dt > dx) return false;
    return exact ? dt == dx : dx - dt < slack;
  };
  auto sol = s.solve();
  if (!sol) return std::nullopt;
  return make_arrow(x, target, NonExpMap{*sol});
}

// ---------------------------------------------------------------------------
// Quotient flavor

QuotientInstance::Arrow QuotientInstance::make_arrow(const Object& dom, const Object& cod, NonExpMap map) const {
  require_map(cod, dom, map);
  bool small = is_surjective(dom, map);
  return Arrow{dom, cod, std::move(map), small ? ArrowKind::Small : ArrowKind::Ambient};
}

QuotientInstance::Arrow QuotientInstance::identity(const Object& o) const {
  return Arrow{o, o, identity_map(o.size()), ArrowKind::Small};
}

QuotientInstance::Payload QuotientInstance::compose_payloads(const Arrow& f, const Arrow& g) const {
  // Maps run backwards: (f . g) is g^ . f^ on points.
  return compose_maps(g.payload, f.payload);
}

ExtRational QuotientInstance::rho_payloads(const Arrow& f, const Arrow& g) const {
  return rho_map(f.dom, f.payload, g.payload);
}

ExtRational QuotientInstance::mu_value(const Arrow& f) const { return mu_quotient(f.cod, f.dom, f.payload); }

core::MuBound<QuotientInstance::Arrow> QuotientInstance::mu_bound(const Arrow& f) const {
  core::MuBound<Arrow> out;
  if (discrete_) {
    // In the discrete flavor the product witness would leave the family;
    // an onto map has norm 0 (witness: itself), otherwise report the density.
    out.bound = mu_value(f);
    if (out.bound == ExtRational(0)) {
      out.i = Arrow{f.dom, f.cod, f.payload, ArrowKind::Small};
      out.j = identity(f.cod);
    }
    return out;
  }
  auto w = quotient_witness(f.cod, f.dom, f.payload);
  out.bound = w.eps;
  out.i = Arrow{f.dom, w.z, w.to_cod, ArrowKind::Small};
  out.j = Arrow{f.cod, w.z, w.to_dom, ArrowKind::Small};
  return out;
}

core::Cospan<QuotientInstance::Arrow> QuotientInstance::amalgamate(const Arrow& f, const Arrow& g, const Q&) const {
  if (!(f.dom == g.dom)) throw core::CompositionError("metric-quotient: span legs must share a domain");
  // An identity leg amalgamates trivially.
  if (g == identity(g.dom)) return {identity(f.cod), f};
  if (f == identity(f.dom)) return {g, identity(g.cod)};
  auto pb = amalgamate_quotient(f.cod, g.cod, f.dom, f.payload, g.payload, discrete_);
  return {Arrow{f.cod, pb.w, pb.to_x, ArrowKind::Small}, Arrow{g.cod, pb.w, pb.to_y, ArrowKind::Small}};
}

core::Cospan<QuotientInstance::Arrow> QuotientInstance::joint(const Object& a, const Object& b) const {
  if (discrete_) {
    // Any set at least as large as both maps onto both.
    std::size_t n = std::max(a.size(), b.size());
    NonExpMap ta, tb;
    for (std::size_t i = 0; i < n; ++i) {
      ta.table.push_back(i % a.size());
      tb.table.push_back(i % b.size());
    }
    FinMetSpace w(n);
    return {Arrow{a, w, ta, ArrowKind::Small}, Arrow{b, w, tb, ArrowKind::Small}};
  }
  FinMetSpace point(1);
  NonExpMap ca{std::vector<std::size_t>(a.size(), 0)};
  NonExpMap cb{std::vector<std::size_t>(b.size(), 0)};
  auto pb = amalgamate_quotient(a, b, point, ca, cb, discrete_);
  return {Arrow{a, pb.w, pb.to_x, ArrowKind::Small}, Arrow{b, pb.w, pb.to_y, ArrowKind::Small}};
}

QuotientInstance::Object QuotientInstance::dominating_object(std::size_t rank) const {
  if (discrete_) {
    std::size_t n = 1;
    for (std::uint64_t v = rank + 1; v > 1; v >>= 1) ++n;
    return FinMetSpace(n);
  }
  return enumerate_space(rank);
}

QuotientInstance::Arrow QuotientInstance::dominating_arrow(const Object& o, std::size_t rank) const {
  std::size_t n = o.size();
  if (discrete_) {
    // Fiber multiplicities over each point of o, rotated by the rank since
    // the leading tuple entries grow fastest.
    auto ks = cantor_tuple(rank, n);
    NonExpMap map;
    for (std::size_t i = 0; i < n; ++i) map.table.push_back(i);
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint64_t c = 0; c < ks[(i + rank) % n]; ++c) map.table.push_back(i);
    return Arrow{o, FinMetSpace(map.table.size()), map, ArrowKind::Small};
  }
  // Split one point p into p and a new point p'.
  auto head = cantor_tuple(rank, 3);
  std::size_t p = head[0] % n;
  Z den = head[1] + 1;
  auto ks = cantor_tuple(head[2], n);
  std::vector<Q> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = i == p ? Q(Z(ks[i] + 1), den) : o.d(p, i) + Q(Z(ks[i]), den);
  if (!is_extension(o, e)) {
    for (std::size_t i = 0; i < n; ++i) e[i] = o.d(p, i) + Q(Z(1), den);
  }
  FinMetSpace b = extend(o, e);
  NonExpMap map = identity_map(n);
  map.table.push_back(p);
  return Arrow{o, b, map, ArrowKind::Small};
}

std::optional<QuotientInstance::Arrow> QuotientInstance::search_absorb(const Arrow& f, const Arrow& bond,
                                                                       const Q& eps,
                                                                       const SearchOptions& opts) const {
  // Looking for g^: u_m -> y with f^ . g^ within eps of bond^ and image
  // covering y (so mu(g) = 0 < eps).
  const FinMetSpace& base = f.dom;  // u_n
  const FinMetSpace& y = f.cod;
  const FinMetSpace& top = bond.cod;  // u_m
  MapSearch s;
  s.budget = opts.budget;
  s.domains.assign(top.size(), {});
  for (std::size_t a = 0; a < top.size(); ++a)
    for (std::size_t v = 0; v < y.size(); ++v)
      if (base.d(f.payload.table[v], bond.payload.table[a]) < eps) s.domains[a].push_back(v);
  // Closest candidates first, so exact factorizations are found when they exist.
  for (std::size_t a = 0; a < top.size(); ++a)
    std::stable_sort(s.domains[a].begin(), s.domains[a].end(), [&](std::size_t v, std::size_t w) {
      return base.d(f.payload.table[v], bond.payload.table[a]) < base.d(f.payload.table[w], bond.payload.table[a]);
    });
  for (std::size_t v = 0; v < y.size(); ++v) s.must_cover.push_back(v);
  s.compatible = [&](std::size_t a, std::size_t va, std::size_t b, std::size_t vb) {
    return y.d(va, vb) <= top.d(a, b);
  };
  // Discrete y no wider than top's separation: non-expansiveness is automatic.
  bool free = y.size() == 1 || (y.is_discrete() && (top.size() == 1 || y.d(0, 1) <= top.separation()));
  auto sol = free ? cover_by_matching(s.domains, s.must_cover) : s.solve();
  if (!sol) return std::nullopt;
  return make_arrow(y, top, NonExpMap{*sol});
}

std::optional<QuotientInstance::Arrow> QuotientInstance::search_into(const Object& x, const Object& target,
                                                                     const Q&, const SearchOptions& opts) const {
  MapSearch s;
  s.budget = opts.budget;
  s.domains.assign(target.size(), {});
  for (auto& d : s.domains)
    for (std::size_t v = 0; v < x.size(); ++v) d.push_back(v);
  for (std::size_t v = 0; v < x.size(); ++v) s.must_cover.push_back(v);
  s.compatible = [&](std::size_t a, std::size_t va, std::size_t b, std::size_t vb) {
    return x.d(va, vb) <= target.d(a, b);
  };
  bool free = x.size() == 1 || (x.is_discrete() && (target.size() == 1 || x.d(0, 1) <= target.separation()));
  auto sol = free ? cover_by_matching(s.domains, s.must_cover) : s.solve();
  if (!sol) return std::nullopt;
  return make_arrow(x, target, NonExpMap{*sol});
}

}  // namespace fraisse::metcat
