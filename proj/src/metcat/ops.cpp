#include "fraisse/metcat/ops.hpp"

#include <algorithm>
#include <optional>

namespace fraisse::metcat {

Pullback amalgamate_quotient(const FinMetSpace& x, const FinMetSpace& y, const FinMetSpace& z,
                             const NonExpMap& f, const NonExpMap& g, bool discrete) {
  require_map(x, z, f);
  require_map(y, z, g);
  if (!is_surjective(z, f) || !is_surjective(z, g)) throw MetricError("amalgamate_quotient: maps must be onto");
  Pullback out;
  for (std::size_t s = 0; s < x.size(); ++s)
    for (std::size_t t = 0; t < y.size(); ++t)
      if (f.table[s] == g.table[t]) out.pairs.emplace_back(s, t);
  // Both maps are onto, so every fiber of z is hit on both sides.
  if (out.pairs.empty()) throw std::logic_error("amalgamate_quotient: empty pullback");
  SpaceBuilder b(out.pairs.size());
  Q r = discrete ? x.separation() : Q(0);
  if (discrete && x.size() == 1) r = y.size() > 1 ? y.separation() : Q(1);
  for (std::size_t p = 0; p < out.pairs.size(); ++p) {
    for (std::size_t p2 = p + 1; p2 < out.pairs.size(); ++p2) {
      const auto& [s, t] = out.pairs[p];
      const auto& [s2, t2] = out.pairs[p2];
      b.set(p, p2, discrete ? r : x.d(s, s2) + y.d(t, t2));
    }
    out.to_x.table.push_back(out.pairs[p].first);
    out.to_y.table.push_back(out.pairs[p].second);
  }
  out.w = b.finish();
  return out;
}

Gluing amalgamate_embedding(const FinMetSpace& c, const FinMetSpace& a, const FinMetSpace& b,
                            const NonExpMap& i, const NonExpMap& j) {
  if (i.table.size() != c.size() || j.table.size() != c.size() || !is_isometric(c, a, i) ||
      !is_isometric(c, b, j) || !is_injective(i) || !is_injective(j)) {
    throw MetricError("amalgamate_embedding: legs must be isometric embeddings");
  }
  // B-points covered by j[C] are identified with their A-partners.
  std::vector<std::optional<std::size_t>> image_of(b.size());
  for (std::size_t k = 0; k < c.size(); ++k) image_of[j.table[k]] = i.table[k];

  Gluing out;
  out.from_a = identity_map(a.size());
  std::size_t next = a.size();
  out.from_b.table.resize(b.size());
  for (std::size_t t = 0; t < b.size(); ++t) out.from_b.table[t] = image_of[t] ? *image_of[t] : next++;

  auto cross = [&](std::size_t s, std::size_t t) {
    Q best = a.d(s, i.table[0]) + b.d(j.table[0], t);
    for (std::size_t k = 1; k < c.size(); ++k) {
      Q v = a.d(s, i.table[k]) + b.d(j.table[k], t);
      if (v < best) best = v;
    }
    return best;
  };

  SpaceBuilder z(next);
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t s2 = s + 1; s2 < a.size(); ++s2) z.set(s, s2, a.d(s, s2));
  for (std::size_t t = 0; t < b.size(); ++t) {
    if (image_of[t]) continue;
    for (std::size_t t2 = 0; t2 < b.size(); ++t2)
      if (t2 != t) z.set(out.from_b.table[t], out.from_b.table[t2], b.d(t, t2));
    for (std::size_t s = 0; s < a.size(); ++s) {
      // Points of A already glued to B keep their B-distance.
      z.set(s, out.from_b.table[t], cross(s, t));
    }
  }
  out.z = z.finish();
  return out;
}

Gluing disjoint_union(const FinMetSpace& a, const FinMetSpace& b) {
  Q k = std::max({a.diameter(), b.diameter(), Q(1)});
  SpaceBuilder z(a.size() + b.size());
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t s2 = s + 1; s2 < a.size(); ++s2) z.set(s, s2, a.d(s, s2));
  for (std::size_t t = 0; t < b.size(); ++t)
    for (std::size_t t2 = t + 1; t2 < b.size(); ++t2) z.set(a.size() + t, a.size() + t2, b.d(t, t2));
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < b.size(); ++t) z.set(s, a.size() + t, k);
  Gluing out;
  out.z = z.finish();
  out.from_a = identity_map(a.size());
  for (std::size_t t = 0; t < b.size(); ++t) out.from_b.table.push_back(a.size() + t);
  return out;
}

EmbeddingBound glue_along(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  require_map(dom, cod, f);
  EmbeddingBound out;
  out.distortion = distortion(dom, cod, f);
  out.bound = out.distortion / 2;
  if (out.distortion == 0) {
    out.z = cod;
    out.i = f;
    out.j = identity_map(cod.size());
    return out;
  }
  std::size_t n = dom.size();
  SpaceBuilder z(n + cod.size());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t s2 = s + 1; s2 < n; ++s2) z.set(s, s2, dom.d(s, s2));
  for (std::size_t t = 0; t < cod.size(); ++t)
    for (std::size_t t2 = t + 1; t2 < cod.size(); ++t2) z.set(n + t, n + t2, cod.d(t, t2));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < cod.size(); ++t) {
      Q best = dom.d(s, 0) + out.bound + cod.d(f.table[0], t);
      for (std::size_t s2 = 1; s2 < n; ++s2) {
        Q v = dom.d(s, s2) + out.bound + cod.d(f.table[s2], t);
        if (v < best) best = v;
      }
      z.set(s, n + t, best);
    }
  }
  // finish() runs the exhaustive triangle audit.
  out.z = z.finish();
  out.i = identity_map(n);
  for (std::size_t t = 0; t < cod.size(); ++t) out.j.table.push_back(n + t);
  return out;
}

EmbeddingBound mu_embedding_bound(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  if (f.table.size() != dom.size() || !is_injective(f)) throw MetricError("mu_embedding_bound: map must be injective");
  return glue_along(dom, cod, f);
}

QuotientWitness quotient_witness(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  require_map(dom, cod, f);
  QuotientWitness out;
  out.eps = mu_quotient(dom, cod, f);
  std::vector<std::pair<std::size_t, std::size_t>> pts;
  for (std::size_t x = 0; x < dom.size(); ++x)
    for (std::size_t y = 0; y < cod.size(); ++y)
      if (cod.d(y, f.table[x]) <= out.eps) pts.emplace_back(x, y);
  SpaceBuilder z(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t p2 = p + 1; p2 < pts.size(); ++p2) {
      z.set(p, p2, std::max(dom.d(pts[p].first, pts[p2].first), cod.d(pts[p].second, pts[p2].second)));
    }
    out.to_dom.table.push_back(pts[p].first);
    out.to_cod.table.push_back(pts[p].second);
  }
  out.z = z.finish();
  return out;
}

Rationalized rationalize(const std::vector<std::vector<Q>>& distances, const Q& eps, const Z& denominator_bound) {
  if (eps <= 0) throw MetricError("rationalize: eps must be positive");
  if (denominator_bound < 1) throw MetricError("rationalize: denominator bound must be >= 1");
  FinMetSpace x = FinMetSpace::from_matrix(distances);
  std::size_t n = x.size();
  Rationalized out;
  out.eta = eps / (2 + eps);
  out.h = identity_map(n);
  Z den = denominator_bound;
  for (;;) {
    // Round every distance up to the grid, then take the shortest-path
    // closure; the result stays >= d_X and <= d_X + 1/den.
    std::vector<Q> d(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = Q(ceil(x.d(i, j) * Q(den)), den);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (d[i * n + k] + d[k * n + j] < d[i * n + j]) d[i * n + j] = d[i * n + k] + d[k * n + j];
    Q lip = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Q ratio = d[i * n + j] / x.d(i, j);
        if (ratio > lip) lip = ratio;
      }
    if (lip <= 1 + out.eta) {
      SpaceBuilder b(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) b.set(i, j, d[i * n + j]);
      out.y = b.finish();
      out.denominator = den;
      out.lip_inverse = lip;
      return out;
    }
    den *= 2;
  }
}

}  // namespace fraisse::metcat
