#include "fraisse/metcat/space.hpp"

#include <string>

namespace fraisse::metcat {

void audit_metric(std::size_t n, const std::vector<Q>& dist) {
  if (n == 0) throw MetricError("metric space must be nonempty");
  if (dist.size() != n * n) throw MetricError("distance matrix has wrong shape");
  auto at = [&](std::size_t i, std::size_t j) -> const Q& { return dist[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0) throw MetricError("nonzero self-distance at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) != at(j, i)) throw MetricError("asymmetric distance");
      if (at(i, j) <= 0) throw MetricError("nonpositive distance between distinct points");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, j) > at(i, k) + at(k, j)) {
          throw MetricError("triangle inequality fails at (" + std::to_string(i) + "," + std::to_string(j) +
                            "," + std::to_string(k) + ")");
        }
}

FinMetSpace::FinMetSpace(std::size_t n, const Q& r) : n_(n), dist_(n * n, Q(0)) {
  if (n == 0) throw MetricError("metric space must be nonempty");
  if (r <= 0) throw MetricError("discrete distance must be positive");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) dist_[i * n + j] = r;
}

FinMetSpace FinMetSpace::from_matrix(const std::vector<std::vector<Q>>& rows) {
  std::size_t n = rows.size();
  std::vector<Q> dist;
  dist.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw MetricError("distance matrix is not square");
    dist.insert(dist.end(), row.begin(), row.end());
  }
  audit_metric(n, dist);
  return FinMetSpace(n, std::move(dist));
}

FinMetSpace FinMetSpace::line(const std::vector<Q>& points) {
  std::vector<std::vector<Q>> rows(points.size(), std::vector<Q>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) rows[i][j] = abs(points[i] - points[j]);
  return from_matrix(rows);
}

std::vector<std::vector<Q>> FinMetSpace::rows() const {
  std::vector<std::vector<Q>> out(n_, std::vector<Q>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = d(i, j);
  return out;
}

Q FinMetSpace::diameter() const {
  Q best = 0;
  for (const auto& v : dist_) best = v > best ? v : best;
  return best;
}

Q FinMetSpace::separation() const {
  Q best = 0;
  bool first = true;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (first || d(i, j) < best) {
        best = d(i, j);
        first = false;
      }
  return best;
}

bool FinMetSpace::is_discrete() const {
  Q r = separation();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (d(i, j) != r) return false;
  return true;
}

FinMetSpace SpaceBuilder::finish() const {
  audit_metric(n_, dist_);
  return FinMetSpace(n_, dist_);
}

bool is_non_expansive(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  for (std::size_t s = 0; s < dom.size(); ++s)
    for (std::size_t t = s + 1; t < dom.size(); ++t)
      if (cod.d(f.table[s], f.table[t]) > dom.d(s, t)) return false;
  return true;
}

bool is_isometric(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  for (std::size_t s = 0; s < dom.size(); ++s)
    for (std::size_t t = s + 1; t < dom.size(); ++t)
      if (cod.d(f.table[s], f.table[t]) != dom.d(s, t)) return false;
  return true;
}

bool is_surjective(const FinMetSpace& cod, const NonExpMap& f) {
  std::vector<bool> hit(cod.size(), false);
  for (auto v : f.table) hit[v] = true;
  for (bool h : hit)
    if (!h) return false;
  return true;
}

bool is_injective(const NonExpMap& f) {
  for (std::size_t s = 0; s < f.table.size(); ++s)
    for (std::size_t t = s + 1; t < f.table.size(); ++t)
      if (f.table[s] == f.table[t]) return false;
  return true;
}

void require_map(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  if (f.table.size() != dom.size()) throw MetricError("map table size does not match domain");
  for (auto v : f.table)
    if (v >= cod.size()) throw MetricError("map value outside codomain");
  if (!is_non_expansive(dom, cod, f)) throw MetricError("map is not non-expansive");
}

NonExpMap identity_map(std::size_t n) {
  NonExpMap out;
  out.table.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.table[i] = i;
  return out;
}

NonExpMap compose_maps(const NonExpMap& f, const NonExpMap& g) {
  NonExpMap out;
  out.table.reserve(g.table.size());
  for (auto v : g.table) out.table.push_back(f.table.at(v));
  return out;
}

Q rho_map(const FinMetSpace& cod, const NonExpMap& f, const NonExpMap& g) {
  if (f.table.size() != g.table.size()) throw MetricError("rho_map: hom-set mismatch");
  Q best = 0;
  for (std::size_t t = 0; t < f.table.size(); ++t) {
    const Q& v = cod.d(f.table[t], g.table[t]);
    if (v > best) best = v;
  }
  return best;
}

Q mu_quotient(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  (void)dom;
  Q worst = 0;
  for (std::size_t y = 0; y < cod.size(); ++y) {
    Q nearest = cod.d(y, f.table[0]);
    for (auto v : f.table)
      if (cod.d(y, v) < nearest) nearest = cod.d(y, v);
    if (nearest > worst) worst = nearest;
  }
  return worst;
}

Q distortion(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f) {
  Q worst = 0;
  for (std::size_t s = 0; s < dom.size(); ++s)
    for (std::size_t t = s + 1; t < dom.size(); ++t) {
      Q gap = abs(cod.d(f.table[s], f.table[t]) - dom.d(s, t));
      if (gap > worst) worst = gap;
    }
  return worst;
}

}  // namespace fraisse::metcat
