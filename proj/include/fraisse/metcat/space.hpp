#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fraisse/rational.hpp"

namespace fraisse::metcat {

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nonempty finite metric space on points 0..n-1 with an exact rational
/// distance matrix.
class FinMetSpace {
 public:
  FinMetSpace() : FinMetSpace(1) {}
  /// Discrete space: all distinct points at distance `r`.
  explicit FinMetSpace(std::size_t n, const Q& r = Q(1));
  /// Validates symmetry, positivity and the triangle inequality.
  static FinMetSpace from_matrix(const std::vector<std::vector<Q>>& rows);
  /// Points on the real line with the induced metric.
  static FinMetSpace line(const std::vector<Q>& points);

  std::size_t size() const { return n_; }
  const Q& d(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::vector<std::vector<Q>> rows() const;

  Q diameter() const;
  /// Least distance between distinct points (0 for a one-point space).
  Q separation() const;
  bool is_discrete() const;

  friend bool operator==(const FinMetSpace&, const FinMetSpace&) = default;

 private:
  FinMetSpace(std::size_t n, std::vector<Q> dist) : n_(n), dist_(std::move(dist)) {}
  std::size_t n_ = 0;
  std::vector<Q> dist_;

  friend class SpaceBuilder;
};

/// Mutable matrix used while gluing; `finish` validates.
class SpaceBuilder {
 public:
  explicit SpaceBuilder(std::size_t n) : n_(n), dist_(n * n, Q(0)) {}
  void set(std::size_t i, std::size_t j, const Q& v) {
    dist_[i * n_ + j] = v;
    dist_[j * n_ + i] = v;
  }
  const Q& get(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  std::size_t size() const { return n_; }
  FinMetSpace finish() const;

 private:
  std::size_t n_;
  std::vector<Q> dist_;
};

/// Exhaustive audit; throws MetricError naming the first violation.
void audit_metric(std::size_t n, const std::vector<Q>& dist);

/// Underlying map of points dom -> cod, as a lookup table.
struct NonExpMap {
  std::vector<std::size_t> table;
  friend bool operator==(const NonExpMap&, const NonExpMap&) = default;
};

bool is_non_expansive(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);
bool is_isometric(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);
bool is_surjective(const FinMetSpace& cod, const NonExpMap& f);
bool is_injective(const NonExpMap& f);
/// Throws MetricError unless f is a well-formed non-expansive map.
void require_map(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);

NonExpMap identity_map(std::size_t n);
/// (f . g)(x) = f(g(x)).
NonExpMap compose_maps(const NonExpMap& f, const NonExpMap& g);

/// max over domain points of d_cod(f(t), g(t)).
Q rho_map(const FinMetSpace& cod, const NonExpMap& f, const NonExpMap& g);

/// max_{y in cod} min_{x in dom} d(y, f(x)): the least eps with f[dom] eps-dense.
Q mu_quotient(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);

/// max |d(f s, f t) - d(s, t)| over pairs.
Q distortion(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);

}  // namespace fraisse::metcat
