#pragma once

#include <utility>
#include <vector>

#include "fraisse/metcat/space.hpp"

namespace fraisse::metcat {

/// Fibered product W = {(s,t) : f(s) = g(t)} with its two projections.
struct Pullback {
  FinMetSpace w;
  NonExpMap to_x;
  NonExpMap to_y;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// Strict amalgamation of surjections f: X ->> Z, g: Y ->> Z. The metric on W
/// is d_X + d_Y, or the discrete metric of X when `discrete` is set (X, Y
/// discrete at the same distance).
Pullback amalgamate_quotient(const FinMetSpace& x, const FinMetSpace& y, const FinMetSpace& z,
                             const NonExpMap& f, const NonExpMap& g, bool discrete = false);

/// A ⊔_C B for isometric embeddings i: C -> A, j: C -> B. Points of A come
/// first, followed by the points of B outside j[C].
struct Gluing {
  FinMetSpace z;
  NonExpMap from_a;
  NonExpMap from_b;
};

Gluing amalgamate_embedding(const FinMetSpace& c, const FinMetSpace& a, const FinMetSpace& b,
                            const NonExpMap& i, const NonExpMap& j);

/// Disjoint union with every cross distance max(diam A, diam B, 1).
Gluing disjoint_union(const FinMetSpace& a, const FinMetSpace& b);

/// Norm witness for a non-expansive map in the embedding flavor: the space
/// X ⊔ Y with cross distance min_{x'} d(x, x') + eps/2 + d(f x', y), where
/// eps is the distortion of f, and the two isometric inclusions.
struct EmbeddingBound {
  Q bound;
  Q distortion;
  FinMetSpace z;
  NonExpMap i;  // dom -> z
  NonExpMap j;  // cod -> z
};

/// Any non-expansive f.
EmbeddingBound glue_along(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);
/// Requires f injective.
EmbeddingBound mu_embedding_bound(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);

/// Z = {(x, y) : d(y, f x) <= eps} with the max metric, for eps = mu_quotient(f).
struct QuotientWitness {
  Q eps;
  FinMetSpace z;
  NonExpMap to_dom;  // onto dom
  NonExpMap to_cod;  // onto cod
};

QuotientWitness quotient_witness(const FinMetSpace& dom, const FinMetSpace& cod, const NonExpMap& f);

/// Replaces a finite metric by one with distances in (1/D)Z such that the
/// identity h: Y -> X is non-expansive and Lip(h^-1) <= 1 + eta, where
/// eta = eps / (2 + eps) satisfies (1 + eta)/(1 - eta) = 1 + eps.
struct Rationalized {
  FinMetSpace y;
  NonExpMap h;
  Q eta;
  Z denominator;
  Q lip_inverse;
};

Rationalized rationalize(const std::vector<std::vector<Q>>& distances, const Q& eps, const Z& denominator_bound);

}  // namespace fraisse::metcat
