#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/core/category.hpp"
#include "fraisse/plcat/plmap.hpp"

namespace fraisse::plcat {

/// [0,1] with d(s,t) = scale * |s - t|.
struct IntervalObject {
  Z scale = 1;

  IntervalObject() = default;
  explicit IntervalObject(Z s) : scale(std::move(s)) {
    if (scale < 1) throw PLError("IntervalObject: scale must be a positive integer");
  }
  friend bool operator==(const IntervalObject&, const IntervalObject&) = default;
};

/// Opposite category of non-expansive PL quotient maps between scaled
/// intervals. An arrow X -> Y stores the underlying map Y -> X; every arrow
/// is small and mu vanishes.
class PLInstance {
 public:
  using Object = IntervalObject;
  using Payload = PLMap;
  using Arrow = core::Arrow<Object, Payload>;

  std::string tag() const { return "pl-interval"; }

  /// Checks ontoness and scale(dom) * Lip(map) <= scale(cod).
  Arrow make_arrow(const Object& dom, const Object& cod, PLMap map) const;
  /// Least scale making `map` non-expansive into `dom`.
  Object fitted_cod(const Object& dom, const PLMap& map) const;

  Arrow identity(const Object& o) const;
  Payload compose_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational rho_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational mu_value(const Arrow&) const { return ExtRational(0); }
  core::MuBound<Arrow> mu_bound(const Arrow& f) const;
  /// Strict: exact commutation via endpoint lifts and mountain climbing.
  core::Cospan<Arrow> amalgamate(const Arrow& f, const Arrow& g, const Q& tol) const;
  core::Cospan<Arrow> joint(const Object& a, const Object& b) const;
  Object seed() const { return IntervalObject(1); }
  /// Rank 0 is the identity; otherwise a zigzag 0, h_1, l_1, ..., h_w, l_w, 1
  /// on a uniform partition with h_i > 1/2 > l_i.
  Arrow dominating_arrow(const Object& o, std::size_t rank) const;
  Object dominating_object(std::size_t rank) const;
  std::optional<Arrow> search_absorb(const Arrow& f, const Arrow& bond, const Q& eps,
                                     const core::SearchOptions& opts) const;
  std::optional<Arrow> search_into(const Object& x, const Object& target, const Q& eps,
                                   const core::SearchOptions& opts) const;
  bool small_arrows_are_monic() const { return true; }
};

/// k_0 = 1, k_{n+1} = ceil(k_n * Lip(g_n)): integer scales making every
/// bonding g_n: I_{n+1} -> I_n of an inverse sequence non-expansive.
std::vector<Z> lipschitz_scales(const std::vector<PLMap>& bondings);

}  // namespace fraisse::plcat
