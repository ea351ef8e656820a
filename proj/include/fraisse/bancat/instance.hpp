#pragma once

#include <optional>
#include <string>

#include "fraisse/bancat/space.hpp"
#include "fraisse/core/category.hpp"

namespace fraisse::bancat {

/// An isometric h: W -> U with h . F = B, where F: Z -> W and B: Z -> U are
/// isometric. Exact: h is isometric iff every facet functional of W equals
/// +-psi . h for some functional psi of U and all psi . h lie in the dual
/// ball of W.
std::optional<QMatrix> isometric_extension(const LinOp& f, const LinOp& b, std::size_t budget = 200000);

/// Rational polyhedral spaces of dimension at most `dim_cap` with linear
/// operators of norm <= 1; small arrows are isometric embeddings.
class BanachInstance {
 public:
  using Object = PolySpace;
  using Payload = QMatrix;
  using Arrow = core::Arrow<Object, Payload>;

  explicit BanachInstance(std::size_t dim_cap = 3) : dim_cap_(dim_cap) {}

  std::string tag() const { return "banach"; }
  std::size_t dim_cap() const { return dim_cap_; }
  bool admits(const Object& o) const { return o.dim() <= dim_cap_; }

  /// Rejects op_norm > 1; the arrow is small iff isometric.
  Arrow make_arrow(const Object& dom, const Object& cod, QMatrix m) const;
  static LinOp as_op(const Arrow& f) { return LinOp(f.dom, f.cod, f.payload); }

  Arrow identity(const Object& o) const;
  Payload compose_payloads(const Arrow& f, const Arrow& g) const { return f.payload * g.payload; }
  ExtRational rho_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational mu_value(const Arrow& f) const;
  /// Small: (f, id). Otherwise the correction amalgam when dom + cod
  /// dimensions are at most 4, else the bare value.
  core::MuBound<Arrow> mu_bound(const Arrow& f) const;
  /// Pushout of small arrows; exact commutation.
  core::Cospan<Arrow> amalgamate(const Arrow& f, const Arrow& g, const Q& tol) const;
  /// l_inf-sum.
  core::Cospan<Arrow> joint(const Object& a, const Object& b) const;
  Object seed() const { return PolySpace(1, {{Q(1)}}); }
  /// Rank 0 is the identity; otherwise a one-dimensional extension o (+) R.
  /// Even codes add a functional (t phi_i, c) to the l_inf-sum functionals
  /// (phi_i, 0); odd codes glue l_inf^2 along a unit-ball vertex of o.
  Arrow dominating_arrow(const Object& o, std::size_t rank) const;
  Object dominating_object(std::size_t rank) const;
  std::optional<Arrow> search_absorb(const Arrow& f, const Arrow& bond, const Q& eps,
                                     const core::SearchOptions& opts) const;
  std::optional<Arrow> search_into(const Object& x, const Object& target, const Q& eps,
                                   const core::SearchOptions& opts) const;
  bool small_arrows_are_monic() const { return true; }

 private:
  std::size_t dim_cap_;
};

}  // namespace fraisse::bancat
