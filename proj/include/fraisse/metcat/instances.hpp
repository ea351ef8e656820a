#pragma once

#include <optional>
#include <string>

#include "fraisse/core/category.hpp"
#include "fraisse/metcat/ops.hpp"

namespace fraisse::metcat {

using core::ArrowKind;
using core::SearchOptions;

/// Finite rational metric spaces with non-expansive maps; the small arrows
/// are the isometric embeddings.
class EmbedInstance {
 public:
  using Object = FinMetSpace;
  using Payload = NonExpMap;
  using Arrow = core::Arrow<Object, Payload>;

  std::string tag() const { return "metric-embed"; }

  /// Validates the map and flags it small when isometric.
  Arrow make_arrow(const Object& dom, const Object& cod, NonExpMap map) const;

  Arrow identity(const Object& o) const;
  Payload compose_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational rho_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational mu_value(const Arrow& f) const;
  core::MuBound<Arrow> mu_bound(const Arrow& f) const;
  core::Cospan<Arrow> amalgamate(const Arrow& f, const Arrow& g, const Q& tol) const;
  core::Cospan<Arrow> joint(const Object& a, const Object& b) const;
  Object seed() const { return FinMetSpace(1); }
  Arrow dominating_arrow(const Object& o, std::size_t rank) const;
  Object dominating_object(std::size_t rank) const;
  std::optional<Arrow> search_absorb(const Arrow& f, const Arrow& bond, const Q& eps,
                                     const SearchOptions& opts) const;
  std::optional<Arrow> search_into(const Object& x, const Object& target, const Q& eps,
                                   const SearchOptions& opts) const;
  bool small_arrows_are_monic() const { return true; }
};

/// Opposite category of non-expansive maps between finite rational metric
/// spaces; small arrows are the surjections. An arrow X -> Y stores the
/// underlying map Y -> X. With `discrete` set, every space carries the
/// 1-discrete metric.
class QuotientInstance {
 public:
  using Object = FinMetSpace;
  using Payload = NonExpMap;
  using Arrow = core::Arrow<Object, Payload>;

  explicit QuotientInstance(bool discrete = false) : discrete_(discrete) {}

  bool discrete() const { return discrete_; }
  std::string tag() const { return discrete_ ? "metric-quotient-discrete" : "metric-quotient"; }

  /// `map` is the underlying map cod -> dom; flagged small when onto.
  Arrow make_arrow(const Object& dom, const Object& cod, NonExpMap map) const;

  Arrow identity(const Object& o) const;
  Payload compose_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational rho_payloads(const Arrow& f, const Arrow& g) const;
  ExtRational mu_value(const Arrow& f) const;
  core::MuBound<Arrow> mu_bound(const Arrow& f) const;
  core::Cospan<Arrow> amalgamate(const Arrow& f, const Arrow& g, const Q& tol) const;
  core::Cospan<Arrow> joint(const Object& a, const Object& b) const;
  Object seed() const { return FinMetSpace(1); }
  Arrow dominating_arrow(const Object& o, std::size_t rank) const;
  Object dominating_object(std::size_t rank) const;
  std::optional<Arrow> search_absorb(const Arrow& f, const Arrow& bond, const Q& eps,
                                     const SearchOptions& opts) const;
  std::optional<Arrow> search_into(const Object& x, const Object& target, const Q& eps,
                                   const SearchOptions& opts) const;
  bool small_arrows_are_monic() const { return true; }

 private:
  bool discrete_ = false;
};

/// Inverse of the Cantor pairing, extended to k-tuples.
std::vector<std::uint64_t> cantor_tuple(std::uint64_t code, std::size_t k);
std::uint64_t cantor_pair(std::uint64_t x, std::uint64_t y);

}  // namespace fraisse::metcat
