#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>

#include "fraisse/core/arrow.hpp"

namespace fraisse::core {

/// How hard a witness search may look and what it may return.
struct SearchOptions {
  /// Only small-category (dominating family) arrows are acceptable.
  bool small_only = false;
  /// Upper bound on search nodes; exhaustion is reported, never refuted.
  std::size_t budget = 200000;
};

/// Capability record of a normed category instance. The engine is written
/// against this concept; every instance supplies exact rho and a witnessed
/// norm bound, plus amalgamation and a countable dominating enumeration.
template <class C>
concept NormedCategory = requires(const C& c, const typename C::Object& o,
                                  const typename C::Arrow& f, const Q& eps, std::size_t rank,
                                  const SearchOptions& opts) {
  typename C::Object;
  typename C::Payload;
  requires std::same_as<typename C::Arrow, Arrow<typename C::Object, typename C::Payload>>;
  { c.tag() } -> std::convertible_to<std::string>;
  { c.identity(o) } -> std::same_as<typename C::Arrow>;
  // f . g with cod(g) == dom(f) already checked by the caller.
  { c.compose_payloads(f, f) } -> std::same_as<typename C::Payload>;
  // Hom-set equality already checked by the caller.
  { c.rho_payloads(f, f) } -> std::same_as<ExtRational>;
  { c.mu_value(f) } -> std::same_as<ExtRational>;
  { c.mu_bound(f) } -> std::same_as<MuBound<typename C::Arrow>>;
  { c.amalgamate(f, f, eps) } -> std::same_as<Cospan<typename C::Arrow>>;
  { c.joint(o, o) } -> std::same_as<Cospan<typename C::Arrow>>;
  { c.seed() } -> std::same_as<typename C::Object>;
  { c.dominating_arrow(o, rank) } -> std::same_as<typename C::Arrow>;
  { c.dominating_object(rank) } -> std::same_as<typename C::Object>;
  { c.search_absorb(f, f, eps, opts) } -> std::same_as<std::optional<typename C::Arrow>>;
  { c.search_into(o, o, eps, opts) } -> std::same_as<std::optional<typename C::Arrow>>;
  { c.small_arrows_are_monic() } -> std::convertible_to<bool>;
};

template <class C>
typename C::Arrow compose(const C& c, const typename C::Arrow& f, const typename C::Arrow& g) {
  if (!(g.cod == f.dom)) throw CompositionError(c.tag() + ": cod(g) != dom(f)");
  typename C::Arrow out{g.dom, f.cod, c.compose_payloads(f, g),
                        (f.is_small() && g.is_small()) ? ArrowKind::Small : ArrowKind::Ambient};
  return out;
}

template <class C>
ExtRational rho(const C& c, const typename C::Arrow& f, const typename C::Arrow& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw HomSetError(c.tag() + ": arrows in different hom-sets");
  return c.rho_payloads(f, g);
}

struct Commutation {
  ExtRational margin;
  bool holds = false;  // margin < eps
};

/// Square f: c -> a, g: c -> b, fp: a -> w, gp: b -> w; tests rho(fp.f, gp.g) < eps.
template <class C>
Commutation eps_commutes(const C& c, const typename C::Arrow& f, const typename C::Arrow& g,
                         const typename C::Arrow& fp, const typename C::Arrow& gp, const Q& eps) {
  auto left = compose(c, fp, f);
  auto right = compose(c, gp, g);
  Commutation out;
  out.margin = rho(c, left, right);
  out.holds = out.margin < ExtRational(eps);
  return out;
}

}  // namespace fraisse::core
