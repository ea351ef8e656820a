#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "fraisse/core/tower.hpp"

namespace fraisse::engine {

using core::SearchOptions;
using core::Tower;

/// Witness g: y -> u_m for a finite-depth Fraisse condition, with the
/// certified norm bound and commutation margin.
template <class C>
struct Witness {
  std::size_t m = 0;
  typename C::Arrow g;
  ExtRational mu;
  ExtRational margin;
};

/// Either a witness or exhaustion at `depth` (never a refutation).
template <class C>
struct CheckResult {
  std::optional<Witness<C>> witness;
  std::size_t depth = 0;
  std::string note;
  bool found() const { return witness.has_value(); }
};

class CheckError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::size_t last_level(std::size_t tower_size, std::size_t depth) {
  return std::min(tower_size == 0 ? 0 : tower_size - 1, depth);
}

/// (U): an arrow x -> u_n with mu-bound < eps for some n <= depth.
template <class C>
CheckResult<C> check_U(const C& c, const Tower<C>& t, const typename C::Object& x, const Q& eps, std::size_t depth,
                       const SearchOptions& opts = {}) {
  CheckResult<C> out;
  out.depth = last_level(t.size(), depth);
  for (std::size_t n = 0; n <= out.depth; ++n) {
    auto f = c.search_into(x, t.object(n), eps, opts);
    if (!f) continue;
    auto mu = c.mu_bound(*f).bound;
    if (mu < ExtRational(eps)) {
      out.witness = Witness<C>{n, *f, mu, ExtRational(0)};
      return out;
    }
  }
  out.note = "exhausted";
  return out;
}

/// (A): for small f: u_n -> y find g: y -> u_m, m > n (and m >= min_m), with
/// mu(g) < eps and rho(u_n^m, g . f) < eps.
template <class C>
CheckResult<C> check_A(const C& c, const Tower<C>& t, std::size_t n, const typename C::Arrow& f, const Q& eps,
                       std::size_t depth, const SearchOptions& opts = {}, std::size_t min_m = 0) {
  if (n >= t.size()) throw CheckError("check_A: level beyond tower");
  if (!(f.dom == t.object(n))) throw CheckError("check_A: f does not start at u_n");
  CheckResult<C> out;
  out.depth = last_level(t.size(), depth);
  // f is itself a bonding u_n^j: continue along the tower.
  for (std::size_t j = n; j <= out.depth; ++j) {
    if (!(t.object(j) == f.cod) || !(t.bond(c, n, j) == f)) continue;
    std::size_t m = std::max({n + 1, min_m, j});
    if (m > out.depth) break;
    auto g = t.bond(c, j, m);
    auto mu = c.mu_bound(g).bound;
    auto margin = core::rho(c, t.bond(c, n, m), core::compose(c, g, f));
    if (mu < ExtRational(eps) && margin < ExtRational(eps)) {
      out.witness = Witness<C>{m, g, mu, margin};
      return out;
    }
  }
  for (std::size_t m = std::max(n + 1, min_m); m <= out.depth; ++m) {
    auto bond = t.bond(c, n, m);
    auto g = c.search_absorb(f, bond, eps, opts);
    if (!g) continue;
    auto mu = c.mu_bound(*g).bound;
    auto margin = core::rho(c, bond, core::compose(c, *g, f));
    if (mu < ExtRational(eps) && margin < ExtRational(eps)) {
      out.witness = Witness<C>{m, *g, mu, margin};
      return out;
    }
  }
  out.note = "exhausted";
  return out;
}

/// (B): for ambient f: u_n -> y find g: y -> u_m with mu(g) < eps and
/// rho(g . f, u_n^m) < mu(f) + eps. Factors f through the norm witness
/// (i, j) and runs (A) on i at eps/2, giving g = k . j.
template <class C>
CheckResult<C> check_B(const C& c, const Tower<C>& t, std::size_t n, const typename C::Arrow& f, const Q& eps,
                       std::size_t depth, const SearchOptions& opts = {}, std::size_t min_m = 0) {
  if (n >= t.size()) throw CheckError("check_B: level beyond tower");
  if (f.is_small()) return check_A(c, t, n, f, eps, depth, opts, min_m);
  auto wb = c.mu_bound(f);
  if (wb.bound.is_infinite() || !wb.i || !wb.j) throw CheckError("check_B: no finite norm witness");
  CheckResult<C> out;
  auto inner = check_A(c, t, n, *wb.i, eps / 2, depth, opts, min_m);
  out.depth = inner.depth;
  if (!inner.found()) {
    out.note = "exhausted";
    return out;
  }
  auto g = core::compose(c, inner.witness->g, *wb.j);
  auto bond = t.bond(c, n, inner.witness->m);
  auto mu = c.mu_bound(g).bound;
  auto margin = core::rho(c, core::compose(c, g, f), bond);
  if (mu < ExtRational(eps) && margin < wb.bound + ExtRational(eps)) {
    out.witness = Witness<C>{inner.witness->m, g, mu, margin};
  } else {
    out.note = "factor certificate failed";
  }
  return out;
}

}  // namespace fraisse::engine
