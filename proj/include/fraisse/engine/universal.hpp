#pragma once

#include <string>
#include <vector>

#include "fraisse/core/approx.hpp"
#include "fraisse/engine/checks.hpp"

namespace fraisse::engine {

template <class C>
struct StageCertificate {
  ExtRational defect;  // rho(u_{k_n}^{k_{n+1}} . f_n, f_{n+1} . x_n^{n+1}) < 3 * 2^-n
  ExtRational mu;      // mu-bound(f_n) < 2^-n
};

template <class C>
struct UniversalResult {
  core::ApproxArrow<C> arrow;
  std::vector<StageCertificate<C>> stages;  // one per level; defect of the last is 0
  bool complete = false;
  std::string note;
};

/// Weak universality: level maps f_n: x_n -> u_{k_n} obeying condition (*),
/// built by factoring f_n through its norm witness, amalgamating with the
/// next bonding of x, and absorbing into u with (A).
template <class C>
UniversalResult<C> embed_universal(const C& c, const Tower<C>& x, const Tower<C>& u, std::size_t stages,
                                   const SearchOptions& opts = {}) {
  UniversalResult<C> out;
  stages = std::min(stages, x.size());
  if (stages == 0) {
    out.complete = true;
    return out;
  }
  auto start = check_U(c, u, x.object(0), Q(1), u.size(), opts);
  if (!start.found()) {
    out.note = "no (U) witness for x_0";
    return out;
  }
  out.arrow.levels.push_back(start.witness->g);
  out.arrow.phi.push_back(start.witness->m);
  out.stages.push_back({ExtRational(0), start.witness->mu});
  for (std::size_t n = 0; n + 1 < stages; ++n) {
    Q eps = pow2_neg(static_cast<unsigned>(n));
    Q next = pow2_neg(static_cast<unsigned>(n + 1));
    const auto& fn = out.arrow.levels[n];
    std::size_t kn = out.arrow.phi[n];
    auto w = c.mu_bound(fn);
    if (!w.i || !w.j || !(w.bound < ExtRational(eps))) {
      out.note = "stage " + std::to_string(n) + ": norm witness too weak";
      return out;
    }
    // w.i: x_n -> v, w.j: u_{k_n} -> v
    auto xb = x.bond(c, n, n + 1);
    auto span = c.amalgamate(*w.i, xb, eps);  // k: v -> w', l: x_{n+1} -> w'
    auto kj = core::compose(c, span.left, *w.j);
    auto a = check_A(c, u, kn, kj, next, u.size(), opts);
    if (!a.found()) {
      out.note = "stage " + std::to_string(n) + ": absorption exhausted";
      return out;
    }
    auto f_next = core::compose(c, a.witness->g, span.right);
    std::size_t k_next = a.witness->m;
    auto defect = core::rho(c, core::compose(c, u.bond(c, kn, k_next), fn), core::compose(c, f_next, xb));
    auto mu = c.mu_bound(f_next).bound;
    out.stages[n].defect = defect;
    out.arrow.levels.push_back(f_next);
    out.arrow.phi.push_back(k_next);
    out.stages.push_back({ExtRational(0), mu});
    if (!(defect < ExtRational(3 * eps)) || !(mu < ExtRational(next))) {
      out.note = "stage " + std::to_string(n) + ": condition (*) failed";
      return out;
    }
  }
  for (const auto& s : out.stages) out.arrow.defects.push_back(s.defect.is_finite() ? s.defect.value() : Q(0));
  // Declared schedule: running max of the tail, so nonincreasing.
  for (std::size_t n = out.arrow.defects.size(); n-- > 1;)
    out.arrow.defects[n - 1] = std::max(out.arrow.defects[n - 1], out.arrow.defects[n]);
  out.complete = true;
  return out;
}

/// Literal replay of condition (*) on every computed stage.
template <class C>
std::vector<std::string> verify_universal(const C& c, const Tower<C>& x, const Tower<C>& u,
                                          const UniversalResult<C>& r) {
  std::vector<std::string> bad;
  const auto& a = r.arrow;
  for (std::size_t n = 0; n < a.levels.size(); ++n) {
    Q eps = pow2_neg(static_cast<unsigned>(n));
    if (!(c.mu_bound(a.levels[n]).bound < ExtRational(eps))) bad.push_back("mu at stage " + std::to_string(n));
    if (n + 1 < a.levels.size()) {
      auto defect = core::rho(c, core::compose(c, u.bond(c, a.phi[n], a.phi[n + 1]), a.levels[n]),
                              core::compose(c, a.levels[n + 1], x.bond(c, n, n + 1)));
      if (!(defect < ExtRational(3 * eps))) bad.push_back("defect at stage " + std::to_string(n));
    }
  }
  return bad;
}

}  // namespace fraisse::engine
