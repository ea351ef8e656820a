#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fraisse/core/tower.hpp"

namespace fraisse::core {

/// Level maps f_n: x_n -> y_{phi(n)} with strictly increasing phi and a
/// declared nonincreasing tail-defect schedule.
template <class C>
struct ApproxArrow {
  std::vector<typename C::Arrow> levels;
  std::vector<std::size_t> phi;
  std::vector<Q> defects;  // delta_n; may be empty when undeclared

  std::size_t size() const { return levels.size(); }

  void validate() const {
    if (phi.size() != levels.size()) throw std::invalid_argument("ApproxArrow: phi/levels size mismatch");
    for (std::size_t n = 1; n < phi.size(); ++n) {
      if (phi[n] <= phi[n - 1]) throw std::invalid_argument("ApproxArrow: phi must be strictly increasing");
    }
    for (std::size_t n = 1; n < defects.size(); ++n) {
      if (defects[n] > defects[n - 1]) throw std::invalid_argument("ApproxArrow: defect schedule must be nonincreasing");
    }
  }
};

/// rho(f_m . x_n^m, y_{phi n}^{phi m} . f_n) for a single pair.
template <class C>
ExtRational square_defect(const C& c, const ApproxArrow<C>& f, const Tower<C>& x, const Tower<C>& y,
                          std::size_t n, std::size_t m) {
  auto lower = compose(c, f.levels[m], x.bond(c, n, m));
  auto upper = compose(c, y.bond(c, f.phi[n], f.phi[m]), f.levels[n]);
  return rho(c, lower, upper);
}

/// Exact max of the naturality defect over stored pairs n0 <= n < m.
template <class C>
ExtRational approx_defect(const C& c, const ApproxArrow<C>& f, const Tower<C>& x, const Tower<C>& y,
                          std::size_t n0) {
  f.validate();
  if (f.size() < 2 || n0 + 1 >= f.size()) throw std::invalid_argument("approx_defect: empty evaluation range");
  if (f.size() > x.size() || f.phi.back() >= y.size()) throw std::invalid_argument("approx_defect: towers too short");
  ExtRational worst(0);
  for (std::size_t n = n0; n < f.size(); ++n) {
    for (std::size_t m = n + 1; m < f.size(); ++m) worst = max(worst, square_defect(c, f, x, y, n, m));
  }
  return worst;
}

struct ApproxRho {
  ExtRational estimate;  // value at the deepest evaluated level
  ExtRational upper;     // max over evaluated levels
  std::vector<ExtRational> profile;
  bool monic_formula = false;
};

/// Finite-depth estimate of the sequence metric. Both arrows are first pushed
/// to the common level psi(n) = max(phi_F(n), phi_G(n)) so that they become
/// level maps into the same objects.
template <class C>
ApproxRho approx_rho(const C& c, const ApproxArrow<C>& f, const ApproxArrow<C>& g, const Tower<C>& y,
                     std::size_t depth) {
  f.validate();
  g.validate();
  if (f.size() == 0 || g.size() == 0) throw std::invalid_argument("approx_rho: empty arrows");
  std::size_t levels = std::min({f.size(), g.size(), depth + 1});
  ApproxRho out;
  out.monic_formula = c.small_arrows_are_monic();
  for (std::size_t n = 0; n < levels; ++n) {
    if (!(f.levels[n].dom == g.levels[n].dom)) throw std::invalid_argument("approx_rho: towers mismatch");
    std::size_t common = std::max(f.phi[n], g.phi[n]);
    if (common >= y.size()) break;
    auto fn = compose(c, y.bond(c, f.phi[n], common), f.levels[n]);
    auto gn = compose(c, y.bond(c, g.phi[n], common), g.levels[n]);
    if (!out.monic_formula) {
      auto top = y.bond(c, common, y.last());
      fn = compose(c, top, fn);
      gn = compose(c, top, gn);
    }
    out.profile.push_back(rho(c, fn, gn));
  }
  if (out.profile.empty()) throw std::invalid_argument("approx_rho: nothing to evaluate");
  out.estimate = out.profile.back();
  out.upper = *std::max_element(out.profile.begin(), out.profile.end());
  return out;
}

struct SeqMu {
  ExtRational deepest;
  ExtRational tail_max;
  std::vector<ExtRational> profile;
  /// mu(f_n) <= mu(f_m) + defect(n) checked on every stored pair.
  bool stability_holds = true;
};

template <class C>
SeqMu seq_mu(const C& c, const ApproxArrow<C>& f, const Tower<C>& x, const Tower<C>& y, std::size_t depth) {
  f.validate();
  if (f.size() == 0) throw std::invalid_argument("seq_mu: empty arrow");
  std::size_t levels = std::min(f.size(), depth + 1);
  SeqMu out;
  for (std::size_t n = 0; n < levels; ++n) out.profile.push_back(c.mu_value(f.levels[n]));
  out.deepest = out.profile.back();
  out.tail_max = out.deepest;
  for (std::size_t n = levels / 2; n < levels; ++n) out.tail_max = max(out.tail_max, out.profile[n]);
  for (std::size_t n = 0; n + 1 < levels; ++n) {
    ExtRational slack(0);
    for (std::size_t m = n + 1; m < levels; ++m) slack = max(slack, square_defect(c, f, x, y, n, m));
    for (std::size_t m = n + 1; m < levels; ++m) {
      if (out.profile[n] > out.profile[m] + slack) out.stability_holds = false;
    }
  }
  return out;
}

}  // namespace fraisse::core
