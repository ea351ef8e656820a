#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraisse/engine/checks.hpp"

namespace fraisse::engine {

/// Tolerances eps_0 and a geometric tail eps_n = tail * 2^-n (n >= 1), so
/// that 2 * sum_{n>=1} eps_n = 2 * tail.
struct EpsSchedule {
  Q eps;
  Q eps0;
  Q tail;

  Q at(std::size_t n) const { return n == 0 ? eps0 : Q(tail * pow2_neg(static_cast<unsigned>(n))); }
  Q tail_sum_twice() const { return 2 * tail; }

  /// mu(h) < eps0 < eps and 2 * sum eps_n < eps - eps0.
  bool valid_for(const ExtRational& mu_h) const {
    return tail > 0 && mu_h < ExtRational(eps0) && eps0 < eps && tail_sum_twice() < eps - eps0;
  }

  /// eps0 = (mu(h) + eps)/2, eps_n = (eps - eps0) * 2^-n-2.
  static EpsSchedule standard(const Q& mu_h, const Q& eps) {
    EpsSchedule s;
    s.eps = eps;
    s.eps0 = (mu_h + eps) / 2;
    s.tail = (eps - s.eps0) / 4;
    return s;
  }
};

/// Certified margins of one back-and-forth round n: g_n and f_{n+1}.
struct RoundMargins {
  ExtRational back;        // rho(g_n . f_n, u_phi(n)^phi(n+1)) < eps_n
  ExtRational forth;       // rho(f_{n+1} . g_n, v_psi(n)^psi(n+1)) < eps_{n+1}
  ExtRational mu_g;        // < eps_{n+1}
  ExtRational mu_f_next;   // < eps_{n+1}
  ExtRational square;      // rho(v . f_n, f_{n+1} . u) < eps_n + eps_{n+1}
};

template <class C>
struct BnfState {
  EpsSchedule schedule;
  std::vector<std::size_t> phi;
  std::vector<std::size_t> psi;
  std::vector<typename C::Arrow> f;  // f_n: u_phi(n) -> v_psi(n)
  std::vector<typename C::Arrow> g;  // g_n: v_psi(n) -> u_phi(n+1)
  ExtRational mu_h;
  std::vector<RoundMargins> rounds;
  bool complete = false;
  std::string note;
};

/// Approximate back-and-forth between two towers starting from h: u_0 -> v_0.
template <class C>
BnfState<C> back_and_forth(const C& c, const Tower<C>& u, const Tower<C>& v, const typename C::Arrow& h,
                           const EpsSchedule& schedule, std::size_t rounds, const SearchOptions& opts = {}) {
  if (!(h.dom == u.object(0)) || !(h.cod == v.object(0))) throw CheckError("back_and_forth: h must map u_0 to v_0");
  BnfState<C> st;
  st.schedule = schedule;
  st.mu_h = c.mu_bound(h).bound;
  if (!schedule.valid_for(st.mu_h)) throw CheckError("back_and_forth: schedule invalid for mu(h)");
  st.phi.push_back(0);
  st.psi.push_back(0);
  st.f.push_back(h);
  ExtRational mu_f = st.mu_h;
  for (std::size_t n = 0; n < rounds; ++n) {
    Q en = schedule.at(n);
    Q en1 = schedule.at(n + 1);
    // Backward step in u: g_n with rho(g_n . f_n, u bond) < mu(f_n) + e <= eps_n.
    Q e = std::min(Q(en - mu_f.value()), en1);
    auto back = check_B(c, u, st.phi[n], st.f[n], e, u.size(), opts, st.psi[n] + 1);
    if (!back.found()) {
      st.note = "round " + std::to_string(n) + ": backward search exhausted";
      return st;
    }
    // check_B searches u for the target level of g_n; it maps v_psi(n) into u.
    RoundMargins rm;
    rm.back = back.witness->margin;
    rm.mu_g = back.witness->mu;
    st.g.push_back(back.witness->g);
    st.phi.push_back(back.witness->m);
    // Forward step in v: f_{n+1} with rho(f_{n+1} . g_n, v bond) < mu(g_n) + e' <= eps_{n+1}.
    Q e2 = en1 - rm.mu_g.value();
    auto forth = check_B(c, v, st.psi[n], st.g[n], e2, v.size(), opts, st.phi[n + 1]);
    if (!forth.found()) {
      st.note = "round " + std::to_string(n) + ": forward search exhausted";
      st.rounds.push_back(rm);
      return st;
    }
    rm.forth = forth.witness->margin;
    rm.mu_f_next = forth.witness->mu;
    st.f.push_back(forth.witness->g);
    st.psi.push_back(forth.witness->m);
    mu_f = rm.mu_f_next;
    auto lhs = core::compose(c, v.bond(c, st.psi[n], st.psi[n + 1]), st.f[n]);
    auto rhs = core::compose(c, st.f[n + 1], u.bond(c, st.phi[n], st.phi[n + 1]));
    rm.square = core::rho(c, lhs, rhs);
    st.rounds.push_back(rm);
  }
  st.complete = true;
  return st;
}

/// Literal replay of invariants (1)-(4), the telescoped square bound and the
/// partial sum bound. Returns the list of violated statements.
template <class C>
std::vector<std::string> verify_bnf(const C& c, const Tower<C>& u, const Tower<C>& v, const BnfState<C>& st) {
  std::vector<std::string> bad;
  const auto& s = st.schedule;
  auto lt = [](const ExtRational& a, const Q& b) { return a < ExtRational(b); };
  if (!s.valid_for(c.mu_bound(st.f.at(0)).bound)) bad.push_back("schedule");
  Q partial = 0;
  for (std::size_t n = 0; n < st.g.size(); ++n) {
    std::string tag = " at n=" + std::to_string(n);
    if (n + 1 >= st.f.size()) break;
    // (1)
    if (!(st.phi[n] <= st.psi[n] && st.psi[n] < st.phi[n + 1])) bad.push_back("(1) phi/psi order" + tag);
    if (!(st.phi[n + 1] <= st.psi[n + 1])) bad.push_back("(1) phi/psi order" + tag);
    // (2)
    auto m2 = core::rho(c, core::compose(c, st.g[n], st.f[n]), u.bond(c, st.phi[n], st.phi[n + 1]));
    if (!lt(m2, s.at(n))) bad.push_back("(2) back margin" + tag);
    // (3) at n+1
    auto m3 = core::rho(c, core::compose(c, st.f[n + 1], st.g[n]), v.bond(c, st.psi[n], st.psi[n + 1]));
    if (!lt(m3, s.at(n + 1))) bad.push_back("(3) forth margin" + tag);
    // (4)
    if (!lt(c.mu_bound(st.f[n]).bound, s.at(n))) bad.push_back("(4) mu(f_n)" + tag);
    if (!lt(c.mu_bound(st.g[n]).bound, s.at(n + 1))) bad.push_back("(4) mu(g_n)" + tag);
    auto sq = core::rho(c, core::compose(c, v.bond(c, st.psi[n], st.psi[n + 1]), st.f[n]),
                        core::compose(c, st.f[n + 1], u.bond(c, st.phi[n], st.phi[n + 1])));
    if (!lt(sq, s.at(n) + s.at(n + 1))) bad.push_back("square bound" + tag);
    partial += s.at(n) + s.at(n + 1);
    if (!(partial < s.eps)) bad.push_back("partial sum" + tag);
  }
  return bad;
}

/// Almost homogeneity: given i_k: a -> u_k, j_k: b -> u_k with small norm and
/// f: a -> b with mu(f) < eps, produce g: u_k -> u_l and a back-and-forth
/// prefix H from u (from level k) to u (from level l) with certified
/// rho(j_k . f, H_0 . i_k) bounds, following the six-term estimate.
template <class C>
struct HomogeneityResult {
  Q delta;
  std::size_t k = 0;
  std::size_t l = 0;
  std::optional<typename C::Arrow> g;  // u_k -> u_l, = g_2 . f_2
  std::optional<BnfState<C>> bnf;
  Tower<C> from_k;
  Tower<C> from_l;
  ExtRational margin;  // rho(u_k^l . j_k . f, H_0 . i_k) pushed to a common level
  bool complete = false;
  std::string note;
};

template <class C>
HomogeneityResult<C> almost_homogeneity(const C& c, const Tower<C>& u, std::size_t k, const typename C::Arrow& i_k,
                                        const typename C::Arrow& j_k, const typename C::Arrow& f, const Q& eps,
                                        std::size_t rounds, const SearchOptions& opts = {}) {
  HomogeneityResult<C> out;
  out.k = k;
  auto mu_f = c.mu_bound(f).bound;
  if (!(mu_f < ExtRational(eps))) throw CheckError("almost_homogeneity: mu(f) must be below eps");
  if (!(i_k.cod == u.object(k)) || !(j_k.cod == u.object(k)) || !(f.dom == i_k.dom) || !(f.cod == j_k.dom))
    throw CheckError("almost_homogeneity: arrows do not match the tower level");
  // mu(f) < eps - 6 delta
  out.delta = (eps - mu_f.value()) / 7;
  const Q& d = out.delta;
  if (!(c.mu_bound(i_k).bound < ExtRational(d)) || !(c.mu_bound(j_k).bound < ExtRational(d)))
    throw CheckError("almost_homogeneity: level maps are not delta-close to 0-arrows");
  auto f1 = core::compose(c, j_k, f);
  // Norm witnesses of f1 and i_k, then an (eps + delta)-amalgamation.
  auto w1 = c.mu_bound(f1);
  auto w2 = c.mu_bound(i_k);
  if (!w1.i || !w2.i) throw CheckError("almost_homogeneity: missing norm witness");
  auto span = c.amalgamate(*w1.i, *w2.i, d);
  auto f2 = core::compose(c, span.right, *w2.j);  // u_k -> w
  auto g1 = core::compose(c, span.left, *w1.j);   // u_k -> w
  auto a = check_A(c, u, k, g1, d, u.size(), opts);
  if (!a.found()) {
    out.note = "absorption search exhausted";
    return out;
  }
  out.l = a.witness->m;
  out.g = core::compose(c, a.witness->g, f2);
  // H from u|k.. to u|l.. starting at g.
  std::vector<std::size_t> from_k, from_l;
  for (std::size_t n = k; n < u.size(); ++n) from_k.push_back(n);
  for (std::size_t n = out.l; n < u.size(); ++n) from_l.push_back(n);
  out.from_k = core::restrict_cofinal(c, u, from_k);
  out.from_l = core::restrict_cofinal(c, u, from_l);
  auto mu_g = c.mu_bound(*out.g).bound;
  if (!(mu_g < ExtRational(d))) {
    out.note = "g is not delta-close to a 0-arrow";
    return out;
  }
  auto sched = EpsSchedule::standard(mu_g.value(), d);
  out.bnf = back_and_forth(c, out.from_k, out.from_l, *out.g, sched, rounds, opts);
  // rho(u_k^l . j_k . f, g . i_k) at level l, i.e. H_0 . i_k with H_0 = g.
  auto lhs = core::compose(c, u.bond(c, k, out.l), f1);
  auto rhs = core::compose(c, *out.g, i_k);
  out.margin = core::rho(c, lhs, rhs);
  out.complete = out.bnf->complete && out.margin < ExtRational(eps);
  if (!out.complete && out.note.empty()) out.note = out.bnf->note;
  return out;
}

}  // namespace fraisse::engine
