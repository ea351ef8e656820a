#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/bancat/gurarii.hpp"
#include "fraisse/engine/bnf.hpp"
#include "fraisse/engine/checks.hpp"
#include "fraisse/engine/universal.hpp"
#include "fraisse/io/sequence.hpp"
#include "fraisse/metcat/cantor.hpp"
#include "fraisse/plcat/probes.hpp"

namespace fraisse::io {

inline constexpr const char* kCertificateFormat = "fraisse-certificate/1";

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

struct InputRef {
  std::string file;
  std::string digest;
};
Json encode(const InputRef& r);

/// Header shared by every certificate; body fields are appended in order.
Json certificate_header(const std::string& operation, const std::string& instance, const std::vector<InputRef>& inputs,
                        const Json& params);

inline const char* verdict_text(bool holds) { return holds ? "holds" : "exhausted"; }

/// The witness part of the conditions U, A and B: an arrow into u_m.
template <class C>
Json encode_level_witness(std::size_t m, const typename C::Arrow& g) {
  return Json{{"m", m}, {"g", encode_arrow<C>(g)}};
}

/// (U): margins recomputed from the witness.
template <class C>
void finish_U(const C& c, const core::Tower<C>& t, const typename C::Object& x, const Q& eps, std::size_t depth,
              const std::optional<std::pair<std::size_t, typename C::Arrow>>& w, Json& cert) {
  bool holds = false;
  if (w) {
    auto mu = c.mu_bound(w->second).bound;
    holds = w->first < t.size() && w->first <= depth && w->second.dom == x && w->second.cod == t.object(w->first) &&
            mu < ExtRational(eps);
    cert["witness"] = encode_level_witness<C>(w->first, w->second);
    cert["margins"] = Json{{"mu", encode(mu)}};
  } else {
    cert["witness"] = nullptr;
    cert["margins"] = Json::object();
  }
  cert["verdict"] = verdict_text(holds);
}

/// (A) and (B): f: u_n -> y; margin rho(g . f, u_n^m). (B) accepts a margin
/// below mu(f) + eps.
template <class C>
void finish_AB(const C& c, const core::Tower<C>& t, std::size_t n, const typename C::Arrow& f, const Q& eps,
               std::size_t depth, bool ambient, const std::optional<std::pair<std::size_t, typename C::Arrow>>& w,
               Json& cert) {
  bool holds = false;
  Json margins = Json::object();
  if (ambient) margins["mu_f"] = encode(c.mu_bound(f).bound);
  if (w) {
    auto [m, g] = *w;
    if (m < t.size() && m > n && m <= depth && g.dom == f.cod && g.cod == t.object(m)) {
      auto mu = c.mu_bound(g).bound;
      auto margin = core::rho(c, core::compose(c, g, f), t.bond(c, n, m));
      ExtRational limit = ambient ? c.mu_bound(f).bound + ExtRational(eps) : ExtRational(eps);
      holds = mu < ExtRational(eps) && margin < limit;
      margins["mu"] = encode(mu);
      margins["margin"] = encode(margin);
    } else {
      margins["shape"] = "witness does not map into a later level";
    }
    cert["witness"] = encode_level_witness<C>(m, g);
  } else {
    cert["witness"] = nullptr;
  }
  cert["margins"] = margins;
  cert["verdict"] = verdict_text(holds);
}

/// Back-and-forth: per-round margins recomputed from the stored arrows.
template <class C>
void finish_bnf(const C& c, const core::Tower<C>& u, const core::Tower<C>& v, const engine::BnfState<C>& st,
                Json& cert) {
  Json f = Json::array(), g = Json::array();
  for (const auto& a : st.f) f.push_back(encode_arrow<C>(a));
  for (const auto& a : st.g) g.push_back(encode_arrow<C>(a));
  cert["witness"] = Json{{"phi", st.phi}, {"psi", st.psi}, {"f", f}, {"g", g}};
  Json rounds = Json::array();
  for (std::size_t n = 0; n < st.g.size(); ++n) {
    Json r;
    r["back"] = encode(core::rho(c, core::compose(c, st.g[n], st.f[n]), u.bond(c, st.phi[n], st.phi[n + 1])));
    r["mu_g"] = encode(c.mu_bound(st.g[n]).bound);
    if (n + 1 < st.f.size()) {
      r["forth"] = encode(core::rho(c, core::compose(c, st.f[n + 1], st.g[n]), v.bond(c, st.psi[n], st.psi[n + 1])));
      r["mu_f_next"] = encode(c.mu_bound(st.f[n + 1]).bound);
      r["square"] = encode(core::rho(c, core::compose(c, v.bond(c, st.psi[n], st.psi[n + 1]), st.f[n]),
                                     core::compose(c, st.f[n + 1], u.bond(c, st.phi[n], st.phi[n + 1]))));
    }
    rounds.push_back(std::move(r));
  }
  cert["margins"] = Json{{"mu_h", encode(c.mu_bound(st.f.at(0)).bound)}, {"rounds", rounds}};
  bool holds = st.complete && engine::verify_bnf(c, u, v, st).empty();
  cert["verdict"] = verdict_text(holds);
}

/// Universality: stage defects and norm bounds recomputed from the levels.
template <class C>
void finish_embed(const C& c, const core::Tower<C>& x, const core::Tower<C>& u, const core::ApproxArrow<C>& a,
                  bool complete, std::size_t stages, Json& cert) {
  Json levels = Json::array();
  for (const auto& f : a.levels) levels.push_back(encode_arrow<C>(f));
  cert["witness"] = Json{{"phi", a.phi}, {"levels", levels}};
  Json st = Json::array();
  for (std::size_t n = 0; n < a.levels.size(); ++n) {
    ExtRational defect(0);
    if (n + 1 < a.levels.size())
      defect = core::rho(c, core::compose(c, u.bond(c, a.phi[n], a.phi[n + 1]), a.levels[n]),
                         core::compose(c, a.levels[n + 1], x.bond(c, n, n + 1)));
    st.push_back(Json{{"n", n},
                      {"defect", encode(defect)},
                      {"defect_limit", encode(Q(3 * pow2_neg(static_cast<unsigned>(n))))},
                      {"mu", encode(c.mu_bound(a.levels[n]).bound)},
                      {"mu_limit", encode(pow2_neg(static_cast<unsigned>(n)))}});
  }
  cert["margins"] = Json{{"stages", st}};
  engine::UniversalResult<C> r;
  r.arrow = a;
  bool holds = complete && a.levels.size() == std::min(stages, x.size()) && engine::verify_universal(c, x, u, r).empty();
  cert["verdict"] = verdict_text(holds);
}

/// (C) on a quotient tower.
void finish_C(const metcat::QuotientInstance& c, const core::Tower<metcat::QuotientInstance>& t, std::size_t t_size,
              const metcat::NonExpMap& f, const metcat::NonExpMap& p,
              const std::optional<metcat::CantorWitness>& w, Json& cert);

/// (P) on a PL tower; margin in the metric of u_n.
void finish_P(const plcat::PLInstance& c, const plcat::PLTower& t, std::size_t n, const plcat::PLMap& f, const Q& eps,
              const std::optional<std::pair<std::size_t, plcat::PLMap>>& w, Json& cert);

/// (G) on a Banach tower.
void finish_G(const bancat::BanachInstance& c, const bancat::BanachTower& t, std::size_t n, const bancat::LinOp& incl,
              const bancat::LinOp& f, const Q& eps, const std::optional<std::pair<std::size_t, bancat::QMatrix>>& w,
              Json& cert);

}  // namespace fraisse::io
