#pragma once

#include <optional>
#include <string>

#include "fraisse/bancat/instance.hpp"
#include "fraisse/core/tower.hpp"

namespace fraisse::bancat {

using BanachTower = core::Tower<BanachInstance>;

struct GWitness {
  std::size_t m = 0;
  QMatrix g;    // Y -> u_m
  Q norm;       // op_norm(g)
  Q mu;         // mu_op(g)
  Q margin;     // rho(g . incl, u_n^m . f)
};

struct GResult {
  std::optional<GWitness> witness;
  std::size_t depth = 0;
  std::string note;
  bool found() const { return witness.has_value(); }
};

/// Condition (G) at finite depth: for X <= Y (incl isometric) and an
/// isometric f: X -> u_n, find g: Y -> u_m with ||g|| <= 1, mu(g) < eps and
/// rho(g . incl, u_n^m . f) < eps. Pushes out (f, incl) and runs (A) on the
/// leg u_n -> W.
GResult check_G(const BanachInstance& c, const BanachTower& t, std::size_t n, const LinOp& incl, const LinOp& f,
                const Q& eps, std::size_t depth, const core::SearchOptions& opts = {});

/// Recomputes norm, mu and margin of the witness exactly.
bool verify_G(const BanachInstance& c, const BanachTower& t, std::size_t n, const LinOp& incl, const LinOp& f,
              const Q& eps, const GWitness& w);

}  // namespace fraisse::bancat
