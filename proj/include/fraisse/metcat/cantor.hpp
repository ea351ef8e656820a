#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fraisse/core/tower.hpp"
#include "fraisse/metcat/instances.hpp"

namespace fraisse::metcat {

/// q: u_m ->> T with f . q = p . u_n^m on points.
struct CantorWitness {
  std::size_t n = 0;
  std::size_t m = 0;
  NonExpMap q;
};

struct CantorResult {
  std::optional<CantorWitness> witness;
  std::size_t depth = 0;
  std::string note;
  bool found() const { return witness.has_value(); }
};

/// Condition (C) at finite depth. `f` is a surjection T ->> S of finite sets
/// (as a table of length |T|), `p` a surjection u_n ->> S. Looks for the
/// first m whose fibers of p . u_n^m cover the fibers of f and fills them in
/// order; S and T carry the discrete metric of the stage.
CantorResult check_C(const QuotientInstance& c, const core::Tower<QuotientInstance>& t, std::size_t n,
                     std::size_t t_size, const NonExpMap& f, const NonExpMap& p, std::size_t depth,
                     const core::SearchOptions& opts = {});

/// Replays f . q == p . u_n^m and surjectivity of q.
bool verify_cantor(const QuotientInstance& c, const core::Tower<QuotientInstance>& t, std::size_t t_size,
                   const NonExpMap& f, const NonExpMap& p, const CantorWitness& w);

}  // namespace fraisse::metcat
