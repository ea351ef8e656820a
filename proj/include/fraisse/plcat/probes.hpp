#pragma once

#include <optional>
#include <string>

#include "fraisse/core/tower.hpp"
#include "fraisse/plcat/instance.hpp"

namespace fraisse::plcat {

using PLTower = core::Tower<PLInstance>;

/// g: [0,1] ->> [0,1] with scale(u_n) * max |f . g - u_n^m| == margin < eps.
struct PWitness {
  std::size_t m = 0;
  PLMap g;
  Q margin;
};

struct PResult {
  std::optional<PWitness> witness;
  std::size_t depth = 0;
  std::string note;
  bool found() const { return witness.has_value(); }
};

/// Condition (P) at finite depth for a quotient map f: [0,1] ->> [0,1]
/// into the n-th interval. The margin is measured in the metric of u_n.
PResult check_P(const PLInstance& c, const PLTower& t, std::size_t n, const PLMap& f, const Q& eps,
                std::size_t depth);

/// Replays the (P) witness exactly.
bool verify_P(const PLInstance& c, const PLTower& t, std::size_t n, const PLMap& f, const Q& eps,
              const PWitness& w);

enum class Verdict { Contradiction, Inconclusive };
std::string to_string(Verdict v);

/// Finite-stage run of the tent-map argument against a decomposition with
/// A_n = [0, a], B_n = [b, 1]. With g a (P) witness for the tent map, both
/// r0 in g^-1(0) and r1 in g^-1(1) satisfy u_n^m(r) < b, so they lie in A_m;
/// then g[A_m] contains 1/2 although tent(g[A_m]) stays below a + eps/scale < 1.
struct ProbeReport {
  Verdict verdict = Verdict::Inconclusive;
  Z tent_dom_scale;  // 2 * scale(u_n): the tent map is then non-expansive
  std::optional<PWitness> witness;
  Q s;   // tent^-1[0, a + eps'] = [0, s] u [t, 1]
  Q t;
  Q r0;
  Q r1;
  Q b_r0;  // u_n^m(r0)
  Q b_r1;
  std::string note;
};

ProbeReport indecomposability_probe(const PLInstance& c, const PLTower& t, std::size_t n, const Q& a, const Q& b,
                                    const Q& eps, std::size_t depth);

}  // namespace fraisse::plcat
