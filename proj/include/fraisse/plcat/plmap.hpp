#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/rational.hpp"

namespace fraisse::plcat {

class PLError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Continuous piecewise-linear self-map of [0,1] through the points
/// (t_i, y_i), 0 = t_0 < ... < t_N = 1. Stored canonically: no interior
/// breakpoint lies on the line through its neighbours.
class PLMap {
 public:
  PLMap();  // identity
  PLMap(std::vector<Q> t, std::vector<Q> y);

  const std::vector<Q>& t() const { return t_; }
  const std::vector<Q>& y() const { return y_; }
  std::size_t pieces() const { return t_.size() - 1; }

  Q operator()(const Q& x) const;
  Q slope(std::size_t piece) const { return (y_[piece + 1] - y_[piece]) / (t_[piece + 1] - t_[piece]); }

  /// min y = 0 and max y = 1.
  bool is_onto() const;
  bool fixes_endpoints() const { return y_.front() == 0 && y_.back() == 1; }
  /// No constant piece.
  bool has_monotone_pieces() const;
  /// Onto and endpoint-fixing (the countable dominating family).
  bool is_rational_quotient() const { return is_onto() && fixes_endpoints(); }

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  std::vector<Q> t_;
  std::vector<Q> y_;
};

PLMap tent_map();
/// Breakpoints 0 < c_1 < ... < c_k < 1, values alternating 0, 1, 0, ...
PLMap zigzag(const std::vector<Q>& turns);

/// f . g (g applied first), canonical.
PLMap compose_pl(const PLMap& f, const PLMap& g);
/// scale * max |f - g|, attained on the merged breakpoints.
Q rho_pl(const PLMap& f, const PLMap& g, const Q& scale = Q(1));
/// Max |slope| times cod_scale / dom_scale.
Q lipschitz(const PLMap& f, const Q& dom_scale = Q(1), const Q& cod_scale = Q(1));

/// f_1 with f_1(f(0)) = 0, f_1(f(1)) = 1, onto and with monotone pieces.
/// Throws when f(0) == f(1).
PLMap normalize_endpoints(const PLMap& f);
/// a onto with f . a fixing the endpoints (precomposition form).
PLMap endpoint_lift(const PLMap& f);

/// All x with f(x) == v, ascending.
std::vector<Q> preimages(const PLMap& f, const Q& v);

/// f . f' == g . g' exactly, for endpoint-fixing quotient maps with
/// monotone pieces.
std::pair<PLMap, PLMap> mountain_climb(const PLMap& f, const PLMap& g);

/// Onto k with max |f . k - b| < tol and, if given, max |slope k| <= lip.
/// Grid search over preimages on a refinement of b on which every exact
/// lift is linear; approximate steps are accepted through 0 and 1.
std::optional<PLMap> lift_pl(const PLMap& f, const PLMap& b, const Q& tol, const std::optional<Q>& lip = {});

std::string describe(const PLMap& f);

}  // namespace fraisse::plcat
