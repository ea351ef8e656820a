#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/bancat/linalg.hpp"

namespace fraisse::bancat {

class BanachError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// R^n with ||x|| = max_i |phi_i(x)| for rational covectors phi_i spanning
/// the dual. Vertices and facets are computed once and shared by copies.
class PolySpace {
 public:
  PolySpace();  // the zero space
  PolySpace(std::size_t dim, std::vector<QVector> functionals);

  static PolySpace linf(std::size_t n);
  static PolySpace l1(std::size_t n);

  std::size_t dim() const { return dim_; }
  const std::vector<QVector>& functionals() const { return phi_; }
  Q norm(const QVector& x) const;

  /// Vertices of the unit ball.
  const std::vector<QVector>& vertices() const;
  /// Irredundant functionals (one per +- pair): those attaining 1 on a
  /// full-dimensional face.
  const std::vector<QVector>& facets() const;

  friend bool operator==(const PolySpace& a, const PolySpace& b) { return a.dim_ == b.dim_ && a.phi_ == b.phi_; }

 private:
  struct Cache {
    std::once_flag vertices_once;
    std::once_flag facets_once;
    std::vector<QVector> vertices;
    std::vector<QVector> facets;
  };
  std::size_t dim_ = 0;
  std::vector<QVector> phi_;
  std::shared_ptr<Cache> cache_;
};

/// Vertices of {z : |r.z| <= 1 for all rows r} in R^dim (bounded case).
std::vector<QVector> symmetric_vertices(const std::vector<QVector>& rows, std::size_t dim);

/// Throws above `max_dim`.
const std::vector<QVector>& unit_ball_vertices(const PolySpace& x, std::size_t max_dim = 4);

/// The space whose unit ball is conv(+-g) for the generators g (must span).
PolySpace space_from_generators(std::size_t dim, const std::vector<QVector>& generators);

/// Linear operator dom -> cod as a cod.dim x dom.dim matrix.
struct LinOp {
  PolySpace dom;
  PolySpace cod;
  QMatrix m;

  LinOp() = default;
  LinOp(PolySpace d, PolySpace c, QMatrix mat);
  QVector operator()(const QVector& x) const { return m * x; }
};

LinOp compose(const LinOp& f, const LinOp& g);  // f . g
Q op_norm(const LinOp& f);
/// ||f - g|| for f, g with the same spaces.
Q op_distance(const LinOp& f, const LinOp& g);

struct SphereMin {
  Q value;
  QVector x;  // unit vector attaining it
};
/// min over ||x|| = 1 of ||f x||: one exact LP per facet of the unit ball.
SphereMin min_on_sphere(const LinOp& f);

enum class MuStatus { Exact, NotInjective, NormAboveOne };
std::string to_string(MuStatus s);

struct MuOp {
  MuStatus status = MuStatus::Exact;
  Q value;    // 1 - min_on_sphere; 1 when not injective; unset above norm 1
  Q norm;     // op_norm(f)
  QVector x;  // unit vector with ||f x|| = 1 - value
};
MuOp mu_op(const LinOp& f);
bool is_isometric(const LinOp& f);

/// The amalgam Z = X (+) Y with ||(x,y)|| = inf ||u|| + ||v|| + eps ||w|| over
/// (x,y) = (u,v) + (w, -f w), evaluated by an exact LP in (w, a, b, c).
Q correction_norm(const LinOp& f, const Q& eps, const QVector& x, const QVector& y);

struct AmalgamCertificate {
  Q eps;
  bool i_isometric = false;  // ||(v, 0)|| = ||v|| on every vertex of X
  bool j_isometric = false;  // ||(0, v)|| = ||v|| on every vertex of Y
  Q defect;                  // max over vertices v of X of ||(v, -f v)||
  QVector witness;           // unit x with ||f x|| = 1 - mu(f)
  Q lower;                   // ||(x, -f x)||
  bool holds() const { return i_isometric && j_isometric && defect <= eps; }
};
AmalgamCertificate correction_amalgam(const LinOp& f, const Q& eps);

/// The same amalgam as a polyhedral space with generators (v,0), (0,v'),
/// (v, -f v)/eps; returns the canonical injections.
struct Amalgam {
  PolySpace z;
  LinOp i;
  LinOp j;
};
Amalgam correction_space(const LinOp& f, const Q& eps);

/// W = (X (+)_1 Y) / {(i z, -j z)} with coordinates X (+) C, C a complement
/// of j[Z] in Y, so that i' is the inclusion of X.
struct Pushout {
  PolySpace w;
  LinOp i2;  // X -> W
  LinOp j2;  // Y -> W
};
Pushout pushout_isometric(const LinOp& i, const LinOp& j);
/// Coset norm min_z ||x - i z|| + ||y + j z|| by exact LP.
Q pushout_norm(const LinOp& i, const LinOp& j, const QVector& x, const QVector& y);

/// Rounds functionals with index >= anchors to the grid 1/den.
struct Rationalized {
  PolySpace space;
  std::size_t den = 1;
  Q distortion;  // max(||id: Y -> Y'||, ||id: Y' -> Y||)
  Q bound;       // 1 + max over rounded phi and vertices v of Y of |(phi - phi')(v)|
};
std::optional<Rationalized> rationalize_space(const PolySpace& y, std::size_t anchors, std::size_t den);
/// Doubles the denominator from 1 until the distortion is at most 1 + eps.
Rationalized rationalize_within(const PolySpace& y, std::size_t anchors, const Q& eps);

/// T'' = n/(n+1) T' for ||T'|| <= 1 + 1/n.
struct Correction {
  LinOp t2;
  Q norm;      // ||T''||
  Q distance;  // ||T'' - T||
};
Correction operator_correction(const LinOp& t, const LinOp& t1, std::size_t n);

std::string describe(const PolySpace& x);

}  // namespace fraisse::bancat
