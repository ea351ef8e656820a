#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fraisse/rational.hpp"

namespace fraisse::bancat {

class LinAlgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major rational matrix.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Q> a;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Q(0)) {}
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  Q& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  QVector row(std::size_t i) const;
  QVector col(std::size_t j) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;
};

QMatrix operator*(const QMatrix& x, const QMatrix& y);
QMatrix operator-(const QMatrix& x, const QMatrix& y);
QMatrix operator*(const Q& s, const QMatrix& x);
QVector operator*(const QMatrix& m, const QVector& v);
QMatrix transpose(const QMatrix& m);

Q dot(const QVector& x, const QVector& y);
std::size_t rank(const QMatrix& m);
/// Basis of {x : m x = 0}, as columns of the result.
QMatrix nullspace(const QMatrix& m);
/// Some solution of m x = b, or none.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);
std::optional<QMatrix> inverse(const QMatrix& m);

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  QVector x;
  Q value;
};

/// maximize c.x subject to A x <= b with x free. Exact two-phase simplex
/// with Bland's rule.
LPResult lp_maximize(const QVector& c, const std::vector<QVector>& a, const QVector& b);

}  // namespace fraisse::bancat
