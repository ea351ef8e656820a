#pragma once

#include <cmath>
#include <random>

#include "fraisse/bancat/space.hpp"

namespace fraisse::testing {

inline Q random_entry(std::mt19937_64& rng, int max_num = 3, int max_den = 4) {
  std::uniform_int_distribution<int> n(-max_num, max_num), d(1, max_den);
  return q(n(rng), d(rng));
}

/// dim in [1, max_dim], up to max_funcs functionals.
inline bancat::PolySpace random_space(std::mt19937_64& rng, std::size_t max_dim = 3, std::size_t max_funcs = 6) {
  std::uniform_int_distribution<std::size_t> dd(1, max_dim);
  std::size_t dim = dd(rng);
  std::uniform_int_distribution<std::size_t> kd(dim, std::max(dim, max_funcs));
  for (;;) {
    std::size_t k = kd(rng);
    std::vector<QVector> f;
    for (std::size_t i = 0; i < k; ++i) {
      QVector v(dim);
      for (auto& x : v) x = random_entry(rng);
      bool zero = true;
      for (auto& x : v) zero = zero && x == 0;
      if (!zero) f.push_back(v);
    }
    if (f.size() < dim) continue;
    if (bancat::rank(bancat::QMatrix::from_rows(f, dim)) != dim) continue;
    return bancat::PolySpace(dim, f);
  }
}

inline bancat::QMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  bancat::QMatrix m(rows, cols);
  for (auto& x : m.a) x = random_entry(rng);
  return m;
}

/// Random injective f: x -> y with op_norm(f) <= 1 and mu_op(f) <= max_mu,
/// by rejection.
inline bancat::LinOp random_contraction(std::mt19937_64& rng, const bancat::PolySpace& x, const bancat::PolySpace& y,
                                        const Q& max_mu = q(1, 2), int tries = 200) {
  std::uniform_int_distribution<int> sd(1, 8);
  for (int t = 0; t < tries; ++t) {
    auto m = random_matrix(rng, y.dim(), x.dim());
    bancat::LinOp f(x, y, m);
    Q n = bancat::op_norm(f);
    if (n == 0) continue;
    Q target = 1 - Q(sd(rng) - 1) / 16;
    f = bancat::LinOp(x, y, (target / n) * m);
    auto mu = bancat::mu_op(f);
    if (mu.status == bancat::MuStatus::Exact && mu.value <= max_mu) return f;
  }
  throw std::runtime_error("random_contraction: no candidate");
}

/// Random f: X -> Y with mu_op(f) <= max_mu. X carries the norm pulled back
/// along a random injective A, and f is a scaled perturbation of A.
inline bancat::LinOp random_near_isometry_into(std::mt19937_64& rng, const bancat::PolySpace& y,
                                               const Q& max_mu = q(1, 2)) {
  std::uniform_int_distribution<int> sd(0, 7);
  for (;;) {
    std::uniform_int_distribution<std::size_t> xd(1, y.dim());
    std::size_t n = xd(rng);
    auto a = random_matrix(rng, y.dim(), n);
    if (bancat::rank(a) != n) continue;
    std::vector<QVector> pulled;
    for (const auto& psi : y.functionals()) {
      QVector r(n, Q(0));
      bool zero = true;
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < y.dim(); ++i) r[j] += psi[i] * a(i, j);
        zero = zero && r[j] == 0;
      }
      if (!zero) pulled.push_back(r);
    }
    bancat::PolySpace x(n, pulled);
    auto e = random_matrix(rng, n, n);
    auto p = bancat::QMatrix::identity(n);
    for (std::size_t k = 0; k < p.a.size(); ++k) p.a[k] += e.a[k] / 16;
    auto m = a * p;
    bancat::LinOp f(x, y, m);
    Q nm = bancat::op_norm(f);
    if (nm == 0) continue;
    f = bancat::LinOp(x, y, ((1 - Q(sd(rng), 32)) / nm) * m);
    auto mu = bancat::mu_op(f);
    if (mu.status == bancat::MuStatus::Exact && mu.value <= max_mu) return f;
  }
}

inline bancat::LinOp random_near_isometry(std::mt19937_64& rng, std::size_t max_dim = 3, std::size_t max_funcs = 6,
                                          const Q& max_mu = q(1, 2)) {
  return random_near_isometry_into(rng, random_space(rng, max_dim, max_funcs), max_mu);
}

// Minimum of ||f x|| over sampled unit directions; always an upper bound for
// the exact minimum.
inline Q sampled_min(const bancat::LinOp& f, std::mt19937_64& rng, int samples) {
  std::uniform_int_distribution<int> d(-1000, 1000);
  Q best = 1;
  for (int s = 0; s < samples; ++s) {
    QVector u(f.dom.dim());
    for (auto& v : u) v = Q(d(rng), 1000);
    Q n = f.dom.norm(u);
    if (n == 0) continue;
    for (auto& v : u) v /= n;
    best = std::min(best, f.cod.norm(f(u)));
  }
  return best;
}

/// Same bound over `count` fixed directions, spread evenly in the shape of
/// the unit ball of f.dom: equal angles (d = 2) or a Fibonacci lattice (d = 3)
/// on the Euclidean sphere, mapped through a Cholesky factor of the second
/// moment of the ball's vertices.
inline Q direction_min(const bancat::LinOp& f, int count) {
  const double pi = std::acos(-1.0);
  const std::size_t d = f.dom.dim();
  auto rat = [](double v) { return Q(static_cast<long>(std::llround(v * (1 << 20))), 1 << 20); };
  std::vector<double> m(d * d, 0.0), l(d * d, 0.0);
  auto verts = f.dom.vertices();
  for (const auto& v : verts)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i * d + j] += v[i].convert_to<double>() * v[j].convert_to<double>();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
      l[i * d + j] = i == j ? std::sqrt(std::max(s, 1e-12)) : s / l[j * d + j];
    }
  Q best = 1;
  auto probe = [&](const std::vector<double>& e) {
    QVector u(d);
    for (std::size_t i = 0; i < d; ++i) {
      double x = 0;
      for (std::size_t k = 0; k <= i; ++k) x += l[i * d + k] * e[k];
      u[i] = rat(x);
    }
    Q n = f.dom.norm(u);
    if (n == 0) return;
    for (auto& v : u) v /= n;
    best = std::min(best, f.cod.norm(f(u)));
  };
  for (int k = 0; k < count; ++k) {
    if (d == 1) {
      probe({k % 2 ? -1.0 : 1.0});
    } else if (d == 2) {
      double a = 2 * pi * k / count;
      probe({std::cos(a), std::sin(a)});
    } else {
      double z = 1 - (2 * k + 1.0) / count;
      double r = std::sqrt(1 - z * z), a = pi * (3 - std::sqrt(5.0)) * k;
      probe({r * std::cos(a), r * std::sin(a), z});
    }
  }
  return best;
}
}  // namespace fraisse::testing
