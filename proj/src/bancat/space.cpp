#include "fraisse/bancat/space.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace fraisse::bancat {

namespace {

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
}

// Sign-normalized: first nonzero entry positive.
QVector sign_normal(QVector v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

QVector negate(QVector v) {
  for (auto& x : v) x = -x;
  return v;
}

QVector concat(const QVector& a, const QVector& b) {
  QVector v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

QVector row_times(const QVector& psi, const QMatrix& m) {
  QVector out(m.cols, Q(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += psi[i] * m(i, j);
  return out;
}

// Appends |r.(x) + off| <= s as two rows over variables (x..., extra...), with
// s the variable at index `svar`.
void abs_rows(std::vector<QVector>& a, QVector& b, const QVector& r, const Q& off, std::size_t nvars,
              std::size_t svar) {
  QVector up(nvars, Q(0)), dn(nvars, Q(0));
  for (std::size_t j = 0; j < r.size(); ++j) {
    up[j] = r[j];
    dn[j] = -r[j];
  }
  up[svar] = -1;
  dn[svar] = -1;
  a.push_back(std::move(up));
  b.push_back(-off);
  a.push_back(std::move(dn));
  b.push_back(off);
}

}  // namespace

PolySpace::PolySpace() : cache_(std::make_shared<Cache>()) {}

PolySpace::PolySpace(std::size_t dim, std::vector<QVector> functionals)
    : dim_(dim), phi_(std::move(functionals)), cache_(std::make_shared<Cache>()) {
  for (const auto& f : phi_) {
    if (f.size() != dim_) throw BanachError("PolySpace: functional of wrong length");
    if (is_zero(f)) throw BanachError("PolySpace: zero functional");
  }
  if (dim_ > 0 && rank(QMatrix::from_rows(phi_, dim_)) != dim_)
    throw BanachError("PolySpace: functionals do not span the dual");
}

PolySpace PolySpace::linf(std::size_t n) {
  std::vector<QVector> f;
  for (std::size_t i = 0; i < n; ++i) {
    QVector e(n, Q(0));
    e[i] = 1;
    f.push_back(e);
  }
  return PolySpace(n, f);
}

PolySpace PolySpace::l1(std::size_t n) {
  std::vector<QVector> f;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (n > 0 && (mask & 1)) continue;  // one of each +- pair
    QVector e(n, Q(1));
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) e[i] = -1;
    f.push_back(e);
  }
  return PolySpace(n, n == 0 ? std::vector<QVector>{} : f);
}

Q PolySpace::norm(const QVector& x) const {
  if (x.size() != dim_) throw BanachError("norm: dimension mismatch");
  Q best = 0;
  for (const auto& f : phi_) best = std::max(best, abs(dot(f, x)));
  return best;
}

const std::vector<QVector>& PolySpace::vertices() const {
  std::call_once(cache_->vertices_once, [this] { cache_->vertices = symmetric_vertices(phi_, dim_); });
  return cache_->vertices;
}

const std::vector<QVector>& PolySpace::facets() const {
  std::call_once(cache_->facets_once, [this] {
    std::set<QVector> seen;
    for (const auto& f : phi_) {
      auto key = sign_normal(f);
      if (!seen.insert(key).second) continue;
      std::vector<QVector> touching;
      for (const auto& v : vertices())
        if (dot(f, v) == 1) touching.push_back(v);
      if (!touching.empty() && rank(QMatrix::from_rows(touching, dim_)) == dim_) cache_->facets.push_back(f);
    }
  });
  return cache_->facets;
}

std::vector<QVector> symmetric_vertices(const std::vector<QVector>& rows, std::size_t dim) {
  if (dim == 0) return {QVector{}};
  std::set<QVector> uniq;
  for (const auto& r : rows)
    if (!is_zero(r)) uniq.insert(sign_normal(r));
  std::vector<QVector> rs(uniq.begin(), uniq.end());
  std::set<QVector> out;
  std::vector<std::size_t> idx(dim);
  // Enumerate dim-subsets of rs in lexicographic order.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == dim) {
      QMatrix m(dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = rs[idx[i]][j];
      auto inv = inverse(m);
      if (!inv) return;
      for (std::size_t mask = 0; mask < (std::size_t{1} << (dim - 1)); ++mask) {
        QVector s(dim, Q(1));
        for (std::size_t i = 1; i < dim; ++i)
          if (mask & (std::size_t{1} << (i - 1))) s[i] = -1;
        QVector z = *inv * s;
        bool ok = true;
        for (const auto& r : rs)
          if (abs(dot(r, z)) > 1) {
            ok = false;
            break;
          }
        if (ok) {
          out.insert(negate(z));
          out.insert(std::move(z));
        }
      }
      return;
    }
    for (std::size_t k = start; k + (dim - pos) <= rs.size(); ++k) {
      idx[pos] = k;
      rec(pos + 1, k + 1);
    }
  };
  rec(0, 0);
  return std::vector<QVector>(out.begin(), out.end());
}

const std::vector<QVector>& unit_ball_vertices(const PolySpace& x, std::size_t max_dim) {
  if (x.dim() > max_dim) throw BanachError("unit_ball_vertices: dimension above bound");
  return x.vertices();
}

PolySpace space_from_generators(std::size_t dim, const std::vector<QVector>& generators) {
  if (dim == 0) return PolySpace();
  std::vector<QVector> g;
  for (const auto& v : generators)
    if (!is_zero(v)) g.push_back(v);
  if (g.empty() || rank(QMatrix::from_rows(g, dim)) != dim) throw BanachError("space_from_generators: generators do not span");
  std::vector<QVector> f;
  for (auto& v : symmetric_vertices(g, dim))
    if (sign_normal(v) == v) f.push_back(std::move(v));
  return PolySpace(dim, std::move(f));
}

LinOp::LinOp(PolySpace d, PolySpace c, QMatrix mat) : dom(std::move(d)), cod(std::move(c)), m(std::move(mat)) {
  if (m.rows != cod.dim() || m.cols != dom.dim()) throw BanachError("LinOp: matrix shape does not match the spaces");
}

LinOp compose(const LinOp& f, const LinOp& g) {
  if (!(g.cod == f.dom)) throw BanachError("compose: cod(g) != dom(f)");
  return LinOp(g.dom, f.cod, f.m * g.m);
}

Q op_norm(const LinOp& f) {
  Q best = 0;
  for (const auto& v : f.dom.vertices()) best = std::max(best, f.cod.norm(f.m * v));
  return best;
}

Q op_distance(const LinOp& f, const LinOp& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod)) throw BanachError("op_distance: different hom-sets");
  return op_norm(LinOp(f.dom, f.cod, f.m - g.m));
}

SphereMin min_on_sphere(const LinOp& f) {
  std::size_t n = f.dom.dim();
  if (n == 0) return {Q(1), {}};
  SphereMin best;
  bool have = false;
  std::size_t nv = n + 1;
  for (const auto& phi : f.dom.facets()) {
    std::vector<QVector> a;
    QVector b;
    for (const auto& psi : f.cod.functionals()) abs_rows(a, b, row_times(psi, f.m), Q(0), nv, n);
    QVector t0(nv, Q(0));
    t0[n] = -1;
    a.push_back(t0);
    b.push_back(Q(0));
    QVector eq = concat(phi, {Q(0)});
    a.push_back(eq);
    b.push_back(Q(1));
    a.push_back(negate(eq));
    b.push_back(Q(-1));
    for (const auto& g : f.dom.functionals()) {
      QVector r = concat(g, {Q(0)});
      a.push_back(r);
      b.push_back(Q(1));
      a.push_back(negate(r));
      b.push_back(Q(1));
    }
    QVector c(nv, Q(0));
    c[n] = -1;
    auto res = lp_maximize(c, a, b);
    if (res.status != LPStatus::Optimal) throw std::logic_error("min_on_sphere: facet LP failed");
    Q t = -res.value;
    if (!have || t < best.value) {
      best.value = t;
      best.x.assign(res.x.begin(), res.x.begin() + static_cast<long>(n));
      have = true;
    }
  }
  return best;
}

std::string to_string(MuStatus s) {
  switch (s) {
    case MuStatus::Exact: return "exact";
    case MuStatus::NotInjective: return "not-injective";
    case MuStatus::NormAboveOne: return "norm-above-one";
  }
  return "?";
}

MuOp mu_op(const LinOp& f) {
  MuOp out;
  out.norm = op_norm(f);
  if (out.norm > 1) {
    out.status = MuStatus::NormAboveOne;
    return out;
  }
  auto sm = min_on_sphere(f);
  out.x = sm.x;
  if (sm.value == 0) {
    out.status = MuStatus::NotInjective;
    out.value = 1;
  } else {
    out.value = 1 - sm.value;
  }
  return out;
}

bool is_isometric(const LinOp& f) {
  auto m = mu_op(f);
  return m.status == MuStatus::Exact && m.value == 0;
}

Q correction_norm(const LinOp& f, const Q& eps, const QVector& x, const QVector& y) {
  std::size_t n = f.dom.dim();
  std::size_t nv = n + 3;
  std::size_t av = n, bv = n + 1, cv = n + 2;
  std::vector<QVector> a;
  QVector b;
  for (const auto& phi : f.dom.functionals()) {
    // |phi(x) - phi(w)| <= a
    abs_rows(a, b, negate(phi), dot(phi, x), nv, av);
    // |phi(w)| <= c
    abs_rows(a, b, phi, Q(0), nv, cv);
  }
  for (const auto& psi : f.cod.functionals()) abs_rows(a, b, row_times(psi, f.m), dot(psi, y), nv, bv);
  for (std::size_t v : {av, bv, cv}) {
    QVector r(nv, Q(0));
    r[v] = -1;
    a.push_back(r);
    b.push_back(Q(0));
  }
  QVector c(nv, Q(0));
  c[av] = -1;
  c[bv] = -1;
  c[cv] = -eps;
  auto res = lp_maximize(c, a, b);
  if (res.status != LPStatus::Optimal) throw std::logic_error("correction_norm: LP failed");
  return -res.value;
}

AmalgamCertificate correction_amalgam(const LinOp& f, const Q& eps) {
  auto mu = mu_op(f);
  if (mu.status == MuStatus::NormAboveOne) throw BanachError("correction_amalgam: ||f|| > 1");
  if (mu.value > eps) throw BanachError("correction_amalgam: mu(f) exceeds eps");
  AmalgamCertificate cert;
  cert.eps = eps;
  QVector zx(f.dom.dim(), Q(0)), zy(f.cod.dim(), Q(0));
  cert.i_isometric = true;
  for (const auto& v : f.dom.vertices())
    if (correction_norm(f, eps, v, zy) != f.dom.norm(v)) cert.i_isometric = false;
  cert.j_isometric = true;
  for (const auto& v : f.cod.vertices())
    if (correction_norm(f, eps, zx, v) != f.cod.norm(v)) cert.j_isometric = false;
  cert.defect = 0;
  for (const auto& v : f.dom.vertices()) cert.defect = std::max(cert.defect, correction_norm(f, eps, v, negate(f(v))));
  cert.witness = mu.x;
  if (!mu.x.empty()) cert.lower = correction_norm(f, eps, mu.x, negate(f(mu.x)));
  return cert;
}

Amalgam correction_space(const LinOp& f, const Q& eps) {
  if (!(eps > 0)) throw BanachError("correction_space: eps must be positive");
  std::size_t n = f.dom.dim(), m = f.cod.dim();
  std::vector<QVector> gens;
  QVector zx(n, Q(0)), zy(m, Q(0));
  for (const auto& v : f.dom.vertices()) {
    gens.push_back(concat(v, zy));
    QVector w = concat(v, negate(f(v)));
    for (auto& x : w) x /= eps;
    gens.push_back(std::move(w));
  }
  for (const auto& v : f.cod.vertices()) gens.push_back(concat(zx, v));
  PolySpace z = space_from_generators(n + m, gens);
  QMatrix im(n + m, n), jm(n + m, m);
  for (std::size_t k = 0; k < n; ++k) im(k, k) = 1;
  for (std::size_t k = 0; k < m; ++k) jm(n + k, k) = 1;
  return {z, LinOp(f.dom, z, im), LinOp(f.cod, z, jm)};
}

Pushout pushout_isometric(const LinOp& i, const LinOp& j) {
  if (!(i.dom == j.dom)) throw BanachError("pushout: i and j need a common domain");
  if (!is_isometric(i) || !is_isometric(j)) throw BanachError("pushout: inputs must be isometric embeddings");
  std::size_t n = i.cod.dim(), m = j.cod.dim(), k = j.dom.dim();
  // Complement of j[Z] in Y from standard basis vectors.
  std::vector<QVector> cols;
  for (std::size_t c = 0; c < k; ++c) cols.push_back(j.m.col(c));
  for (std::size_t e = 0; e < m && cols.size() < m; ++e) {
    QVector v(m, Q(0));
    v[e] = 1;
    cols.push_back(v);
    if (rank(QMatrix::from_rows(cols, m)) < cols.size()) cols.pop_back();
  }
  QMatrix basis = transpose(QMatrix::from_rows(cols, m));
  auto binv = inverse(basis);
  if (!binv) throw std::logic_error("pushout: complement construction failed");
  std::size_t wd = n + m - k;
  QMatrix jplus(k, m), pc(m - k, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) (r < k ? jplus(r, c) : pc(r - k, c)) = (*binv)(r, c);
  QMatrix ij = i.m * jplus;
  QMatrix i2(wd, n), j2(wd, m);
  for (std::size_t r = 0; r < n; ++r) i2(r, r) = 1;
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < n; ++r) j2(r, c) = ij(r, c);
    for (std::size_t r = 0; r < m - k; ++r) j2(n + r, c) = pc(r, c);
  }
  std::vector<QVector> gens;
  for (const auto& v : i.cod.vertices()) gens.push_back(i2 * v);
  for (const auto& v : j.cod.vertices()) gens.push_back(j2 * v);
  PolySpace w = space_from_generators(wd, gens);
  return {w, LinOp(i.cod, w, i2), LinOp(j.cod, w, j2)};
}

Q pushout_norm(const LinOp& i, const LinOp& j, const QVector& x, const QVector& y) {
  std::size_t k = i.dom.dim();
  std::size_t nv = k + 2;
  std::vector<QVector> a;
  QVector b;
  for (const auto& phi : i.cod.functionals()) abs_rows(a, b, negate(row_times(phi, i.m)), dot(phi, x), nv, k);
  for (const auto& psi : j.cod.functionals()) abs_rows(a, b, row_times(psi, j.m), dot(psi, y), nv, k + 1);
  QVector c(nv, Q(0));
  c[k] = -1;
  c[k + 1] = -1;
  auto res = lp_maximize(c, a, b);
  if (res.status != LPStatus::Optimal) throw std::logic_error("pushout_norm: LP failed");
  return -res.value;
}

std::optional<Rationalized> rationalize_space(const PolySpace& y, std::size_t anchors, std::size_t den) {
  if (den == 0) throw BanachError("rationalize_space: zero denominator");
  std::vector<QVector> f;
  Q worst = 0;
  Q d(static_cast<long>(den));
  for (std::size_t k = 0; k < y.functionals().size(); ++k) {
    const auto& phi = y.functionals()[k];
    if (k < anchors) {
      f.push_back(phi);
      continue;
    }
    QVector r(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) r[j] = Q(fraisse::floor(phi[j] * d + Q(1, 2))) / d;
    QVector diff(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) diff[j] = phi[j] - r[j];
    for (const auto& v : y.vertices()) worst = std::max(worst, abs(dot(diff, v)));
    if (!is_zero(r)) f.push_back(std::move(r));
  }
  if (f.empty() || rank(QMatrix::from_rows(f, y.dim())) != y.dim()) return std::nullopt;
  Rationalized out{PolySpace(y.dim(), std::move(f)), den, Q(0), 1 + worst};
  out.distortion = op_norm(LinOp(y, out.space, QMatrix::identity(y.dim())));
  return out;
}

Rationalized rationalize_within(const PolySpace& y, std::size_t anchors, const Q& eps) {
  for (std::size_t den = 1; den <= (std::size_t{1} << 24); den *= 2) {
    auto r = rationalize_space(y, anchors, den);
    if (!r) continue;
    Q back = op_norm(LinOp(r->space, y, QMatrix::identity(y.dim())));
    if (r->distortion <= 1 + eps && back <= 1 + eps) return *r;
  }
  throw BanachError("rationalize_within: no grid up to 2^24 is fine enough");
}

Correction operator_correction(const LinOp& t, const LinOp& t1, std::size_t n) {
  if (n == 0) throw BanachError("operator_correction: n must be positive");
  Q s(static_cast<long>(n), static_cast<long>(n + 1));
  LinOp t2(t1.dom, t1.cod, s * t1.m);
  return {t2, op_norm(t2), op_distance(t2, t)};
}

std::string describe(const PolySpace& x) {
  std::ostringstream os;
  os << "R^" << x.dim() << " {";
  for (std::size_t k = 0; k < x.functionals().size(); ++k) {
    if (k) os << ", ";
    os << '(';
    for (std::size_t j = 0; j < x.dim(); ++j) os << (j ? " " : "") << fraisse::to_string(x.functionals()[k][j]);
    os << ')';
  }
  os << '}';
  return os.str();
}

}  // namespace fraisse::bancat
