#include "fraisse/bancat/instance.hpp"

#include <array>
#include <functional>

#include "fraisse/metcat/instances.hpp"

namespace fraisse::bancat {

namespace {

struct System {
  std::vector<QVector> rows;
  QVector rhs;

  void add(QVector r, Q v) {
    rows.push_back(std::move(r));
    rhs.push_back(std::move(v));
  }
  void pop(std::size_t n) {
    rows.resize(rows.size() - n);
    rhs.resize(rhs.size() - n);
  }
};

QMatrix unflatten(const QVector& x, std::size_t m, std::size_t d) {
  QMatrix h(m, d);
  for (std::size_t k = 0; k < x.size(); ++k) h.a[k] = x[k];
  return h;
}

QVector row_of(const QVector& v, const QMatrix& m) {
  QVector out(m.cols, Q(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += v[i] * m(i, j);
  return out;
}

}  // namespace

std::optional<QMatrix> isometric_extension(const LinOp& f, const LinOp& b, std::size_t budget) {
  if (!(f.dom == b.dom)) throw BanachError("isometric_extension: F and B need a common domain");
  const PolySpace& w = f.cod;
  const PolySpace& u = b.cod;
  std::size_t m = u.dim(), d = w.dim(), z = f.dom.dim();
  if (d > m) return std::nullopt;
  std::size_t nv = m * d;
  if (nv == 0) return QMatrix(m, d);

  System sys;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < z; ++c) {
      QVector row(nv, Q(0));
      for (std::size_t l = 0; l < d; ++l) row[r * d + l] = f.m(l, c);
      sys.add(std::move(row), b.m(r, c));
    }

  // Candidate pairs (j, s) per facet: psi_j . B must equal s phi_k . F.
  const auto& facets = w.facets();
  const auto& psis = u.functionals();
  std::vector<std::vector<std::pair<std::size_t, int>>> cand(facets.size());
  for (std::size_t k = 0; k < facets.size(); ++k) {
    QVector pf = row_of(facets[k], f.m);
    for (std::size_t j = 0; j < psis.size(); ++j) {
      QVector pb = row_of(psis[j], b.m);
      for (int s : {1, -1}) {
        bool ok = true;
        for (std::size_t c = 0; c < z && ok; ++c) ok = pb[c] == s * pf[c];
        if (ok) cand[k].push_back({j, s});
      }
    }
    if (cand[k].empty()) return std::nullopt;
  }

  auto accept = [&](const QMatrix& h) -> bool {
    LinOp op(w, u, h);
    return h * f.m == b.m && is_isometric(op);
  };

  // Norm <= 1 as linear constraints |psi_j h v| <= 1 over vertices v of W.
  auto finish = [&]() -> std::optional<QMatrix> {
    QMatrix sm = QMatrix::from_rows(sys.rows, nv);
    if (rank(sm) == nv) {
      auto x = solve(sm, sys.rhs);
      if (!x) return std::nullopt;
      auto h = unflatten(*x, m, d);
      if (accept(h)) return h;
      return std::nullopt;
    }
    std::vector<QVector> a;
    QVector rhs;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
      a.push_back(sys.rows[i]);
      rhs.push_back(sys.rhs[i]);
      QVector neg = sys.rows[i];
      for (auto& e : neg) e = -e;
      a.push_back(std::move(neg));
      rhs.push_back(-sys.rhs[i]);
    }
    for (const auto& psi : psis)
      for (const auto& v : w.vertices()) {
        QVector row(nv, Q(0));
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t l = 0; l < d; ++l) row[r * d + l] = psi[r] * v[l];
        QVector neg = row;
        for (auto& e : neg) e = -e;
        a.push_back(std::move(row));
        rhs.push_back(Q(1));
        a.push_back(std::move(neg));
        rhs.push_back(Q(1));
      }
    auto res = lp_maximize(QVector(nv, Q(0)), a, rhs);
    if (res.status != LPStatus::Optimal) return std::nullopt;
    auto h = unflatten(res.x, m, d);
    if (accept(h)) return h;
    return std::nullopt;
  };

  std::size_t nodes = 0;
  std::function<std::optional<QMatrix>(std::size_t)> dfs = [&](std::size_t k) -> std::optional<QMatrix> {
    if (++nodes > budget) return std::nullopt;
    if (k == facets.size()) return finish();
    for (auto [j, s] : cand[k]) {
      for (std::size_t l = 0; l < d; ++l) {
        QVector row(nv, Q(0));
        for (std::size_t r = 0; r < m; ++r) row[r * d + l] = psis[j][r];
        sys.add(std::move(row), s * facets[k][l]);
      }
      QMatrix sm = QMatrix::from_rows(sys.rows, nv);
      if (auto x = solve(sm, sys.rhs)) {
        if (rank(sm) == nv) {
          // Determined: the remaining facets only need checking.
          auto h = unflatten(*x, m, d);
          if (accept(h)) return h;
        } else if (auto h = dfs(k + 1)) {
          return h;
        }
      }
      sys.pop(d);
      if (nodes > budget) return std::nullopt;
    }
    return std::nullopt;
  };
  return dfs(0);
}

BanachInstance::Arrow BanachInstance::make_arrow(const Object& dom, const Object& cod, QMatrix m) const {
  LinOp op(dom, cod, m);
  if (op_norm(op) > 1) throw BanachError("banach: operator norm above 1");
  auto kind = is_isometric(op) ? core::ArrowKind::Small : core::ArrowKind::Ambient;
  return Arrow{dom, cod, std::move(m), kind};
}

BanachInstance::Arrow BanachInstance::identity(const Object& o) const {
  return Arrow{o, o, QMatrix::identity(o.dim()), core::ArrowKind::Small};
}

ExtRational BanachInstance::rho_payloads(const Arrow& f, const Arrow& g) const {
  return ExtRational(op_norm(LinOp(f.dom, f.cod, f.payload - g.payload)));
}

ExtRational BanachInstance::mu_value(const Arrow& f) const {
  if (f.is_small()) return ExtRational(0);
  auto mu = mu_op(as_op(f));
  if (mu.status == MuStatus::NormAboveOne) return ExtRational::infinity();
  return ExtRational(mu.value);
}

core::MuBound<BanachInstance::Arrow> BanachInstance::mu_bound(const Arrow& f) const {
  if (f.is_small()) return {ExtRational(0), f, identity(f.cod)};
  auto mu = mu_op(as_op(f));
  if (mu.status == MuStatus::NormAboveOne) return {ExtRational::infinity(), std::nullopt, std::nullopt};
  if (f.dom.dim() + f.cod.dim() > 4 || mu.value == 0) return {ExtRational(mu.value), std::nullopt, std::nullopt};
  auto a = correction_space(as_op(f), mu.value);
  Arrow i{f.dom, a.z, a.i.m, core::ArrowKind::Small};
  Arrow j{f.cod, a.z, a.j.m, core::ArrowKind::Small};
  return {ExtRational(mu.value), i, j};
}

core::Cospan<BanachInstance::Arrow> BanachInstance::amalgamate(const Arrow& f, const Arrow& g, const Q&) const {
  if (!f.is_small() || !g.is_small()) throw BanachError("banach: amalgamation needs isometric arrows");
  auto p = pushout_isometric(as_op(f), as_op(g));
  return {Arrow{f.cod, p.w, p.i2.m, core::ArrowKind::Small}, Arrow{g.cod, p.w, p.j2.m, core::ArrowKind::Small}};
}

core::Cospan<BanachInstance::Arrow> BanachInstance::joint(const Object& a, const Object& b) const {
  std::size_t n = a.dim(), m = b.dim();
  std::vector<QVector> fs;
  for (const auto& phi : a.functionals()) {
    QVector r(n + m, Q(0));
    std::copy(phi.begin(), phi.end(), r.begin());
    fs.push_back(std::move(r));
  }
  for (const auto& psi : b.functionals()) {
    QVector r(n + m, Q(0));
    std::copy(psi.begin(), psi.end(), r.begin() + static_cast<long>(n));
    fs.push_back(std::move(r));
  }
  PolySpace w(n + m, std::move(fs));
  QMatrix l(n + m, n), r(n + m, m);
  for (std::size_t k = 0; k < n; ++k) l(k, k) = 1;
  for (std::size_t k = 0; k < m; ++k) r(n + k, k) = 1;
  return {Arrow{a, w, l, core::ArrowKind::Small}, Arrow{b, w, r, core::ArrowKind::Small}};
}

BanachInstance::Arrow BanachInstance::dominating_arrow(const Object& o, std::size_t rank) const {
  if (rank == 0) return identity(o);
  auto h = metcat::cantor_tuple(rank - 1, 3);
  std::size_t n = o.dim();
  QMatrix emb(n + 1, n);
  for (std::size_t k = 0; k < n; ++k) emb(k, k) = 1;
  if (h[0] % 2 == 0) {
    static const std::array<Q, 5> ts{Q(0), Q(1), Q(-1), q(1, 2), q(-1, 2)};
    static const std::array<Q, 5> cs{Q(1), q(1, 2), Q(2), q(1, 3), Q(3)};
    std::vector<QVector> fs;
    for (const auto& phi : o.functionals()) {
      QVector r = phi;
      r.push_back(Q(0));
      fs.push_back(std::move(r));
    }
    Q t = ts[(h[0] / 2) % ts.size()];
    QVector extra(n + 1, Q(0));
    if (n > 0) {
      const auto& phi = o.functionals()[h[1] % o.functionals().size()];
      for (std::size_t k = 0; k < n; ++k) extra[k] = t * phi[k];
    }
    extra[n] = cs[h[2] % cs.size()];
    fs.push_back(std::move(extra));
    return Arrow{o, PolySpace(n + 1, std::move(fs)), emb, core::ArrowKind::Small};
  }
  // Glue l_inf^2 along a vertex: the unit ball is conv(B_o, v +- e).
  PolySpace line(1, {{Q(1)}});
  const auto& vs = o.vertices();
  const auto& v = vs[h[1] % vs.size()];
  QMatrix mv(n, 1);
  for (std::size_t k = 0; k < n; ++k) mv(k, 0) = v[k];
  QMatrix e1(2, 1);
  e1(0, 0) = 1;
  auto p = pushout_isometric(LinOp(line, o, mv), LinOp(line, PolySpace::linf(2), e1));
  return Arrow{o, p.w, p.i2.m, core::ArrowKind::Small};
}

BanachInstance::Object BanachInstance::dominating_object(std::size_t rank) const {
  std::vector<PolySpace> base{seed(), PolySpace::linf(2), PolySpace::l1(2),
                              PolySpace(2, {{Q(1), Q(0)}, {Q(0), Q(1)}, {Q(1), Q(-1)}}), PolySpace::linf(3),
                              PolySpace::l1(3)};
  std::erase_if(base, [&](const PolySpace& s) { return s.dim() > dim_cap_; });
  if (rank < base.size()) return base[rank];
  // Coordinate functionals plus a few small-integer ones, from a splitmix hash.
  auto h = metcat::cantor_tuple(rank - base.size(), 2);
  std::size_t dim = 1 + h[0] % std::max<std::size_t>(dim_cap_, 1);
  std::uint64_t s = h[1] + 0x9e3779b97f4a7c15ULL;
  auto next = [&s] {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::vector<QVector> fs;
  for (std::size_t k = 0; k < dim; ++k) {
    QVector e(dim, Q(0));
    e[k] = 1;
    fs.push_back(std::move(e));
  }
  std::size_t extra = 1 + next() % 3;
  for (std::size_t k = 0; k < extra; ++k) {
    QVector r(dim);
    bool zero = true;
    for (auto& x : r) {
      x = Q(static_cast<long>(next() % 5) - 2, 1 + static_cast<long>(next() % 2));
      zero = zero && x == 0;
    }
    if (!zero) fs.push_back(std::move(r));
  }
  return PolySpace(dim, std::move(fs));
}

std::optional<BanachInstance::Arrow> BanachInstance::search_absorb(const Arrow& f, const Arrow& bond, const Q&,
                                                                   const core::SearchOptions& opts) const {
  if (!f.is_small() || !bond.is_small() || !(f.dom == bond.dom)) return std::nullopt;
  auto h = isometric_extension(as_op(f), as_op(bond), opts.budget);
  if (!h) return std::nullopt;
  return Arrow{f.cod, bond.cod, *h, core::ArrowKind::Small};
}

std::optional<BanachInstance::Arrow> BanachInstance::search_into(const Object& x, const Object& target, const Q&,
                                                                 const core::SearchOptions& opts) const {
  PolySpace zero;
  auto h = isometric_extension(LinOp(zero, x, QMatrix(x.dim(), 0)), LinOp(zero, target, QMatrix(target.dim(), 0)),
                               opts.budget);
  if (!h) return std::nullopt;
  return Arrow{x, target, *h, core::ArrowKind::Small};
}

}  // namespace fraisse::bancat
