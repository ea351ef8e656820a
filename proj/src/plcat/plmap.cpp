#include "fraisse/plcat/plmap.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace fraisse::plcat {

namespace {

void sort_unique(std::vector<Q>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Uniformly parametrized path through `values`, repeated values dropped.
PLMap through(const std::vector<Q>& values) {
  std::vector<Q> y;
  for (const auto& v : values)
    if (y.empty() || y.back() != v) y.push_back(v);
  if (y.size() == 1) y.push_back(y.front());
  std::vector<Q> t;
  Q n(static_cast<long>(y.size() - 1));
  for (std::size_t k = 0; k < y.size(); ++k) t.push_back(Q(static_cast<long>(k)) / n);
  return PLMap(std::move(t), std::move(y));
}

}  // namespace

PLMap::PLMap() : t_{Q(0), Q(1)}, y_{Q(0), Q(1)} {}

PLMap::PLMap(std::vector<Q> t, std::vector<Q> y) {
  if (t.size() < 2 || t.size() != y.size()) throw PLError("PLMap: need matching breakpoints and values");
  if (t.front() != 0 || t.back() != 1) throw PLError("PLMap: breakpoints must start at 0 and end at 1");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i] < t[i + 1])) throw PLError("PLMap: breakpoints must increase");
  for (const auto& v : y)
    if (v < 0 || v > 1) throw PLError("PLMap: values must lie in [0,1]");
  t_.push_back(t[0]);
  y_.push_back(y[0]);
  for (std::size_t i = 1; i < t.size(); ++i) {
    // Drop the previous interior point if it is collinear.
    if (t_.size() >= 2) {
      std::size_t k = t_.size() - 1;
      if ((y_[k] - y_[k - 1]) * (t[i] - t_[k]) == (y[i] - y_[k]) * (t_[k] - t_[k - 1])) {
        t_.pop_back();
        y_.pop_back();
      }
    }
    t_.push_back(t[i]);
    y_.push_back(y[i]);
  }
}

Q PLMap::operator()(const Q& x) const {
  if (x < 0 || x > 1) throw PLError("PLMap: argument outside [0,1]");
  auto it = std::upper_bound(t_.begin(), t_.end(), x);
  if (it == t_.end()) return y_.back();
  std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
  return y_[i] + (y_[i + 1] - y_[i]) * (x - t_[i]) / (t_[i + 1] - t_[i]);
}

bool PLMap::is_onto() const {
  return *std::min_element(y_.begin(), y_.end()) == 0 && *std::max_element(y_.begin(), y_.end()) == 1;
}

bool PLMap::has_monotone_pieces() const {
  for (std::size_t i = 0; i + 1 < y_.size(); ++i)
    if (y_[i] == y_[i + 1]) return false;
  return true;
}

PLMap tent_map() { return PLMap({Q(0), q(1, 2), Q(1)}, {Q(0), Q(1), Q(0)}); }

PLMap zigzag(const std::vector<Q>& turns) {
  std::vector<Q> t{Q(0)}, y{Q(0)};
  for (const auto& c : turns) {
    t.push_back(c);
    y.push_back(y.back() == 0 ? Q(1) : Q(0));
  }
  t.push_back(Q(1));
  y.push_back(y.back() == 0 ? Q(1) : Q(0));
  return PLMap(std::move(t), std::move(y));
}

PLMap compose_pl(const PLMap& f, const PLMap& g) {
  std::vector<Q> t;
  const auto& gt = g.t();
  const auto& gy = g.y();
  for (std::size_t i = 0; i + 1 < gt.size(); ++i) {
    t.push_back(gt[i]);
    const Q& a = gy[i];
    const Q& b = gy[i + 1];
    if (a == b) continue;
    std::vector<Q> inner;
    for (const auto& s : f.t())
      if ((a < s && s < b) || (b < s && s < a)) inner.push_back(gt[i] + (s - a) / (b - a) * (gt[i + 1] - gt[i]));
    std::sort(inner.begin(), inner.end());
    t.insert(t.end(), inner.begin(), inner.end());
  }
  t.push_back(Q(1));
  std::vector<Q> y;
  y.reserve(t.size());
  for (const auto& x : t) y.push_back(f(g(x)));
  return PLMap(std::move(t), std::move(y));
}

Q rho_pl(const PLMap& f, const PLMap& g, const Q& scale) {
  std::vector<Q> pts = f.t();
  pts.insert(pts.end(), g.t().begin(), g.t().end());
  sort_unique(pts);
  Q best = 0;
  for (const auto& x : pts) best = std::max(best, abs(f(x) - g(x)));
  return scale * best;
}

Q lipschitz(const PLMap& f, const Q& dom_scale, const Q& cod_scale) {
  Q best = 0;
  for (std::size_t i = 0; i < f.pieces(); ++i) best = std::max(best, abs(f.slope(i)));
  return best * cod_scale / dom_scale;
}

PLMap normalize_endpoints(const PLMap& f) {
  Q a = f(Q(0)), b = f(Q(1));
  if (a == b) throw PLError("normalize_endpoints: f(0) == f(1)");
  std::vector<Q> t, y;
  if (a < b) {
    t = {a, b};
    y = {Q(0), Q(1)};
  } else {
    t = {b, a};
    y = {Q(1), Q(0)};
  }
  if (t.front() > 0) {
    t.insert(t.begin(), Q(0));
    y.insert(y.begin(), 1 - y.front());
  }
  if (t.back() < 1) {
    t.push_back(Q(1));
    y.push_back(1 - y.back());
  }
  return PLMap(std::move(t), std::move(y));
}

PLMap endpoint_lift(const PLMap& f) {
  if (!f.is_onto()) throw PLError("endpoint_lift: f is not onto");
  if (f.fixes_endpoints()) return PLMap();
  auto z = preimages(f, Q(0));
  auto o = preimages(f, Q(1));
  return through({z.front(), Q(0), Q(1), o.back()});
}

std::vector<Q> preimages(const PLMap& f, const Q& v) {
  std::vector<Q> out;
  const auto& t = f.t();
  const auto& y = f.y();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const Q& a = y[i];
    const Q& b = y[i + 1];
    if (a == b) {
      if (a == v) {
        out.push_back(t[i]);
        out.push_back(t[i + 1]);
      }
      continue;
    }
    if ((a <= v && v <= b) || (b <= v && v <= a)) out.push_back(t[i] + (v - a) / (b - a) * (t[i + 1] - t[i]));
  }
  sort_unique(out);
  return out;
}

std::pair<PLMap, PLMap> mountain_climb(const PLMap& f, const PLMap& g) {
  for (const auto* h : {&f, &g}) {
    if (!h->is_rational_quotient()) throw PLError("mountain_climb: maps must be onto and fix 0 and 1");
    if (!h->has_monotone_pieces()) throw PLError("mountain_climb: constant piece");
  }
  if (f == g) return {PLMap(), PLMap()};
  using Pt = std::pair<Q, Q>;
  std::map<Pt, std::size_t> index;
  std::vector<Pt> pts;
  std::vector<std::vector<std::size_t>> adj;
  auto vertex = [&](const Pt& p) {
    auto [it, fresh] = index.emplace(p, pts.size());
    if (fresh) {
      pts.push_back(p);
      adj.emplace_back();
    }
    return it->second;
  };
  const auto& ft = f.t();
  const auto& fy = f.y();
  const auto& gt = g.t();
  const auto& gy = g.y();
  auto inv = [](const Q& t0, const Q& t1, const Q& a, const Q& b, const Q& v) { return t0 + (v - a) / (b - a) * (t1 - t0); };
  for (std::size_t i = 0; i + 1 < ft.size(); ++i) {
    for (std::size_t j = 0; j + 1 < gt.size(); ++j) {
      Q lo = std::max(std::min(fy[i], fy[i + 1]), std::min(gy[j], gy[j + 1]));
      Q hi = std::min(std::max(fy[i], fy[i + 1]), std::max(gy[j], gy[j + 1]));
      if (!(lo < hi)) continue;
      Pt p{inv(ft[i], ft[i + 1], fy[i], fy[i + 1], lo), inv(gt[j], gt[j + 1], gy[j], gy[j + 1], lo)};
      Pt r{inv(ft[i], ft[i + 1], fy[i], fy[i + 1], hi), inv(gt[j], gt[j + 1], gy[j], gy[j + 1], hi)};
      auto a = vertex(p);
      auto b = vertex(r);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  auto s = index.find({Q(0), Q(0)});
  auto e = index.find({Q(1), Q(1)});
  if (s == index.end() || e == index.end()) throw std::logic_error("mountain_climb: level set misses a corner");
  std::vector<std::size_t> parent(pts.size(), pts.size());
  std::queue<std::size_t> todo;
  parent[s->second] = s->second;
  todo.push(s->second);
  while (!todo.empty()) {
    auto u = todo.front();
    todo.pop();
    for (auto w : adj[u])
      if (parent[w] == pts.size()) {
        parent[w] = u;
        todo.push(w);
      }
  }
  if (parent[e->second] == pts.size()) {
    std::ostringstream os;
    os << "mountain_climb: no path; f = " << describe(f) << ", g = " << describe(g);
    throw std::logic_error(os.str());
  }
  std::vector<Q> xs, ys;
  for (auto u = e->second;; u = parent[u]) {
    xs.push_back(pts[u].first);
    ys.push_back(pts[u].second);
    if (u == s->second) break;
  }
  std::reverse(xs.begin(), xs.end());
  std::reverse(ys.begin(), ys.end());
  return {through(xs), through(ys)};
}

std::optional<PLMap> lift_pl(const PLMap& f, const PLMap& b, const Q& tol, const std::optional<Q>& lip) {
  std::vector<Q> grid = b.t();
  std::vector<Q> levels = f.y();
  sort_unique(levels);
  for (const auto& c : levels) {
    auto p = preimages(b, c);
    grid.insert(grid.end(), p.begin(), p.end());
  }
  sort_unique(grid);
  std::vector<Q> bv;
  std::vector<std::vector<Q>> cand;
  for (const auto& y : grid) {
    Q v = b(y);
    auto c = preimages(f, v);
    for (Q end : {Q(0), Q(1)})
      if (abs(f(end) - v) < tol) c.push_back(end);
    sort_unique(c);
    bv.push_back(v);
    cand.push_back(std::move(c));
  }
  const auto& fts = f.t();
  auto edge_ok = [&](std::size_t i, const Q& x0, const Q& x1) {
    Q dy = grid[i + 1] - grid[i];
    if (lip && abs(x1 - x0) > *lip * dy) return false;
    if (!(abs(f(x0) - bv[i]) < tol) || !(abs(f(x1) - bv[i + 1]) < tol)) return false;
    Q lo = std::min(x0, x1), hi = std::max(x0, x1);
    auto it = std::upper_bound(fts.begin(), fts.end(), lo);
    for (; it != fts.end() && *it < hi; ++it) {
      Q s = (*it - x0) / (x1 - x0);
      Q bvs = bv[i] + (bv[i + 1] - bv[i]) * s;
      if (!(abs(f(*it) - bvs) < tol)) return false;
    }
    return true;
  };
  auto flag = [](const Q& x) { return (x == 0 ? 1u : 0u) | (x == 1 ? 2u : 0u); };
  // parent[i][(j, flags)] = (prev j, prev flags)
  using State = std::pair<std::size_t, unsigned>;
  std::vector<std::map<State, State>> parent(grid.size());
  for (std::size_t j = 0; j < cand[0].size(); ++j) parent[0].emplace(State{j, flag(cand[0][j])}, State{j, 0});
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (parent[i].empty()) return std::nullopt;
    for (std::size_t j1 = 0; j1 < cand[i + 1].size(); ++j1) {
      const Q& x1 = cand[i + 1][j1];
      for (const auto& [st, _] : parent[i]) {
        State next{j1, st.second | flag(x1)};
        if (parent[i + 1].count(next)) continue;
        if (edge_ok(i, cand[i][st.first], x1)) parent[i + 1].emplace(next, st);
      }
    }
  }
  std::optional<State> end;
  for (const auto& [st, _] : parent.back())
    if (st.second == 3u) {
      end = st;
      break;
    }
  if (!end) return std::nullopt;
  std::vector<Q> xs(grid.size());
  State cur = *end;
  for (std::size_t i = grid.size(); i-- > 0;) {
    xs[i] = cand[i][cur.first];
    cur = parent[i].at(cur);
  }
  return PLMap(grid, xs);
}

std::string describe(const PLMap& f) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.t().size(); ++i) {
    if (i) os << ' ';
    os << '(' << to_string(f.t()[i]) << ',' << to_string(f.y()[i]) << ')';
  }
  return os.str();
}

}  // namespace fraisse::plcat
