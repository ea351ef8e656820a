#include "fraisse/metcat/cantor.hpp"

#include <algorithm>
#include <set>

namespace fraisse::metcat {

CantorResult check_C(const QuotientInstance& c, const core::Tower<QuotientInstance>& t, std::size_t n,
                     std::size_t t_size, const NonExpMap& f, const NonExpMap& p, std::size_t depth,
                     const core::SearchOptions&) {
  if (n >= t.size()) throw MetricError("check_C: level beyond tower");
  const FinMetSpace& un = t.object(n);
  if (f.table.size() != t_size || p.table.size() != un.size()) throw MetricError("check_C: table sizes do not match");
  std::size_t s_size = 0;
  for (auto s : f.table) s_size = std::max(s_size, s + 1);
  for (auto s : p.table) s_size = std::max(s_size, s + 1);
  std::set<std::size_t> fs(f.table.begin(), f.table.end()), ps(p.table.begin(), p.table.end());
  if (fs.size() != s_size || ps.size() != s_size) throw MetricError("check_C: f and p must be onto S");
  if (un.size() > 1 && !un.is_discrete()) throw MetricError("check_C: stage is not r-discrete");

  CantorResult out;
  out.depth = std::min(t.size() - 1, depth);
  // q exists at m iff every fiber of p . u_n^m over s is at least as large as
  // the fiber of f over s; then fill each fiber of f in order.
  std::vector<std::vector<std::size_t>> f_fiber(s_size);
  for (std::size_t i = 0; i < t_size; ++i) f_fiber[f.table[i]].push_back(i);
  for (std::size_t m = n + 1; m <= out.depth; ++m) {
    auto bond = t.bond(c, n, m);
    NonExpMap q;
    q.table.assign(t.object(m).size(), 0);
    std::vector<std::size_t> used(s_size, 0);
    for (std::size_t x = 0; x < q.table.size(); ++x) {
      std::size_t s = p.table[bond.payload.table[x]];
      const auto& fib = f_fiber[s];
      q.table[x] = fib[std::min(used[s], fib.size() - 1)];
      ++used[s];
    }
    bool covered = true;
    for (std::size_t s = 0; s < s_size; ++s) covered = covered && used[s] >= f_fiber[s].size();
    if (!covered) continue;
    CantorWitness w{n, m, q};
    if (verify_cantor(c, t, t_size, f, p, w)) {
      out.witness = w;
      return out;
    }
  }
  out.note = "exhausted";
  return out;
}

bool verify_cantor(const QuotientInstance& c, const core::Tower<QuotientInstance>& t, std::size_t t_size,
                   const NonExpMap& f, const NonExpMap& p, const CantorWitness& w) {
  if (w.m >= t.size() || w.n >= w.m) return false;
  auto bond = t.bond(c, w.n, w.m);
  if (w.q.table.size() != t.object(w.m).size()) return false;
  for (auto v : w.q.table)
    if (v >= t_size) return false;
  if (!is_surjective(FinMetSpace(t_size), w.q)) return false;
  return compose_maps(f, w.q) == compose_maps(p, bond.payload);
}

}  // namespace fraisse::metcat
