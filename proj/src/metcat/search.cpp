#include "fraisse/metcat/search.hpp"

#include <algorithm>

namespace fraisse::metcat {

namespace {

struct Solver {
  const MapSearch& spec;
  std::size_t nodes = 0;
  std::vector<std::size_t> assignment;
  std::vector<bool> assigned;

  bool cover_possible(const std::vector<std::vector<std::size_t>>& domains) const {
    std::size_t free = 0, uncovered = 0;
    for (std::size_t v = 0; v < domains.size(); ++v) free += assigned[v] ? 0 : 1;
    for (auto value : spec.must_cover) {
      bool hit = false;
      for (std::size_t v = 0; v < domains.size() && !hit; ++v) hit = assigned[v] && assignment[v] == value;
      uncovered += hit ? 0 : 1;
    }
    if (uncovered > free) return false;
    for (auto value : spec.must_cover) {
      bool ok = false;
      for (std::size_t v = 0; v < domains.size() && !ok; ++v) {
        if (assigned[v]) {
          ok = assignment[v] == value;
        } else {
          ok = std::find(domains[v].begin(), domains[v].end(), value) != domains[v].end();
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  bool run(std::vector<std::vector<std::size_t>> domains, std::size_t remaining) {
    if (++nodes > spec.budget) return false;
    if (remaining == 0) return true;
    // Most constrained variable first.
    std::size_t pick = domains.size();
    for (std::size_t v = 0; v < domains.size(); ++v) {
      if (assigned[v]) continue;
      if (pick == domains.size() || domains[v].size() < domains[pick].size()) pick = v;
    }
    // Values still needed for coverage are tried first.
    std::vector<std::size_t> order = domains[pick];
    std::stable_partition(order.begin(), order.end(), [&](std::size_t value) {
      for (std::size_t v = 0; v < domains.size(); ++v)
        if (assigned[v] && assignment[v] == value) return false;
      return std::find(spec.must_cover.begin(), spec.must_cover.end(), value) != spec.must_cover.end();
    });
    for (auto value : order) {
      assigned[pick] = true;
      assignment[pick] = value;
      auto next = domains;
      next[pick] = {value};
      bool wiped = false;
      for (std::size_t v = 0; v < next.size() && !wiped; ++v) {
        if (assigned[v]) continue;
        auto& dom = next[v];
        dom.erase(std::remove_if(dom.begin(), dom.end(),
                                 [&](std::size_t w) { return !spec.compatible(pick, value, v, w); }),
                  dom.end());
        wiped = dom.empty();
      }
      if (!wiped && cover_possible(next) && run(std::move(next), remaining - 1)) return true;
      assigned[pick] = false;
      if (nodes > spec.budget) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> MapSearch::solve() const {
  Solver s{*this, 0, std::vector<std::size_t>(domains.size(), 0), std::vector<bool>(domains.size(), false)};
  for (const auto& d : domains)
    if (d.empty()) return std::nullopt;
  if (!s.cover_possible(domains)) return std::nullopt;
  if (!s.run(domains, domains.size())) return std::nullopt;
  return s.assignment;
}

namespace {

bool augment(std::size_t value, const std::vector<std::vector<std::size_t>>& holders, std::vector<bool>& seen,
             std::vector<std::optional<std::size_t>>& owner) {
  for (auto var : holders[value]) {
    if (seen[var]) continue;
    seen[var] = true;
    if (!owner[var] || augment(*owner[var], holders, seen, owner)) {
      owner[var] = value;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> cover_by_matching(const std::vector<std::vector<std::size_t>>& domains,
                                                          const std::vector<std::size_t>& must_cover) {
  for (const auto& d : domains)
    if (d.empty()) return std::nullopt;
  std::size_t top = 0;
  for (auto v : must_cover) top = std::max(top, v + 1);
  std::vector<std::vector<std::size_t>> holders(top);
  for (std::size_t var = 0; var < domains.size(); ++var)
    for (auto v : domains[var])
      if (v < top) holders[v].push_back(var);
  std::vector<std::optional<std::size_t>> owner(domains.size());
  for (auto v : must_cover) {
    std::vector<bool> seen(domains.size(), false);
    if (!augment(v, holders, seen, owner)) return std::nullopt;
  }
  std::vector<std::size_t> out(domains.size());
  for (std::size_t var = 0; var < domains.size(); ++var) out[var] = owner[var] ? *owner[var] : domains[var].front();
  return out;
}

}  // namespace fraisse::metcat
