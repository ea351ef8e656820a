#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace fraisse::metcat {

/// Finite-domain search with forward checking: assigns each variable a value
/// from its domain such that every pair satisfies `compatible`, and every
/// value listed in `must_cover` is used. Gives up after `budget` nodes.
struct MapSearch {
  std::vector<std::vector<std::size_t>> domains;
  std::function<bool(std::size_t, std::size_t, std::size_t, std::size_t)> compatible;
  std::vector<std::size_t> must_cover;
  std::size_t budget = 200000;

  /// Assignment, or nullopt when exhausted (not a refutation once budget hit).
  std::optional<std::vector<std::size_t>> solve() const;
};

/// Special case with no pairwise constraints: every value in `must_cover`
/// is matched to a distinct variable (augmenting paths), the remaining
/// variables take the first value of their domain.
std::optional<std::vector<std::size_t>> cover_by_matching(const std::vector<std::vector<std::size_t>>& domains,
                                                          const std::vector<std::size_t>& must_cover);

}  // namespace fraisse::metcat
