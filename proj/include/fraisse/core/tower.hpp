#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/core/category.hpp"

namespace fraisse::core {

/// Finite prefix of a sequence in the small category: objects u_0..u_N and
/// bondings u_n -> u_{n+1}. Composed bondings u_n^m are derived on demand
/// and memoized.
template <class C>
class Tower {
 public:
  using Object = typename C::Object;
  using ArrowT = typename C::Arrow;

  Tower() = default;
  explicit Tower(Object first) { objects_.push_back(std::move(first)); }

  Tower(const Tower& other) : objects_(other.objects_), bondings_(other.bondings_) {}
  Tower& operator=(const Tower& other) {
    if (this != &other) {
      objects_ = other.objects_;
      bondings_ = other.bondings_;
      cache_ = std::make_unique<Cache>();
    }
    return *this;
  }
  Tower(Tower&&) noexcept = default;
  Tower& operator=(Tower&&) noexcept = default;

  std::size_t size() const { return objects_.size(); }
  bool empty() const { return objects_.empty(); }
  std::size_t last() const { return objects_.size() - 1; }

  const Object& object(std::size_t n) const { return objects_.at(n); }
  const std::vector<Object>& objects() const { return objects_; }
  const std::vector<ArrowT>& bondings() const { return bondings_; }

  /// Appends u_{N+1} with bonding u_N -> u_{N+1}; the bonding must be small.
  void push(ArrowT bonding) {
    if (objects_.empty()) throw std::logic_error("Tower::push on empty tower");
    if (!(bonding.dom == objects_.back())) throw CompositionError("Tower::push: bonding dom is not the last object");
    if (!bonding.is_small()) throw std::invalid_argument("Tower::push: bondings must be small arrows");
    objects_.push_back(bonding.cod);
    bondings_.push_back(std::move(bonding));
  }

  /// u_n^m for n <= m (identity when n == m).
  ArrowT bond(const C& c, std::size_t n, std::size_t m) const {
    if (n > m || m >= objects_.size()) throw std::out_of_range("Tower::bond: bad index pair");
    if (n == m) return c.identity(objects_[n]);
    if (m == n + 1) return bondings_[n];
    {
      std::scoped_lock lock(cache_->mutex);
      auto it = cache_->arrows.find({n, m});
      if (it != cache_->arrows.end()) return it->second;
    }
    ArrowT out = compose(c, bondings_[m - 1], bond(c, n, m - 1));
    std::scoped_lock lock(cache_->mutex);
    cache_->arrows.emplace(std::make_pair(n, m), out);
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, std::size_t>, ArrowT> arrows;
  };

  std::vector<Object> objects_;
  std::vector<ArrowT> bondings_;
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

/// Objects and composed bondings along a strictly increasing index list.
template <class C>
Tower<C> restrict_cofinal(const C& c, const Tower<C>& t, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw std::invalid_argument("restrict_cofinal: empty index list");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= t.size()) throw std::out_of_range("restrict_cofinal: index beyond prefix");
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw std::invalid_argument("restrict_cofinal: indices must be strictly increasing");
    }
  }
  Tower<C> out(t.object(indices[0]));
  for (std::size_t k = 1; k < indices.size(); ++k) out.push(t.bond(c, indices[k - 1], indices[k]));
  return out;
}

}  // namespace fraisse::core
