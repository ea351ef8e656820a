#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fraisse/rational.hpp"

namespace fraisse::core {

/// Small-category arrows (the distinguished subcategory) versus arbitrary
/// arrows of the ambient metric-enriched category.
enum class ArrowKind { Small, Ambient };

class CompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class HomSetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class Object, class Payload>
struct Arrow {
  Object dom;
  Object cod;
  Payload payload;
  ArrowKind kind = ArrowKind::Ambient;

  bool is_small() const { return kind == ArrowKind::Small; }

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Witnessed upper bound on the norm: rho(j . f, i) == bound, with i, j small.
template <class ArrowT>
struct MuBound {
  ExtRational bound;
  std::optional<ArrowT> i;  // dom(f) -> w
  std::optional<ArrowT> j;  // cod(f) -> w
};

/// Completion of a span f: c -> a, g: c -> b into a square
/// left: a -> w, right: b -> w.
template <class ArrowT>
struct Cospan {
  ArrowT left;
  ArrowT right;
};

}  // namespace fraisse::core
