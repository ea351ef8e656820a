#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fraisse {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Q q(std::int64_t num, std::int64_t den = 1) { return Q(num, den); }

inline Q abs(const Q& x) { return x < 0 ? Q(-x) : x; }

inline Z numer(const Q& x) { return boost::multiprecision::numerator(x); }
inline Z denom(const Q& x) { return boost::multiprecision::denominator(x); }

/// 2^-n as an exact rational.
inline Q pow2_neg(unsigned n) {
  Z d = 1;
  d <<= n;
  return Q(Z(1), d);
}

/// Serialized form is always "p/q", including integers ("3/1").
std::string to_string(const Q& x);
Q parse_rational(std::string_view text);

/// Smallest integer >= x.
Z ceil(const Q& x);
/// Largest integer <= x.
Z floor(const Q& x);

/// Nonnegative rational or +infinity. Houses hom-metric values and norms.
class ExtRational {
 public:
  ExtRational() : value_(0) {}
  ExtRational(const Q& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtRational(int v) : value_(Q(v)) {}    // NOLINT(google-explicit-constructor)

  static ExtRational infinity() {
    ExtRational r;
    r.value_.reset();
    return r;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws if infinite.
  const Q& value() const {
    if (!value_) throw std::logic_error("ExtRational: value of infinity");
    return *value_;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtRational(*a.value_ + *b.value_);
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return *a.value_ == *b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    if (a.is_infinite()) return std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    if (*a.value_ < *b.value_) return std::strong_ordering::less;
    if (*a.value_ > *b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend bool operator==(const ExtRational& a, const Q& b) { return a == ExtRational(b); }
  friend std::strong_ordering operator<=>(const ExtRational& a, const Q& b) {
    return a <=> ExtRational(b);
  }
  friend bool operator==(const ExtRational& a, int b) { return a == ExtRational(b); }
  friend std::strong_ordering operator<=>(const ExtRational& a, int b) { return a <=> ExtRational(b); }

 private:
  std::optional<Q> value_;
};

inline ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }
inline ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }

/// "p/q" or "inf".
std::string to_string(const ExtRational& x);
ExtRational parse_ext_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const ExtRational& x);

using QVector = std::vector<Q>;

}  // namespace fraisse
