#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "symorbit/error.hpp"

namespace symorbit {

/// Exact rational number, always stored reduced with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw InvalidArgument("rational with zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend constexpr Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator-(Rational a) { return {-a.num_, a.den_}; }
  friend constexpr Rational operator-(Rational a, Rational b) { return a + (-b); }
  friend constexpr Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend constexpr bool operator==(const Rational&, const Rational&) = default;

  /// Representative in [0, modulus).
  constexpr Rational mod(std::int64_t modulus) const {
    std::int64_t span = modulus * den_;
    std::int64_t r = num_ % span;
    if (r < 0) r += span;
    return {r, den_};
  }

  std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string& text);

 private:
  constexpr void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw InvalidArgument("trailing characters");
      return Rational(v);
    }
    std::string a = text.substr(0, slash);
    std::string b = text.substr(slash + 1);
    std::size_t ua = 0, ub = 0;
    std::int64_t p = std::stoll(a, &ua);
    std::int64_t q = std::stoll(b, &ub);
    if (ua != a.size() || ub != b.size()) throw InvalidArgument("trailing characters");
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
}

}  // namespace symorbit
