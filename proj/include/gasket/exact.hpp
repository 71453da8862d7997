#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace gasket {

/// Exact dyadic rational mantissa * 2^-exponent, kept in lowest terms
/// (odd mantissa, or zero with exponent 0).
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t mantissa, int exponent = 0);

  std::int64_t mantissa() const { return mantissa_; }
  int exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0; }

  Dyadic operator+(const Dyadic& rhs) const;
  Dyadic operator-(const Dyadic& rhs) const;
  Dyadic operator-() const;
  Dyadic halved() const;
  Dyadic doubled() const;

  bool operator==(const Dyadic&) const = default;
  std::strong_ordering operator<=>(const Dyadic& rhs) const;

  double to_double() const;
  /// "0", "-3", "3/8".
  std::string to_string() const;

 private:
  std::int64_t mantissa_ = 0;
  int exponent_ = 0;
};

/// a + b*sqrt(3) with dyadic a, b. Equality is exact because sqrt(3) is
/// irrational; no ordering is provided.
struct Surd {
  Dyadic rational;
  Dyadic root3;

  Surd operator+(const Surd& rhs) const { return {rational + rhs.rational, root3 + rhs.root3}; }
  Surd operator-(const Surd& rhs) const { return {rational - rhs.rational, root3 - rhs.root3}; }
  Surd halved() const { return {rational.halved(), root3.halved()}; }
  bool operator==(const Surd&) const = default;

  double to_double() const;
  /// "3/8", "1/8*sqrt3", "1/2 + 1/4*sqrt3".
  std::string to_string() const;
};

/// A point of the plane with exact coordinates.
struct Point {
  Surd x;
  Surd y;

  Point operator+(const Point& rhs) const { return {x + rhs.x, y + rhs.y}; }
  Point halved() const { return {x.halved(), y.halved()}; }
  bool operator==(const Point&) const = default;

  std::string to_string() const;
};

}  // namespace gasket
