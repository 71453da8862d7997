#include "gasket/exact.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "gasket/error.hpp"

namespace gasket {
namespace {

using Wide = __int128;

Dyadic from_wide(Wide mantissa, int exponent) {
  if (mantissa == 0) return Dyadic();
  while ((mantissa & 1) == 0) {
    mantissa /= 2;
    --exponent;
  }
  if (mantissa > std::numeric_limits<std::int64_t>::max() ||
      mantissa < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::invalid_argument, "dyadic mantissa overflow");
  }
  return Dyadic(static_cast<std::int64_t>(mantissa), exponent);
}

// Both operands scaled to the larger exponent.
std::pair<Wide, Wide> aligned(const Dyadic& a, const Dyadic& b, int& exponent) {
  exponent = std::max(a.exponent(), b.exponent());
  const int sa = exponent - a.exponent();
  const int sb = exponent - b.exponent();
  if (sa > 60 || sb > 60) throw Error(ErrorCode::invalid_argument, "dyadic exponent gap too large");
  return {static_cast<Wide>(a.mantissa()) << sa, static_cast<Wide>(b.mantissa()) << sb};
}

}  // namespace

Dyadic::Dyadic(std::int64_t mantissa, int exponent) : mantissa_(mantissa), exponent_(exponent) {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const int tz = std::countr_zero(static_cast<std::uint64_t>(mantissa_));
  mantissa_ >>= tz;
  exponent_ -= tz;
}

Dyadic Dyadic::operator+(const Dyadic& rhs) const {
  int e = 0;
  const auto [a, b] = aligned(*this, rhs, e);
  return from_wide(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& rhs) const { return *this + (-rhs); }

Dyadic Dyadic::operator-() const { return Dyadic(-mantissa_, exponent_); }

Dyadic Dyadic::halved() const { return is_zero() ? *this : Dyadic(mantissa_, exponent_ + 1); }

Dyadic Dyadic::doubled() const { return is_zero() ? *this : Dyadic(mantissa_, exponent_ - 1); }

std::strong_ordering Dyadic::operator<=>(const Dyadic& rhs) const {
  int e = 0;
  const auto [a, b] = aligned(*this, rhs, e);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  return std::ldexp(static_cast<double>(mantissa_), -exponent_);
}

std::string Dyadic::to_string() const {
  if (exponent_ <= 0) {
    return std::to_string(static_cast<long long>(mantissa_) * (1LL << -exponent_));
  }
  return std::to_string(mantissa_) + "/" + std::to_string(std::uint64_t{1} << exponent_);
}

double Surd::to_double() const { return rational.to_double() + std::sqrt(3.0) * root3.to_double(); }

std::string Surd::to_string() const {
  if (root3.is_zero()) return rational.to_string();
  const std::string r = root3.to_string() + "*sqrt3";
  if (rational.is_zero()) return r;
  if (root3 < Dyadic()) return rational.to_string() + " - " + (-root3).to_string() + "*sqrt3";
  return rational.to_string() + " + " + r;
}

std::string Point::to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }

}  // namespace gasket
