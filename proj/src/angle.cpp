#include "diamond/angle.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "diamond/errors.hpp"

namespace diamond {

Angle Angle::pi_fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) fail(ErrorCode::Domain, "angle denominator must be positive");
  // reduce mod 2*den into [0, 2*den), then by gcd
  std::int64_t two = 2 * den;
  num %= two;
  if (num < 0) num += two;
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Angle a;
  a.num_ = num;
  a.den_ = den;
  a.value_ = M_PI * (static_cast<double>(num) / static_cast<double>(den));
  return a;
}

Angle Angle::radians(double value) {
  if (!std::isfinite(value)) fail(ErrorCode::Domain, "angle must be finite");
  double two_pi = 2.0 * M_PI;
  double v = value - two_pi * std::floor(value / two_pi);
  if (v >= two_pi) v = 0.0;
  Angle a;
  a.value_ = v;
  return a;
}

uint128 Angle::arc_index(uint128 J) const {
  if (exact()) {
    // floor(num*J/den) without overflowing 128 bits:
    //   num*J = num*(J/den)*den + num*(J%den)
    // and num*(J%den) < 2*den^2 fits since den is 64-bit.
    uint128 n = static_cast<uint128>(num_);
    uint128 d = static_cast<uint128>(den_);
    uint128 arc = n * (J / d) + (n * (J % d)) / d;
    return arc;
  }
  double x = value_ * static_cast<double>(J) / M_PI;
  double f = std::floor(x);
  if (f < 0) f = 0;
  uint128 arc = static_cast<uint128>(f);
  if (arc >= 2 * J) arc = 2 * J - 1;
  return arc;
}

double Angle::local_offset(uint128 J) const {
  if (exact()) {
    uint128 n = static_cast<uint128>(num_);
    uint128 d = static_cast<uint128>(den_);
    // num*J mod den, via the same split as arc_index
    uint128 r = (n * (J % d)) % d;
    if (r == 0) return 0.0;
    long double frac =
        static_cast<long double>(r) /
        (static_cast<long double>(d) * static_cast<long double>(J));
    return static_cast<double>(static_cast<long double>(M_PI) * frac);
  }
  double L = M_PI / static_cast<double>(J);
  double theta = value_ - static_cast<double>(arc_index(J)) * L;
  if (theta < 0) theta = 0;
  if (theta >= L) theta = std::nextafter(L, 0.0);
  return theta;
}

std::optional<int> Angle::junction_level(const ParameterSequences& seq) const {
  if (!exact()) return std::nullopt;
  uint128 d = static_cast<uint128>(den_);
  for (int l = 0; l <= seq.depth(); ++l)
    if (seq.J(l) % d == 0) return l;
  return std::nullopt;
}

bool Angle::same_as(const Angle& o) const {
  if (exact() != o.exact()) return false;
  if (exact()) return num_ == o.num_ && den_ == o.den_;
  return value_ == o.value_;
}

}  // namespace diamond
