#ifndef DIAMOND_ANGLE_HPP
#define DIAMOND_ANGLE_HPP

#include <cstdint>
#include <optional>

#include "diamond/params.hpp"

namespace diamond {

// Base angle on the circle, normalized to [0, 2*pi).  Rational multiples of
// pi are kept exact (value = pi * num/den with gcd(num, den) = 1 and
// 0 <= num < 2*den) so that junction membership and arc indices are integer
// decisions; anything else is an ordinary double and by construction never a
// junction.
class Angle {
 public:
  static Angle pi_fraction(std::int64_t num, std::int64_t den);
  static Angle radians(double value);

  bool exact() const { return den_ > 0; }
  double value() const { return value_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Arc r at scale J covers [r*pi/J, (r+1)*pi/J); index in [0, 2J).
  uint128 arc_index(uint128 J) const;
  // value - arc*pi/J, in [0, pi/J)
  double local_offset(uint128 J) const;

  // Smallest level l <= depth whose junction set contains this angle, i.e.
  // den | J_l for exact angles; nullopt for non-junctions.
  std::optional<int> junction_level(const ParameterSequences& seq) const;

  bool same_as(const Angle& o) const;

 private:
  Angle() = default;
  double value_ = 0.0;
  std::int64_t num_ = 0, den_ = 0;  // den_ == 0 marks a non-exact angle
};

}  // namespace diamond

#endif
