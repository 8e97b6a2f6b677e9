#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace charslope {

/// A slope p/q in Q u {1/0}, stored up to sign with q >= 0 and gcd(|p|,|q|) = 1.
class Slope {
 public:
  /// The meridian 1/0.
  Slope() = default;

  /// Normalizes the sign onto p. Throws std::invalid_argument unless
  /// gcd(|p|,|q|) == 1.
  Slope(std::int64_t p, std::int64_t q);

  /// Divides out the common factor first.
  static Slope reduced(std::int64_t p, std::int64_t q);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  bool is_meridian() const { return q_ == 0; }

  std::string str() const;

  friend bool operator==(const Slope&, const Slope&) = default;

 private:
  std::int64_t p_ = 1;
  std::int64_t q_ = 0;
};

/// Parses "p/q" with an optional sign on p. The fraction must already be
/// reduced. Throws std::invalid_argument otherwise.
Slope parse_slope(std::string_view text);

/// Distance |p q' - p' q| between two slopes on the same torus.
std::int64_t slope_distance(const Slope& a, const Slope& b);

}  // namespace charslope
