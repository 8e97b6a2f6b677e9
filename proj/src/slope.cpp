#include "charslope/slope.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace charslope {

namespace {

std::int64_t checked_abs(std::int64_t v) {
  if (v == INT64_MIN) throw std::invalid_argument("slope component out of range");
  return v < 0 ? -v : v;
}

}  // namespace

Slope::Slope(std::int64_t p, std::int64_t q) {
  const std::int64_t ap = checked_abs(p);
  const std::int64_t aq = checked_abs(q);
  if (std::gcd(ap, aq) != 1) {
    throw std::invalid_argument("slope " + std::to_string(p) + "/" + std::to_string(q) +
                                " is not in lowest terms");
  }
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 0) p = 1;
  p_ = p;
  q_ = q;
}

Slope Slope::reduced(std::int64_t p, std::int64_t q) {
  const std::int64_t g = std::gcd(checked_abs(p), checked_abs(q));
  if (g == 0) throw std::invalid_argument("0/0 is not a slope");
  return Slope(p / g, q / g);
}

std::string Slope::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

Slope parse_slope(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw std::invalid_argument("slope must be written p/q");
  auto parse_part = [](std::string_view part, bool allow_sign) {
    if (part.empty()) throw std::invalid_argument("empty slope component");
    if (!allow_sign && (part.front() == '-' || part.front() == '+')) {
      throw std::invalid_argument("the sign of a slope goes on p");
    }
    if (part.front() == '+') part.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw std::invalid_argument("bad slope component '" + std::string(part) + "'");
    }
    return v;
  };
  const std::int64_t p = parse_part(text.substr(0, slash), true);
  const std::int64_t q = parse_part(text.substr(slash + 1), false);
  return Slope(p, q);
}

std::int64_t slope_distance(const Slope& a, const Slope& b) {
  std::int64_t x = 0, y = 0, d = 0;
  if (__builtin_mul_overflow(a.p(), b.q(), &x) || __builtin_mul_overflow(b.p(), a.q(), &y) ||
      __builtin_sub_overflow(x, y, &d) || d == INT64_MIN) {
    throw std::overflow_error("slope distance overflows");
  }
  return d < 0 ? -d : d;
}

}  // namespace charslope
