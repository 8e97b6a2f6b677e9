#pragma once

// 50-digit reference evaluations of the kernel formulas. Test-only; kept
// independent of the double-precision code paths they check.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace charslope::oracle {

using Real = boost::multiprecision::cpp_dec_float_50;

inline Real pi() { return boost::math::constants::pi<Real>(); }
inline Real sqrt3() { return boost::multiprecision::sqrt(Real(3)); }

/// Exact decimal text -> 50-digit real, so "0.0141687" is not rounded through a double.
inline Real dec(const std::string& text) { return Real(text); }

inline Real q_value(const Real& sys) {
  return boost::multiprecision::sqrt(6 * sqrt3() * (Real("1.9793") * 2 * pi() / sys + Real("28.78")));
}

inline Real s_value(const Real& sys) {
  return boost::multiprecision::sqrt(6 * sqrt3() * (2 * pi() / sys + Real("28.78")));
}

inline Real r_value(const Real& longest_meridian) { return sqrt3() * longest_meridian; }

inline std::int64_t floor_int(const Real& v) {
  return boost::multiprecision::floor(v).convert_to<std::int64_t>();
}

inline Real q_leq_s_threshold(std::int64_t Q) {
  return 12 * sqrt3() * pi() / (Real(Q) * Q - Real("172.68") * sqrt3());
}

}  // namespace charslope::oracle
