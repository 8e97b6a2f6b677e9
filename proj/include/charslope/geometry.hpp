#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "charslope/slope.hpp"

namespace charslope {

/// Fixed numeric constants used by the slope bounds.
namespace constants {

// Additive offset in the core-length bound for long filling slopes.
inline constexpr double kFpsOffset = 28.78;
// Normalized length above which the core-length bound applies.
inline constexpr double kFpsMinNormalized = 7.823;
// Multiplier on 2*pi/sys inside the surgered-piece kernel.
inline constexpr double kQFactor = 1.9793;
// Length above which filling a hyperbolic manifold stays hyperbolic.
inline constexpr double kSixLength = 6.0;
inline constexpr double kSqrt3 = std::numbers::sqrt3;
// Universal lower bound on the area of a maximal cusp torus.
inline constexpr double kAreaMin = 2.0 * kSqrt3;
inline constexpr int kQFloor = 34;
inline constexpr int kSFloor = 25;
inline constexpr double kQleqSNumerator = 12.0 * kSqrt3 * std::numbers::pi;
inline constexpr double kQleqSOffset = 172.68;

constexpr bool nearly(double a, double b) { return (a > b ? a - b : b - a) < 1e-12; }
static_assert(nearly(kQleqSOffset, 6.0 * kFpsOffset));
static_assert(nearly(kQleqSNumerator, 2.0 * std::numbers::pi * 6.0 * kSqrt3));
static_assert(kQFactor > 1.0);

}  // namespace constants

enum class GeometrySource { Paper, Derived, User };

std::string_view to_string(GeometrySource source);
std::optional<GeometrySource> parse_source(std::string_view text);

/// Per-link hyperbolic invariants for a link L_0 u L_1 u ... u L_{m-1}.
///
/// meridian_lengths[i-1] and linking_numbers[i-1] describe component L_i.
/// Linking numbers may be unknown for inline geometries; operations that
/// need them report that as an error.
struct HyperbolicGeometry {
  std::optional<std::string> name;
  int components = 1;
  double systole = 0.0;
  std::vector<double> meridian_lengths;
  std::optional<std::vector<std::int64_t>> linking_numbers;
  GeometrySource source = GeometrySource::User;
  std::string notes;

  friend bool operator==(const HyperbolicGeometry&, const HyperbolicGeometry&) = default;
};

/// Builds an unnamed geometry the way the expression grammar does: the
/// component count follows from the meridian list, and a knot exterior
/// (no meridians) gets an empty linking-number list when none is given.
HyperbolicGeometry inline_geometry(double systole, std::vector<double> meridian_lengths = {},
                                   std::optional<std::vector<std::int64_t>> linking_numbers = {});

/// Empty when the geometry satisfies its invariants; otherwise one message per problem.
std::vector<std::string> geometry_problems(const HyperbolicGeometry& g);

class DbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable name -> geometry table.
class GeometryDb {
 public:
  GeometryDb() = default;

  /// Throws DbError on invalid entries or duplicate names.
  explicit GeometryDb(std::vector<HyperbolicGeometry> entries);

  const HyperbolicGeometry* find(std::string_view name) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> names() const;
  const std::map<std::string, HyperbolicGeometry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, HyperbolicGeometry, std::less<>> entries_;
};

/// Parses the JSON database format. Unknown keys, wrong types, invalid
/// entries and duplicate names all raise DbError.
GeometryDb parse_db(std::string_view json_text);
GeometryDb load_db(const std::string& path);
std::string db_to_json(const GeometryDb& db);

/// The dataset compiled into the library.
const GeometryDb& bundled_db();
std::string_view bundled_db_json();

struct GuardedInt {
  std::int64_t value = 0;
  bool boundary_warning = false;
  // The real number that was floored; kept for diagnostics.
  double underlying = 0.0;

  friend bool operator==(const GuardedInt& a, const GuardedInt& b) {
    return a.value == b.value && a.boundary_warning == b.boundary_warning;
  }
};

inline constexpr double kBoundaryEpsilon = 1e-9;

/// Floor that rounds up when the input sits within kBoundaryEpsilon below
/// the next integer. Over-estimating a bound is always safe.
GuardedInt guarded_floor(double v);

/// Real values under the floors of the three kernels.
double q_frak_value(double systole);
double r_frak_value(const std::vector<double>& meridian_lengths);
double s_frak_value(double systole);

GuardedInt q_frak(const HyperbolicGeometry& g);
GuardedInt r_frak(const HyperbolicGeometry& g);
GuardedInt s_frak(const HyperbolicGeometry& g);

/// |b| / sqrt(6 sqrt 3): lower bound on the normalized length of a slope a/b
/// on an outermost cusp. Throws std::domain_error for b == 0.
double normalized_length_lower_bound(std::int64_t b);

/// Upper bound 2 pi / (lhat^2 - 28.78) on the length of the core of a
/// filling whose slope has normalized length lhat. Requires lhat >= 7.823.
double core_length_upper_bound(double lhat);

/// Result of re-checking the threshold semantics of the kernels on one geometry.
struct ThresholdCheck {
  bool s_sufficient = true;
  bool s_minimal = true;  // vacuous when s < 26
  bool r_sufficient = true;
  bool r_minimal = true;  // vacuous when r == 0
  bool s_leq_q = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

ThresholdCheck check_thresholds(const HyperbolicGeometry& g);

}  // namespace charslope
