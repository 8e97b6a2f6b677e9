#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "charslope/geometry.hpp"
#include "charslope/slope.hpp"
#include "charslope/tree.hpp"

namespace charslope {

/// A computation was asked of a knot it does not apply to.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A splice annotation is malformed or inconsistent with the tree.
class AnnotationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class CaseTag { Unknot, Composite, GraphPrime, HyperbolicType, Refined };

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> parse_case_tag(std::string_view text);

/// Kernel values a hyperbolic piece contributes; absent entries do not contribute.
struct PieceContribution {
  TorusId path;
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> s;
  friend bool operator==(const PieceContribution&, const PieceContribution&) = default;
};

struct BoundReport {
  CaseTag case_tag = CaseTag::Unknot;
  std::int64_t C = 0;
  std::optional<std::int64_t> Q;
  std::optional<std::int64_t> R;
  std::optional<std::int64_t> S;
  std::optional<std::int64_t> T;
  std::vector<PieceContribution> per_piece;
  std::vector<std::string> warnings;
  std::optional<std::vector<Slope>> witnesses;
  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// One of Q(K), R(K), S(K) with the pieces that produced it.
struct ComponentBound {
  std::int64_t value = 0;
  std::vector<PieceContribution> pieces;
  std::vector<std::string> warnings;
};

/// max{34, q(L_Y)} where Y is the outermost piece, or the outermost piece of
/// the companion when the knot is a cable; 0 when Y is not hyperbolic.
ComponentBound compute_Q(const SatelliteTree& tree, const GeometryDb& db);

/// Largest r over all hyperbolic pieces.
ComponentBound compute_R(const SatelliteTree& tree, const GeometryDb& db);

/// max{25, s(L_X)} over hyperbolic pieces X that are not the outermost piece.
ComponentBound compute_S(const SatelliteTree& tree, const GeometryDb& db);

/// Denominator bound C(K): |q| > C(K) makes p/q characterising.
BoundReport bound(const SatelliteTree& tree, const GeometryDb& db);

namespace evidence {
/// Companion unknotted by a nullhomologous Rolfsen twist with maximal coefficient t.
struct TwistCoefficient {
  std::int64_t t = 0;
  friend bool operator==(const TwistCoefficient&, const TwistCoefficient&) = default;
};
/// Companion signature; |sigma| >= 4 rules out unknotting by one twist.
struct SignatureObstruction {
  std::int64_t sigma = 0;
  friend bool operator==(const SignatureObstruction&, const SignatureObstruction&) = default;
};
/// Companion is composite or fibred, so its twist coefficient is at most 1.
struct CompositeOrFibred {
  friend bool operator==(const CompositeOrFibred&, const CompositeOrFibred&) = default;
};
/// Pattern knot is knotted, so the description is not splicifiable.
struct PatternKnotted {
  friend bool operator==(const PatternKnotted&, const PatternKnotted&) = default;
};
struct NotSplicifiable {
  friend bool operator==(const NotSplicifiable&, const NotSplicifiable&) = default;
};
}  // namespace evidence

using Evidence = std::variant<evidence::TwistCoefficient, evidence::SignatureObstruction,
                              evidence::CompositeOrFibred, evidence::PatternKnotted,
                              evidence::NotSplicifiable>;

struct SpliceAnnotation {
  TorusId torus;
  Evidence evidence;
  friend bool operator==(const SpliceAnnotation&, const SpliceAnnotation&) = default;
};

/// Annotations plus the caller's assertion that tori left unannotated are
/// not splicifiable.
struct AnnotationSet {
  std::vector<SpliceAnnotation> annotations;
  bool complete = false;
  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

/// Parses the annotation file: {"complete": bool, "annotations": [...]} or a bare list.
/// Throws AnnotationError.
AnnotationSet parse_annotations(std::string_view json_text);

/// Contribution of one annotation to T(K). Throws AnnotationError for a
/// signature below the obstruction threshold or a negative twist.
std::int64_t twist_contribution(const Evidence& e);

/// max{Q(K), T(K)} for knots whose every satellite description has winding
/// number zero.
BoundReport refined_bound(const SatelliteTree& tree, const GeometryDb& db, const AnnotationSet& annotations);

/// Slopes 1/t that twist annotations certify as non-characterising.
std::vector<Slope> noncharacterising_witnesses(const SatelliteTree& tree, const GeometryDb& db,
                                               const AnnotationSet& annotations);

enum class SurgeryCase { I, II };

/// Predicted surgered piece of S^3_K(p/q): the filled piece and its filling slope p/(q t^2).
struct SurgeryJsjResult {
  SurgeryCase case_tag = SurgeryCase::I;
  TorusId surgered_piece;
  Slope filled_slope;
  std::int64_t cable_multiplier = 1;
  friend bool operator==(const SurgeryJsjResult&, const SurgeryJsjResult&) = default;
};

/// Throws PreconditionError when q <= 2 or the knot is trivial.
SurgeryJsjResult surgery_jsj(const SatelliteTree& tree, const Slope& slope, const GeometryDb& db = {});

/// ceil(|sigma| / 2), a lower bound on the surgery description number.
std::int64_t sd_lower_bound(std::int64_t sigma);

struct QleqSCheck {
  double threshold = 0.0;
  bool holds = false;
};

/// Systole threshold 12 sqrt(3) pi / (Q^2 - 172.68 sqrt 3) below which every
/// non-outermost hyperbolic piece forces Q(K) <= S(K).
double q_leq_s_threshold(std::int64_t Q);
QleqSCheck q_leq_s_check(const SatelliteTree& tree, const GeometryDb& db);

}  // namespace charslope
