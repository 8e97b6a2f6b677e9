#include <gtest/gtest.h>

#include "charslope/bounds.hpp"
#include "charslope/expr.hpp"
#include "oracle.hpp"

namespace charslope {
namespace {

const GeometryDb& db() { return bundled_db(); }

BoundReport compute(std::string_view expr) { return bound(parse_knot(expr), db()); }

constexpr const char* kBorromeanFixture = "hyp(borromean; hyp(whitehead; torus(2,3)), sum(hyp(fig8), hyp(stevedore)))";
constexpr const char* kTwistedFixture =
    "hyp(borromean_m5_2; hyp(whitehead_m7; torus(2,3)), sum(hyp(fig8), hyp(stevedore)))";

TEST(Bound, BorromeanFixture) {
  const BoundReport r = compute(kBorromeanFixture);
  EXPECT_EQ(r.case_tag, CaseTag::HyperbolicType);
  EXPECT_EQ(r.Q, 34);
  EXPECT_EQ(r.R, 2);
  EXPECT_EQ(r.S, 25);
  EXPECT_EQ(r.C, 34);
  EXPECT_TRUE(r.warnings.empty());
  ASSERT_EQ(r.per_piece.size(), 4u);
  EXPECT_EQ(r.per_piece[0], (PieceContribution{{}, 18, 2, std::nullopt}));
  EXPECT_EQ(r.per_piece[1], (PieceContribution{{0}, std::nullopt, 2, 18}));
  EXPECT_EQ(r.per_piece[2], (PieceContribution{{1, 0}, std::nullopt, 0, 18}));
  EXPECT_EQ(r.per_piece[3], (PieceContribution{{1, 1}, std::nullopt, 0, 22}));
}

TEST(Bound, CableOfBorromeanFixture) {
  const BoundReport r = compute(std::string("cable(1,2;") + kBorromeanFixture + ")");
  EXPECT_EQ(r.C, 34);
  EXPECT_EQ(r.Q, 34);
  ASSERT_FALSE(r.per_piece.empty());
  EXPECT_EQ(r.per_piece[0].path, (TorusId{0}));
  EXPECT_EQ(r.per_piece[0].q, 18);
}

TEST(Bound, TwistedFixture) {
  const BoundReport r = compute(kTwistedFixture);
  EXPECT_EQ(r.R, 36);
  EXPECT_EQ(r.C, 36);
  EXPECT_EQ(r.per_piece[0].r, 24);
  EXPECT_EQ(r.per_piece[1].r, 36);
}

TEST(Bound, WhiteheadDoubles) {
  EXPECT_EQ(compute("hyp(whitehead; hyp({sys=0.0141687}))").C, 70);
  EXPECT_EQ(compute("hyp(whitehead; hyp(pretzel_m2_m77_77))").C, 136);
  EXPECT_EQ(compute("hyp(whitehead; torus(2,3))").C, 34);
}

TEST(Bound, GraphPrimeTable) {
  EXPECT_EQ(compute("torus(2,3)").C, 8);
  EXPECT_EQ(compute("torus(3,7)").C, 8);
  EXPECT_EQ(compute("torus(2,11)").C, 11);
  EXPECT_EQ(compute("torus(-2,11)").C, 11);
  // One cable: max{8, |s1|, |r1|+|a|, |r1|+|b|}.
  EXPECT_EQ(compute("cable(1,2; torus(2,3))").C, 8);
  EXPECT_EQ(compute("cable(1,11; torus(2,3))").C, 11);
  EXPECT_EQ(compute("cable(-9,2; torus(2,3))").C, 12);
  // Two or more cables: r1 belongs to the innermost.
  EXPECT_EQ(compute("cable(7,2; cable(5,2; torus(2,3)))").C, 8);
  EXPECT_EQ(compute("cable(99,2; cable(1,2; cable(5,2; torus(2,3))))").C, 8);
  EXPECT_EQ(compute("cable(1,2; cable(1,2; torus(2,3)))").C, 4);
  EXPECT_EQ(compute("sum(torus(2,3), torus(2,5))").C, 1);
  EXPECT_EQ(compute("sum(torus(2,3), hyp(fig8))").case_tag, CaseTag::Composite);
  EXPECT_EQ(compute("cable(1,2; sum(torus(2,3), torus(2,5)))").C, 2);
  EXPECT_EQ(compute("cable(3,2; cable(1,2; sum(torus(2,3), torus(2,5))))").C, 2);
  EXPECT_EQ(compute("unknot").C, 0);
  EXPECT_EQ(compute("unknot").case_tag, CaseTag::Unknot);
}

TEST(Bound, QPeelsOneCableOnly) {
  // Y is the cable companion; with a second cable layer Y is Seifert fibred.
  const BoundReport one = compute("cable(1,2; hyp({sys=0.001}))");
  EXPECT_EQ(one.Q, oracle::floor_int(oracle::q_value(oracle::dec("0.001"))));
  const BoundReport two = compute("cable(1,2; cable(1,2; hyp({sys=0.001})))");
  EXPECT_EQ(two.Q, 0);
  EXPECT_EQ(two.S, oracle::floor_int(oracle::s_value(oracle::dec("0.001"))));
  const BoundReport in_sum = compute("cable(1,2; sum(hyp({sys=0.001}), torus(2,3)))");
  EXPECT_EQ(in_sum.Q, 0);
}

TEST(Bound, ComponentsRequireHyperbolicType) {
  EXPECT_THROW(compute_Q(torus(2, 3), db()), PreconditionError);
  EXPECT_THROW(compute_R(unknot(), db()), PreconditionError);
  EXPECT_THROW(compute_S(sum({torus(2, 3), torus(2, 5)}), db()), PreconditionError);
  EXPECT_EQ(compute_S(parse_knot("hyp(fig8)"), db()).value, 25);
}

TEST(Bound, InvalidAndMissing) {
  EXPECT_THROW(compute("torus(2,4)"), InvalidTree);
  EXPECT_THROW(compute("hyp(nosuchlink)"), MissingGeometry);
}

TEST(Bound, BoundaryWarning) {
  // Choose a systole making the s radicand land within 1e-10 below 26.
  const double target = 26.0 - 1e-11;
  const double sys = 2 * M_PI / (target * target / (6 * std::sqrt(3.0)) - 28.78);
  const SatelliteTree t = hyp(std::string("whitehead"), {hyp(inline_geometry(sys))});
  const BoundReport r = bound(t, db());
  EXPECT_EQ(r.S, 26);
  ASSERT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.warnings.front().rfind("boundary: s at [0]", 0), 0u) << r.warnings.front();
}

AnnotationSet annotate(TorusId torus, Evidence e, bool complete = false) {
  return AnnotationSet{{SpliceAnnotation{std::move(torus), e}}, complete};
}

TEST(Refined, SignatureFixture) {
  const SatelliteTree t = parse_knot("hyp(whitehead; hyp({sys=0.0141687}))");
  EXPECT_EQ(bound(t, db()).C, 70);
  const BoundReport r = refined_bound(t, db(), annotate({0}, evidence::SignatureObstruction{-38}));
  EXPECT_EQ(r.case_tag, CaseTag::Refined);
  EXPECT_EQ(r.Q, 34);
  EXPECT_EQ(r.T, 0);
  EXPECT_EQ(r.C, 34);
}

TEST(Refined, FibredFixture) {
  const SatelliteTree t = parse_knot("hyp(whitehead; hyp(pretzel_m2_m77_77))");
  EXPECT_EQ(bound(t, db()).C, 136);
  const BoundReport r = refined_bound(t, db(), annotate({0}, evidence::CompositeOrFibred{}));
  EXPECT_EQ(r.T, 1);
  EXPECT_EQ(r.C, 34);
}

TEST(Refined, TwistFixture) {
  const SatelliteTree t = parse_knot("hyp(whitehead; hyp({sys=0.5}))");
  const AnnotationSet a = annotate({0}, evidence::TwistCoefficient{77});
  EXPECT_EQ(refined_bound(t, db(), a).C, 77);
  EXPECT_EQ(noncharacterising_witnesses(t, db(), a), std::vector<Slope>{Slope(1, 77)});
  EXPECT_TRUE(noncharacterising_witnesses(t, db(), annotate({0}, evidence::TwistCoefficient{0})).empty());
}

TEST(Refined, Preconditions) {
  const AnnotationSet none{{}, true};
  EXPECT_THROW(refined_bound(parse_knot("hyp(fig8)"), db(), none), PreconditionError);
  EXPECT_THROW(refined_bound(parse_knot("cable(1,2; hyp(fig8))"), db(), none), PreconditionError);
  // Nonzero linking on a hyperbolic edge.
  EXPECT_THROW(refined_bound(parse_knot("hyp({sys=1,mu=[1],lk=[1]}; torus(2,3))"), db(), none),
               PreconditionError);
  EXPECT_THROW(noncharacterising_witnesses(parse_knot("cable(1,2; torus(2,3))"), db(), none), PreconditionError);
}

TEST(Refined, AnnotationCoverage) {
  const SatelliteTree t = parse_knot("hyp(whitehead; cable(1,2; torus(2,3)))");
  // The torus below the cable has winding 0 * 2 = 0 and needs an annotation too.
  EXPECT_THROW(refined_bound(t, db(), annotate({0}, evidence::PatternKnotted{})), AnnotationError);
  EXPECT_EQ(refined_bound(t, db(), annotate({0}, evidence::PatternKnotted{}, true)).C, 34);
  AnnotationSet both{{{{0}, evidence::NotSplicifiable{}}, {{0, 0}, evidence::TwistCoefficient{40}}}, false};
  EXPECT_EQ(refined_bound(t, db(), both).C, 40);
  EXPECT_THROW(refined_bound(t, db(), annotate({5}, evidence::PatternKnotted{}, true)), AnnotationError);
  EXPECT_THROW(refined_bound(t, db(), annotate({}, evidence::PatternKnotted{}, true)), AnnotationError);
}

TEST(Refined, EvidenceContributions) {
  EXPECT_EQ(twist_contribution(evidence::TwistCoefficient{5}), 5);
  EXPECT_EQ(twist_contribution(evidence::CompositeOrFibred{}), 1);
  EXPECT_EQ(twist_contribution(evidence::SignatureObstruction{4}), 0);
  EXPECT_EQ(twist_contribution(evidence::SignatureObstruction{-38}), 0);
  EXPECT_THROW(twist_contribution(evidence::SignatureObstruction{2}), AnnotationError);
  EXPECT_THROW(twist_contribution(evidence::SignatureObstruction{-3}), AnnotationError);
  EXPECT_THROW(twist_contribution(evidence::TwistCoefficient{-1}), AnnotationError);
}

TEST(Annotations, Parse) {
  const AnnotationSet a = parse_annotations(R"({"complete": true, "annotations": [
      {"torus": [0], "evidence": {"kind": "signature", "sigma": -38}},
      {"torus": [0, 1], "evidence": {"kind": "twist", "t": 3}},
      {"torus": [1], "evidence": {"kind": "composite_or_fibred"}}]})");
  EXPECT_TRUE(a.complete);
  ASSERT_EQ(a.annotations.size(), 3u);
  EXPECT_EQ(a.annotations[0].evidence, Evidence(evidence::SignatureObstruction{-38}));
  EXPECT_EQ(a.annotations[1].torus, (TorusId{0, 1}));
  EXPECT_FALSE(parse_annotations("[]").complete);
}

TEST(Annotations, Rejections) {
  for (const char* bad : {"{", "3", R"({"annotations": [], "x": 1})", R"({"complete": 1, "annotations": []})",
                          R"([{"torus": [0]}])", R"([{"torus": [-1], "evidence": {"kind": "twist", "t": 1}}])",
                          R"([{"torus": [0], "evidence": {"kind": "twist"}}])",
                          R"([{"torus": [0], "evidence": {"kind": "twist", "t": 1.5}}])",
                          R"([{"torus": [0], "evidence": {"kind": "magic"}}])",
                          R"([{"torus": [0], "evidence": {"kind": "twist", "t": 1, "sigma": 4}}])"}) {
    EXPECT_THROW(parse_annotations(bad), AnnotationError) << bad;
  }
}

TEST(Surgery, Cases) {
  const SatelliteTree c = cable(3, 2, torus(2, 3));
  // p = q r s + 1 = 5*3*2 + 1.
  SurgeryJsjResult r = surgery_jsj(c, Slope(31, 5));
  EXPECT_EQ(r.case_tag, SurgeryCase::II);
  EXPECT_EQ(r.surgered_piece, (TorusId{0}));
  EXPECT_EQ(r.filled_slope, Slope(31, 20));
  EXPECT_EQ(r.cable_multiplier, 2);

  r = surgery_jsj(c, Slope(32, 5));
  EXPECT_EQ(r.case_tag, SurgeryCase::I);
  EXPECT_TRUE(r.surgered_piece.empty());
  EXPECT_EQ(r.filled_slope, Slope(32, 5));

  EXPECT_EQ(surgery_jsj(parse_knot("hyp(fig8)"), Slope(-19, 3), db()).case_tag, SurgeryCase::I);
  EXPECT_THROW(surgery_jsj(c, Slope(1, 2)), PreconditionError);
  EXPECT_THROW(surgery_jsj(unknot(), Slope(1, 3)), PreconditionError);
  EXPECT_THROW(surgery_jsj(c, Slope()), PreconditionError);
}

TEST(Misc, SdLowerBound) {
  EXPECT_EQ(sd_lower_bound(-38), 19);
  EXPECT_EQ(sd_lower_bound(0), 0);
  EXPECT_EQ(sd_lower_bound(3), 2);
}

TEST(Misc, QleqSThreshold) {
  EXPECT_NEAR(q_leq_s_threshold(34), 0.0762003, 5e-7);
  EXPECT_NEAR(q_leq_s_threshold(34), 0.0762003218092556, 1e-14);
  EXPECT_THROW(q_leq_s_threshold(17), PreconditionError);

  const QleqSCheck sig = q_leq_s_check(parse_knot("hyp(whitehead; hyp({sys=0.0141687}))"), db());
  EXPECT_TRUE(sig.holds);
  const QleqSCheck loose = q_leq_s_check(parse_knot("hyp(whitehead; hyp({sys=0.5}))"), db());
  EXPECT_FALSE(loose.holds);
  EXPECT_TRUE(q_leq_s_check(parse_knot("hyp(fig8)"), db()).holds);
}

TEST(CaseTag, RoundTrip) {
  for (auto t : {CaseTag::Unknot, CaseTag::Composite, CaseTag::GraphPrime, CaseTag::HyperbolicType,
                 CaseTag::Refined}) {
    EXPECT_EQ(parse_case_tag(to_string(t)), t);
  }
  EXPECT_FALSE(parse_case_tag("hyperbolic").has_value());
}

}  // namespace
}  // namespace charslope
