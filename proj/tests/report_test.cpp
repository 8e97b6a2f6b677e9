#include <gtest/gtest.h>

#include <json.hpp>

#include "charslope/expr.hpp"
#include "charslope/report.hpp"

namespace charslope {
namespace {

TEST(Report, JsonRoundTrip) {
  BoundReport r = bound(parse_knot("hyp(borromean; hyp(whitehead; torus(2,3)), sum(hyp(fig8), hyp(stevedore)))"),
                        bundled_db());
  r.warnings.push_back("boundary: s at [1] rounded up from 21.9999999999 to 22");
  r.witnesses = std::vector<Slope>{Slope(1, 77), Slope(-1, 3)};
  EXPECT_EQ(report_from_json(report_to_json(r)), r);

  const BoundReport graph = bound(torus(2, 11), {});
  EXPECT_EQ(report_from_json(report_to_json(graph)), graph);
}

TEST(Report, JsonShape) {
  const BoundReport r = bound(parse_knot("hyp(whitehead; torus(2,3))"), bundled_db());
  const auto doc = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(doc["case"], "HyperbolicType");
  EXPECT_EQ(doc["C"], 34);
  EXPECT_EQ(doc["per_piece"][0]["path"], nlohmann::json::array());
  EXPECT_FALSE(doc.contains("T"));
  EXPECT_FALSE(doc.contains("witnesses"));
  // Field order is stable.
  EXPECT_EQ(report_to_json(r).rfind("{\"case\":\"HyperbolicType\",\"C\":34,\"Q\":34", 0), 0u);
}

TEST(Report, FromJsonRejects) {
  for (const char* bad : {"", "[]", R"({"C": 1})", R"({"case": "Nope", "C": 1})", R"({"case": "Unknot"})",
                          R"({"case": "Unknot", "C": "1"})", R"({"case": "Unknot", "C": 0, "per_piece": [{}]})",
                          R"({"case": "Unknot", "C": 0, "witnesses": ["2/4"]})"}) {
    EXPECT_THROW(report_from_json(bad), std::invalid_argument) << bad;
  }
}

TEST(Report, Text) {
  const BoundReport r = bound(parse_knot("hyp(whitehead; torus(2,3))"), bundled_db());
  EXPECT_EQ(report_to_text(r), "case: HyperbolicType\nC = 34\nQ = 34\nR = 2\nS = 25\npiece []: q=20 r=2\n");
}

TEST(Report, Surgery) {
  const SurgeryJsjResult s = surgery_jsj(cable(3, 2, torus(2, 3)), Slope(31, 5));
  EXPECT_EQ(surgery_to_json(s), R"({"case":"II","surgered_piece":[0],"filled_slope":"31/20","cable_multiplier":2})");
  EXPECT_EQ(surgery_to_text(s), "case: II\nsurgered piece: [0]\nfilled slope: 31/20\ncable multiplier: 2\n");
}

}  // namespace
}  // namespace charslope
