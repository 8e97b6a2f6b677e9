#include <gtest/gtest.h>

#include "charslope/expr.hpp"
#include "generators.hpp"

namespace charslope {
namespace {

constexpr int kRoundTrips = 500;
constexpr int kFuzzInputs = 10000;

TEST(ParserProperties, RoundTrip) {
  gen::Rng rng(101);
  for (int i = 0; i < kRoundTrips; ++i) {
    const SatelliteTree t = gen::tree(rng, {.max_depth = 5, .named_geometry = true});
    const std::string text = render(t);
    SatelliteTree back;
    ASSERT_NO_THROW(back = parse_knot(text)) << text;
    EXPECT_EQ(back, t) << text;
    EXPECT_EQ(render(back), text);
  }
}

// Either a tree or a positioned ParseError; never anything else.
void check_total(std::string_view input) {
  try {
    const SatelliteTree t = parse_knot(input);
    EXPECT_EQ(parse_knot(render(t)), t);
  } catch (const ParseError& e) {
    EXPECT_GE(e.line(), 1u);
    EXPECT_GE(e.column(), 1u);
  }
}

std::string mutate(gen::Rng& rng, std::string s) {
  static const std::string alphabet = "(),;{}=[]-.0123456789 \n\tabcdefghijklmnopqrstuvwxyz_";
  const auto edits = gen::uniform(rng, 1, 4);
  for (std::int64_t e = 0; e < edits; ++e) {
    if (s.empty()) s.push_back('(');
    const auto pos = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(s.size()) - 1));
    switch (gen::uniform(rng, 0, 3)) {
      case 0:
        s.erase(pos, 1);
        break;
      case 1:
        s.insert(pos, 1, alphabet[gen::uniform(rng, 0, static_cast<std::int64_t>(alphabet.size()) - 1)]);
        break;
      case 2:
        s[pos] = static_cast<char>(gen::uniform(rng, 0, 255));
        break;
      default:
        s = s.substr(0, pos);
        break;
    }
  }
  return s;
}

TEST(ParserProperties, FuzzNeverCrashes) {
  gen::Rng rng(202);
  int accepted = 0;
  for (int i = 0; i < kFuzzInputs; ++i) {
    std::string input;
    if (i % 2 == 0) {
      const auto len = gen::uniform(rng, 0, 64);
      for (std::int64_t j = 0; j < len; ++j) input.push_back(static_cast<char>(gen::uniform(rng, 0, 255)));
    } else {
      input = mutate(rng, render(gen::tree(rng, {.max_depth = 3, .named_geometry = true})));
    }
    try {
      parse_knot(input);
      ++accepted;
    } catch (const ParseError&) {
    }
    check_total(input);
  }
  EXPECT_GT(accepted, 0);
}

TEST(ParserProperties, PathologicalInputs) {
  check_total(std::string(100000, '('));
  check_total("hyp({sys=" + std::string(400, '9') + ".5})");
  check_total("torus(" + std::string(40, '9') + ",3)");
  check_total(std::string("torus(2,3)\0", 11));
  std::string nested;
  for (int i = 0; i < 5000; ++i) nested += "sum(";
  check_total(nested);
}

}  // namespace
}  // namespace charslope
