#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testing;

TEST_CASE("case-study attacker has ten techniques with the expected possessions") {
  const auto& caps = case_study().caps;
  CHECK(caps.size() == 10);
  const std::vector<std::pair<std::string, double>> expected = {
      {"T1210", 0.23},      {"T1199", 0.38},      {"T1595", 0.38},       {"T1592", 0.15},
      {"T1566.001", 0.25},  {"EX-0012", 0.24},    {"EX-0009.03", 0.23},  {"IA-0007.02", 0.27},
      {"IA-0008.01", 0.23}, {"REC-0005.02", 0.23}};
  for (const auto& [id, p] : expected) CHECK(caps.possession(id) == p);  // parsed decimals match the literals bit for bit
}

TEST_CASE("possession must lie in (0,1]") {
  CHECK_THROWS_AS(caps_of({{"T1", 0.0}}), PossessionOutOfRange);
  CHECK_THROWS_AS(caps_of({{"T1", 1.01}}), PossessionOutOfRange);
  CHECK_THROWS_AS(caps_of({{"T1", -0.2}}), PossessionOutOfRange);
  CHECK_NOTHROW(caps_of({{"T1", 1.0}}));
  CHECK_THROWS_AS(caps_of({{"T1", 0.5}, {"T1", 0.4}}), DuplicateTechnique);
}

TEST_CASE("empty capability set gives an all-zero analysis") {
  const auto& s = case_study();
  auto st = analyze(s.graph, s.missions, CapabilitySet{}, s.sus);
  for (const auto& [_, l] : st.node_l) CHECK(l == 0.0);
  for (const auto& [_, l] : st.arc_l) CHECK(l == 0.0);
  CHECK(st.max_mission() == 0.0);
}

TEST_CASE("direct likelihood is beta times possession") {
  const auto& s = case_study();
  // Hand products: 0.40 x 0.38 and 0.07 x 0.25.
  CHECK(direct_likelihood("GM.NET", "T1595", s.caps, s.sus) == doctest::Approx(0.152).epsilon(1e-15));
  CHECK(direct_likelihood("GM.SOFT", "T1566.001", s.caps, s.sus) ==
        doctest::Approx(0.0175).epsilon(1e-15));
  CHECK(direct_likelihood("UM.TX", "T1595", s.caps, s.sus) == 0.0);
  CHECK(direct_likelihood(ArcId{"GM.A&S", "GM.CMD", 0}, "T1595", s.caps, s.sus) == 0.0);
  CHECK_THROWS_AS(direct_likelihood("GM.NET", "T9999", s.caps, s.sus), UnknownTechnique);
}

TEST_CASE("direct likelihood stays under both factors and grows with each") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double b = u(rng), l = 0.001 + 0.999 * u(rng);
    auto caps = caps_of({{"T", l}});
    SusceptibilityMap sus;
    sus.node_beta[{"A", "T"}] = b;
    const double d = direct_likelihood("A", "T", caps, sus);
    CHECK(d <= b);
    CHECK(d <= l);
    CHECK(d >= 0.0);
    sus.node_beta[{"A", "T"}] = std::min(1.0, b + 0.1);
    CHECK(direct_likelihood("A", "T", caps, sus) >= d);
    auto stronger = caps_of({{"T", std::min(1.0, l + 0.1)}});
    sus.node_beta[{"A", "T"}] = b;
    CHECK(direct_likelihood("A", "T", stronger, sus) >= d);
  }
}

TEST_CASE("beta validation") {
  SusceptibilityMap sus;
  sus.node_beta[{"A", "T"}] = 1.5;
  CHECK_THROWS_AS(sus.validate(), BetaOutOfRange);
  SusceptibilityMap arcs;
  arcs.arc_beta[{ArcId{"A", "B", 0}, "T"}] = -0.1;
  CHECK_THROWS_AS(arcs.validate(), BetaOutOfRange);
}

TEST_CASE("beta is keyed per parallel arc") {
  SusceptibilityMap sus;
  sus.arc_beta[{ArcId{"A", "B", 1}, "T"}] = 0.5;
  CHECK(sus.arc({"A", "B", 1}, "T") == 0.5);
  CHECK(sus.arc({"A", "B", 0}, "T") == 0.0);
}

TEST_CASE("techniques_targeting lists positive-beta techniques in id order") {
  const auto& s = case_study();
  CHECK(techniques_targeting("GM.SOFT", s.caps, s.sus) == std::vector<std::string>{"T1566.001", "T1592"});
  CHECK(techniques_targeting(ArcId{"SM.PAYCOM", "UM.RX", 0}, s.caps, s.sus) ==
        std::vector<std::string>{"IA-0008.01", "REC-0005.02"});
  CHECK(techniques_targeting("UM.TX", s.caps, s.sus).empty());
}

TEST_CASE("capability set without some techniques") {
  auto caps = caps_of({{"A", 0.1}, {"B", 0.2}, {"C", 0.3}});
  auto less = caps.without({"B"});
  CHECK(less.size() == 2);
  CHECK_FALSE(less.contains("B"));
  CHECK(caps.contains("B"));
}

TEST_CASE("catalog tokens") {
  CHECK(parse_catalog("ATT&CK") == Catalog::attack);
  CHECK(parse_catalog("SPARTA") == Catalog::sparta);
  CHECK(parse_catalog(to_string(Catalog::attack)) == Catalog::attack);
}
