#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace testing;

namespace {

// Transcribed grid, top row is likelihood 5; columns are impact 1..5.
constexpr int kGrid[5][5] = {
    {7, 16, 20, 23, 25},
    {6, 13, 18, 22, 24},
    {4, 10, 15, 19, 21},
    {2, 8, 11, 14, 17},
    {1, 3, 5, 9, 12},
};

NrsResult run(const std::string& file, RiskBand tau = RiskBand::medium) {
  auto s = load_nrs_scenario(data(file));
  return assess(s.applicable, s.base, tau, s.catalog, s.matrix.value_or(RiskMatrix::standard()));
}

const NrsAssessment& row(const NrsResult& r, const std::string& t) {
  auto it = std::find_if(r.assessments.begin(), r.assessments.end(),
                         [&](const auto& a) { return a.technique == t; });
  REQUIRE(it != r.assessments.end());
  return *it;
}

}  // namespace

TEST_CASE("every matrix cell matches the transcribed grid") {
  for (int l = 1; l <= 5; ++l)
    for (int i = 1; i <= 5; ++i) {
      CAPTURE(l);
      CAPTURE(i);
      CHECK(matrix_lookup(i, l) == kGrid[5 - l][i - 1]);
    }
  CHECK(matrix_lookup(5, 5) == 25);
  CHECK(matrix_lookup(3, 3) == 15);
  CHECK(matrix_lookup(1, 1) == 1);
  CHECK(matrix_lookup(4, 4) == 22);
  CHECK(matrix_lookup(5, 4) == 24);
}

TEST_CASE("matrix rejects out-of-range coordinates") {
  CHECK_THROWS_AS(matrix_lookup(0, 3), OutOfRange);
  CHECK_THROWS_AS(matrix_lookup(3, 6), OutOfRange);
}

TEST_CASE("matrix is monotone in impact and in likelihood") {
  for (int l = 1; l <= 5; ++l)
    for (int i = 1; i <= 5; ++i) {
      if (i < 5) CHECK(matrix_lookup(i, l) <= matrix_lookup(i + 1, l));
      if (l < 5) CHECK(matrix_lookup(i, l) <= matrix_lookup(i, l + 1));
    }
}

TEST_CASE("bands partition the grid") {
  std::set<int> seen;
  int counts[3] = {0, 0, 0};
  for (int l = 1; l <= 5; ++l)
    for (int i = 1; i <= 5; ++i) {
      const int s = matrix_lookup(i, l);
      CHECK(seen.insert(s).second);  // each score used once
      const auto b = categorize(s);
      const bool low = s <= 10, med = s >= 11 && s <= 19, high = s >= 20;
      CHECK(low + med + high == 1);
      CHECK((b == RiskBand::low) == low);
      CHECK((b == RiskBand::medium) == med);
      CHECK((b == RiskBand::high) == high);
      ++counts[static_cast<int>(b)];
    }
  CHECK(seen.size() == 25);
  CHECK(counts[0] + counts[1] + counts[2] == 25);
  CHECK(categorize(10) == RiskBand::low);
  CHECK(categorize(15) == RiskBand::medium);
  CHECK(categorize(25) == RiskBand::high);
  CHECK_THROWS_AS(categorize(0), OutOfRange);
  CHECK_THROWS_AS(categorize(26), OutOfRange);
}

TEST_CASE("Terra") {
  auto r = run("nrs_terra.json");
  CHECK(r.intolerable() == std::set<std::string>{"EX-0013", "IA-0007", "EX-0012.10", "T1133"});
  CHECK(row(r, "EX-0013").score == 25);
  CHECK(row(r, "IA-0007").score == 25);
  CHECK(row(r, "EX-0012.10").score == 24);
  CHECK(row(r, "T1133").score == 21);
  CHECK(row(r, "T1586").score == 15);
  CHECK(row(r, "T1586").tolerable);
  CHECK(row(r, "IA-0007").base->likelihood == 4);
  CHECK(row(r, "IA-0007").tailored.likelihood == 5);
  CHECK(row(r, "EX-0012.10").selected_countermeasures == std::vector<std::string>{"CM0039"});
  CHECK(r.controls.count("CM-7") == 1);
}

TEST_CASE("Turla") {
  auto r = run("nrs_turla.json");
  CHECK(row(r, "REC-0005.02").score == 22);
  CHECK(row(r, "EXF-0010").score == 24);
  CHECK(row(r, "T1590.005").score == 6);
  CHECK(r.intolerable() == std::set<std::string>{"REC-0005.02", "EXF-0010"});
  CHECK(row(r, "EXF-0010").selected_countermeasures == std::vector<std::string>{"CM0031", "CM0036"});
  CHECK(row(r, "EXF-0010").selected_controls == std::vector<std::string>{"AC-12"});
}

TEST_CASE("tolerance boundary is inclusive") {
  auto r = run("nrs_terra.json", RiskBand::high);
  CHECK(r.intolerable().empty());
  // At tolerance low T1586 becomes intolerable and the scenario lists nothing for it.
  CHECK_THROWS_AS(run("nrs_terra.json", RiskBand::low), MissingCatalogEntry);
  auto s = load_nrs_scenario(data("nrs_terra.json"));
  s.catalog.by_technique["T1586"].push_back({"unspecified", "", {}});
  auto strict = assess(s.applicable, s.base, RiskBand::low, s.catalog);
  CHECK(strict.intolerable().count("T1586") == 1);
  CHECK(strict.intolerable().size() == 5);
}

TEST_CASE("empty applicable list") {
  auto r = assess({}, {}, RiskBand::medium, {});
  CHECK(r.assessments.empty());
  CHECK(r.controls.empty());
}

TEST_CASE("order of techniques does not matter") {
  auto s = load_nrs_scenario(data("nrs_terra.json"));
  auto a = assess(s.applicable, s.base, RiskBand::medium, s.catalog);
  std::reverse(s.applicable.begin(), s.applicable.end());
  auto b = assess(s.applicable, s.base, RiskBand::medium, s.catalog);
  CHECK(a.intolerable() == b.intolerable());
  CHECK(a.controls == b.controls);
  REQUIRE(a.assessments.size() == b.assessments.size());
  for (std::size_t i = 0; i < a.assessments.size(); ++i) {
    CHECK(a.assessments[i].technique == b.assessments[i].technique);
    CHECK(a.assessments[i].score == b.assessments[i].score);
  }
}

TEST_CASE("missing inputs") {
  CHECK_THROWS_AS(assess({{"T1", Criticality::high, std::nullopt}}, {}, RiskBand::medium, {}),
                  MissingCatalogEntry);
  // Intolerable with no countermeasure listed.
  CHECK_THROWS_AS(assess({{"T1", Criticality::high, ImpactLikelihood{5, 5}}}, {}, RiskBand::medium, {}),
                  MissingCatalogEntry);
  CHECK_THROWS_AS(assess({{"T1", Criticality::high, ImpactLikelihood{6, 5}}}, {}, RiskBand::medium, {}),
                  OutOfRange);
  CHECK_THROWS_AS(assess({{"T1", Criticality::low, ImpactLikelihood{1, 1}},
                          {"T1", Criticality::low, ImpactLikelihood{1, 1}}},
                         {}, RiskBand::medium, {}),
                  ValidationError);
}

TEST_CASE("matrix override") {
  RiskMatrix m = RiskMatrix::standard();
  m.cells[0][0] = 20;  // no longer monotone along impact
  CHECK_THROWS_AS(m.validate(), OutOfRange);
  auto parsed = parse_risk_matrix(R"([[7,16,20,23,25],[6,13,18,22,24],[4,10,15,19,21],
                                       [2,8,11,14,17],[1,3,5,9,12]])");
  CHECK(parsed.cells == RiskMatrix::standard().cells);
  CHECK_THROWS_AS(parse_risk_matrix("[[1,2,3]]"), ParseError);
}
