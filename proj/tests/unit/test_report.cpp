#include <cstdint>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cubehc/errors.hpp"
#include "cubehc/report.hpp"
#include "generators.hpp"

using namespace cubehc;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(Base64, KnownVectors) {
  // RFC 4648 section 10
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"},
      {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, coded] : cases) {
    EXPECT_EQ(base64_encode(bytes(plain)), coded);
    EXPECT_EQ(base64_decode(coded), bytes(plain));
  }
}

TEST(Base64, RoundTripAndErrors) {
  Rng rng(5);
  for (int len = 0; len < 50; ++len) {
    std::vector<std::uint8_t> v(len);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng.uniform() * 256);
    EXPECT_EQ(base64_decode(base64_encode(v)), v);
  }
  EXPECT_THROW(base64_decode("abc"), InvalidInput);
  EXPECT_THROW(base64_decode("ab!d"), InvalidInput);
  EXPECT_THROW(base64_decode("a=bc"), InvalidInput);
}

TEST(Coefficients, RoundTripIsBitExact) {
  testgen::for_cases(61, 10, [](Rng& rng, int i) {
    const auto f = testgen::random_function(rng, i % 5);
    const auto g = decode_coefficients(encode_coefficients(f));
    ASSERT_EQ(g.dimension(), f.dimension());
    for (Subset s = 0; s < f.size(); ++s) EXPECT_EQ(g.coefficient(s), f.coefficient(s));
  });
  // 1.0 is 0x3FF0000000000000, stored little-endian
  EXPECT_EQ(encode_coefficients(CubeFunction::constant(0, 1.0)), "AAAAAAAA8D8AAAAAAAAAAA==");
  EXPECT_THROW(decode_coefficients("AAAA"), InvalidInput);
}

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.5,-1.25"), Complex(0.5, -1.25));
  EXPECT_EQ(parse_complex("2"), Complex(2.0, 0.0));
  EXPECT_EQ(parse_complex("1e-3,0"), Complex(1e-3, 0.0));
  EXPECT_THROW(parse_complex("x"), InvalidInput);
  EXPECT_THROW(parse_complex("1;2"), InvalidInput);
  EXPECT_THROW(parse_complex("1,2,3"), InvalidInput);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(ProblemJson, RoundTrip) {
  MomentProblem prob;
  prob.p = 2.5;
  prob.q = 3.0;
  prob.d = 2;
  prob.phi = {1.0, Complex(0.0, 1.0), 2.0};
  prob.real_only = true;
  prob.gap_tolerance = 1e-5;
  const auto back = problem_from_json(problem_to_json(prob));
  EXPECT_EQ(back.p, prob.p);
  EXPECT_EQ(back.q, prob.q);
  EXPECT_EQ(back.d, prob.d);
  EXPECT_EQ(back.phi, prob.phi);
  EXPECT_EQ(back.M, prob.boundary_points());
  EXPECT_TRUE(back.real_only);
  EXPECT_EQ(back.gap_tolerance, 1e-5);

  const auto plain = problem_from_json(Json::parse(R"({"p": 2.5, "d": 1, "phi": [1, [0, 2]]})"));
  EXPECT_EQ(plain.q, 2.5);
  EXPECT_EQ(plain.phi[1], Complex(0.0, 2.0));
  EXPECT_THROW(problem_from_json(Json::parse(R"({"p": 2.5, "d": 2, "phi": [1, 0]})")), InvalidInput);
  EXPECT_THROW(problem_from_json(Json::parse(R"({"p": "x", "d": 1, "phi": [1, 0]})")), InvalidInput);
}

TEST(SolutionJson, MeasureRoundTrip) {
  MomentProblem prob;
  prob.p = prob.q = 2.5;
  prob.d = 2;
  prob.phi = {0.0, 1.0, 2.0};
  const auto s = solve(prob);
  const Json j = solution_to_json(prob, s);
  EXPECT_EQ(j.at("schema"), kSchemaVersion);
  EXPECT_EQ(j.begin().key(), "schema");
  const auto m = measure_from_json(Json::parse(j.dump()));
  EXPECT_EQ(m.atoms.size(), s.measure.atoms.size());
  EXPECT_EQ(m.tv_norm(), s.measure.tv_norm());
  EXPECT_THROW(measure_from_json(Json::parse(R"({"atoms": [[1, 2]]})")), InvalidInput);
}

TEST(ReportJson, KeyOrder) {
  VerificationReport r;
  r.inequality = "reduced";
  const Json j = report_to_json(r, false);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected = {"schema", "inequality", "fixed", "grid", "evaluated", "worst_margin",
                                             "witness", "tolerance", "pass", "expect_violation", "as_expected",
                                             "note"};
  EXPECT_EQ(keys, expected);
}
