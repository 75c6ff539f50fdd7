#include <gtest/gtest.h>

#include <random>
#include <string>

#include "isospec/io.hpp"

using namespace isospec;
using io::Json;

TEST(Io, DistributionRoundTrip) {
  const Json j = io::parse(R"({"lambda": [-1, 0.5, 2], "support": [1, 3], "weights": [0.25, 0.75]})");
  const Distribution d = io::distribution_from_json(j);
  EXPECT_EQ(d.support()[1], 2u);
  EXPECT_EQ(io::distribution_from_json(io::to_json(d)), d);
}

TEST(Io, SupportDefaultsToWholeSpectrum) {
  const Distribution d = io::distribution_from_json(io::parse(R"({"lambda": [0, 1], "weights": [1, 3]})"));
  EXPECT_TRUE(d.has_full_support());
}

TEST(Io, DoublesRoundTripBitwise) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> diag(6), off(5);
  for (double& v : diag) v = u(rng);
  for (double& v : off) v = u(rng) + 2.0;
  const TridiagonalMatrix t(diag, off);
  const Json back = io::parse(io::dump(io::to_json(t)));
  EXPECT_EQ(io::matrix_from_json(back), t);
}

TEST(Io, SequenceRoundTrip) {
  const Spectrum spec({0.0, 1.0, 3.0});
  const DistributionSequence seq({Distribution(spec, {1}, {1.0}), Distribution(spec, {0, 2}, {0.4, 0.6})});
  EXPECT_EQ(io::sequence_from_json(io::to_json(seq)), seq);
  EXPECT_EQ(io::curve_from_json(io::to_json(seq)).partition(), MomentCurve(seq).partition());
}

TEST(Io, BlowupRoundTripAndValidation) {
  const Spectrum spec({0.0, 1.0, 3.0});
  const BlowupPoint pt = rho(DistributionSequence({Distribution(spec, {1}, {1.0}), Distribution(spec, {0, 2}, {0.4, 0.6})}));
  const Json j = io::to_json(pt);
  EXPECT_EQ(j["blocks"].size(), 7u);
  EXPECT_EQ(j["blocks"][3]["subset"], Json::array({1, 2}));
  EXPECT_EQ(io::blowup_from_json(j), pt);

  Json bad = j;
  bad["blocks"][6]["values"][0] = 0.9;
  EXPECT_THROW(io::blowup_from_json(bad), InvalidInput);
  EXPECT_NO_THROW(io::blowup_point_from_json(bad));

  Json missing = j;
  missing["blocks"].erase(2);
  EXPECT_THROW(io::blowup_point_from_json(missing), InvalidInput);

  Json repeated = j;
  repeated["blocks"][1]["subset"] = Json::array({1});
  EXPECT_THROW(io::blowup_point_from_json(repeated), InvalidInput);
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(io::parse("{"), InvalidInput);
  EXPECT_THROW(io::distribution_from_json(io::parse(R"({"weights": [1]})")), InvalidInput);
  EXPECT_THROW(io::distribution_from_json(io::parse(R"({"lambda": [0], "weights": ["a"]})")), InvalidInput);
  EXPECT_THROW(io::distribution_from_json(io::parse(R"({"lambda": [0, 1], "support": [0], "weights": [1]})")),
               InvalidInput);
  EXPECT_THROW(io::distribution_from_json(io::parse(R"({"lambda": [0, 1], "support": [1.5], "weights": [1]})")),
               InvalidInput);
  EXPECT_THROW(io::sequence_from_json(io::parse(R"({"lambda": [0, 1], "parts": []})")), InvalidInput);
  EXPECT_THROW(io::matrix_from_json(io::parse(R"({"diag": [0, 1], "offdiag": []})")), InvalidInput);
  EXPECT_THROW(io::read_file("/nonexistent/file.json"), InvalidInput);
}

TEST(Io, PartitionAndComplexRecords) {
  EXPECT_EQ(io::to_json(OrderedPartition(3, {0b010, 0b101})), Json::parse("[[2],[1,3]]"));
  const Json cx = io::to_json(build_complex(3));
  EXPECT_EQ(cx["faces"].size(), 22u);
  EXPECT_EQ(cx["incidence"].size(), 12u * 2 + 4u * 6);
}

TEST(Io, OutputIsStable) {
  const Spectrum spec({0.0, 1.0, 2.0});
  const MomentCurve curve(DistributionSequence({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 1.0})}));
  const std::string a = io::dump(io::to_json(numeric_limit_report(curve, default_t_grid())));
  const std::string b = io::dump(io::to_json(numeric_limit_report(curve, default_t_grid())));
  EXPECT_EQ(a, b);
}
