#include <gtest/gtest.h>

#include <sstream>

#include "modcoeff/io.hpp"

using namespace modcoeff;

TEST(Io, BoundsCsvHeaderAndRows) {
  const CoeffTable t = tau_series(20);
  const auto s = verify_sandwich(t, index_range(1, 20));
  std::ostringstream out;
  io::write_bounds_csv(out, s.reports);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,abs_coeff,log_abs_coeff,log_hecke,log_deligne,log_gt_lower,log_thm1_lower,log_thm2_lower,flags");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8) << line;
  }
  EXPECT_EQ(rows, 20);
  EXPECT_NE(out.str().find("\n2,24,"), std::string::npos);
}

TEST(Io, TableJsonRoundTrip) {
  const CoeffTable t = tau_series(50);
  const io::Json j = io::table_json(t);
  const io::Json back = io::Json::parse(j.dump());
  const CoeffTable u = io::table_from_json(back, FormSpec::delta());
  for (std::uint64_t n = 1; n <= 50; ++n) EXPECT_EQ(t[n], u[n]);
  EXPECT_EQ(back["values"]["12"], "-370944");
}

TEST(Io, HeaderCarriesConstantsAndVersion) {
  io::RunInfo run{"verify", {{"n", 1000000}}, 256, 7};
  const io::Json h = io::header(run);
  EXPECT_EQ(h["schema_version"], io::kSchemaVersion);
  EXPECT_EQ(h["precision_bits"], 256);
  EXPECT_EQ(h["seed"], 7);
  EXPECT_EQ(h["constants"]["euler_gamma"]["value"], std::string(constants::kEulerGamma));
  EXPECT_EQ(h["constants"]["mertens_B"]["value"], std::string(constants::kMertensB));
}

TEST(Io, WorkedExampleJson) {
  const BoundReport r = make_bound_report(1000000, coeff_at(FormSpec::delta(), 1000000), 12);
  const io::Json j = io::bound_report_json(r);
  EXPECT_EQ(j["abs_coeff"], "262191418612588689102548992000000");
  EXPECT_EQ(j["bounds"]["deligne"]["value"].get<std::string>().substr(0, 4), "4.90");
  EXPECT_EQ(j["bounds"]["thm2_lower"]["value"].get<std::string>().substr(0, 3), "1.6");
  EXPECT_EQ(j["bounds"]["thm2_lower"]["satisfied"], true);
  EXPECT_FALSE(j.contains("prime_power"));
}

TEST(Io, SerializationIsDeterministic) {
  auto render = [] {
    const auto cls = classify_primes(FormSpec::delta(), 5000, ThresholdKind::GTLowerBound);
    std::ostringstream out;
    out << io::density_json(density_report(cls, 5000, 0.5, true)).dump(2);
    io::write_density_csv(out, density_report(cls, 5000, 0.5, false));
    return out.str();
  };
  EXPECT_EQ(render(), render());
}

TEST(Io, RealStrInfinities) {
  Real x(64);
  mpfr_set_inf(x.get(), -1);
  EXPECT_EQ(io::real_str(x), "-inf");
  const GapReport g = unimodular_gap_check(frobenius_angle(0, 5, 12), 1);
  EXPECT_EQ(io::gap_json(g)["log_margin"], "-inf");
  EXPECT_EQ(io::gap_json(g)["exact_zero"], true);
}
