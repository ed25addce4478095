// Copyright 2026 The freqpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "freqpath/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <numbers>

#include "freqpath/errors.hpp"
#include "freqpath/interference.hpp"
#include "json.hpp"

using namespace freqpath;
using json = nlohmann::json;

namespace {

Pattern small_counts() {
  Pattern p;
  p.delta_phi_grid = {-1.0, 0.0, 1.0};
  p.values = {10.0, 250.0, 12.0};
  p.meta.kind = PatternKind::kCounts;
  p.meta.counting = CountingRecord{1e4, 0.0, 2.5, 7};
  return p;
}

}  // namespace

TEST(Format, fifteen_significant_digits) {
  EXPECT_EQ(format_number(std::numbers::pi), "3.14159265358979");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-2.5e-20), "-2.5e-20");
}

TEST(PatternCsv, header_and_rows) {
  ExperimentConfig cfg = reference_config();
  cfg.drive_a = RfDrive::make(0.0, 0.0, cfg.omega_rad_per_ps());
  cfg.drive_b = cfg.drive_a;
  const std::vector<double> grid{0.0};
  EXPECT_EQ(pattern_csv(pattern_scan(cfg, grid)), "delta_phi_rad,probability\n0,1\n");
}

TEST(CountsCsv, round_trip) {
  const Pattern p = small_counts();
  const std::string text = counts_csv(p);
  EXPECT_EQ(text, "delta_phi_rad,counts,dwell_s\n-1,10,2.5\n0,250,2.5\n1,12,2.5\n");
  const Pattern back = parse_counts_csv(text);
  EXPECT_EQ(back.delta_phi_grid, p.delta_phi_grid);
  EXPECT_EQ(back.values, p.values);
  EXPECT_EQ(back.meta.kind, PatternKind::kCounts);
  ASSERT_TRUE(back.meta.counting.has_value());
  EXPECT_EQ(back.meta.counting->dwell_s, 2.5);
}

TEST(CountsCsv, accepts_crlf_and_blank_lines) {
  const Pattern p = parse_counts_csv("delta_phi_rad,counts,dwell_s\r\n0,5,1\r\n\r\n1,6,1\r\n");
  EXPECT_EQ(p.values, (std::vector<double>{5.0, 6.0}));
}

TEST(CountsCsv, malformed_inputs) {
  EXPECT_THROW(parse_counts_csv(""), DataError);
  EXPECT_THROW(parse_counts_csv("phi,counts\n0,1\n"), DataError);
  EXPECT_THROW(parse_counts_csv("delta_phi_rad,counts,dwell_s\n"), DataError);
  EXPECT_THROW(parse_counts_csv("delta_phi_rad,counts,dwell_s\n0,1\n"), DataError);
  EXPECT_THROW(parse_counts_csv("delta_phi_rad,counts,dwell_s\n0,abc,1\n"), DataError);
  EXPECT_THROW(parse_counts_csv("delta_phi_rad,counts,dwell_s\n0,1x,1\n"), DataError);
  EXPECT_THROW(parse_counts_csv("delta_phi_rad,counts,dwell_s\n0,-3,1\n"), DataError);
  EXPECT_THROW(parse_counts_csv("delta_phi_rad,counts,dwell_s\n0,nan,1\n"), DataError);
  EXPECT_THROW(read_counts_csv("/nonexistent/counts.csv"), DataError);
}

TEST(FitJson, contains_every_field) {
  FitResult r;
  r.params = {2.0, 2.8, 2.6, 0.1, 3.0};
  r.covariance.setIdentity();
  r.covariance(1, 1) = 0.04;
  r.chi2_per_dof = 1.2;
  r.converged = true;
  r.iterations = 9;
  const json doc = json::parse(fit_result_json(r));
  EXPECT_EQ(doc.at("params").at("a").get<double>(), 2.8);
  EXPECT_DOUBLE_EQ(doc.at("standard_errors").at("a").get<double>(), 0.2);
  EXPECT_EQ(doc.at("covariance").size(), 5u);
  EXPECT_EQ(doc.at("chi2_per_dof").get<double>(), 1.2);
  EXPECT_TRUE(doc.at("converged").get<bool>());
  EXPECT_EQ(doc.at("iterations").get<int>(), 9);
}

TEST(FitParamsJson, partial_override_and_errors) {
  const FitParams p = parse_fit_params(R"({"a": 3.0, "phi0": 0.2})", {5.0, 1.0, 1.0, 0.0, 1.0});
  EXPECT_EQ(p.scale, 5.0);
  EXPECT_EQ(p.a, 3.0);
  EXPECT_EQ(p.b, 1.0);
  EXPECT_EQ(p.phi0, 0.2);
  EXPECT_THROW(parse_fit_params("[1]"), ConfigError);
  EXPECT_THROW(parse_fit_params("{"), ConfigError);
  EXPECT_THROW(parse_fit_params(R"({"a": "x"})"), ConfigError);
}

TEST(CountingPlanJson, parse_and_validate) {
  const CountingPlan plan = parse_counting_plan(R"({"pair_rate_per_s": 100, "dwell_s": 2, "seed": 9})");
  EXPECT_EQ(plan.pair_rate_per_s, 100.0);
  EXPECT_EQ(plan.accidental_rate_per_s, 0.0);
  EXPECT_EQ(plan.dwell_s, 2.0);
  EXPECT_EQ(plan.seed, 9u);
  EXPECT_THROW(parse_counting_plan(R"({"dwell_s": 2})"), ConfigError);
  EXPECT_THROW(parse_counting_plan(R"({"pair_rate_per_s": 1, "dwell_s": 0})"), ConfigError);
  EXPECT_THROW(parse_counting_plan(R"({"pair_rate_per_s": -1, "dwell_s": 1})"), ConfigError);
}

TEST(HeatmapJson, bundles_grid_matrix_and_metadata) {
  ExperimentConfig cfg = reference_config();
  const std::vector<double> lengths{0.0, 10.0};
  const std::vector<double> grid{-1.0, 0.0, 1.0};
  const std::vector<Pattern> ps = distance_scan(cfg, lengths, grid);
  const json doc = json::parse(heatmap_json(cfg, lengths, ps));
  EXPECT_EQ(doc.at("delta_phi_rad").get<std::vector<double>>(), grid);
  EXPECT_EQ(doc.at("lengths_km").get<std::vector<double>>(), lengths);
  EXPECT_EQ(doc.at("probability").size(), 2u);
  EXPECT_EQ(doc.at("probability")[1].get<std::vector<double>>(), ps[1].values);
  EXPECT_EQ(doc.at("visibility").size(), 2u);
  EXPECT_EQ(doc.at("normalization").get<std::string>(), kNormalizationTag);
  EXPECT_EQ(parse_config(doc.at("config").dump()), cfg);
}

TEST(Manifest, lists_required_fields) {
  RunManifest m;
  m.command = "pattern";
  m.config_hash = "abc";
  m.outputs = {"x.csv"};
  m.timestamp = "2026-01-01T00:00:00Z";
  const json doc = json::parse(manifest_json(m));
  for (const char* key : {"command", "config_hash", "outputs", "engine_version", "timestamp"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc.at("engine_version").get<std::string>(), kEngineVersion);
  EXPECT_FALSE(doc.contains("lengths_km"));
}

TEST(Digest, sha256_known_vectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Timestamp, honours_source_date_epoch) {
  ::setenv("SOURCE_DATE_EPOCH", "86400", 1);
  EXPECT_EQ(utc_timestamp(), "1970-01-02T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
  EXPECT_EQ(utc_timestamp().size(), 20u);
}

TEST(TextFiles, write_creates_parents_and_reads_back) {
  const auto dir = std::filesystem::temp_directory_path() / "freqpath_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text_file(dir / "f.txt", "hello\n");
  EXPECT_EQ(read_text_file(dir / "f.txt"), "hello\n");
  EXPECT_EQ(sha256_file(dir / "f.txt"), sha256_hex("hello\n"));
  std::filesystem::remove_all(dir.parent_path());
}
