#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "vhs/config.hpp"
#include "vhs/errors.hpp"
#include "vhs/pipeline.hpp"

namespace vhs {
namespace {

using nlohmann::json;

RunConfig small(AlgebraSpec spec) {
  RunConfig c;
  c.spec = spec;
  c.seed = 7;
  c.samples = 3000;
  c.restarts = 6;
  c.directions = 12;
  c.random_forms = 100;
  c.random_frames = 100;
  c.random_xi = 1;
  c.grid_points = 500;
  return c;
}

TEST(Config, ParsesDocumentedExample) {
  const RunConfig c = config_from_json(json::parse(R"({"family":"so","p":2,"q":2,"xi":[1,2,3]})"));
  EXPECT_EQ(c.spec, AlgebraSpec::so(2, 2));
  ASSERT_TRUE(c.xi.has_value());
  EXPECT_EQ(c.xi->size(), 3);
  EXPECT_EQ((*c.xi)(2), 3.0);
}

TEST(Config, SpFamilyUsesMN) {
  const RunConfig c = config_from_json(json::parse(R"({"family":"SP","m":1,"n":2,"seed":9})"));
  EXPECT_EQ(c.spec, AlgebraSpec::sp(1, 2));
  EXPECT_EQ(c.seed, 9u);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(config_from_json(json::parse(R"({"family":"su","p":1,"q":2})")), InvalidInput);
  EXPECT_THROW(config_from_json(json::parse(R"({"family":"sp","p":1,"q":2})")), InvalidInput);
  EXPECT_THROW(config_from_json(json::parse(R"({"family":"so","p":0,"q":2})")), InvalidInput);
  EXPECT_THROW(config_from_json(json::parse(R"({"family":"so","p":1,"q":2,"extra":1})")),
               InvalidInput);
  EXPECT_THROW(config_from_json(json::parse(R"({"family":"so","xi":"abc"})")), InvalidInput);
  EXPECT_THROW(config_from_json(json::parse(R"({"tol_scale":-1})")), InvalidInput);
  EXPECT_THROW(config_from_json(json::parse("[1,2]")), InvalidInput);
  EXPECT_THROW(load_config("/nonexistent/config.json"), InvalidInput);
}

TEST(Config, RoundTrip) {
  RunConfig c = small(AlgebraSpec::sp(2, 2));
  c.xi = Eigen::Vector4d(1.0, 2.0, 3.0, 4.0);
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(back.spec, c.spec);
  EXPECT_EQ(*back.xi, *c.xi);
  EXPECT_EQ(back.directions, c.directions);
  EXPECT_EQ(back.grid_points, c.grid_points);
}

TEST(Report, OverallPassRequiresEveryRecord) {
  VerificationReport r(AlgebraSpec::so(1, 2), Eigen::VectorXd::Ones(3), 1);
  EXPECT_FALSE(r.overall_pass());
  r.below("s", "a", "x < 1", 0.5, 1.0);
  r.at_least("s", "b", "x >= 1", 1.0, 1.0);
  r.above("s", "c", "x > 0", 1e-300, 0.0);
  r.flag("s", "d", "holds", true);
  EXPECT_TRUE(r.overall_pass());
  r.below("s", "e", "nan fails", std::nan(""), 1.0);
  EXPECT_FALSE(r.overall_pass());
  EXPECT_FALSE(r.record("s", "e").pass);
  EXPECT_THROW(r.record("s", "zzz"), std::out_of_range);
  const json doc = r.to_json();
  EXPECT_EQ(doc.at("schema").get<int>(), 1);
  EXPECT_EQ(doc.at("checks").size(), 5u);
  EXPECT_FALSE(doc.at("overall_pass").get<bool>());
}

TEST(Stages, NamesAndTableRequirements) {
  EXPECT_EQ(stages_for("verify").size(), 7u);
  EXPECT_EQ(stages_for("harmonic").front(), Stage::Harmonic);
  EXPECT_THROW(stages_for("plot"), InvalidInput);
  EXPECT_TRUE(needs_table(Stage::Coercivity));
  EXPECT_FALSE(needs_table(Stage::Fibration));
}

TEST(Pipeline, SmallRunPassesAndIsDeterministic) {
  const RunConfig c = small(AlgebraSpec::so(2, 2));
  const RunArtifacts a = run_full_verification(c);
  const RunArtifacts b = run_full_verification(c);
  EXPECT_EQ(a.exit_code(), 0) << a.summary;
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_FALSE(a.table_csv.empty());
  EXPECT_EQ(a.profiles.size(), 1u);
  EXPECT_EQ(a.report.sections().at("algebra").at("index_ranges").at("n").get<int>(), 8);
}

TEST(Pipeline, SeedChangesRandomSections) {
  RunConfig c = small(AlgebraSpec::so(2, 2));
  const std::string a = run_verification(c, {Stage::Harmonic}).report.dump();
  c.seed = 8;
  const std::string b = run_verification(c, {Stage::Harmonic}).report.dump();
  EXPECT_NE(a, b);
}

TEST(Pipeline, SubsetRecordsOnlyRequestedStages) {
  const RunArtifacts a = run_verification(small(AlgebraSpec::sp(1, 1)), {Stage::Identities});
  for (const auto& r : a.report.records()) EXPECT_EQ(r.section, "identities");
  EXPECT_TRUE(a.table_csv.empty());
  EXPECT_EQ(a.exit_code(), 0);
}

TEST(Pipeline, TinyToleranceScaleFails) {
  RunConfig c = small(AlgebraSpec::so(1, 2));
  c.tol_scale = 1e-30;
  const RunArtifacts a = run_verification(c, {Stage::Identities, Stage::Harmonic});
  EXPECT_EQ(a.exit_code(), 1);
  EXPECT_NE(a.summary.find("FAIL"), std::string::npos);
}

TEST(Pipeline, TableStagesNeedQAtLeastTwo) {
  EXPECT_THROW(run_verification(small(AlgebraSpec::so(1, 1)), {Stage::Curvature}), InvalidInput);
  EXPECT_THROW(run_full_verification(small(AlgebraSpec::so(2, 1))), InvalidInput);
}

TEST(Pipeline, RankOneConstantsRecorded) {
  const RunArtifacts a = run_full_verification(small(AlgebraSpec::so(1, 2)));
  ASSERT_EQ(a.exit_code(), 0) << a.summary;
  EXPECT_NEAR(a.report.sections().at("coercivity").at("c0").get<double>(), 1.0, 1e-6);
  const RunArtifacts b = run_verification(small(AlgebraSpec::sp(1, 1)), {Stage::Curvature});
  const json& table = b.report.sections().at("curvature").at("table");
  EXPECT_NEAR(table.at("fitted_min_k").get<double>(), -4.0, 1e-9);
  EXPECT_NEAR(table.at("fitted_ricci").get<double>(), -12.0, 1e-6);
}

TEST(Pipeline, WritesArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "vhs_pipeline_artifacts";
  std::filesystem::remove_all(dir);
  write_artifacts(run_full_verification(small(AlgebraSpec::sp(1, 1))), dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "algebra.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "table1.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "timings.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "profiles" / "direction_000.csv"));
  std::ifstream in(dir / "profiles" / "direction_000.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "r,lambda_1,lambda_2,lambda_3,laplacian_r,A_1,A_2,A_3");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace vhs
