#include "gradecalc/group_io.hpp"
#include "gradecalc/suite.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using namespace gradecalc;

namespace {

std::string collapse_ws(const std::string& s) { return std::regex_replace(s, std::regex("\\s+"), " "); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig line_config() {
  RunConfig c;
  c.group = "abelian1";
  return c;
}

}  // namespace

TEST(Anchors, QuotesAreVerbatimExcerpts) {
  const auto path = std::filesystem::path(GRADECALC_SOURCE_DIR) / "paper.md";
  if (!std::filesystem::exists(path)) GTEST_SKIP() << "reference text not present at " << path;
  const auto source = collapse_ws(slurp(path));
  ASSERT_FALSE(source.empty());
  std::set<std::string> ids;
  for (const auto& a : anchor_registry()) {
    EXPECT_TRUE(ids.insert(a.id).second) << "duplicate anchor " << a.id;
    EXPECT_NE(source.find(collapse_ws(a.quote)), std::string::npos) << a.id << ": " << a.quote;
  }
}

TEST(Anchors, EveryCheckCitesARegisteredAnchor) {
  const auto rep = run_verify(line_config());
  ASSERT_FALSE(rep.checks.empty());
  std::set<std::string> ids;
  for (const auto& c : rep.checks) {
    EXPECT_NE(find_anchor(c.anchor), nullptr) << c.id;
    EXPECT_TRUE(ids.insert(c.id).second) << "duplicate check id " << c.id;
  }
}

TEST(Suite, LineGroupPassesEverything) {
  const auto rep = run_verify(line_config());
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.id << " measured " << c.measured << " " << c.note;
  EXPECT_TRUE(rep.all_pass());
  EXPECT_NE(rep.find("abelian1/heat.gaussian_oracle"), nullptr);
  EXPECT_NE(rep.find("abelian1/bessel.oracle"), nullptr);
}

TEST(Suite, ReportsAreDeterministic) {
  const auto a = run_verify(line_config()), b = run_verify(line_config());
  EXPECT_EQ(a.to_text(false), b.to_text(false));
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.probes_csv(), b.probes_csv());
}

TEST(Suite, TextLayout) {
  const auto rep = run_group_check(line_config());
  const auto text = rep.to_text();
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# gradecalc verification report");
  std::getline(in, line);
  EXPECT_TRUE(std::regex_match(line, std::regex("# generated \\d{4}-\\d\\d-\\d\\dT\\d\\d:\\d\\d:\\d\\dZ")));
  EXPECT_NE(text.find("\ncheck,anchor,measured,relation,threshold,status,note\n"), std::string::npos);
  EXPECT_NE(text.find("# seed: 0xC0FFEE"), std::string::npos);
  // Only the timestamp differs from the timestamp-free rendering.
  std::string stripped = std::regex_replace(text, std::regex("# generated [^\n]*\n"), "");
  EXPECT_EQ(stripped, rep.to_text(false));
}

TEST(Suite, WritesReportFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "gradecalc_suite_test";
  std::filesystem::remove_all(dir);
  run_group_check(line_config()).write(dir.string());
  for (const char* f : {"report.txt", "report.json", "probes.csv"}) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  EXPECT_EQ(slurp(dir / "probes.csv"), "probe,params,min_ratio,max_ratio,baseline,status\n");
  std::filesystem::remove_all(dir);
}

TEST(Suite, GradingFailureIsReported) {
  RunConfig c;
  c.group = std::string(GRADECALC_SOURCE_DIR) + "/tests/data/bad_grading.json";
  const auto rep = run_group_check(c);
  EXPECT_FALSE(rep.all_pass());
  const auto* v = rep.find("bad_grading/algebra.valid");
  ASSERT_NE(v, nullptr);
  EXPECT_FALSE(v->pass);
  EXPECT_NE(v->note.find("grading"), std::string::npos);
}

TEST(Suite, ConfigValidation) {
  RunConfig c = line_config();
  c.tol_scale = 0;
  EXPECT_THROW(run_verify(c), ConfigError);
  c = line_config();
  c.points = {40};
  EXPECT_THROW(run_verify(c), ConfigError);
  c = line_config();
  c.point_budget = kDefaultPointBudget + 1;
  EXPECT_THROW(run_verify(c), ConfigError);
  c = line_config();
  c.group = "heisenberg";
  c.points = {11, 11};
  EXPECT_THROW(run_verify(c), ConfigError);
}

TEST(Suite, OversizedGridIsFlaggedPartial) {
  RunConfig c;
  c.group = "heisenberg";
  c.points = {31};
  const auto rep = run_verify(c);
  EXPECT_TRUE(rep.partial);
  EXPECT_FALSE(rep.all_pass());
  EXPECT_NE(rep.to_text(false).find("# PARTIAL:"), std::string::npos);
}

TEST(Suite, ExhaustedTimeBudgetIsFlaggedPartial) {
  RunConfig c = line_config();
  c.time_budget_seconds = 1e-9;
  const auto rep = run_verify(c);
  EXPECT_TRUE(rep.partial);
  EXPECT_FALSE(rep.all_pass());
}

TEST(Suite, NonRocklandOperatorIsFlaggedWithoutCrashing) {
  // -X^2 misses the Y direction: the spectrum stays non-negative but self-similarity breaks.
  RunConfig c;
  c.group = "heisenberg";
  c.op = "-X^2";
  c.points = {15};
  const auto rep = run_verify(c);
  EXPECT_FALSE(rep.all_pass());
  ASSERT_NE(rep.find("heisenberg/heat.positivity"), nullptr);
  EXPECT_TRUE(rep.find("heisenberg/heat.positivity")->pass);
  ASSERT_NE(rep.find("heisenberg/heat.self_similarity"), nullptr);
  EXPECT_FALSE(rep.find("heisenberg/heat.self_similarity")->pass);
  for (const auto& ch : rep.checks) EXPECT_EQ(ch.id.find(".completed"), std::string::npos) << ch.id << " " << ch.note;
}

TEST(Suite, ToleranceScaleLoosensUpperBounds) {
  RunConfig c = line_config();
  c.tol_scale = 10;
  const auto rep = run_verify(c);
  const auto* m = rep.find("abelian1/heat.mass");
  ASSERT_NE(m, nullptr);
  EXPECT_DOUBLE_EQ(m->threshold, 1e-2);
}

TEST(Baselines, ShippedFileCoversPinnedProbes) {
  const auto b = load_baselines(default_baselines_path());
  for (const char* key : {"heisenberg/equivalence.integer_vs_spectral", "heisenberg/equivalence.rockland_independence",
                          "heisenberg/embedding.lq", "heisenberg/embedding.sup", "heisenberg358/sharpness.s10"})
    EXPECT_TRUE(b.count(key)) << key;
  EXPECT_TRUE(load_baselines("/nonexistent/baselines.json").empty());
}

TEST(Profiles, DefaultsAndOverrides) {
  const auto alg = load_group(resolve_group_path("heisenberg"));
  RunConfig c;
  const auto p = resolve_profile(alg, "heisenberg", c);
  EXPECT_LE(Grid(p.half_widths, p.counts).size(), kDefaultPointBudget);
  c.scale = 2;
  c.points = {11, 11, 21};
  const auto q = resolve_profile(alg, "heisenberg", c);
  EXPECT_EQ(q.half_widths, (std::vector<double>{2, 2, 4}));
  EXPECT_EQ(q.counts, (std::vector<int>{11, 11, 21}));
  const auto custom = resolve_profile(load_group(resolve_group_path("engel")), "custom", RunConfig{});
  EXPECT_LE(Grid(custom.half_widths, custom.counts).size(), kDefaultPointBudget);
}
