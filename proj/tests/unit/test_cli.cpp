#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"
#include "suite.hpp"

using namespace ptcrum;
using namespace ptcrum::cli;

TEST(Config, ParsesIndicesAndFlags) {
  EXPECT_EQ(parse_indices("1,2"), (std::vector<int>{1, 2}));
  EXPECT_EQ(parse_indices(" 0 , 2 "), (std::vector<int>{0, 2}));
  EXPECT_TRUE(parse_indices("").empty());
  EXPECT_THROW(parse_indices("1,x"), UsageError);
  EXPECT_EQ(parse_quasi_parity("+1"), 1);
  EXPECT_EQ(parse_quasi_parity("-1"), -1);
  EXPECT_THROW(parse_quasi_parity("2"), UsageError);
  EXPECT_EQ(parse_tower("+"), ScarfTower::Plus);
  EXPECT_EQ(parse_tower("-"), ScarfTower::Minus);
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(Config, ApplySetting) {
  RunConfig cfg;
  apply_setting(cfg, "model", "scarf2");
  apply_setting(cfg, "lambda", "12.5");
  apply_setting(cfg, "indices", "0,2");
  apply_setting(cfg, "grid-n", "801");
  apply_setting(cfg, "susy-stencil", "8");
  EXPECT_EQ(cfg.model, "scarf2");
  EXPECT_DOUBLE_EQ(cfg.lambda, 12.5);
  EXPECT_EQ(cfg.indices, (std::vector<int>{0, 2}));
  EXPECT_EQ(cfg.grid_n, 801);
  EXPECT_EQ(cfg.susy_stencil, 8);
  EXPECT_THROW(apply_setting(cfg, "no-such-key", "1"), UsageError);
  EXPECT_THROW(apply_setting(cfg, "alpha", "abc"), UsageError);
}

TEST(Config, ReadsShippedConfigs) {
  const auto osc = read_config_file(std::string(PTCRUM_CONFIG_DIR) + "/osc-12.cfg");
  EXPECT_EQ(osc.at("indices"), "1,2");
  RunConfig cfg;
  for (const auto& [k, v] : osc) apply_setting(cfg, k, v);
  EXPECT_EQ(cfg.model, "pt-oscillator");

  const auto scarf = read_config_file(std::string(PTCRUM_CONFIG_DIR) + "/scarf-02.cfg");
  RunConfig s;
  for (const auto& [k, v] : scarf) apply_setting(s, k, v);
  const ModelPtr m = build_model(s);
  EXPECT_EQ(m->name(), "scarf2");
  EXPECT_THROW(read_config_file("/nonexistent/file.cfg"), UsageError);
}

TEST(Config, GridOverrides) {
  RunConfig cfg;
  const ModelPtr m = build_model(cfg);
  EXPECT_EQ(build_grid(cfg, *m).points(), 1601);
  cfg.grid_n = 401;
  cfg.grid_l = 6.0;
  const Grid g = build_grid(cfg, *m);
  EXPECT_EQ(g.points(), 401);
  EXPECT_DOUBLE_EQ(g.half_width(), 6.0);
}

TEST(Report, DumpIsDeterministicWithFullPrecision) {
  Json doc;
  doc["b"] = 0.1;
  doc["a"] = 1.0 / 3.0;
  const std::string first = dump(doc);
  EXPECT_EQ(first, dump(doc));
  EXPECT_NE(first.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(first.find("0.33333333333333331"), std::string::npos);
  // insertion order is kept
  EXPECT_LT(first.find("\"b\""), first.find("\"a\""));
}

TEST(Report, CheckVerdicts) {
  EXPECT_EQ(upper_check("x", 1e-12, 1e-10).verdict(), Verdict::Pass);
  EXPECT_EQ(upper_check("x", 1e-8, 1e-10).verdict(), Verdict::Fail);
  EXPECT_EQ(lower_check("x", 4.0, 3.95).verdict(), Verdict::Pass);
  EXPECT_EQ(lower_check("x", 3.0, 3.95).verdict(), Verdict::Fail);
  EXPECT_EQ(info_check("x", 1.0, 1e-10).verdict(), Verdict::Info);
  EXPECT_EQ(upper_check("x", std::nan(""), 1.0).verdict(), Verdict::Fail);
}

TEST(Suite, ExpectedLevelsIncludeCompanionTower) {
  const auto m = oscillator_model(0.75, 1.0, 1);
  const LevelSet set = expected_levels(*m, {1, 2}, 4);
  ASSERT_EQ(set.deleted.size(), 2u);
  EXPECT_NEAR(set.deleted[0].real(), 4.5, 1e-15);
  // 0.5, 12.5 from q = +1, and 3.5, 7.5, 11.5 from q = -1
  std::vector<double> re;
  for (const Complex& e : set.present) re.push_back(e.real());
  std::sort(re.begin(), re.end());
  EXPECT_EQ(re, (std::vector<double>{0.5, 3.5, 7.5, 11.5, 12.5}));
}

TEST(Suite, DifferenceHelpers) {
  const Expression x = Expression::variable();
  const Grid g(1.0, 11);
  EXPECT_NEAR(relative_difference(x, x, g), 0.0, 0.0);
  EXPECT_NEAR(fitted_difference(Expression{Complex{2.0, 1.0}} * exp(x), exp(x), g), 0.0, 1e-15);
  EXPECT_GT(fitted_difference(exp(x), exp(Expression{2.0} * x), g), 0.1);
  const auto m = oscillator_model(0.75, 1.0, 1);
  EXPECT_LE(schrodinger_residual(m->potential(), m->wavefunction(2), m->energy(2), Grid(6.0, 61)), 1e-10);
}

TEST(Commands, ModelShowText) {
  RunConfig cfg;
  cfg.levels = 3;
  std::ostringstream out;
  EXPECT_EQ(cmd_model_show(cfg, out), kExitPass);
  EXPECT_NE(out.str().find("pt-oscillator"), std::string::npos);
  EXPECT_NE(out.str().find("8.5"), std::string::npos);
}

TEST(Commands, TransformJsonIsStable) {
  RunConfig cfg;
  cfg.indices = {1, 2};
  cfg.format = Format::Json;
  cfg.grid_n = 201;
  std::ostringstream a;
  std::ostringstream b;
  EXPECT_EQ(cmd_transform(cfg, a), kExitPass);
  EXPECT_EQ(cmd_transform(cfg, b), kExitPass);
  EXPECT_EQ(a.str(), b.str());
  const Json doc = Json::parse(a.str());
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_EQ(doc["order"], 2);
}

TEST(Commands, ParameterErrorsAreClassified) {
  EXPECT_TRUE(is_parameter_error(BrokenPTRegime("x")));
  EXPECT_TRUE(is_parameter_error(InvalidGrid("x")));
  EXPECT_FALSE(is_parameter_error(SingularTransform("x")));
  EXPECT_FALSE(is_parameter_error(NoConvergence("x")));
}
