#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "pnspace/config.hpp"

using namespace pnspace;

TEST(Parse, TNormsAndConorms) {
  EXPECT_EQ(parse_tnorm("M").name(), "M");
  EXPECT_EQ(parse_tnorm("Pi").name(), "Pi");
  EXPECT_EQ(parse_tnorm("W").name(), "W");
  const TNorm tg = parse_tnorm("TG:ratio:1:2");
  EXPECT_EQ(tg.kind(), TNorm::Kind::tg);
  EXPECT_DOUBLE_EQ(tg.tg_alpha(), 2.0);
  EXPECT_EQ(parse_conorm("W*").name(), "W*");
  EXPECT_DOUBLE_EQ(parse_conorm("Pi*")(0.5, 0.5), 0.75);
  EXPECT_THROW(parse_tnorm("X"), ConfigError);
  EXPECT_THROW(parse_tnorm("TG:ratio:1:0.5"), ConfigError);
  EXPECT_THROW(parse_conorm("Q*"), ConfigError);
}

TEST(Parse, TriangleFunctions) {
  EXPECT_EQ(parse_triangle("tau:W").name(), "tau:W");
  EXPECT_EQ(parse_triangle("lift:Pi").kind(), TriangleFunction::Kind::lift);
  EXPECT_EQ(parse_triangle("taustar:W*").name(), "taustar:W");
  EXPECT_EQ(parse_triangle("liftstar:W").name(), "liftstar:W");
  EXPECT_THROW(parse_triangle("sup:M"), ConfigError);
  EXPECT_THROW(parse_triangle("tau:Z"), ConfigError);
}

TEST(Parse, DdfsMsAndNorms) {
  EXPECT_DOUBLE_EQ(parse_ddf("ratio:2")(2.0), 0.5);
  EXPECT_DOUBLE_EQ(parse_ddf("ratio")(1.0), 0.5);
  EXPECT_EQ(parse_ddf("step:1")(1.5), 1.0);
  EXPECT_EQ(parse_m("pow:2").name(), "pow:2");
  EXPECT_EQ(parse_norm("linf").name(), "linf");
  EXPECT_THROW(parse_ddf("gauss"), ConfigError);
  EXPECT_THROW(parse_ddf("ratio:abc"), ConfigError);
  EXPECT_THROW(parse_m("pow:"), ConfigError);
  EXPECT_THROW(parse_norm("l7"), ConfigError);
}

TEST(Config, BuiltinResolvesEveryName) {
  const Config c = Config::builtin();
  EXPECT_EQ(c.origin(), "builtin");
  for (const auto& name : c.space_names()) EXPECT_NO_THROW(c.space(name)) << name;
  for (const auto& name : c.topology_names()) EXPECT_NO_THROW(c.topology(name)) << name;
  for (const auto& name : {"simple-lift-M", "simple-tau-M", "example1", "tg-beta2", "example4"})
    EXPECT_NO_THROW(c.product(name)) << name;
  EXPECT_THROW(c.space("nope"), ConfigError);
  EXPECT_THROW(c.product("nope"), ConfigError);
  EXPECT_THROW(c.topology("nope"), ConfigError);
}

TEST(Config, GridOverride) {
  Config c = Config::builtin();
  EXPECT_EQ(c.grid().n, 256u);
  c.set_grid_n(128);
  EXPECT_EQ(c.grid().n, 128u);
  EXPECT_EQ(c.space("simple-l2").grid.n, 128u);
}

TEST(Config, SchemaIsRequired) {
  EXPECT_THROW(Config::from_json(nlohmann::json{{"spaces", nlohmann::json::object()}}), ConfigError);
  EXPECT_THROW(Config::from_json(nlohmann::json::array()), ConfigError);
  EXPECT_THROW(Config::load("/nonexistent/config.json"), ConfigError);
}

TEST(Config, BadDefinitionsAreConfigErrors) {
  auto doc = Config::builtin().doc();
  doc["spaces"]["broken"] = {{"dimension", 2}, {"norm", "l2"}, {"family", "simple"}, {"tau", "tau:Q"},
                             {"tau_star", "lift:M"}};
  doc["spaces"]["no-family"] = {{"dimension", 2}, {"tau", "tau:M"}, {"tau_star", "lift:M"}};
  const Config c = Config::from_json(doc);
  EXPECT_THROW(c.space("broken"), ConfigError);
  EXPECT_THROW(c.space("no-family"), ConfigError);
}

TEST(Config, LoadFromFileAndEnvironment) {
  const auto path = std::filesystem::temp_directory_path() / "pnspace-test-config.json";
  auto doc = Config::builtin().doc();
  doc["grid"]["n"] = 64;
  std::ofstream(path) << doc.dump();
  const Config c = Config::load(path.string());
  EXPECT_EQ(c.grid().n, 64u);
  EXPECT_EQ(c.origin(), path.string());
  ::setenv(kConfigEnv, path.string().c_str(), 1);
  EXPECT_EQ(Config::resolve(std::nullopt).grid().n, 64u);
  ::unsetenv(kConfigEnv);
  EXPECT_EQ(Config::resolve(std::nullopt).origin(), "builtin");
  std::filesystem::remove(path);
}
