#include <gtest/gtest.h>

#include <sstream>

#include "keyregion/csv.hpp"
#include "keyregion/json_io.hpp"

using namespace keyregion;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

Json sim_json() {
  return Json::parse(R"({
    "channel": {"family": "erasure", "params": {"p12": 0.3, "p21": 0.3, "p13": 0.5, "p23": 0.1}},
    "design": {"family": "example1"},
    "n": 8, "trials": 20, "seed": 4,
    "key_rates": {"12": 0.1, "23": 0.1},
    "randomization_rates": {"12": 0.25}
  })");
}

}  // namespace

TEST(Json, JointRoundTrip) {
  const Alphabet b = Alphabet::binary();
  const JointPMF j({{"A", b}, {"B", Alphabet({"x", "y", "z"})}}, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1});
  const JointPMF back = joint_from_json(joint_to_json(j));
  ASSERT_EQ(back.rank(), 2u);
  EXPECT_EQ(back.variables()[1].alphabet, j.variables()[1].alphabet);
  for (std::size_t i = 0; i < j.size(); ++i) EXPECT_EQ(back.table()[i], j.table()[i]);
}

TEST(Json, ErrorsNameTheField) {
  EXPECT_NE(error_of([] { channel_from_json(Json::parse(R"({"family": "binary_sum", "params": {"p1": 0.1, "p2": 0.1}})")); })
                .find("channel.params.p3"),
            std::string::npos);
  EXPECT_NE(error_of([] { channel_from_json(Json::parse(R"({"family": "binary_sum", "params": {"p1": 0.1, "p2": "x", "p3": 0.1}})")); })
                .find("channel.params.p2"),
            std::string::npos);
  EXPECT_NE(error_of([] { channel_from_json(Json::parse(R"({"family": "warp"})")); }).find("channel.family"),
            std::string::npos);
  EXPECT_NE(error_of([] { design_from_json(Json::parse(R"({"family": "example2", "params": {"alpha": 0.1}})")); })
                .find("design.params.beta"),
            std::string::npos);
  EXPECT_NE(error_of([] { joint_from_json(Json::parse(R"({"variables": [{"name": "A"}], "table": [1]})")); })
                .find("variables[0].symbols"),
            std::string::npos);
}

TEST(Json, DomainErrorsBecomeConfigErrors) {
  EXPECT_THROW(channel_from_json(Json::parse(R"({"family": "binary_sum", "params": {"p1": 0.7, "p2": 0.1, "p3": 0.1}})")),
               ConfigError);
  EXPECT_THROW(joint_from_json(Json::parse(R"({"variables": [{"name": "A", "symbols": ["0", "1"]}], "table": [0.2, 0.2]})")),
               ConfigError);
}

TEST(Json, CustomChannelAndDesign) {
  const Json ch = Json::parse(R"({
    "family": "custom",
    "alphabets": {"x1": ["0"], "x2": ["0"], "y1": ["0"], "y2": ["0"], "y3": ["a", "b"]},
    "kernel": [0.25, 0.75]
  })");
  const Gdmmac g = channel_from_json(ch);
  EXPECT_EQ(g(0, 0, 0, 0, 1), 0.75);
  const Json d = Json::parse(R"({
    "family": "custom",
    "s12": {"symbols": ["0"], "probs": [1]}, "s13": {"symbols": ["0"], "probs": [1]},
    "s21": {"symbols": ["0"], "probs": [1]}, "s23": {"symbols": ["0"], "probs": [1]},
    "x1": {"cond_dims": [1, 1], "symbols": ["0"], "table": [1]},
    "x2": {"cond_dims": [1, 1], "symbols": ["0"], "table": [1]}
  })");
  const AuxDesign a = design_from_json(d);
  EXPECT_NO_THROW(induce_joint(g, a));
}

TEST(Json, SimConfigDefaultsAndEcho) {
  const SimConfig c = sim_config_from_json(sim_json());
  EXPECT_EQ(c.n, 8u);
  EXPECT_EQ(c.seed, 4u);
  EXPECT_DOUBLE_EQ(c.key_rates[k23], 0.1);
  EXPECT_DOUBLE_EQ(c.randomization_rates[k23], 0.0);
  const Json echo = sim_config_echo(sim_json(), c);
  EXPECT_DOUBLE_EQ(echo["epsilon_typ"].get<double>(), 1.2 / std::sqrt(8.0));
  EXPECT_EQ(echo["bucketing"], "ml_estimate");
}

TEST(Json, SimConfigRequiresFields) {
  Json j = sim_json();
  j.erase("channel");
  EXPECT_NE(error_of([&] { sim_config_from_json(j); }).find("'channel'"), std::string::npos);
  j = sim_json();
  j["trials"] = -3;
  EXPECT_NE(error_of([&] { sim_config_from_json(j); }).find("'trials'"), std::string::npos);
  j = sim_json();
  j["trials"] = 0;
  EXPECT_THROW(sim_config_from_json(j), ConfigError);
  j = sim_json();
  j["bucketing"] = "guess";
  EXPECT_THROW(sim_config_from_json(j), ConfigError);
}

TEST(Json, ReportLayout) {
  SimulationReport r;
  r.errors = {0.1, 0.2, 0.3};
  r.trials = 10;
  r.seed = 9;
  const Json out = report_to_json(r, Json::object());
  EXPECT_DOUBLE_EQ(out["errors"]["u3"].get<double>(), 0.3);
  EXPECT_TRUE(out["leakage_bits"].contains("k13"));
  EXPECT_TRUE(out.contains("leakage_bias_bound"));
  EXPECT_TRUE(out.contains("runtime_ms"));
  EXPECT_EQ(out["seed"], 9);
}

TEST(Csv, NumbersRoundTripExactly) {
  for (double v : {0.1, 1.0 / 3.0, 0.0, 1e-17, 0.5310044064107188}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(Csv, LineEndingsAndSeparators) {
  std::ostringstream s;
  CsvWriter w(s);
  w.header({"a", "b"});
  w.line({"1", "2"});
  EXPECT_EQ(s.str(), "a,b\n1,2\n");
}
