#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rqt/commands.hpp"
#include "rqt/errors.hpp"

using namespace rqt;

namespace {

const std::string kMinimal =
    "# two detectors and an input\n"
    "detector_a.position = 0,0,0\n"
    "detector_a.coupling_time = 0\n"
    "detector_a.coupling_strength = 1\n"
    "detector_a.smearing_width = 0.1\n"
    "detector_b.position = 1,0,0\n"
    "detector_b.coupling_time = 1.25\n"
    "detector_b.coupling_strength = 0.2\n"
    "detector_b.smearing_width = 0.1\n"
    "input.alpha = 0.6\n"
    "input.beta = 0,0.8\n";

std::string config_path(const std::string& name) { return std::string(RQT_CONFIG_DIR) + "/" + name; }

int run(const std::string& args) {
  const std::string cmd = std::string(RQTSIM_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ParseConfig, MinimalDefaults) {
  RunConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.teleport.scheme, Scheme::TwoBinaryUses);
  EXPECT_DOUBLE_EQ(c.epsilon, 0.05);
  EXPECT_DOUBLE_EQ(c.tolerance, 1e-10);
  EXPECT_EQ(c.format, OutputFormat::Csv);
  EXPECT_FALSE(c.sweep.has_value());
  EXPECT_DOUBLE_EQ(c.teleport.b.position.x(), 1.0);
  EXPECT_NEAR(std::abs(c.teleport.input.beta() - Complex(0.0, 0.8)), 0.0, 1e-15);
}

TEST(ParseConfig, VectorParsed) {
  RunConfig c = parse_config(kMinimal + "scheme = variant_four_message\n");
  EXPECT_EQ(c.teleport.scheme, Scheme::VariantFourMessage);
  EXPECT_TRUE(c.teleport.a.position.isZero());
}

TEST(ParseConfig, DuplicateKeyRejected) {
  try {
    parse_config(kMinimal + "input.alpha = 0.6\n");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 12"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, UnknownKeyRejected) {
  EXPECT_THROW(parse_config(kMinimal + "detector_c.position = 1,2,3\n"), ConfigError);
}

TEST(ParseConfig, MalformedLineNamesLine) {
  try {
    parse_config("detector_a.position 0,0,0\n");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, MissingKeyNamed) {
  std::string text = kMinimal;
  text.erase(text.find("input.beta"));
  try {
    parse_config(text);
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("input.beta"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, BadValuesRejected) {
  EXPECT_THROW(parse_config(kMinimal + "tolerance = 1e-3\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "sweep.parameter = detector_b.gap\nsweep.start = 0\n"), ConfigError);
  EXPECT_THROW(parse_config(kMinimal + "format = xml\n"), ConfigError);
  std::string bad = kMinimal;
  bad.replace(bad.find("smearing_width = 0.1"), 20, "smearing_width = -1");
  EXPECT_THROW(parse_config(bad), ConfigError);
}

TEST(Commands, SinglePointGivesOneRow) {
  RunConfig c = parse_config(kMinimal);
  CommandResult r = cmd_capacity(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  std::istringstream in(r.text);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, kCapacityColumns);
  EXPECT_FALSE(row.empty());
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(r.text.find('\r'), std::string::npos);
}

TEST(Commands, SpacelikeSweepHasZeroCapacity) {
  RunConfig c = load_config(config_path("spacelike.conf"));
  for (const CapacityRow& row : capacity_rows(c)) {
    EXPECT_LE(std::abs(row.capacity_closed_form), 1e-10);
    EXPECT_LE(std::abs(row.holevo_numeric), 1e-10);
  }
}

TEST(Commands, HighCapacitySweepReachesOneBit) {
  RunConfig c = load_config(config_path("high_capacity.conf"));
  auto rows = capacity_rows(c);
  EXPECT_GE(rows.back().capacity_closed_form, 0.99);
}

TEST(Commands, TeleportJsonFields) {
  RunConfig c = parse_config(kMinimal + "format = json\n");
  CommandResult r = cmd_teleport(c);
  auto j = nlohmann::json::parse(r.text);
  ASSERT_TRUE(j.contains("meta"));
  ASSERT_TRUE(j.contains("report"));
  for (const char* k : {"confusion", "per_outcome_fidelity", "average_fidelity", "haar_average_fidelity",
                        "capacity_closed_form", "holevo", "causal_status"})
    EXPECT_TRUE(j["report"].contains(k)) << k;
}

TEST(Commands, SpacelikeTeleportJson) {
  RunConfig c = load_config(config_path("spacelike.conf"));
  c.sweep.reset();
  c.format = OutputFormat::Json;
  auto j = nlohmann::json::parse(cmd_teleport(c).text);
  EXPECT_EQ(j["report"]["causal_status"], "spacelike");
  EXPECT_NEAR(j["report"]["haar_average_fidelity"].get<double>(), 0.5, 1e-10);
}

TEST(Commands, DeterministicAcrossJobCounts) {
  RunConfig c = load_config(config_path("lightcone_scan.conf"));
  CommandOptions one, three;
  three.jobs = 3;
  EXPECT_EQ(cmd_causality_scan(c, one).text, cmd_causality_scan(c, three).text);
}

TEST(Commands, OracleCheckAndNegativeControl) {
  RunConfig c = parse_config(kMinimal + "oracle.draws = 20\n");
  EXPECT_EQ(cmd_oracle_check(c).exit_code, kExitOk);
  CommandOptions bad;
  bad.inject_sign_error = true;
  EXPECT_EQ(cmd_oracle_check(c, bad).exit_code, kExitOracle);
}

TEST(Executable, ExitCodes) {
  EXPECT_EQ(run("teleport --config " + config_path("high_capacity.conf")), kExitOk);
  EXPECT_EQ(run("teleport --config /nonexistent/file.conf"), kExitConfig);
  EXPECT_EQ(run("teleport --config " + write_temp("bad.conf", "nonsense\n")), kExitConfig);
  EXPECT_EQ(run("oracle-check --inject-sign-error --config " + write_temp("ok.conf", kMinimal)), kExitOracle);
}

TEST(Executable, NoiselessSideChannelFlag) {
  const std::string out = ::testing::TempDir() + "noiseless.json";
  ASSERT_EQ(run("teleport --noiseless-side-channel --format json --output " + out + " --config " +
                write_temp("min.conf", kMinimal)),
            kExitOk);
  auto j = nlohmann::json::parse(slurp(out));
  EXPECT_NEAR(j["report"]["average_fidelity"].get<double>(), 1.0, 1e-12);
}

TEST(Executable, ByteIdenticalReruns) {
  const std::string cfg = config_path("lightcone_scan.conf");
  const std::string a = ::testing::TempDir() + "run_a.csv", b = ::testing::TempDir() + "run_b.csv";
  ASSERT_EQ(run("causality-scan --seed 3 --config " + cfg + " --output " + a), kExitOk);
  ASSERT_EQ(run("causality-scan --seed 3 --jobs 2 --config " + cfg + " --output " + b), kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}
