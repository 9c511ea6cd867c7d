#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "lcslab/block_model.hpp"
#include "lcslab/io.hpp"

namespace lcslab {
namespace {

namespace fs = std::filesystem;

const fs::path kBinary = EXPLAB_PATH;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("explab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kBinary.string() + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Json load(const fs::path& p) { return Json::parse(read_file(p)); }

TEST(Cli, GenerateIsDeterministic) {
  const fs::path a = fresh_dir("gen_a"), b = fresh_dir("gen_b");
  ASSERT_EQ(run("generate --l 3 --n 60 --reps 5 --seed 9 --out " + a.string()), 0);
  ASSERT_EQ(run("generate --l 3 --n 60 --reps 5 --seed 9 --out " + b.string()), 0);
  for (const char* f : {"generate.json", "pairs.csv", "tzr.csv"}) EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  const Json m = load(a / "manifest_generate.json");
  EXPECT_EQ(m["status"], "pass");
  EXPECT_EQ(m["outputs"].size(), 3u);
  EXPECT_TRUE(m["seeds"].contains("generate"));
  EXPECT_FALSE(m["finished_at"].is_null());
}

TEST(Cli, GeneratedStatisticsInvert) {
  const fs::path dir = fresh_dir("gen_tzr");
  ASSERT_EQ(run("generate --l 3 --n 15 --reps 20 --out " + dir.string()), 0);
  const Json doc = load(dir / "generate.json");
  for (const auto& rep : doc["replicates"]) {
    const BlockString x = block_string_from_json(rep["x"], 3);
    const TzrStats s{rep["x_tzr"]["t"], rep["x_tzr"]["z"], rep["x_tzr"]["r"]};
    EXPECT_EQ(counts_from_tzr({3, 15}, s), x.counts());
    EXPECT_EQ(x.length(), 15);
  }
}

TEST(Cli, ZeroReplicatesWritesOnlyTheManifest) {
  const fs::path dir = fresh_dir("gen_zero");
  ASSERT_EQ(run("generate --reps 0 --out " + dir.string()), 0);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"config_generate.ini", "manifest_generate.json"}));
}

TEST(Cli, VerifySuites) {
  const fs::path dir = fresh_dir("verify");
  ASSERT_EQ(run("verify --which possz --l 3 --out " + dir.string()), 0);
  for (const auto& c : load(dir / "verify_possz.json")["detail"]["cases"]) EXPECT_EQ(c["tv_numerator"], 0);
  ASSERT_EQ(run("verify --which linear-system --out " + dir.string()), 0);
  EXPECT_TRUE(load(dir / "verify_linear-system.json")["detail"]["worked_case"]["pass"].get<bool>());
  ASSERT_EQ(run("verify --which engines --n 256 --samples 300 --out " + dir.string()), 0);
  EXPECT_EQ(load(dir / "verify_engines.json")["detail"]["mismatches"], 0);
  EXPECT_NE(run("verify --which nonsense --out " + dir.string()), 0);
}

TEST(Cli, DriftSchemaBoundsAndModes) {
  const fs::path exact = fresh_dir("drift_exact"), sampled = fresh_dir("drift_sampled");
  ASSERT_EQ(run("drift --l 4 --n 160 --reps 20 --out " + exact.string()), 0);
  ASSERT_EQ(run("drift --l 4 --n 160 --reps 20 --cap 1 --samples 400 --out " + sampled.string()), 0);
  const CsvTable e = parse_csv(read_file(exact / "drift.csv"));
  const CsvTable s = parse_csv(read_file(sampled / "drift.csv"));
  EXPECT_EQ(e.header(), (std::vector<std::string>{"replicate", "n1", "n3", "mean", "stderr", "exact"}));
  ASSERT_EQ(e.rows().size(), 20u);
  ASSERT_EQ(s.rows().size(), 20u);
  int agree = 0;
  for (std::size_t i = 0; i < e.rows().size(); ++i) {
    ASSERT_EQ(e.rows()[i][5], "true");
    ASSERT_EQ(s.rows()[i][5], "false");
    const double me = std::stod(e.rows()[i][3]), ms = std::stod(s.rows()[i][3]), se = std::stod(s.rows()[i][4]);
    EXPECT_LE(std::abs(me), 2.0);
    EXPECT_LE(std::abs(ms), 2.0);
    if (std::abs(me - ms) <= 3.0 * se + 1e-12) ++agree;
  }
  EXPECT_GE(agree, 19);
  const Json summary = load(exact / "drift_summary.json");
  EXPECT_TRUE(summary.contains("fraction_ge_epsilon"));
  EXPECT_TRUE(summary["all_in_bounds"].get<bool>());
}

TEST(Cli, LadderDeterministicWithDefaultC2) {
  const fs::path a = fresh_dir("ladder_a"), b = fresh_dir("ladder_b");
  ASSERT_EQ(run("ladder --n 2048 --epsilon 0.5 --out " + a.string()), 0);
  ASSERT_EQ(run("ladder --n 2048 --epsilon 0.5 --out " + b.string()), 0);
  EXPECT_EQ(read_file(a / "ladder.csv"), read_file(b / "ladder.csv"));
  EXPECT_EQ(read_file(a / "ladder.json"), read_file(b / "ladder.json"));
  const Json doc = load(a / "ladder.json");
  EXPECT_DOUBLE_EQ(doc["slope_event"]["c2"].get<double>(), 320.0);
  EXPECT_TRUE(doc["integrity"].get<bool>());
  EXPECT_EQ(parse_csv(read_file(a / "ladder.csv")).header(),
            (std::vector<std::string>{"t", "r", "z", "lcs", "parity"}));
  EXPECT_EQ(run("ladder --n 2048 --t 1 --r 0 --out " + a.string()), 2);  // no admissible z
}

TEST(Cli, ScanReproducibleWithFitSchema) {
  const fs::path a = fresh_dir("scan_a"), b = fresh_dir("scan_b");
  ASSERT_EQ(run("scan --ns 256,512,1024 --reps 30 --out " + a.string()), 0);
  ASSERT_EQ(run("scan --ns 256,512,1024 --reps 30 --out " + b.string()), 0);
  EXPECT_EQ(read_file(a / "scan.csv"), read_file(b / "scan.csv"));
  const Json fit = load(a / "scan_fit.json");
  for (const char* which : {"L", "Z"})
    for (const char* key : {"slope", "intercept", "r2"}) EXPECT_TRUE(fit[which].contains(key)) << which << key;
  EXPECT_NE(run("scan --reps 10 --out " + a.string()), 0);
}

TEST(Cli, ConfigFileAndOverrides) {
  const fs::path dir = fresh_dir("config");
  ASSERT_EQ(run("generate --l 3 --n 40 --reps 4 --seed 3 --out " + dir.string()), 0);
  const std::string first = read_file(dir / "generate.json");
  ASSERT_EQ(run("generate --config " + (dir / "config_generate.ini").string()), 0);
  EXPECT_EQ(read_file(dir / "generate.json"), first);
  ASSERT_EQ(run("generate --config " + (dir / "config_generate.ini").string() + " --n 41"), 0);
  EXPECT_EQ(load(dir / "generate.json")["n"], 41);
  EXPECT_EQ(load(dir / "manifest_generate.json")["config"]["l"], 3);
}

TEST(Cli, RejectsInvalidConfig) {
  const fs::path dir = fresh_dir("invalid");
  EXPECT_EQ(run("generate --epsilon 1.5 --out " + dir.string()), 2);
  EXPECT_EQ(run("generate --l 1 --out " + dir.string()), 2);
  EXPECT_NE(run("generate --engine fast --out " + dir.string()), 0);
  EXPECT_NE(run(""), 0);
}

TEST(Cli, BatchLcsAndReport) {
  const fs::path dir = fresh_dir("lcs");
  write_file_atomic(dir / "in.csv", "x,y\n000111100,000111100\n000,111\n01010,00110\n");
  ASSERT_EQ(run("lcs --input " + (dir / "in.csv").string() + " --out " + dir.string()), 0);
  EXPECT_EQ(read_file(dir / "lcs.csv"), "index,lcs\n0,9\n1,0\n2,4\n");
  write_file_atomic(dir / "bad.csv", "x,y\n01,2\n");
  EXPECT_EQ(run("lcs --input " + (dir / "bad.csv").string() + " --out " + dir.string()), 1);
  ASSERT_EQ(run("calibrate-domain --n 2000 --reps 300 --out " + dir.string()), 0);
  ASSERT_EQ(run("report --out " + dir.string()), 0);
  const Json report = load(dir / "report.json");
  EXPECT_TRUE(report["files"].contains("calibration.json"));
  EXPECT_TRUE(report["summary"]["calibration.json"].contains("coverage"));
}

}  // namespace
}  // namespace lcslab
