#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lcslab/io.hpp"
#include "lcslab/lcs.hpp"
#include "lcslab/random.hpp"

namespace explab {

inline constexpr const char* kVersion = "0.1.0";

// Everything a command reads. c2 <= 0 and samples == 0 mean "use the default".
struct RunConfig {
  int l = 10;
  int n = 4096;
  lcslab::Seed seed = 1;
  std::uint64_t reps = 200;
  double epsilon = 0.1;
  double c2 = 0.0;
  double c = 1.0;
  std::string engine = "bitparallel";
  std::string out = "run";
  std::uint64_t cap = 100'000;
  std::uint64_t samples = 0;
  std::optional<std::int64_t> t;
  std::optional<std::int64_t> r;
  std::vector<int> ns{1024, 2048, 4096, 8192};
  std::string which = "all";
  double target = 0.9;
  std::string input;
  bool z_only = false;

  double effective_c2() const;
  std::uint64_t samples_or(std::uint64_t fallback) const { return samples ? samples : fallback; }
  lcslab::Engine engine_kind() const { return lcslab::parse_engine(engine); }

  /// Throws InvalidParams naming the first bad field.
  void validate() const;
  lcslab::Json to_json() const;
  /// key=value lines readable through --config.
  std::string to_ini() const;
};

std::string utc_timestamp();

// Written before a command produces anything and rewritten when it finishes.
class RunManifest {
 public:
  RunManifest(const RunConfig& config, std::string command);

  lcslab::Seed command_seed() const { return seed_; }
  const std::filesystem::path& dir() const { return dir_; }

  /// Atomically writes `content` to the run directory and records it.
  void write_output(const std::string& name, const std::string& content);
  void finish(bool pass);

 private:
  void save() const;

  lcslab::Json doc_;
  std::filesystem::path dir_;
  std::string command_;
  lcslab::Seed seed_ = 0;
};

}  // namespace explab
