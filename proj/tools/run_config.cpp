#include "run_config.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "lcslab/error.hpp"

namespace explab {

using lcslab::ErrorKind;
using lcslab::Json;
using lcslab::LabError;

double RunConfig::effective_c2() const { return c2 > 0.0 ? c2 : 80.0 / (epsilon * epsilon); }

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw LabError(ErrorKind::InvalidParams, msg); };
  if (l < 2) fail("l must be >= 2");
  if (n < 1) fail("n must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (c2 < 0.0 || !std::isfinite(c2)) fail("c2 must be positive (0 selects 80/epsilon^2)");
  if (!(c > 0.0) || !std::isfinite(c)) fail("c must be > 0");
  if (cap < 1) fail("cap must be >= 1");
  if (!(target > 0.0 && target < 1.0)) fail("target must lie in (0, 1)");
  if (ns.empty()) fail("ns must not be empty");
  for (int v : ns)
    if (v < 1) fail("every entry of ns must be >= 1");
  lcslab::parse_engine(engine);
}

Json RunConfig::to_json() const {
  Json j{{"l", l},
         {"n", n},
         {"seed", seed},
         {"reps", reps},
         {"epsilon", epsilon},
         {"c2", effective_c2()},
         {"c", c},
         {"engine", engine},
         {"out", out},
         {"cap", cap},
         {"samples", samples},
         {"ns", ns},
         {"which", which},
         {"target", target},
         {"input", input},
         {"z_only", z_only}};
  j["t"] = t ? Json(*t) : Json(nullptr);
  j["r"] = r ? Json(*r) : Json(nullptr);
  return j;
}

std::string RunConfig::to_ini() const {
  std::ostringstream os;
  os << "l=" << l << "\n"
     << "n=" << n << "\n"
     << "seed=" << seed << "\n"
     << "reps=" << reps << "\n"
     << "epsilon=" << lcslab::format_double(epsilon) << "\n"
     << "c=" << lcslab::format_double(c) << "\n"
     << "engine=" << engine << "\n"
     << "out=" << out << "\n"
     << "cap=" << cap << "\n"
     << "samples=" << samples << "\n";
  if (c2 > 0.0) os << "c2=" << lcslab::format_double(c2) << "\n";
  if (t) os << "t=" << *t << "\n";
  if (r) os << "r=" << *r << "\n";
  os << "ns=[";
  for (std::size_t i = 0; i < ns.size(); ++i) os << (i ? "," : "") << ns[i];
  os << "]\n"
     << "which=" << which << "\n"
     << "target=" << lcslab::format_double(target) << "\n";
  if (!input.empty()) os << "input=" << input << "\n";
  os << "z-only=" << (z_only ? "true" : "false") << "\n";
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest::RunManifest(const RunConfig& config, std::string command)
    : dir_(config.out), command_(std::move(command)), seed_(lcslab::derive_seed(config.seed, command_)) {
  doc_ = Json{{"artifact", "explab"},
              {"version", kVersion},
              {"command", command_},
              {"config", config.to_json()},
              {"seeds", {{"master", config.seed}, {command_, seed_}}},
              {"started_at", utc_timestamp()},
              {"finished_at", nullptr},
              {"status", "running"},
              {"outputs", Json::array()}};
  lcslab::write_file_atomic(dir_ / ("config_" + command_ + ".ini"), config.to_ini());
  save();
}

void RunManifest::write_output(const std::string& name, const std::string& content) {
  lcslab::write_file_atomic(dir_ / name, content);
  doc_["outputs"].push_back(name);
  save();
}

void RunManifest::finish(bool pass) {
  doc_["finished_at"] = utc_timestamp();
  doc_["status"] = pass ? "pass" : "fail";
  save();
}

void RunManifest::save() const {
  lcslab::write_file_atomic(dir_ / ("manifest_" + command_ + ".json"), lcslab::dump_json(doc_));
}

}  // namespace explab
