// explab: command line runner for the LCS block-model laboratory.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lcslab/error.hpp"

namespace {

void add_options(CLI::App& app, explab::RunConfig& cfg) {
  app.add_option("--l", cfg.l, "block parameter l (blocks have length l-1, l, l+1)")->capture_default_str();
  app.add_option("--n", cfg.n, "string length")->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--reps", cfg.reps, "replicates")->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "drift threshold, in (0,1)")->capture_default_str();
  app.add_option("--c2", cfg.c2, "slope scale constant (default 80/epsilon^2)");
  app.add_option("--c", cfg.c, "domain scale constant")->capture_default_str();
  app.add_option("--engine", cfg.engine, "LCS engine")
      ->check(CLI::IsMember({"reference", "bitparallel"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "run directory")->capture_default_str();
  app.add_option("--cap", cfg.cap, "enumeration cap for exact drift")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo size; 0 picks the command default");
  app.add_option("--t", cfg.t, "block count T (ladder; max block count for verify possz)");
  app.add_option("--r", cfg.r, "rest length R (ladder)");
  app.add_option("--ns", cfg.ns, "string lengths for scan")->delimiter(',');
  app.add_option("--which", cfg.which, "verification suite")
      ->check(CLI::IsMember({"all", "possz", "linear-system", "multinomial", "engines", "bonetto", "hoeffding"}))
      ->capture_default_str();
  app.add_option("--target", cfg.target, "coverage target for calibrate-domain")->capture_default_str();
  app.add_option("--input", cfg.input, "CSV with columns x,y (lcs)");
  app.add_flag("--z-only", cfg.z_only, "scan: skip the LCS, record Z only");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explab: experiments on the LCS of block-model random strings"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value configuration file; command line flags take precedence");

  explab::RunConfig cfg;
  add_options(app, cfg);

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const explab::RunConfig&);
  };
  const Entry entries[] = {
      {"generate", "write seeded X, Y strings and their (T,Z,R)", explab::cmd_generate},
      {"verify", "run a verification suite (--which)", explab::cmd_verify},
      {"drift", "conditional drift of the LCS under one tilde step", explab::cmd_drift},
      {"ladder", "build a ladder for (--t, --r) and evaluate slope events", explab::cmd_ladder},
      {"scan", "variance of L_n and Z over --ns", explab::cmd_scan},
      {"calibrate-domain", "smallest c reaching --target coverage", explab::cmd_calibrate},
      {"lcs", "batch LCS over an x,y CSV (--input)", explab::cmd_lcs},
      {"report", "collect the JSON outputs of a run directory", explab::cmd_report},
  };
  for (const auto& e : entries) app.add_subcommand(e.name, e.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    cfg.validate();
    for (const auto& e : entries)
      if (app.got_subcommand(e.name)) return e.run(cfg);
  } catch (const lcslab::LabError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
