#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "lcslab/analysis.hpp"
#include "lcslab/domain.hpp"
#include "lcslab/error.hpp"
#include "lcslab/ladder.hpp"
#include "lcslab/parallel.hpp"
#include "lcslab/stats.hpp"
#include "lcslab/verify.hpp"

namespace explab {

using namespace lcslab;

namespace {

std::string num(double v) { return format_double(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }

Json fit_json(const LinearFit& f) { return Json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}}; }

Json domain_json(const DomainD& d) {
  return Json{{"c", d.c}, {"t_lo", d.t_lo}, {"t_hi", d.t_hi}, {"z_lo", d.z_lo}, {"z_hi", d.z_hi}};
}

}  // namespace

int cmd_generate(const RunConfig& cfg) {
  RunManifest manifest(cfg, "generate");
  const ModelParams params{cfg.l, cfg.n};
  if (cfg.reps == 0) {
    manifest.finish(true);
    return 0;
  }
  std::vector<BlockString> xs(cfg.reps), ys(cfg.reps);
  parallel_for(xs.size(), [&](std::size_t i) {
    xs[i] = build_string(params, derive_seed(manifest.command_seed(), "x", i));
    ys[i] = build_string(params, derive_seed(manifest.command_seed(), "y", i));
  });
  Json doc{{"l", cfg.l}, {"n", cfg.n}, {"replicates", Json::array()}};
  CsvTable pairs({"x", "y"});
  CsvTable tzr({"replicate", "string", "t", "z", "r"});
  bool ok = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const TzrStats sx = compute_tzr(xs[i]), sy = compute_tzr(ys[i]);
    // the emitted statistics must invert back to the block counts
    ok = ok && counts_from_tzr(params, sx) == xs[i].counts() && counts_from_tzr(params, sy) == ys[i].counts();
    doc["replicates"].push_back(Json{{"replicate", i},
                                     {"x", to_json(xs[i])},
                                     {"y", to_json(ys[i])},
                                     {"x_tzr", to_json(sx)},
                                     {"y_tzr", to_json(sy)}});
    pairs.add_row({xs[i].symbols(), ys[i].symbols()});
    tzr.add_row({num(std::uint64_t{i}), "x", num(sx.t), num(sx.z), num(sx.r)});
    tzr.add_row({num(std::uint64_t{i}), "y", num(sy.t), num(sy.z), num(sy.r)});
  }
  manifest.write_output("generate.json", dump_json(doc));
  manifest.write_output("pairs.csv", pairs.str());
  manifest.write_output("tzr.csv", tzr.str());
  manifest.finish(ok);
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  static const std::vector<std::string> kAll{"possz", "linear-system", "multinomial", "engines", "bonetto",
                                             "hoeffding"};
  std::vector<std::string> which;
  if (cfg.which == "all") which = kAll;
  else if (std::find(kAll.begin(), kAll.end(), cfg.which) != kAll.end()) which = {cfg.which};
  else throw LabError(ErrorKind::InvalidParams, "unknown verification suite '" + cfg.which + "'");

  RunManifest manifest(cfg, "verify-" + cfg.which);
  const Seed seed = manifest.command_seed();
  bool all_pass = true;
  for (const auto& name : which) {
    CheckReport rep;
    if (name == "possz") {
      rep = verify_possz(cfg.l, static_cast<int>(cfg.t.value_or(6)));
    } else if (name == "linear-system") {
      std::vector<int> ls{3, 5, 10};
      if (std::find(ls.begin(), ls.end(), cfg.l) == ls.end()) ls.push_back(cfg.l);
      rep = verify_linear_system(ls, 50);
    } else if (name == "multinomial") {
      MultinomialOptions opt;
      opt.l = cfg.l;
      opt.n = 8 * cfg.l;
      opt.samples = cfg.samples_or(10'000);
      rep = verify_multinomial(opt, derive_seed(seed, name));
    } else if (name == "engines") {
      rep = verify_engines(cfg.l, cfg.n, cfg.samples_or(10'000), derive_seed(seed, name));
    } else if (name == "bonetto") {
      rep = verify_bonetto(derive_seed(seed, name));
    } else {
      const std::vector<double> deltas{0.05, 0.1, 0.2};
      rep = verify_hoeffding(deltas, 1000, cfg.samples_or(10'000), derive_seed(seed, name));
    }
    all_pass = all_pass && rep.pass;
    std::cout << (rep.pass ? "PASS " : "FAIL ") << rep.name << "\n";
    manifest.write_output("verify_" + name + ".json",
                          dump_json(Json{{"which", name}, {"pass", rep.pass}, {"detail", rep.detail}}));
  }
  manifest.finish(all_pass);
  return all_pass ? 0 : 1;
}

int cmd_drift(const RunConfig& cfg) {
  RunManifest manifest(cfg, "drift");
  const ModelParams params{cfg.l, cfg.n};
  const std::uint64_t k = cfg.samples_or(200);
  struct Row {
    BlockCounts counts;
    std::optional<DriftEstimate> est;
  };
  std::vector<Row> rows(cfg.reps);
  parallel_for(rows.size(), [&](std::size_t i) {
    const BlockString x = build_string(params, derive_seed(manifest.command_seed(), "x", i));
    const std::string y = build_string(params, derive_seed(manifest.command_seed(), "y", i)).symbols();
    rows[i].counts = x.counts();
    const auto outcomes = static_cast<std::uint64_t>(rows[i].counts.n1 * rows[i].counts.n3);
    if (outcomes == 0) return;
    if (outcomes <= cfg.cap) rows[i].est = drift_exact(x, y, cfg.cap);
    else rows[i].est = drift_sampled(x, y, k, derive_seed(manifest.command_seed(), "draws", i));
  });

  CsvTable csv({"replicate", "n1", "n3", "mean", "stderr", "exact"});
  std::uint64_t at_least_eps = 0, estimated = 0, exact = 0, unmodifiable = 0;
  bool in_bounds = true;
  double sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!row.est) {
      ++unmodifiable;
      csv.add_row({num(std::uint64_t{i}), num(row.counts.n1), num(row.counts.n3), "", "", "false"});
      continue;
    }
    ++estimated;
    exact += row.est->exact ? 1 : 0;
    at_least_eps += row.est->mean >= cfg.epsilon ? 1 : 0;
    in_bounds = in_bounds && std::abs(row.est->mean) <= 2.0;
    sum += row.est->mean;
    csv.add_row({num(std::uint64_t{i}), num(row.counts.n1), num(row.counts.n3), num(row.est->mean),
                 num(row.est->std_error), row.est->exact ? "true" : "false"});
  }
  manifest.write_output("drift.csv", csv.str());
  const Json summary{{"l", cfg.l},
                     {"n", cfg.n},
                     {"epsilon", cfg.epsilon},
                     {"replicates", cfg.reps},
                     {"estimated", estimated},
                     {"exact", exact},
                     {"sampled", estimated - exact},
                     {"sample_draws", k},
                     {"unmodifiable", unmodifiable},
                     {"mean_drift", estimated ? sum / static_cast<double>(estimated) : 0.0},
                     {"fraction_ge_epsilon",
                      estimated ? static_cast<double>(at_least_eps) / static_cast<double>(estimated) : 0.0},
                     {"all_in_bounds", in_bounds},
                     {"pass", in_bounds}};
  manifest.write_output("drift_summary.json", dump_json(summary));
  manifest.finish(in_bounds);
  return in_bounds ? 0 : 1;
}

namespace {

Json diagnostics_json(const LcsLadder& ladder, Parity parity, std::string_view y, const RunConfig& cfg, Seed seed) {
  const auto values = ladder.values(parity);
  if (values.empty()) return nullptr;
  const std::uint64_t k = cfg.samples_or(64);
  const auto drifts = ladder_drifts(ladder, parity, y, k, std::max<std::uint64_t>(k, 2), seed);
  const auto repaired = repair_ladder(values, drifts, cfg.epsilon);
  const LadderDiagnostics d = martingale_diagnostics(repaired, cfg.epsilon, cfg.effective_c2(), cfg.n, drifts);
  Json drift_means = Json::array();
  for (const auto& dr : drifts) drift_means.push_back(dr.mean);
  return Json{{"drifts", drift_means},
              {"repaired", repaired},
              {"e_values", d.e_values},
              {"martingale_residuals", d.martingale_residuals},
              {"window", d.window},
              {"azuma_bound", d.azuma_bound},
              {"azuma_bound_lipschitz", d.azuma_bound_lipschitz},
              {"tau", d.tau},
              {"max_abs_increment", d.max_abs_increment}};
}

}  // namespace

int cmd_ladder(const RunConfig& cfg) {
  RunManifest manifest(cfg, "ladder");
  const ModelParams params{cfg.l, cfg.n};
  const DomainD domain = make_domain(params, cfg.c);
  const std::int64_t t =
      cfg.t.value_or(std::clamp<std::int64_t>(std::llround(static_cast<double>(cfg.n) / cfg.l), domain.t_lo, domain.t_hi));
  std::int64_t r = cfg.r.value_or(0);
  if (!cfg.r)
    while (r < cfg.l && !leftmost_z(params, t, r, domain)) ++r;

  const Seed seed = manifest.command_seed();
  const std::string y = build_string(params, derive_seed(seed, "y")).symbols();
  const Seed ladder_seed = derive_seed(seed, "ladder");
  const LcsLadder ladder = build_ladder(params, t, r, y, domain, ladder_seed);

  CsvTable csv({"t", "r", "z", "lcs", "parity"});
  bool integrity = true;
  for (std::size_t i = 0; i < ladder.rungs.size(); ++i) {
    const Rung& rung = ladder.rungs[i];
    csv.add_row({num(t), num(rung.r), num(rung.z), num(rung.lcs), std::string(to_string(rung.parity))});
    integrity = integrity && compute_tzr(rung.string) == TzrStats{t, rung.z, rung.r};
    if (i > 0) integrity = integrity && rung.z == ladder.rungs[i - 1].z + 2;
  }
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const auto v = ladder.values(p);
    for (std::size_t i = 1; i < v.size(); ++i) integrity = integrity && std::abs(v[i] - v[i - 1]) <= 2.0;
  }
  manifest.write_output("ladder.csv", csv.str());

  const SlopeEvent ev = slope_event_check(ladder, cfg.epsilon, cfg.effective_c2());
  Json violating = nullptr;
  if (ev.violating_pair) violating = Json::array({ev.violating_pair->first, ev.violating_pair->second});
  const Json doc{
      {"seed", cfg.seed},
      {"ladder_seed", ladder_seed},
      {"params", {{"l", cfg.l}, {"n", cfg.n}}},
      {"t", t},
      {"r", r},
      {"domain", domain_json(domain)},
      {"z0", ladder.rungs.front().z},
      {"rungs", ladder.rungs.size()},
      {"termination", {{"even", to_string(ladder.even_end)}, {"odd", to_string(ladder.odd_end)}}},
      {"slope_event", {{"epsilon", ev.epsilon}, {"c2", ev.c2}, {"holds", ev.holds}, {"violating_pair", violating}}},
      {"diagnostics",
       {{"even", diagnostics_json(ladder, Parity::Even, y, cfg, derive_seed(seed, "drift.even"))},
        {"odd", diagnostics_json(ladder, Parity::Odd, y, cfg, derive_seed(seed, "drift.odd"))}}},
      {"traces", {{"even", trace_to_json(ladder.even_trace)}, {"odd", trace_to_json(ladder.odd_trace)}}},
      {"integrity", integrity},
      {"pass", integrity}};
  manifest.write_output("ladder.json", dump_json(doc));
  manifest.finish(integrity);
  return integrity ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg) {
  RunManifest manifest(cfg, "scan");
  std::optional<Engine> engine;
  if (!cfg.z_only) engine = cfg.engine_kind();
  const VarianceTable table = variance_scan(cfg.l, cfg.ns, cfg.reps, manifest.command_seed(), engine);
  CsvTable csv({"n", "replicates", "mean_L", "var_L", "ci_low", "ci_high", "mean_Z", "var_Z", "z_ci_low",
                "z_ci_high"});
  std::vector<double> xs, vl, vz;
  for (const auto& row : table.rows) {
    auto lcol = [&](double v) { return row.has_lcs ? num(v) : std::string(); };
    csv.add_row({num(std::int64_t{row.n}), num(row.replicates), lcol(row.mean_L), lcol(row.var_L), lcol(row.ci_low),
                 lcol(row.ci_high), num(row.mean_Z), num(row.var_Z), num(row.z_ci_low), num(row.z_ci_high)});
    xs.push_back(row.n);
    vl.push_back(row.var_L);
    vz.push_back(row.var_Z);
  }
  manifest.write_output("scan.csv", csv.str());
  Json fit{{"l", cfg.l}, {"ns", cfg.ns}, {"replicates", cfg.reps}, {"L", nullptr}, {"Z", nullptr}};
  if (xs.size() >= 2) {
    if (engine) fit["L"] = fit_json(linear_fit(xs, vl));
    fit["Z"] = fit_json(linear_fit(xs, vz));
    fit["fit_slope"] = fit["Z"]["slope"];
    fit["r2"] = fit["Z"]["r2"];
  }
  manifest.write_output("scan_fit.json", dump_json(fit));
  manifest.finish(true);
  return 0;
}

int cmd_calibrate(const RunConfig& cfg) {
  RunManifest manifest(cfg, "calibrate-domain");
  const ModelParams params{cfg.l, cfg.n};
  const Seed seed = manifest.command_seed();
  const Calibration cal = calibrate_c(params, cfg.target, cfg.reps, derive_seed(seed, "calibrate"));
  const double fresh = domain_coverage(params, cal.c, cfg.reps, derive_seed(seed, "fresh"));
  CsvTable csv({"c", "coverage"});
  for (const auto& [c, cov] : cal.grid) csv.add_row({num(c), num(cov)});
  manifest.write_output("calibration.csv", csv.str());

  const DomainD domain = make_domain(params, cal.c);
  Json doc{{"l", cfg.l},
           {"n", cfg.n},
           {"target", cfg.target},
           {"reps", cfg.reps},
           {"c", cal.c},
           {"coverage", cal.coverage},
           {"fresh_coverage", fresh},
           {"domain", domain_json(domain)}};
  try {
    const MinProbResult mp = min_prob_over_D(params, domain);
    doc["min_nP"] = mp.min_np;
    doc["log_min_nP"] = mp.log_min_np;
    doc["min_nP_argmin"] = to_json(mp.argmin);
    const RatioResult rr = ratio_check(params, domain);
    doc["K_hat"] = rr.k_hat;
    doc["K_hat_argmax"] = to_json(rr.argmax);
  } catch (const LabError& e) {
    if (e.kind() != ErrorKind::EmptyDomain) throw;
    doc["min_nP"] = nullptr;
    doc["K_hat"] = nullptr;
  }
  const bool pass = fresh >= cfg.target;
  doc["pass"] = pass;
  manifest.write_output("calibration.json", dump_json(doc));
  manifest.finish(pass);
  return pass ? 0 : 1;
}

int cmd_lcs(const RunConfig& cfg) {
  if (cfg.input.empty()) throw LabError(ErrorKind::InvalidParams, "lcs needs --input with columns x,y");
  RunManifest manifest(cfg, "lcs");
  const CsvTable in = parse_csv(read_file(cfg.input));
  const auto& h = in.header();
  const auto xi = std::find(h.begin(), h.end(), "x") - h.begin();
  const auto yi = std::find(h.begin(), h.end(), "y") - h.begin();
  if (xi == static_cast<long>(h.size()) || yi == static_cast<long>(h.size()))
    throw LabError(ErrorKind::IoError, "input needs columns x and y");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& row : in.rows()) pairs.emplace_back(row[static_cast<std::size_t>(xi)], row[static_cast<std::size_t>(yi)]);
  const auto results = lcs_len_batch(pairs, cfg.engine_kind(), kMaxLcsInput);
  CsvTable out({"index", "lcs"});
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i].length) {
      ok = false;
      std::cerr << "pair " << i << ": " << results[i].error << "\n";
    }
    out.add_row({num(std::uint64_t{i}), results[i].length ? num(std::uint64_t{*results[i].length}) : std::string()});
  }
  manifest.write_output("lcs.csv", out.str());
  manifest.finish(ok);
  return ok ? 0 : 1;
}

int cmd_report(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.out);
  if (!std::filesystem::is_directory(dir)) throw LabError(ErrorKind::IoError, "no run directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() == ".json" && name.rfind("manifest_", 0) != 0 && name != "report.json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  RunManifest manifest(cfg, "report");
  Json report{{"directory", dir.string()}, {"files", Json::object()}, {"summary", Json::object()}};
  bool all_pass = true;
  for (const auto& path : files) {
    Json doc;
    try {
      doc = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
      throw LabError(ErrorKind::IoError, "cannot parse " + path.string() + ": " + e.what());
    }
    const auto name = path.filename().string();
    report["files"][name] = doc;
    for (const char* key : {"fit_slope", "r2", "min_nP", "K_hat", "coverage", "fraction_ge_epsilon"})
      if (doc.is_object() && doc.contains(key)) report["summary"][name][key] = doc[key];
    if (doc.is_object() && doc.contains("pass") && doc["pass"].is_boolean()) {
      const bool pass = doc["pass"].get<bool>();
      all_pass = all_pass && pass;
      std::cout << (pass ? "PASS " : "FAIL ") << name << "\n";
    } else {
      std::cout << "     " << name << "\n";
    }
  }
  report["pass"] = all_pass;
  manifest.write_output("report.json", dump_json(report));
  manifest.finish(all_pass);
  return all_pass ? 0 : 1;
}

}  // namespace explab
