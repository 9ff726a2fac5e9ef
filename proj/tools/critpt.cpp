#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "critpt/cp1_empirical.hpp"
#include "critpt/cpm_exact.hpp"
#include "critpt/curve.hpp"
#include "critpt/emit.hpp"
#include "critpt/gauss_integrals.hpp"
#include "critpt/verify.hpp"

namespace {

using namespace critpt;

int default_workers() {
  if (const char* env = std::getenv("CRITPT_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return std::min(w, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min<unsigned>(std::max<unsigned>(hw, 1), 8));
}

struct Common {
  std::string format = "table";
  std::uint64_t seed = 1;
  std::int64_t samples = 1000000;
  int workers = default_workers();
  bool median_of_means = false;

  MCOptions mc() const {
    MCOptions opt;
    opt.workers = workers;
    opt.median_of_means = median_of_means;
    return opt;
  }
};

void add_common(CLI::App* cmd, Common& c, bool stochastic = true) {
  cmd->add_option("--format,-f", c.format, "output format: table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  if (stochastic) {
    cmd->add_option("--seed", c.seed, "RNG seed");
    cmd->add_option("--samples,-n", c.samples, "number of Monte-Carlo samples");
    cmd->add_option("--workers,-w", c.workers, "worker threads (env CRITPT_WORKERS)");
    cmd->add_flag("--median-of-means", c.median_of_means, "robust block-median estimator");
  }
}

Json mc_row(const char* command, const MCEstimate& est) {
  Json row;
  row["command"] = command;
  Json mc = mc_to_json(est);
  row.update(mc);
  return row;
}

JetCovariance model_covariance(const std::string& model, int m, double n_power) {
  if (model == "cpm") return fubini_study_covariance(m, n_power);
  if (model == "cp1xe") return line_times_flat_covariance(m, n_power);
  throw numeric_error("unknown model: " + model);
}

BigRational parse_rational(const std::string& text) {
  try {
    return BigRational(text);
  } catch (...) {
    throw numeric_error("cannot parse rational number: " + text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critpt: expected critical points of Gaussian random holomorphic sections"};
  app.require_subcommand(1);

  // ---- b0
  Common b0_c;
  int b0_m = 1;
  auto* cmd_b0 = app.add_subcommand("b0", "universal leading density constant");
  cmd_b0->add_option("--dim,-m", b0_m, "complex dimension")->check(CLI::Range(1, kMaxDim));
  add_common(cmd_b0, b0_c);

  // ---- b0q
  Common b0q_c;
  int b0q_m = 1, b0q_q = 1;
  auto* cmd_b0q = app.add_subcommand("b0q", "leading density constant of one Morse index");
  cmd_b0q->add_option("--dim,-m", b0q_m, "complex dimension")->check(CLI::Range(1, kMaxDim));
  cmd_b0q->add_option("--index,-q", b0q_q, "Morse index, m <= q <= 2m")->required();
  b0q_c.samples = 2000000;
  add_common(cmd_b0q, b0q_c);

  // ---- morse-table
  Common morse_c;
  int morse_m = 2;
  auto* cmd_morse = app.add_subcommand("morse-table", "leading coefficients per Morse index");
  cmd_morse->add_option("--dim,-m", morse_m, "complex dimension")->check(CLI::Range(1, 6));
  morse_c.samples = 2000000;
  add_common(cmd_morse, morse_c);

  // ---- beta2q
  Common beta_c;
  int beta_m = 1, beta_q = 1;
  std::string beta_method = "baugher";
  auto* cmd_beta = app.add_subcommand("beta2q", "Calabi-functional coefficient of one index");
  cmd_beta->add_option("--dim,-m", beta_m, "complex dimension")->check(CLI::Range(1, kMaxDim));
  cmd_beta->add_option("--index,-q", beta_q, "Morse index, m <= q <= 2m")->required();
  cmd_beta
      ->add_option("--method", beta_method,
                   "integrand: gamma, f_average or baugher (default: lowest variance)")
      ->check(CLI::IsMember({"gamma", "f_average", "baugher"}));
  beta_c.samples = 5000000;
  add_common(cmd_beta, beta_c);

  // ---- density
  Common dens_c;
  int dens_m = 1, dens_q = 0;
  double dens_n = 3.0;
  std::string dens_model = "cpm";
  auto* cmd_dens = app.add_subcommand("density", "expected critical-point density for a model");
  cmd_dens->add_option("--dim,-m", dens_m, "complex dimension")->check(CLI::Range(1, kMaxDim));
  cmd_dens->add_option("--power,-N", dens_n, "tensor power N (>= 2)");
  cmd_dens->add_option("--index,-q", dens_q, "restrict to one Morse index (0 = all)");
  cmd_dens->add_option("--model", dens_model, "jet covariance model: cpm or cp1xe")
      ->check(CLI::IsMember({"cpm", "cp1xe"}));
  add_common(cmd_dens, dens_c);

  // ---- iz-check
  Common iz_c;
  int iz_m = 2;
  std::vector<double> iz_lambda{1.0, 2.0}, iz_xi{0.5, 1.5};
  auto* cmd_iz = app.add_subcommand("iz-check", "Monte-Carlo check of the Itzykson-Zuber formula");
  cmd_iz->add_option("--dim,-m", iz_m, "matrix dimension")->check(CLI::Range(1, kMaxDim));
  cmd_iz->add_option("--lambda", iz_lambda, "diagonal of D(lambda)")->delimiter(',');
  cmd_iz->add_option("--xi", iz_xi, "diagonal of D(xi)")->delimiter(',');
  add_common(cmd_iz, iz_c);

  // ---- g24-check
  Common g24_c;
  int g24_m = 2;
  std::uint64_t g24_hseed = 1;
  auto* cmd_g24 =
      app.add_subcommand("g24-check", "Haar moments of |(g H g^t)_11|^{2,4} vs closed forms");
  cmd_g24->add_option("--dim,-m", g24_m, "matrix dimension")->check(CLI::Range(2, kMaxDim));
  cmd_g24->add_option("--h-seed", g24_hseed, "seed for the random symmetric test matrix H");
  add_common(cmd_g24, g24_c);

  // ---- cpm-exact
  Common cpm_c;
  int cpm_m = 1, cpm_q = 1;
  long long cpm_at = 0;
  auto* cmd_cpm = app.add_subcommand(
      "cpm-exact", "exact expected count of one Morse index on projective space");
  cmd_cpm->add_option("--dim,-m", cpm_m, "complex dimension")->check(CLI::Range(1, 4));
  cmd_cpm->add_option("--index,-q", cpm_q, "Morse index, m <= q <= 2m")->required();
  cmd_cpm->add_option("--at", cpm_at, "also evaluate at this N");
  add_common(cmd_cpm, cpm_c, false);

  // ---- cpm-total
  Common cpt_c;
  int cpt_m = 1;
  long long cpt_at = 0;
  auto* cmd_cpt = app.add_subcommand("cpm-total", "exact expected total count on projective space");
  cmd_cpt->add_option("--dim,-m", cpt_m, "complex dimension")->check(CLI::Range(1, 4));
  cmd_cpt->add_option("--at", cpt_at, "also evaluate at this N");
  add_common(cmd_cpt, cpt_c, false);

  // ---- chern-check
  Common chern_c;
  int chern_m = 1;
  auto* cmd_chern =
      app.add_subcommand("chern-check", "alternating sum must equal the Chern polynomial");
  cmd_chern->add_option("--dim,-m", chern_m, "complex dimension")->check(CLI::Range(1, 4));
  add_common(cmd_chern, chern_c, false);

  // ---- series
  Common ser_c;
  int ser_m = 1, ser_q = 0, ser_terms = 3;
  auto* cmd_ser = app.add_subcommand("series", "large-N expansion of an exact count");
  cmd_ser->add_option("--dim,-m", ser_m, "complex dimension")->check(CLI::Range(1, 4));
  cmd_ser->add_option("--index,-q", ser_q, "Morse index (0 = total)");
  cmd_ser->add_option("--terms", ser_terms, "number of expansion terms")->check(CLI::Range(1, 24));
  add_common(cmd_ser, ser_c, false);

  // ---- curve-expansion
  Common curve_c;
  int curve_g = 0, curve_deg = 1, curve_q = 0;
  std::string curve_calabi_pi = "4";
  double curve_calabi = -1.0;
  auto* cmd_curve = app.add_subcommand("curve-expansion", "three-term expansion on a curve");
  cmd_curve->add_option("--genus,-g", curve_g, "genus");
  cmd_curve->add_option("--degree,-d", curve_deg, "degree c1(L)");
  cmd_curve->add_option("--calabi-over-pi", curve_calabi_pi,
                        "Calabi integral as an exact rational multiple of pi");
  cmd_curve->add_option("--calabi", curve_calabi, "Calabi integral as a real (overrides)");
  cmd_curve->add_option("--index,-q", curve_q, "1 = saddles, 2 = maxima, 0 = total");
  add_common(cmd_curve, curve_c, false);

  // ---- fit
  Common fit_c;
  int fit_m = 1, fit_terms = 3;
  std::string fit_model = "cpm";
  std::vector<double> fit_powers{10, 20, 40, 80};
  auto* cmd_fit =
      app.add_subcommand("fit", "fit the density expansion coefficients from a ladder of N");
  cmd_fit->add_option("--dim,-m", fit_m, "complex dimension")->check(CLI::Range(1, kMaxDim));
  cmd_fit->add_option("--powers,-N", fit_powers, "N values")->delimiter(',');
  cmd_fit->add_option("--terms", fit_terms, "number of fitted coefficients")->check(CLI::Range(1, 3));
  cmd_fit->add_option("--model", fit_model,
                      "data source: cpm (exact, m <= 4) or cp1xe (Monte-Carlo)")
      ->check(CLI::IsMember({"cpm", "cp1xe"}));
  add_common(cmd_fit, fit_c);

  // ---- sample-cp1
  Common cp1_c;
  int cp1_n = 5;
  std::int64_t cp1_trials = 2000;
  std::string cp1_dump;
  auto* cmd_cp1 = app.add_subcommand(
      "sample-cp1", "sample random sections on the projective line and count critical points");
  cmd_cp1->add_option("--power,-N", cp1_n, "degree of the sections")->check(CLI::Range(2, 64));
  cmd_cp1->add_option("--trials", cp1_trials, "independent sections to sample");
  cmd_cp1->add_option("--dump", cp1_dump, "write per-critical-point CSV to this path");
  add_common(cmd_cp1, cp1_c);

  // ---- verify
  bool verify_quick = false;
  int verify_workers = default_workers();
  auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
  cmd_verify->add_flag("--quick", verify_quick, "reduced sample counts (indicative run)");
  cmd_verify->add_option("--workers,-w", verify_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // option-combination validation beyond per-flag checks
  auto usage_fail = [](const std::string& what) {
    std::cerr << "usage error: " << what << "\n";
    return 2;
  };
  auto index_ok = [](int m, int q) { return q >= m && q <= 2 * m; };
  if (cmd_b0q->parsed() && !index_ok(b0q_m, b0q_q))
    return usage_fail("b0q needs m <= q <= 2m");
  if (cmd_beta->parsed() && !index_ok(beta_m, beta_q))
    return usage_fail("beta2q needs m <= q <= 2m");
  if (cmd_cpm->parsed() && !index_ok(cpm_m, cpm_q))
    return usage_fail("cpm-exact needs m <= q <= 2m");
  if (cmd_ser->parsed() && ser_q != 0 && !index_ok(ser_m, ser_q))
    return usage_fail("series needs q = 0 (total) or m <= q <= 2m");
  if (cmd_dens->parsed()) {
    if (dens_q != 0 && !index_ok(dens_m, dens_q))
      return usage_fail("density needs q = 0 (all indices) or m <= q <= 2m");
    if (dens_n < 2.0) return usage_fail("density needs N >= 2");
  }
  if (cmd_curve->parsed() && curve_q != 0 && curve_q != 1 && curve_q != 2)
    return usage_fail("curve-expansion needs q in {0, 1, 2}");
  if (cmd_iz->parsed() && (static_cast<int>(iz_lambda.size()) != iz_m ||
                           static_cast<int>(iz_xi.size()) != iz_m))
    return usage_fail("iz-check needs exactly m entries in --lambda and --xi");
  if (cmd_fit->parsed()) {
    if (static_cast<int>(fit_powers.size()) < fit_terms)
      return usage_fail("fit needs at least as many N values as fitted terms");
    for (double np : fit_powers)
      if (np < 2.0) return usage_fail("fit needs every N >= 2");
    if (fit_model == "cpm" && fit_m > 4)
      return usage_fail("exact fit data is available for m <= 4 only");
  }
  for (const Common* c : {&b0_c, &b0q_c, &morse_c, &beta_c, &dens_c, &iz_c, &g24_c, &fit_c, &cp1_c})
    if (c->samples < 1) return usage_fail("need a positive sample count");
  if (cmd_cp1->parsed() && cp1_trials < 1) return usage_fail("need a positive trial count");

  try {
    std::vector<Json> rows;
    const Common* common = nullptr;

    if (cmd_b0->parsed()) {
      common = &b0_c;
      Json row = mc_row("b0", estimate_b0(b0_m, b0_c.samples, b0_c.seed, b0_c.mc()));
      row["dim"] = b0_m;
      rows.push_back(row);
    } else if (cmd_b0q->parsed()) {
      common = &b0q_c;
      Json row =
          mc_row("b0q", estimate_b0q(b0q_m, b0q_q, b0q_c.samples, b0q_c.seed, b0q_c.mc()));
      row["dim"] = b0q_m;
      row["index"] = b0q_q;
      rows.push_back(row);
    } else if (cmd_morse->parsed()) {
      common = &morse_c;
      MorseProfile profile =
          morse_leading_table(morse_m, morse_c.samples, morse_c.seed, morse_c.mc());
      for (const auto& [q, est] : profile.values) {
        Json row = mc_row("morse-table", est);
        row["dim"] = morse_m;
        row["index"] = q;
        rows.push_back(row);
      }
      Json total = mc_row("morse-table", profile.total);
      total["dim"] = morse_m;
      total["index"] = "total";
      rows.push_back(total);
      Json signed_row = mc_row("morse-table", profile.signed_sum);
      signed_row["dim"] = morse_m;
      signed_row["index"] = "signed-b0q-sum";
      rows.push_back(signed_row);
    } else if (cmd_beta->parsed()) {
      common = &beta_c;
      Beta2Method method = beta_method == "gamma"       ? Beta2Method::gamma
                           : beta_method == "f_average" ? Beta2Method::f_average
                                                        : Beta2Method::baugher;
      Json row = mc_row("beta2q", estimate_beta2q(beta_m, beta_q, method, beta_c.samples,
                                                  beta_c.seed, beta_c.mc()));
      row["dim"] = beta_m;
      row["index"] = beta_q;
      row["method"] = beta_method;
      rows.push_back(row);
    } else if (cmd_dens->parsed()) {
      common = &dens_c;
      JetCovariance cov = model_covariance(dens_model, dens_m, dens_n);
      MCEstimate est = dens_q == 0 ? density_general(cov, dens_c.samples, dens_c.seed, dens_c.mc())
                                   : density_morse_general(cov, dens_q, dens_c.samples,
                                                           dens_c.seed, dens_c.mc());
      Json row = mc_row("density", est);
      row["dim"] = dens_m;
      row["model"] = dens_model;
      row["power"] = dens_n;
      if (dens_q != 0) row["index"] = dens_q;
      rows.push_back(row);
    } else if (cmd_iz->parsed()) {
      common = &iz_c;
      IZCheckResult res = iz_check(iz_m, iz_lambda, iz_xi, iz_c.samples, iz_c.seed, iz_c.mc());
      Json row;
      row["command"] = "iz-check";
      row["dim"] = iz_m;
      row["mean_re"] = res.mc.mean.real();
      row["mean_im"] = res.mc.mean.imag();
      row["std_error"] = res.mc.std_error;
      row["n_samples"] = res.mc.n_samples;
      row["n_rejected"] = res.mc.n_rejected;
      row["seed"] = res.mc.seed;
      row["exact_re"] = res.exact.real();
      row["exact_im"] = res.exact.imag();
      row["rel_err"] = res.rel_err;
      rows.push_back(row);
    } else if (cmd_g24->parsed()) {
      common = &g24_c;
      RngStream hs(g24_hseed, 0);
      CMat h = sample_standard_jet(hs, g24_m).h;
      SymMomentCheckResult res =
          haar_symmetric_moment_check(g24_m, h, g24_c.samples, g24_c.seed, g24_c.mc());
      for (const auto& [name, check] :
           {std::pair<const char*, const MomentCheck*>{"second", &res.second},
            std::pair<const char*, const MomentCheck*>{"fourth", &res.fourth}}) {
        Json row = mc_row("g24-check", check->mc);
        row["dim"] = g24_m;
        row["moment"] = name;
        row["exact"] = check->exact;
        row["rel_err"] = check->rel_err;
        rows.push_back(row);
      }
    } else if (cmd_cpm->parsed()) {
      common = &cpm_c;
      RationalFunctionN f = cpm_expected_number(cpm_m, cpm_q);
      Json row;
      row["command"] = "cpm-exact";
      row["dim"] = cpm_m;
      row["index"] = cpm_q;
      row["count"] = f.str();
      if (cpm_at >= 2) {
        BigRational value = f.eval(BigRational(cpm_at));
        row["at"] = cpm_at;
        row["value"] = rat_str(value);
        row["value_float"] = to_double(value);
      }
      rows.push_back(row);
    } else if (cmd_cpt->parsed()) {
      common = &cpt_c;
      RationalFunctionN f = cpm_total(cpt_m);
      Json row;
      row["command"] = "cpm-total";
      row["dim"] = cpt_m;
      row["count"] = f.str();
      if (cpt_at >= 2) {
        BigRational value = f.eval(BigRational(cpt_at));
        row["at"] = cpt_at;
        row["value"] = rat_str(value);
        row["value_float"] = to_double(value);
      }
      rows.push_back(row);
    } else if (cmd_chern->parsed()) {
      common = &chern_c;
      RationalFunctionN alt = chern_check(chern_m);  // throws on mismatch
      if (chern_c.format == "table") {
        std::cout << alt.str() << "  OK\n";
        return 0;
      }
      Json row;
      row["command"] = "chern-check";
      row["dim"] = chern_m;
      row["polynomial"] = alt.str();
      row["status"] = "OK";
      rows.push_back(row);
    } else if (cmd_ser->parsed()) {
      common = &ser_c;
      RationalFunctionN f = ser_q == 0 ? cpm_total(ser_m) : cpm_expected_number(ser_m, ser_q);
      LaurentSeries s = series_expand(f, ser_terms);
      if (ser_c.format == "table") {
        std::cout << laurent_to_text(s) << "\n";
        return 0;
      }
      Json row = laurent_to_json(s);
      row["command"] = "series";
      rows.push_back(row);
    } else if (cmd_curve->parsed()) {
      common = &curve_c;
      CurveGeometry geom;
      geom.genus = curve_g;
      geom.degree = curve_deg;
      geom.calabi_over_pi = parse_rational(curve_calabi_pi);
      if (curve_calabi >= 0.0) geom.calabi_inexact = curve_calabi;
      LaurentSeries s = curve_q == 0 ? curve_expansion_total(geom) : curve_expansion(geom, curve_q);
      if (curve_c.format == "table") {
        std::cout << laurent_to_text(s) << "\n";
        return 0;
      }
      Json row = laurent_to_json(s);
      row["command"] = "curve-expansion";
      rows.push_back(row);
    } else if (cmd_fit->parsed()) {
      common = &fit_c;
      std::vector<std::pair<double, MCEstimate>> data;
      double fact = 1.0;
      for (int j = 2; j <= fit_m; ++j) fact *= j;
      for (double np : fit_powers) {
        MCEstimate est;
        if (fit_model == "cpm") {
          RationalFunctionN f = cpm_total(fit_m);
          est.mean = f.eval(np) * fact / std::pow(kPi, fit_m);  // density units
          est.std_error = 0.0;
        } else {
          est = density_general(line_times_flat_covariance(fit_m, np), fit_c.samples,
                                fit_c.seed + static_cast<std::uint64_t>(np), fit_c.mc());
        }
        data.emplace_back(np, est);
      }
      LaurentSeries s = fit_expansion(data, fit_m, fit_terms);
      if (fit_c.format == "table") {
        std::cout << laurent_to_text(s) << "\n";
        return 0;
      }
      Json row = laurent_to_json(s);
      row["command"] = "fit";
      row["model"] = fit_model;
      rows.push_back(row);
    } else if (cmd_cp1->parsed()) {
      common = &cp1_c;
      std::vector<CriticalPointDumpRow> dump;
      EmpiricalCounts counts =
          empirical_counts(cp1_n, cp1_trials, cp1_c.seed, cp1_c.mc(),
                           cp1_dump.empty() ? nullptr : &dump);
      if (!cp1_dump.empty()) {
        std::vector<Json> dump_rows;
        for (const auto& d : dump) {
          Json row;
          row["trial"] = d.trial;
          row["chart"] = d.record.chart;
          row["re"] = d.record.location.real();
          row["im"] = d.record.location.imag();
          row["index"] = d.record.morse_index;
          row["residual"] = d.record.residual;
          row["log_norm"] = d.record.log_norm;
          dump_rows.push_back(row);
        }
        std::ofstream out(cp1_dump);
        if (!out) throw numeric_error("cannot open dump file: " + cp1_dump);
        out << emit_table(dump_rows, OutputFormat::csv);
      }
      for (const auto& [name, est] :
           {std::pair<const char*, const MCEstimate*>{"saddles", &counts.saddles},
            std::pair<const char*, const MCEstimate*>{"maxima", &counts.maxima},
            std::pair<const char*, const MCEstimate*>{"total", &counts.total}}) {
        Json row = mc_row("sample-cp1", *est);
        row["power"] = cp1_n;
        row["kind"] = name;
        row["euler_violation_rate"] = counts.euler_violation_rate;
        rows.push_back(row);
      }
    } else if (cmd_verify->parsed()) {
      VerifyOptions vopt;
      vopt.quick = verify_quick;
      vopt.workers = verify_workers;
      auto results = run_verification(vopt, std::cout);
      for (const auto& r : results)
        if (!r.passed) return 1;
      return 0;
    }

    std::cout << emit_table(rows, parse_format(common ? common->format : "table"));
    return 0;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
