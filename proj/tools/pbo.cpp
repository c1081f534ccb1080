// Command-line entry point. Exit codes: 0 pass, 1 suite failure, 2 bad configuration.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "common.hpp"
#include "pbo/errors.hpp"
#include "pbo/estimates.hpp"
#include "pbo/gauge.hpp"
#include "pbo/nfr.hpp"
#include "pbo/report.hpp"
#include "pbo/solver.hpp"
#include "pbo/suites.hpp"
#include "pbo/uniqueness.hpp"

namespace {

using namespace pbo;
using nlohmann::json;

struct RunConfig {
  int n_max = 16;
  double s = 0.25;
  double M = 64.0;
  std::string m_sweep = "16:1024";
  double K = 8.0;
  double dt = 0.0;  // 0: the CFL limit 0.5 / n_max^2
  double T = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int workers = 0;

  json to_json() const {
    return {{"n_max", n_max}, {"s", s},       {"M", M},       {"m_sweep", m_sweep}, {"K", K},           {"dt", dt},
            {"T", T},         {"seed", seed}, {"format", format}};
  }
};

double default_dt(const RunConfig& rc) { return rc.dt > 0.0 ? rc.dt : 0.5 / (static_cast<double>(rc.n_max) * rc.n_max); }

// Writes a report envelope (json) or the given csv text.
void emit(const RunConfig& rc, const json& env, const std::string& csv) {
  if (rc.format == "csv") {
    if (rc.out.empty() || rc.out == "-") {
      std::cout << csv;
    } else {
      std::ofstream os(rc.out);
      if (!os) throw ConfigError("cannot open " + rc.out);
      os << csv;
    }
    return;
  }
  report::write_json(env, rc.out);
}

std::string checks_csv(const std::vector<suites::Check>& checks) {
  std::ostringstream os;
  os.precision(17);
  os << "name,value,tolerance,passed\n";
  for (const auto& c : checks) os << c.name << ',' << c.value << ',' << c.tolerance << ',' << (c.passed ? 1 : 0) << '\n';
  return os.str();
}

void print_failures(const std::vector<suites::Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) std::cerr << "FAILED " << c.name << ": " << c.value << " > " << c.tolerance << '\n';
}

int verify_identities(const RunConfig& rc, bool quick, const std::string& inject) {
  suites::IdentityOptions opt = quick ? suites::IdentityOptions::quick() : suites::IdentityOptions{};
  opt.seed = rc.seed;
  opt.inject = inject;
  if (inject != "" && inject != "phi-sign" && inject != "m1-sign") throw ConfigError("--inject: phi-sign or m1-sign");
  const auto checks = suites::identity_suite(opt);
  json cfg = rc.to_json();
  cfg["suite"] = opt.to_json();
  emit(rc, report::envelope("verify-identities", cfg, suites::to_json(checks), suites::all_passed(checks)), checks_csv(checks));
  print_failures(checks);
  return suites::all_passed(checks) ? 0 : 1;
}

int nfr_check(const RunConfig& rc) {
  suites::OracleOptions opt;
  opt.n_max = rc.n_max;
  opt.seed = rc.seed;
  opt.K_values = {rc.K, 2.0};
  opt.M_values = {4.0, rc.M};
  if (rc.n_max > 12) throw ConfigError("nfr-check compares against nested-loop sums; use --n-max <= 12");
  const auto checks = suites::oracle_suite(opt);
  json cfg = rc.to_json();
  cfg["suite"] = opt.to_json();
  emit(rc, report::envelope("nfr-check", cfg, suites::to_json(checks), suites::all_passed(checks)), checks_csv(checks));
  print_failures(checks);
  return suites::all_passed(checks) ? 0 : 1;
}

int verify_estimates(const RunConfig& rc, int per_band, int samples, int decay_n_max, double threshold) {
  if (!(rc.s > 1.0 / 6.0 && rc.s < 0.5))
    throw ConfigError("s = " + std::to_string(rc.s) + " is outside (1/6, 1/2), the range of the uniqueness theorem");
  const auto Ms = tools::parse_m_sweep(rc.m_sweep);
  const mult::ComparabilityConstant K(rc.K);

  est::SuiteOptions so{.n_max = rc.n_max, .s = rc.s, .M = rc.M, .K = K, .per_band = per_band, .seed = rc.seed,
                       .difference = true, .base_band = std::min(16, rc.n_max)};
  const std::vector<est::RatioReport> suites_out = est::lemma_suites(est::kAllLemmas, so);

  std::vector<est::RatioReport> decays;
  bool pass = true;
  const est::DecayOptions dopt{.n_max = decay_n_max, .s = rc.s, .K = K, .samples = samples, .seed = rc.seed,
                               .base_band = std::min(16, decay_n_max)};
  for (auto id : {nfr::TermId::N0, nfr::TermId::N10, nfr::TermId::N30}) {
    auto r = est::decay_fit(id, Ms, dopt);
    if (!r.slope || !(*r.slope < threshold)) {
      pass = false;
      std::cerr << "FAILED decay of " << r.lemma << ": slope " << (r.slope ? std::to_string(*r.slope) : "none") << '\n';
    }
    decays.push_back(std::move(r));
  }

  json results = {{"suites", json::array()}, {"decay", json::array()}, {"threshold", threshold}};
  std::ostringstream csv;
  csv.precision(17);
  csv << "lemma,kind,s,M,n_max,samples,max,min,median,slope\n";
  auto add = [&](const char* key, const est::RatioReport& r) {
    results[key].push_back(r.to_json());
    csv << r.lemma << ',' << r.kind << ',' << r.s << ',' << r.M << ',' << r.n_max << ',' << r.samples << ',' << r.max << ','
        << r.min << ',' << r.median << ',';
    if (r.slope) csv << *r.slope;
    csv << '\n';
  };
  for (const auto& r : suites_out) add("suites", r);
  for (const auto& r : decays) add("decay", r);
  json cfg = rc.to_json();
  cfg["per_band"] = per_band;
  cfg["samples"] = samples;
  cfg["decay_n_max"] = decay_n_max;
  emit(rc, report::envelope("verify-estimates", cfg, results, pass), csv.str());
  return pass ? 0 : 1;
}

int simulate(const RunConfig& rc, const std::string& datum, double amp, const std::string& mode,
             const std::string& traj_path, int halvings) {
  const SpectralField u0 = tools::make_datum(datum, rc.n_max, amp, rc.s, rc.seed);
  solver::SolverConfig sc;
  sc.grid = GridSpec::oversampled(rc.n_max);
  sc.dt = default_dt(rc);
  sc.T = rc.T;
  nfr::NFRConfig ncfg;
  ncfg.M = rc.M;
  ncfg.s = rc.s;
  ncfg.K = mult::ComparabilityConstant(rc.K);

  auto run = [&](const solver::SolverConfig& c) {
    if (mode == "bo") return solver::integrate_bo(u0, c);
    if (mode == "omega-direct") return solver::integrate_omega(u0, c, ncfg, solver::OmegaMode::direct);
    if (mode == "omega-nfr") return solver::integrate_omega(u0, c, ncfg, solver::OmegaMode::nfr_form);
    throw ConfigError("--mode: bo, omega-direct or omega-nfr");
  };
  const solver::Trajectory tr = run(sc);

  if (!traj_path.empty()) {
    const bool bin = traj_path.size() > 4 && traj_path.substr(traj_path.size() - 4) == ".bin";
    std::ofstream os(traj_path, bin ? std::ios::binary : std::ios::out);
    if (!os) throw ConfigError("cannot open " + traj_path);
    if (bin)
      solver::write_binary(tr, os);
    else
      solver::write_csv(tr, os);
  }

  // dt, dt/2, ...: terminal H^0 difference between consecutive runs and its ratio.
  json sweep = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "dt,error,ratio\n";
  if (halvings > 0) {
    std::vector<SpectralField> finals{tr.u.back()};
    std::vector<double> dts{sc.dt};
    for (int k = 1; k <= halvings + 1; ++k) {
      solver::SolverConfig c = sc;
      c.dt = sc.dt / (1 << k);
      c.save_every = 1 << 30;
      finals.push_back(run(c).u.back());
      dts.push_back(c.dt);
    }
    double prev = 0.0;
    for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
      const double e = sobolev_norm(finals[k] - finals[k + 1], 0.0);
      json row = {{"dt", dts[k]}, {"error", e}};
      csv << dts[k] << ',' << e << ',';
      if (k > 0 && e > 0.0) {
        row["ratio"] = prev / e;
        csv << prev / e;
      }
      csv << '\n';
      sweep.push_back(row);
      prev = e;
    }
  }

  const bool pass = tr.max_mean_drift() <= 1e-13 && tr.max_imag() <= 1e-11;
  json results = {{"conservation",
                   {{"max_mean_drift", tr.max_mean_drift()}, {"max_imag", tr.max_imag()}, {"l2_drift", tr.l2_drift()}}},
                  {"final_time", tr.times.back()},
                  {"final_l2", tr.conservation.back().l2},
                  {"final_hs", sobolev_norm(tr.u.back(), rc.s)},
                  {"stored_states", tr.times.size()},
                  {"dt_sweep", sweep}};
  json cfg = rc.to_json();
  cfg["solver"] = sc.to_json();
  cfg["datum"] = datum;
  cfg["amp"] = amp;
  cfg["mode"] = mode;
  cfg["trajectory"] = traj_path;
  emit(rc, report::envelope("simulate", cfg, results, pass), csv.str());
  return pass ? 0 : 1;
}

int uniqueness(const RunConfig& rc, const std::string& datum, double amp, int n_split, double delta, int halvings) {
  if (!(rc.s > 1.0 / 6.0 && rc.s < 0.5))
    throw ConfigError("s = " + std::to_string(rc.s) + " is outside (1/6, 1/2), the range of the uniqueness theorem");
  const SpectralField u0 = tools::make_datum(datum, rc.n_max, amp, rc.s, rc.seed);
  solver::SolverConfig a;
  a.grid = GridSpec::oversampled(rc.n_max);
  a.dt = default_dt(rc);
  a.T = rc.T;
  solver::SolverConfig b = a;
  b.dt = a.dt / 2;
  b.save_every = 2;

  json decay_json;
  if (std::isnan(delta)) {
    const std::vector<double> Ms = tools::parse_m_sweep(rc.m_sweep);
    const auto r = est::decay_fit(nfr::TermId::N0, Ms,
                                  est::DecayOptions{.n_max = 32, .s = rc.s, .K = mult::ComparabilityConstant(rc.K),
                                                    .samples = 60, .seed = rc.seed, .base_band = 16});
    if (!r.slope) throw ConfigError("decay fit returned no slope; pass --delta");
    delta = *r.slope;
    decay_json = r.to_json();
  }
  const auto rep = uniq::uniqueness_experiment(u0, a, b, {.s = rc.s, .N_split = n_split, .M = rc.M, .delta_hat = delta});
  std::vector<double> dts{a.dt};
  for (int k = 1; k < halvings; ++k) dts.push_back(a.dt / (1 << k));
  const auto rows = uniq::dt_sweep(u0, a, dts, rc.s);
  const bool mono = uniq::monotone_decreasing(rows);
  const bool pass = rep.best.factor < 1.0 && mono;

  json sweep = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,low,high,total,omega\n";
  for (std::size_t i = 0; i < rep.series.times.size(); ++i)
    csv << rep.series.times[i] << ',' << rep.series.low[i] << ',' << rep.series.high[i] << ',' << rep.series.total[i] << ','
        << rep.series.omega[i] << '\n';
  for (const auto& r : rows) sweep.push_back({{"dt", r.dt}, {"sup_diff", r.sup_diff}});
  json results = rep.to_json();
  results["dt_sweep"] = sweep;
  results["dt_monotone"] = mono;
  if (!decay_json.is_null()) results["delta_fit"] = decay_json;
  json cfg = rc.to_json();
  cfg["solver_a"] = a.to_json();
  cfg["solver_b"] = b.to_json();
  cfg["datum"] = datum;
  cfg["amp"] = amp;
  cfg["n_split"] = n_split;
  emit(rc, report::envelope("uniqueness", cfg, results, pass), csv.str());
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for the periodic Benjamin-Ono equation"};
  app.set_config("--config", "", "TOML or INI file with option values; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig rc;
  app.add_option("--n-max", rc.n_max, "Frequency band")->check(CLI::Range(1, 4096));
  app.add_option("--s", rc.s, "Sobolev index");
  app.add_option("--m", rc.M, "Resonance threshold M")->check(CLI::PositiveNumber);
  app.add_option("--m-sweep", rc.m_sweep, "Threshold sweep lo:hi[:points per octave]");
  app.add_option("--k-const", rc.K, "Comparability constant K")->check(CLI::Range(1.0, 1e6));
  app.add_option("--dt", rc.dt, "Time step (default 0.5 / n_max^2)");
  app.add_option("--time", rc.T, "Final time");
  app.add_option("--seed", rc.seed, "Sampling seed");
  app.add_option("--out", rc.out, "Output path (default stdout)");
  app.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", rc.workers, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  bool quick = false;
  std::string inject;
  auto* ident = app.add_subcommand("verify-identities", "Exact identities: phase factorization, supports, gauge, partitions");
  ident->add_flag("--quick", quick, "Small sizes");
  ident->add_option("--inject", inject, "Deliberate fault for harness testing (phi-sign, m1-sign)");

  int per_band = 20, samples = 200, decay_n_max = 64;
  double threshold = -0.02;
  auto* est_cmd = app.add_subcommand("verify-estimates", "Ratio scans for every estimate and M-decay fits");
  est_cmd->add_option("--per-band", per_band, "Samples per band in the ratio scans")->check(CLI::PositiveNumber);
  est_cmd->add_option("--samples", samples, "Samples in each decay fit")->check(CLI::PositiveNumber);
  est_cmd->add_option("--decay-n-max", decay_n_max, "Band of the decay fits")->check(CLI::Range(2, 128));
  est_cmd->add_option("--threshold", threshold, "Required slope bound");

  auto* nfr_cmd = app.add_subcommand("nfr-check", "Fast term evaluators against nested-loop sums");

  std::string datum = "smooth", mode = "bo", traj;
  double amp = 0.3;
  int halvings = 0;
  auto* sim = app.add_subcommand("simulate", "Integrate from a datum and report conservation");
  sim->add_option("--datum", datum, "zero, cos, smooth or random");
  sim->add_option("--amp", amp, "Datum amplitude");
  sim->add_option("--mode", mode, "bo, omega-direct or omega-nfr");
  sim->add_option("--trajectory", traj, "Trajectory file (.bin for binary, CSV otherwise)");
  sim->add_option("--dt-sweep", halvings, "Number of dt halvings for the convergence table")->check(CLI::Range(0, 8));

  int n_split = 8, u_halvings = 3;
  double delta = std::nan("");
  auto* uq = app.add_subcommand("uniqueness", "Compare dt and dt/2 runs; contraction factor");
  uq->add_option("--datum", datum, "zero, cos, smooth or random");
  uq->add_option("--amp", amp, "Datum amplitude");
  uq->add_option("--n-split", n_split, "Low/high split N")->check(CLI::NonNegativeNumber);
  uq->add_option("--delta", delta, "M-decay exponent (fitted when omitted)");
  uq->add_option("--dt-pairs", u_halvings, "Number of (dt, dt/2) pairs in the monotonicity sweep")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (rc.workers > 0) omp_set_num_threads(rc.workers);

  try {
    if (*ident) return verify_identities(rc, quick, inject);
    if (*est_cmd) return verify_estimates(rc, per_band, samples, decay_n_max, threshold);
    if (*nfr_cmd) return nfr_check(rc);
    if (*sim) return simulate(rc, datum, amp, mode, traj, halvings);
    if (*uq) return uniqueness(rc, datum, amp, n_split, delta, u_halvings);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << " (last good time " << e.last_good_time() << ")\n";
    return 1;
  }
  return 2;
}
