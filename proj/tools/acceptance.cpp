// Runs the eight acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 when every outcome matches the expectation: pass, except
// for criteria named with --expect-fail, which must fail.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pbo/estimates.hpp"
#include "pbo/gauge.hpp"
#include "pbo/nfr.hpp"
#include "pbo/solver.hpp"
#include "pbo/suites.hpp"
#include "pbo/uniqueness.hpp"

namespace {

using namespace pbo;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  Outcome() = default;
  Outcome(bool p, std::string s) : passed(p), summary(std::move(s)) {}

  bool passed = false;
  std::string summary;
  std::vector<std::string> notes;
};

const suites::Check& find(const std::vector<suites::Check>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SpectralField smooth_datum(int n_max, double amp) {
  std::vector<cplx> pos(static_cast<std::size_t>(n_max));
  pos[0] = amp;
  pos[1] = cplx(0.0, 0.5 * amp);
  pos[2] = 0.25 * amp;
  return real_field_from_positive(GridSpec::oversampled(n_max), pos);
}

solver::SolverConfig solver_config(int n_max, double dt, double T) {
  solver::SolverConfig c;
  c.grid = GridSpec::oversampled(n_max);
  c.dt = dt;
  c.T = T;
  return c;
}

Outcome criterion1() {
  suites::IdentityOptions opt;
  opt.gauge_fields = 0;
  opt.dbp_pairs = 0;
  const auto t0 = Clock::now();
  const auto cs = suites::identity_suite(opt);
  const double secs = seconds_since(t0);
  const auto& phi = find(cs, "phi-factorization");
  const auto& sup = find(cs, "m1-support");
  return {phi.passed && sup.passed && secs <= 60.0,
          fmt("phase factorization mismatches %g, support violations %g, |n_j| <= %d, %.2f s", phi.value, sup.value,
              opt.quad_box, secs)};
}

Outcome criterion2() {
  suites::IdentityOptions opt;
  opt.quad_box = 0;
  opt.dbp_pairs = 0;
  const auto t0 = Clock::now();
  const auto cs = suites::identity_suite(opt);
  const double secs = seconds_since(t0);
  const auto& g = find(cs, "gauge-roundtrip");
  return {g.passed && secs <= 10.0, fmt("max H^1 error %.3g over %d fields (n_max 64, band 16), %.2f s", g.value,
                                        opt.gauge_fields, secs)};
}

Outcome criterion3() {
  suites::IdentityOptions opt;
  opt.quad_box = 0;
  opt.gauge_fields = 0;
  const auto cs = suites::identity_suite(opt);
  const auto& a = find(cs, "dbp-first-stage");
  const auto& b = find(cs, "dbp-second-stage");
  return {a.passed && b.passed,
          fmt("max relative residual %.3g (first stage), %.3g (second stage), %d pairs at n_max 16", a.value, b.value,
              opt.dbp_pairs)};
}

Outcome criterion4() {
  const suites::OracleOptions opt;
  const auto cs = suites::oracle_suite(opt);
  double worst = 0.0;
  std::string name;
  for (const auto& c : cs)
    if (c.value >= worst) {
      worst = c.value;
      name = c.name;
    }
  return {suites::all_passed(cs), fmt("%zu terms, worst relative difference %.3g (%s), K in {8, 2}, n_max 8", cs.size(), worst,
                                      name.c_str())};
}

struct DecayResult {
  Outcome outcome;
  double n0_slope = 0.0;
};

DecayResult criterion5() {
  const std::vector<double> Ms{16, 32, 64, 128, 256, 512, 1024};
  const auto t0 = Clock::now();
  Outcome o{true, ""};
  double n0 = 0.0;
  std::string parts;
  for (auto id : {nfr::TermId::N0, nfr::TermId::N10, nfr::TermId::N30}) {
    est::DecayOptions opt{.n_max = 64, .s = 0.25, .samples = 200, .seed = 1, .base_band = 16};
    const auto a = est::decay_fit(id, Ms, opt);
    opt.samples = 400;
    const auto b = est::decay_fit(id, Ms, opt);
    const bool ok = a.slope && b.slope && *a.slope < -0.02 && std::abs(*a.slope - *b.slope) <= 0.02;
    o.passed = o.passed && ok;
    const double sa = a.slope.value_or(NAN), sb = b.slope.value_or(NAN);
    if (id == nfr::TermId::N0) n0 = sa;
    parts += fmt("%s %.4f/%.4f ", std::string(nfr::term_name(id)).c_str(), sa, sb);
  }
  const double secs = seconds_since(t0);
  o.passed = o.passed && secs <= 600.0;
  o.summary = fmt("slopes (200/400 samples) %sover M = 16..1024, s = 0.25, %.0f s", parts.c_str(), secs);
  return {o, n0};
}

Outcome criterion6() {
  Outcome o{true, ""};
  int failing = 0, total = 0;
  double worst = 0.0;
  std::string worst_name;
  for (double s : {0.2, 0.25, 0.3}) {
    std::map<int, std::vector<est::RatioReport>> by_band;
    for (int nm : {16, 32, 64}) {
      est::SuiteOptions opt{.n_max = nm, .s = s, .M = 64.0, .per_band = 50, .seed = 1, .difference = true};
      by_band[nm] = est::lemma_suites(est::kAllLemmas, opt);
    }
    std::string line = fmt("s = %.2f growth 16->32 (32->64):", s);
    for (std::size_t i = 0; i < by_band[16].size(); ++i) {
      const auto& a = by_band[16][i];
      const auto& b = by_band[32][i];
      const auto& c = by_band[64][i];
      const double g = a.max > 0.0 ? b.max / a.max : (b.max > 0.0 ? INFINITY : 1.0);
      const double g2 = b.max > 0.0 ? c.max / b.max : (c.max > 0.0 ? INFINITY : 1.0);
      ++total;
      if (g > 1.10) {
        ++failing;
        o.passed = false;
        line += fmt(" %s%s %.2f (%.2f)", a.lemma.c_str(), a.kind == "difference" ? "[diff]" : "", g, g2);
      }
      if (g > worst) {
        worst = g;
        worst_name = a.lemma + (a.kind == "difference" ? " difference" : "") + fmt(" at s = %.2f", s);
      }
    }
    o.notes.push_back(line);
  }
  o.summary = fmt("%d of %d suites grow by more than 10%% from n_max 16 to 32; worst %s (%.3g)", failing, total,
                  worst_name.c_str(), worst);
  return o;
}

Outcome criterion7() {
  const SpectralField u0 = smooth_datum(16, 0.3);
  std::vector<SpectralField> fin;
  double drift = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto tr = solver::integrate_bo(u0, solver_config(16, (1.0 / 512) / (1 << k), 0.5));
    drift = std::max(drift, tr.max_mean_drift());
    fin.push_back(tr.u.back());
  }
  std::vector<double> ratios;
  for (int k = 0; k + 2 < 4; ++k)
    ratios.push_back(sobolev_norm(fin[k] - fin[k + 1], 0.0) / sobolev_norm(fin[k + 1] - fin[k + 2], 0.0));

  nfr::NFRConfig ncfg;
  ncfg.M = 8.0;
  std::vector<double> res;
  for (int k = 0; k < 3; ++k) {
    const auto d = solver::integrate_omega(u0, solver_config(16, (1.0 / 512) / (1 << k), 0.0625), ncfg,
                                           solver::OmegaMode::direct);
    std::vector<nfr::DuhamelSample> samples;
    for (std::size_t i = 0; i < d.u.size(); ++i) samples.push_back({d.u[i], d.omega[i]});
    res.push_back(nfr::duhamel_residual(samples, ncfg).back());
  }
  const double d1 = res[0] / res[1], d2 = res[1] / res[2];
  bool ok = drift <= 1e-13;
  for (double r : ratios) ok = ok && r >= 12.0 && r <= 20.0;
  for (double r : {d1, d2}) ok = ok && r >= 3.5 && r <= 4.5;
  return {ok, fmt("RK4 error ratios %.2f, %.2f; mean drift %.2g; Duhamel residual ratios %.3f, %.3f", ratios[0], ratios[1],
                  drift, d1, d2)};
}

Outcome criterion8(double delta_hat) {
  const SpectralField u0 = smooth_datum(16, 0.3);
  const solver::SolverConfig a = solver_config(16, 1.0 / 512, 0.5);
  solver::SolverConfig b = a;
  b.dt = a.dt / 2;
  b.save_every = 2;
  const auto rep = uniq::uniqueness_experiment(u0, a, b, {.s = 0.25, .N_split = 8, .M = 64.0, .delta_hat = delta_hat});
  const auto rows = uniq::dt_sweep(u0, a, {a.dt, a.dt / 2, a.dt / 4}, 0.25);
  const bool mono = uniq::monotone_decreasing(rows);
  return {rep.best.factor < 1.0 && mono,
          fmt("factor %.3f at N = %.3g, M = %.3g, T' = %.3g (C = %.2f, delta = %.3f); sup diff %.2e, %.2e, %.2e %s",
                rep.best.factor, rep.best.N, rep.best.M, rep.best.T_prime, rep.C_tilde, delta_hat, rows[0].sup_diff,
              rows[1].sup_diff, rows[2].sup_diff, mono ? "decreasing" : "not monotone")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  const std::set<int> selected(only.begin(), only.end());
  auto want = [&](int k) { return selected.empty() || selected.count(k) > 0; };

  const char* names[] = {"",
                         "exact identities",
                         "gauge round trip",
                         "differentiation by parts",
                         "oracle equivalence",
                         "M-decay",
                         "ratio boundedness",
                         "solver convergence",
                         "uniqueness experiment"};
  bool matches = true;
  double n0_slope = -0.5;
  auto report = [&](int k, const Outcome& o) {
    std::printf("[%s] %d %s: %s\n", o.passed ? "PASS" : "FAIL", k, names[k], o.summary.c_str());
    for (const auto& n : o.notes) std::printf("      %s\n", n.c_str());
    std::fflush(stdout);
    if (o.passed == (expected.count(k) > 0)) {
      matches = false;
      std::printf("      unexpected: criterion %d %s\n", k, o.passed ? "passed" : "failed");
    }
  };

  if (want(1)) report(1, criterion1());
  if (want(2)) report(2, criterion2());
  if (want(3)) report(3, criterion3());
  if (want(4)) report(4, criterion4());
  if (want(5) || want(8)) {
    const DecayResult d = criterion5();
    n0_slope = d.n0_slope;
    if (want(5)) report(5, d.outcome);
  }
  if (want(6)) report(6, criterion6());
  if (want(7)) report(7, criterion7());
  if (want(8)) report(8, criterion8(n0_slope));
  return matches ? 0 : 1;
}
