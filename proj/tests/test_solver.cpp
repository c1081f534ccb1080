#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "pbo/errors.hpp"
#include "pbo/gauge.hpp"
#include "pbo/report.hpp"
#include "pbo/solver.hpp"
#include "pbo/uniqueness.hpp"

using namespace pbo;
using namespace pbo::solver;

namespace {

SpectralField smooth_datum(int n_max, double amp) {
  std::vector<cplx> pos(static_cast<std::size_t>(n_max));
  pos[0] = amp;
  pos[1] = cplx(0.0, 0.5 * amp);
  pos[2] = 0.25 * amp;
  return real_field_from_positive(GridSpec::oversampled(n_max), pos);
}

SolverConfig config(int n_max, double dt, double T) {
  SolverConfig c;
  c.grid = GridSpec::oversampled(n_max);
  c.dt = dt;
  c.T = T;
  return c;
}

double hs_diff(const Sequence& a, const Sequence& b, double s) {
  Sequence d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return weighted_seq_norm(d, {s, NormExponent::two});
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(config(16, 1.0 / 512, 0.5).validate());
  CHECK_THROWS_AS(config(16, 1.0 / 256, 0.5).validate(), ConfigError);
  CHECK_THROWS_AS(config(16, 1.0 / 1024, 0.0005).validate(), ConfigError);
  CHECK_THROWS_AS(config(16, -1e-3, 0.5).validate(), ConfigError);
  SolverConfig c = config(16, 1.0 / 1024, 0.5);
  c.save_every = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(config(16, 1.0 / 1024, 0.5).steps() == 512);
}

TEST_CASE("zero datum stays zero") {
  const auto tr = integrate_bo(SpectralField(GridSpec::oversampled(8)), config(8, 1.0 / 128, 0.0625));
  REQUIRE(tr.u.size() == 9);
  for (const auto& u : tr.u) CHECK(sobolev_norm(u, 0.0) == 0.0);
  const auto om = integrate_omega(SpectralField(GridSpec::oversampled(8)), config(8, 1.0 / 128, 0.0625), {}, OmegaMode::direct);
  for (const auto& w : om.omega) {
    CHECK(w(0) == cplx(0.0, 1.0));
    for (int n = 1; n <= 8; ++n) CHECK(std::abs(w(n)) + std::abs(w(-n)) == 0.0);
  }
}

TEST_CASE("linear waves rotate exactly") {
  // A single mode of small amplitude: u_hat(n, t) ~ e^{-itn|n|} u_hat(n, 0).
  std::vector<cplx> pos(8);
  pos[2] = 1e-8;
  const SpectralField u0 = real_field_from_positive(GridSpec::oversampled(8), pos);
  const auto tr = integrate_bo(u0, config(8, 1.0 / 128, 0.5));
  const cplx expect = std::conj(linear_phase(3, 0.5)) * u0[3];
  CHECK(std::abs(tr.u.back()[3] - expect) < 1e-20);
}

TEST_CASE("fourth-order self convergence") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  std::vector<SpectralField> fin;
  for (int k = 0; k < 4; ++k) fin.push_back(integrate_bo(u0, config(16, (1.0 / 512) / (1 << k), 0.5)).u.back());
  for (int k = 0; k + 2 < 4; ++k) {
    const double r = sobolev_norm(fin[k] - fin[k + 1], 0.0) / sobolev_norm(fin[k + 1] - fin[k + 2], 0.0);
    CHECK(r > 15.0);
    CHECK(r < 17.0);
  }
}

TEST_CASE("conservation") {
  const auto tr = integrate_bo(smooth_datum(16, 0.3), config(16, 1.0 / 1024, 0.5));
  CHECK(tr.max_mean_drift() <= 1e-13);
  CHECK(tr.max_imag() <= 1e-11);
  CHECK(tr.l2_drift() < 1e-10);
  for (std::size_t i = 1; i < tr.times.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
}

TEST_CASE("mean of the datum is removed") {
  SpectralField u0 = smooth_datum(8, 0.2);
  u0[0] = 0.7;
  const auto tr = integrate_bo(u0, config(8, 1.0 / 128, 0.0625));
  CHECK(tr.max_mean_drift() == 0.0);
}

TEST_CASE("complex datum is rejected") {
  SpectralField u0 = smooth_datum(8, 0.2);
  u0[2] += cplx(0.0, 0.1);
  CHECK_THROWS_AS(integrate_bo(u0, config(8, 1.0 / 128, 0.0625)), InputError);
}

TEST_CASE("reversibility") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  SolverConfig fwd = config(16, 1.0 / 1024, 0.25);
  const auto a = integrate_bo(u0, fwd);
  SolverConfig back = fwd;
  back.t0 = 0.25;
  back.backward = true;
  const auto b = integrate_bo(a.u.back(), back);
  CHECK(b.times.back() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sobolev_norm(b.u.back() - u0.on_grid(fwd.grid), 0.0) < 1e-11);
}

TEST_CASE("aliased product differs from the exact one") {
  const SpectralField u0 = smooth_datum(8, 0.3);
  SolverConfig c = config(8, 1.0 / 128, 0.25);
  std::vector<cplx> pos(8);
  for (int k = 0; k < 8; ++k) pos[static_cast<std::size_t>(k)] = 0.1 / (1 + k);
  const SpectralField wide = real_field_from_positive(GridSpec::oversampled(8), pos);
  const auto exact = integrate_bo(wide, c);
  c.dealias = false;
  const auto aliased = integrate_bo(wide, c);
  CHECK(sobolev_norm(exact.u.back() - aliased.u.back(), 0.0) > 1e-6);
  c.dealias = true;
  CHECK(sobolev_norm(integrate_bo(u0, c).u.back(), 0.0) > 0.0);
}

TEST_CASE("gauge of the u-flow matches the omega flow") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  const SolverConfig c = config(16, 1.0 / 1024, 0.0625);
  const auto bo = integrate_bo(u0, c);
  const auto om = integrate_omega(u0, c, {}, OmegaMode::direct);
  const OmegaState w = gauge::omega_of(gauge::gauge_forward(bo.u.back()).v, bo.times.back());
  CHECK(hs_diff(w.seq, om.omega.back().seq, 0.25) < 1e-7);
  CHECK(om.max_mean_drift() == 0.0);
}

TEST_CASE("normal-form stepping agrees with direct stepping to second order") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  nfr::NFRConfig ncfg;
  ncfg.M = 8.0;
  std::vector<double> errs;
  for (int k = 0; k < 3; ++k) {
    const SolverConfig c = config(16, (1.0 / 512) / (1 << k), 0.0625);
    const auto d = integrate_omega(u0, c, ncfg, OmegaMode::direct);
    const auto f = integrate_omega(u0, c, ncfg, OmegaMode::nfr_form);
    errs.push_back(hs_diff(d.omega.back().seq, f.omega.back().seq, 0.25));
  }
  for (int k = 0; k + 1 < 3; ++k) CHECK(errs[k] / errs[k + 1] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Duhamel residual of RK4 trajectories is second order") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  nfr::NFRConfig ncfg;
  ncfg.M = 8.0;
  std::vector<double> res;
  for (int k = 0; k < 3; ++k) {
    const auto d = integrate_omega(u0, config(16, (1.0 / 512) / (1 << k), 0.0625), ncfg, OmegaMode::direct);
    std::vector<nfr::DuhamelSample> samples;
    for (std::size_t i = 0; i < d.u.size(); ++i) samples.push_back({d.u[i], d.omega[i]});
    res.push_back(nfr::duhamel_residual(samples, ncfg).back());
  }
  for (int k = 0; k + 1 < 3; ++k) CHECK(res[k] / res[k + 1] == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("trajectory serialization") {
  SolverConfig c = config(8, 1.0 / 128, 0.0625);
  c.save_every = 4;
  const auto tr = integrate_bo(smooth_datum(8, 0.2), c);
  REQUIRE(tr.times.size() == 3);
  std::stringstream bin;
  write_binary(tr, bin);
  const auto back = read_binary(bin);
  REQUIRE(back.times == tr.times);
  for (std::size_t i = 0; i < tr.u.size(); ++i) CHECK(back.u[i].coeffs() == tr.u[i].coeffs());
  std::stringstream bad("XXXX");
  CHECK_THROWS_AS(read_binary(bad), InputError);

  std::ostringstream csv;
  write_csv(tr, csv);
  const std::string text = csv.str();
  CHECK(text.rfind("t,n,re,im\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 17);
  std::ostringstream none;
  CHECK_THROWS_AS(write_csv(tr, none, true), InputError);
}

TEST_CASE("uniqueness experiment on identical configs") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  const SolverConfig c = config(16, 1.0 / 512, 0.125);
  const auto r = uniq::uniqueness_experiment(u0, c, c, {});
  for (double d : r.series.total) CHECK(d == 0.0);
  for (double d : r.series.omega) CHECK(d == 0.0);
  CHECK(r.sup_total == 0.0);
}

TEST_CASE("uniqueness experiment: split, contraction and dt monotonicity") {
  const SpectralField u0 = smooth_datum(16, 0.3);
  SolverConfig a = config(16, 1.0 / 512, 0.5), b = a;
  b.dt = a.dt / 2;
  b.save_every = 2;
  const auto r = uniq::uniqueness_experiment(u0, a, b, {.s = 0.25, .N_split = 8, .M = 64, .delta_hat = -0.67});
  CHECK(r.series.times.size() == 257);
  CHECK(r.orthogonality_defect < 1e-12);
  CHECK(r.sup_total > 0.0);
  CHECK(r.C_tilde == doctest::Approx(std::pow(1.0 + r.norm_u + r.norm_u_tilde, 4)));
  CHECK(r.best.factor < 1.0);
  CHECK(r.best.factor == doctest::Approx(r.C_tilde * (r.best.time_term + r.best.split_term + r.best.tail_term +
                                                      r.best.decay_term)));
  CHECK(r.at_inputs.N == 8.0);
  for (std::size_t i = 1; i < r.tail.size(); ++i) CHECK(r.tail[i].second <= r.tail[i - 1].second);

  const auto rows = uniq::dt_sweep(u0, a, {a.dt, a.dt / 2, a.dt / 4}, 0.25);
  CHECK(uniq::monotone_decreasing(rows));
  CHECK(rows[0].sup_diff / rows[1].sup_diff == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("contraction factor arithmetic") {
  const auto c = uniq::contraction_at(16.0, 64.0, 1.0, 0.25, -0.5, 2.0, 0.1);
  CHECK(c.split_term == doctest::Approx(0.5));
  CHECK(c.decay_term == doctest::Approx(0.125));
  CHECK(c.time_term <= c.split_term + c.tail_term + c.decay_term);
  CHECK(2.0 * c.time_term > c.split_term + c.tail_term + c.decay_term);
  CHECK(c.factor == doctest::Approx(2.0 * (c.time_term + 0.725)));
}

TEST_CASE("report envelope hashes the config like git") {
  CHECK(report::git_blob_sha1("hello") == "b6fc4c620b67d95f953a5c1c1230aaab5db5a1b0");
  CHECK(report::git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  const nlohmann::json cfg = {{"n_max", 16}, {"s", 0.25}};
  const auto env = report::envelope("simulate", cfg, {{"x", 1}}, true);
  CHECK(env["input_hash"] == report::git_blob_sha1(cfg.dump()));
  CHECK(env["passed"] == true);
  CHECK(env["config"] == cfg);
}
