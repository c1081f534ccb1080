#include "pbo/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbo/errors.hpp"
#include "pbo/gauge.hpp"

namespace pbo::uniq {
namespace {

double hs(const Sequence& c, double s, int lo, int hi) {
  const int nm = static_cast<int>(c.size() / 2);
  double sum = 0.0;
  for (int n = -nm; n <= nm; ++n) {
    const int a = std::abs(n);
    if (a < lo || a > hi) continue;
    sum += std::pow(1.0 + static_cast<double>(n) * n, s) * std::norm(c[static_cast<std::size_t>(n + nm)]);
  }
  return std::sqrt(sum);
}

double positive_hs(const Sequence& c, double s) {
  const int nm = static_cast<int>(c.size() / 2);
  double sum = 0.0;
  for (int n = 1; n <= nm; ++n) sum += std::pow(1.0 + static_cast<double>(n) * n, s) * std::norm(c[static_cast<std::size_t>(n + nm)]);
  return std::sqrt(sum);
}

Sequence diff(const Sequence& a, const Sequence& b) {
  if (a.size() != b.size()) throw InputError("compare_trajectories: band mismatch");
  Sequence r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace

nlohmann::json ContractionChoice::to_json() const {
  return {{"N", N},           {"M", M},                   {"T_prime", T_prime},       {"time_term", time_term},
          {"split_term", split_term}, {"tail_term", tail_term}, {"decay_term", decay_term}, {"factor", factor}};
}

nlohmann::json UniquenessReport::to_json() const {
  nlohmann::json tails = nlohmann::json::array();
  for (const auto& [n, v] : tail) tails.push_back({{"N", n}, {"sup_tail", v}});
  return {{"s", inputs.s},
          {"N_split", inputs.N_split},
          {"M", inputs.M},
          {"delta_hat", inputs.delta_hat},
          {"target", inputs.target},
          {"series",
           {{"t", series.times}, {"low", series.low}, {"high", series.high}, {"total", series.total}, {"omega", series.omega}}},
          {"sup_total", sup_total},
          {"orthogonality_defect", orthogonality_defect},
          {"norm_u", norm_u},
          {"norm_u_tilde", norm_u_tilde},
          {"C_tilde", C_tilde},
          {"tail", tails},
          {"at_inputs", at_inputs.to_json()},
          {"best", best.to_json()}};
}

ContractionChoice contraction_at(double N, double M, double T, double s, double delta_hat, double C_tilde, double tail) {
  ContractionChoice c;
  c.N = N;
  c.M = M;
  c.split_term = std::pow(N, -s);
  c.tail_term = tail;
  c.decay_term = std::pow(M, delta_hat);
  const double rest = c.split_term + c.tail_term + c.decay_term;
  const double rate = N * N + M;
  c.T_prime = T;
  while (c.T_prime * rate > rest && c.T_prime > 0.0) c.T_prime *= 0.5;
  c.time_term = c.T_prime * rate;
  c.factor = C_tilde * (c.time_term + rest);
  return c;
}

ContractionChoice search_contraction(const UniquenessReport& r, double T, double target) {
  auto tail_at = [&](int N) {
    for (const auto& [n, v] : r.tail)
      if (n == N) return v;
    return 0.0;  // N/2 beyond the band
  };
  std::vector<ContractionChoice> all;
  for (int i = 1; i <= 30; ++i)
    for (int j = 1; j <= 30; ++j)
      all.push_back(contraction_at(1 << i, std::ldexp(1.0, j), T, r.inputs.s, r.inputs.delta_hat, r.C_tilde, tail_at(1 << i)));
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& x, const auto& y) { return x.N * x.N + x.M < y.N * y.N + y.M; });
  for (const auto& c : all)
    if (c.factor <= target) return c;
  return *std::min_element(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.factor < y.factor; });
}

UniquenessReport compare_trajectories(const solver::Trajectory& a, const solver::Trajectory& b, const ExperimentInputs& in) {
  if (in.N_split < 0) throw InputError("compare_trajectories: N_split must be nonnegative");
  UniquenessReport r;
  r.inputs = in;
  const double s = in.s;
  const double tol = 1e-9 * std::max(1.0, a.config.T);

  std::size_t j = 0;
  std::vector<const SpectralField*> us;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    while (j < b.times.size() && b.times[j] < a.times[i] - tol) ++j;
    if (j == b.times.size()) break;
    if (std::abs(b.times[j] - a.times[i]) > tol) continue;
    const Sequence d = diff(a.u[i].coeffs(), b.u[j].coeffs());
    const int nm = a.u[i].n_max();
    auto& S = r.series;
    S.times.push_back(a.times[i]);
    S.low.push_back(hs(d, s, 0, in.N_split));
    S.high.push_back(hs(d, s, in.N_split + 1, nm));
    S.total.push_back(hs(d, s, 0, nm));
    const OmegaState wa = gauge::omega_of(gauge::gauge_forward(a.u[i]).v, a.times[i]);
    const OmegaState wb = gauge::omega_of(gauge::gauge_forward(b.u[j]).v, b.times[j]);
    S.omega.push_back(positive_hs(diff(wa.seq, wb.seq), s));
    const double t2 = S.total.back() * S.total.back();
    const double split = S.low.back() * S.low.back() + S.high.back() * S.high.back();
    r.orthogonality_defect = std::max(r.orthogonality_defect, std::abs(t2 - split) / std::max(t2, 1e-300));
    r.sup_total = std::max(r.sup_total, S.total.back());
  }
  if (r.series.times.empty()) throw InputError("compare_trajectories: no common stored times");

  for (const auto& u : a.u) r.norm_u = std::max(r.norm_u, sobolev_norm(u, s));
  for (const auto& u : b.u) r.norm_u_tilde = std::max(r.norm_u_tilde, sobolev_norm(u, s));
  r.C_tilde = std::pow(1.0 + r.norm_u + r.norm_u_tilde, 4);

  const int nm = a.u.front().n_max();
  std::vector<Sequence> vs;
  for (const auto* tr : {&a, &b})
    for (const auto& u : tr->u) vs.push_back(gauge::gauge_forward(u).v.coeffs());
  for (int N = 2; N / 2 < nm; N *= 2) {
    double sup = 0.0;
    for (const auto& v : vs) sup = std::max(sup, hs(v, s, N / 2 + 1, nm));
    r.tail.emplace_back(N, sup);
  }

  const double T = a.config.T;
  double tail_split = 0.0;
  for (const auto& [n, v] : r.tail)
    if (n == in.N_split) tail_split = v;
  if (in.N_split / 2 < nm && tail_split == 0.0)
    for (const auto& v : vs) tail_split = std::max(tail_split, hs(v, s, in.N_split / 2 + 1, nm));
  r.at_inputs = contraction_at(in.N_split, in.M, T, s, in.delta_hat, r.C_tilde, tail_split);
  r.best = search_contraction(r, T, in.target);
  return r;
}

UniquenessReport uniqueness_experiment(const SpectralField& u0, const solver::SolverConfig& a, const solver::SolverConfig& b,
                                       const ExperimentInputs& in) {
  const solver::Trajectory ta = solver::integrate_bo(u0, a);
  const solver::Trajectory tb = solver::integrate_bo(u0, b);
  return compare_trajectories(ta, tb, in);
}

std::vector<DtSweepRow> dt_sweep(const SpectralField& u0, const solver::SolverConfig& base, const std::vector<double>& dts,
                                 double s) {
  std::vector<DtSweepRow> rows(dts.size());
  for (const double dt : dts) {
    solver::SolverConfig c = base;
    c.dt = dt;
    c.validate();
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < dts.size(); ++i) {
    solver::SolverConfig ca = base, cb = base;
    ca.dt = dts[i];
    ca.save_every = 1;
    cb.dt = dts[i] / 2.0;
    cb.save_every = 2;
    const auto ta = solver::integrate_bo(u0, ca);
    const auto tb = solver::integrate_bo(u0, cb);
    double sup = 0.0;
    for (std::size_t k = 0; k < ta.u.size() && k < tb.u.size(); ++k)
      sup = std::max(sup, hs(diff(ta.u[k].coeffs(), tb.u[k].coeffs()), s, 0, ta.u[k].n_max()));
    rows[i] = {dts[i], sup};
  }
  return rows;
}

bool monotone_decreasing(const std::vector<DtSweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].sup_diff < rows[i - 1].sup_diff)) return false;
  return !rows.empty();
}

}  // namespace pbo::uniq
