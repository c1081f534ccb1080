#include "pbo/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "pbo/estimates.hpp"
#include "pbo/gauge.hpp"
#include "pbo/multiplier.hpp"
#include "pbo/nfr.hpp"
#include "pbo/reference.hpp"

namespace pbo::suites {
namespace {

using mult::i64;

Check make(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value, tol, value <= tol, std::move(detail)};
}

double rel_diff(const Sequence& a, const Sequence& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(a[i]) + std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

Sequence plus(Sequence a, const Sequence& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

struct Pair {
  SpectralField u;
  OmegaState w;
};

// Real mean-zero u on half the band, omega from its gauge at a seeded time.
Pair consistent_pair(int n_max, std::uint64_t seed) {
  est::SamplerSpec spec{.n_max = n_max / 2, .s = 0.0, .profile = est::Profile::random_phase, .seed = seed};
  const SpectralField u = est::embed(est::sample_field(spec, 0.5), n_max);
  const double t = 0.1 * static_cast<double>(seed % 7);
  return {u, gauge::omega_of(gauge::gauge_forward(u).v, t)};
}

Check phase_check(const IdentityOptions& opt) {
  const i64 B = opt.quad_box;
  const bool fault = opt.inject == "phi-sign";
  long long mismatches = 0, tested = 0;
#pragma omp parallel for collapse(2) reduction(+ : mismatches, tested) schedule(static)
  for (i64 n1 = -B; n1 <= B; ++n1)
    for (i64 n2 = -B; n2 <= B; ++n2)
      for (i64 n3 = -B; n3 <= B; ++n3) {
        const i64 n = n1 + n2 + n3;
        if (n < -B || n > B) continue;
        const mult::QuadIndex q{n, n1, n2, n3};
        const auto f = mult::phase_case_identity(q);
        if (!f) continue;
        ++tested;
        const i64 v = fault ? -f->value : f->value;
        if (v != mult::phase(q)) ++mismatches;
      }
  std::ostringstream d;
  d << tested << " quads on the support with |n_j| <= " << B;
  return make("phi-factorization", static_cast<double>(mismatches), 0.0, d.str());
}

Check support_check(const IdentityOptions& opt) {
  const i64 B = opt.quad_box;
  const bool fault = opt.inject == "m1-sign";
  long long violations = 0, tested = 0;
#pragma omp parallel for collapse(2) reduction(+ : violations, tested) schedule(static)
  for (i64 n1 = -B; n1 <= B; ++n1)
    for (i64 n2 = -B; n2 <= B; ++n2)
      for (i64 n3 = -B; n3 <= B; ++n3) {
        const i64 n = n1 + n2 + n3;
        if (n < -B || n > B) continue;
        // The faulty variant flips the sign condition on n23.
        const bool on = fault ? mult::tilde_m1_support(n, n1, -n2, -n3) : mult::tilde_m1(mult::QuadIndex{n, n1, n2, n3}) != cplx{};
        if (!on) continue;
        ++tested;
        if (!(n1 > n && n > 0 && n2 + n3 < 0)) ++violations;
      }
  std::ostringstream d;
  d << tested << " quads with tilde m1 nonzero";
  return make("m1-support", static_cast<double>(violations), 0.0, d.str());
}

}  // namespace

nlohmann::json Check::to_json() const {
  return {{"name", name}, {"value", value}, {"tolerance", tolerance}, {"passed", passed}, {"detail", detail}};
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::json to_json(const std::vector<Check>& checks) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : checks) a.push_back(c.to_json());
  return a;
}

IdentityOptions IdentityOptions::quick() {
  IdentityOptions o;
  o.quad_box = 16;
  o.gauge_fields = 10;
  o.dbp_n_max = 8;
  o.dbp_pairs = 4;
  return o;
}

nlohmann::json IdentityOptions::to_json() const {
  return {{"quad_box", quad_box}, {"gauge_n_max", gauge_n_max}, {"gauge_fields", gauge_fields}, {"dbp_n_max", dbp_n_max},
          {"dbp_pairs", dbp_pairs}, {"seed", seed},           {"inject", inject}};
}

nlohmann::json OracleOptions::to_json() const {
  return {{"n_max", n_max}, {"seed", seed}, {"K_values", K_values}, {"M_values", M_values}, {"tolerance", tolerance}};
}

std::vector<Check> identity_suite(const IdentityOptions& opt) {
  std::vector<Check> out;
  out.push_back(phase_check(opt));
  out.push_back(support_check(opt));

  {
    double worst = 0.0;
    const int band = std::max(1, opt.gauge_n_max / 4);
    for (int i = 0; i < opt.gauge_fields; ++i) {
      est::SamplerSpec spec{.n_max = band, .s = 1.0, .profile = est::Profile::random_phase,
                            .seed = opt.seed * 1000 + static_cast<std::uint64_t>(i)};
      const SpectralField u = est::embed(est::sample_field(spec, 1.0), opt.gauge_n_max);
      const SpectralField back = gauge::gauge_inverse(gauge::gauge_forward(u));
      worst = std::max(worst, sobolev_norm(back - u, 1.0));
    }
    std::ostringstream d;
    d << opt.gauge_fields << " fields, band " << band << ", n_max " << opt.gauge_n_max << ", H^1 error";
    out.push_back(make("gauge-roundtrip", worst, 1e-8, d.str()));
  }

  {
    double first = 0.0, second = 0.0;
    for (int i = 0; i < opt.dbp_pairs; ++i) {
      const Pair p = consistent_pair(opt.dbp_n_max, opt.seed * 7919 + static_cast<std::uint64_t>(i));
      nfr::NFRConfig cfg;
      cfg.M = 8.0;
      cfg.K = mult::ComparabilityConstant(i % 2 == 0 ? 8.0 : 2.0);
      const auto r = nfr::dbp_identity_residual(p.u, p.w, cfg);
      first = std::max(first, r.first_stage);
      second = std::max({second, r.n1_stage, r.n3_stage});
    }
    const std::string d = std::to_string(opt.dbp_pairs) + " pairs, K alternating 8 and 2, relative l^2";
    out.push_back(make("dbp-first-stage", first, 1e-10, d));
    out.push_back(make("dbp-second-stage", second, 1e-10, d));
  }

  {
    const Pair p = consistent_pair(opt.dbp_n_max, opt.seed);
    nfr::NFRConfig lo, hi;
    lo.M = 4.0;
    hi.M = 1e9;
    auto [r_lo, nr_lo] = nfr::split_resonant(p.w, lo);
    auto [r_hi, nr_hi] = nfr::split_resonant(p.w, hi);
    const double d = std::max(rel_diff(plus(r_lo.seq, nr_lo.seq), plus(r_hi.seq, nr_hi.seq)),
                              rel_diff(nr_hi.seq, Sequence(nr_hi.seq.size())));
    out.push_back(make("resonant-partition", d, 1e-13, "resonant + non-resonant independent of M"));

    nfr::NFRConfig k2;
    k2.M = 4.0;
    k2.K = mult::ComparabilityConstant(2.0);
    auto [a, b] = nfr::split_N1(p.w, k2);
    auto [c, e] = nfr::split_N3(p.w, k2);
    const double s = std::max(rel_diff(plus(a.seq, b.seq), nfr::term_Nj(p.w, k2, 1).seq),
                              rel_diff(plus(c.seq, e.seq), nfr::term_Nj(p.w, k2, 3).seq));
    out.push_back(make("second-stage-partition", s, 1e-13, "N1 and N3 splits at K = 2"));
  }
  return out;
}

std::vector<Check> oracle_suite(const OracleOptions& opt) {
  using nfr::TermId;
  using Ref = std::function<Sequence(const SpectralField&, const OmegaState&, const Sequence&, double, const mult::ComparabilityConstant&)>;
  const std::vector<std::pair<TermId, Ref>> table = {
      {TermId::N, [](auto&, auto& w, auto&, double, auto&) { return reference::N(w); }},
      {TermId::R, [](auto& u, auto& w, auto&, double, auto&) { return reference::R(u, w); }},
      {TermId::N_R, [](auto&, auto& w, auto&, double M, auto&) { return reference::N_R(w, M); }},
      {TermId::N_NR, [](auto&, auto& w, auto&, double M, auto&) { return reference::N_NR(w, M); }},
      {TermId::N0, [](auto&, auto& w, auto&, double M, auto&) { return reference::N0(w, M); }},
      {TermId::N1, [](auto&, auto& w, auto&, double M, auto&) { return reference::N1(w, M); }},
      {TermId::N2, [](auto&, auto& w, auto&, double M, auto&) { return reference::N2(w, M); }},
      {TermId::N3, [](auto&, auto& w, auto&, double M, auto&) { return reference::N3(w, M); }},
      {TermId::R1, [](auto& u, auto& w, auto&, double M, auto&) { return reference::R1(u, w, M); }},
      {TermId::N1R, [](auto&, auto& w, auto&, double M, auto& K) { return reference::N1R(w, M, K); }},
      {TermId::N1NR, [](auto&, auto& w, auto&, double M, auto& K) { return reference::N1NR(w, M, K); }},
      {TermId::N10, [](auto&, auto& w, auto&, double M, auto& K) { return reference::N10(w, M, K); }},
      {TermId::N11, [](auto&, auto& w, auto& dt, double M, auto& K) { return reference::N11(w, dt, M, K); }},
      {TermId::N3R, [](auto&, auto& w, auto&, double M, auto& K) { return reference::N3R(w, M, K); }},
      {TermId::N3NR, [](auto&, auto& w, auto&, double M, auto& K) { return reference::N3NR(w, M, K); }},
      {TermId::N30, [](auto&, auto& w, auto&, double M, auto& K) { return reference::N30(w, M, K); }},
      {TermId::N31, [](auto&, auto& w, auto& dt, double M, auto& K) { return reference::N31(w, dt, M, K); }},
  };

  std::vector<double> worst(table.size(), 0.0);
  int cases = 0;
  for (double Kv : opt.K_values)
    for (double M : opt.M_values) {
      const std::uint64_t seed = opt.seed * 101 + static_cast<std::uint64_t>(cases++);
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> g;
      OmegaState w = OmegaState::zeros(opt.n_max, 0.37 * cases);
      for (int n = -opt.n_max; n <= opt.n_max; ++n) w(n) = cplx(g(rng), g(rng)) * sobolev_weight(n, -0.3);
      est::SamplerSpec spec{.n_max = opt.n_max, .s = 0.0, .profile = est::Profile::random_phase, .seed = seed};
      const SpectralField u = est::sample_field(spec, 0.3);
      nfr::NFRConfig cfg;
      cfg.M = M;
      cfg.K = mult::ComparabilityConstant(Kv);
      const auto fast = nfr::evaluate_terms(&u, w, cfg, nfr::kAllTerms);
      const Sequence dt = nfr::omega_rhs(u, w);
      for (std::size_t i = 0; i < table.size(); ++i)
        worst[i] = std::max(worst[i], rel_diff(fast.at(table[i].first).seq, table[i].second(u, w, dt, M, cfg.K)));
    }
  std::vector<Check> out;
  for (std::size_t i = 0; i < table.size(); ++i)
    out.push_back(make(std::string(nfr::term_name(table[i].first)), worst[i], opt.tolerance,
                       std::to_string(cases) + " cases at n_max " + std::to_string(opt.n_max)));
  return out;
}

}  // namespace pbo::suites
