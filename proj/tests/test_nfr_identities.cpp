#include "doctest.h"
#include "pbo/gauge.hpp"
#include "pbo/nfr.hpp"
#include "support.hpp"

using namespace pbo;
using namespace pbo::nfr;
using testing::l2;
using testing::rel_diff;

namespace {

// omega and a consistent u: v from the gauge of u, omega from v.
struct Pair {
  SpectralField u;
  OmegaState w;
};

Pair consistent(int n_max, unsigned seed, double t) {
  const SpectralField u = testing::random_real(n_max, n_max / 2, seed, 0.5);
  return {u, gauge::omega_of(gauge::gauge_forward(u).v, t)};
}

}  // namespace

TEST_CASE("resonant split partitions the restricted sum") {
  const OmegaState w = testing::random_omega(16, 4, 0.4, 0.3);
  NFRConfig lo, hi;
  lo.M = 20.0;
  hi.M = 1e9;
  auto [r, nr] = split_resonant(w, lo);
  auto [r_all, nr_none] = split_resonant(w, hi);
  Sequence sum = r.seq;
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += nr.seq[i];
  CHECK(rel_diff(sum, r_all.seq) < 1e-14);
  CHECK(l2(nr_none.seq) == 0.0);
  CHECK(l2(r.seq) > 0.0);
  CHECK(l2(nr.seq) > 0.0);
  // Only the tilde m1 part of N is split, so both pieces live on n > 0.
  for (int n = -16; n <= 0; ++n) CHECK(sum[static_cast<std::size_t>(n + 16)] == cplx{});
}

TEST_CASE("second-stage splits are exact partitions") {
  const OmegaState w = testing::random_omega(12, 8, 0.4, 0.1);
  NFRConfig cfg;
  cfg.M = 6.0;
  cfg.K = mult::ComparabilityConstant(2.0);
  auto [n1r, n1nr] = split_N1(w, cfg);
  auto [n3r, n3nr] = split_N3(w, cfg);
  Sequence s1 = n1r.seq, s3 = n3r.seq;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    s1[i] += n1nr.seq[i];
    s3[i] += n3nr.seq[i];
  }
  CHECK(rel_diff(s1, term_Nj(w, cfg, 1).seq) < 1e-14);
  CHECK(rel_diff(s3, term_Nj(w, cfg, 3).seq) < 1e-14);
  CHECK(l2(n1nr.seq) > 0.0);
  CHECK(l2(n3nr.seq) > 0.0);
}

TEST_CASE("differentiation-by-parts identities") {
  for (double K : {8.0, 2.0}) {
    for (unsigned seed = 0; seed < 4; ++seed) {
      const Pair p = consistent(16, seed, 0.2 * seed);
      NFRConfig cfg;
      cfg.M = 8.0;
      cfg.K = mult::ComparabilityConstant(K);
      const DbpResidual r = dbp_identity_residual(p.u, p.w, cfg);
      CAPTURE(K);
      CHECK(r.first_stage <= 1e-10);
      CHECK(r.n1_stage <= 1e-10);
      CHECK(r.n3_stage <= 1e-10);
    }
  }
}

TEST_CASE("first-stage identity also holds by finite differences in time") {
  // d/dt N0 along the flow of omega, compared against a centered difference.
  const Pair p = consistent(10, 3, 0.0);
  NFRConfig cfg;
  cfg.M = 4.0;
  const Sequence rhs = omega_rhs(p.u, p.w);
  const double h = 1e-4;
  OmegaState plus = p.w, minus = p.w;
  plus.t += h;
  minus.t -= h;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    plus.seq[i] += h * rhs[i];
    minus.seq[i] -= h * rhs[i];
  }
  Sequence fd = term_N0(plus, cfg).seq;
  const Sequence lo = term_N0(minus, cfg).seq;
  for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (fd[i] - lo[i]) / (2 * h);

  const std::array ids{TermId::N_NR, TermId::N1, TermId::N2, TermId::N3, TermId::R1};
  const auto t = evaluate_terms(&p.u, p.w, cfg, ids);
  Sequence dn0 = t.at(TermId::N_NR).seq;
  for (auto id : {TermId::N1, TermId::N2, TermId::N3, TermId::R1})
    for (std::size_t i = 0; i < dn0.size(); ++i) dn0[i] -= t.at(id).seq[i];
  CHECK(rel_diff(fd, dn0) < 1e-6);
}

TEST_CASE("aggregates are the listed sums") {
  const Pair p = consistent(12, 5, 0.4);
  NFRConfig cfg;
  cfg.M = 10.0;
  cfg.K = mult::ComparabilityConstant(2.0);
  default_cache().clear();
  const Aggregate agg = aggregate(p.u, p.w, cfg);
  const auto t = evaluate_terms(&p.u, p.w, cfg, kAllTerms);
  Sequence z(p.w.seq.size()), o(p.w.seq.size());
  for (auto id : {TermId::N0, TermId::N10, TermId::N30})
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += t.at(id).seq[i];
  for (auto id : {TermId::R, TermId::N_R, TermId::R1, TermId::N1R, TermId::N11, TermId::N2, TermId::N3R, TermId::N31})
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += t.at(id).seq[i];
  CHECK(rel_diff(agg.zero.seq, z) < 1e-15);
  CHECK(rel_diff(agg.one.seq, o) < 1e-15);
}

TEST_CASE("cache returns bit-identical results and counts hits") {
  const Pair p = consistent(10, 6, 0.0);
  NFRConfig cfg;
  TermCache cache;
  const std::array ids{TermId::Nagg0, TermId::Nagg1};
  const auto a = cache.get_or_compute(&p.u, p.w, cfg, ids);
  const auto b = cache.get_or_compute(&p.u, p.w, cfg, ids);
  CHECK(cache.hits() == 1);
  CHECK(cache.size() == 1);
  CHECK(a.at(TermId::Nagg1).seq == b.at(TermId::Nagg1).seq);
  const auto direct = evaluate_terms(&p.u, p.w, cfg, ids);
  CHECK(a.at(TermId::Nagg0).seq == direct.at(TermId::Nagg0).seq);
  NFRConfig other = cfg;
  other.M = 2.0 * cfg.M;
  cache.get_or_compute(&p.u, p.w, other, ids);
  CHECK(cache.size() == 2);
}

TEST_CASE("threshold sweep matches separate evaluations") {
  const OmegaState w = testing::random_omega(12, 2, 0.3, 0.5);
  NFRConfig cfg;
  cfg.K = mult::ComparabilityConstant(2.0);
  const std::array<double, 3> ms{2.0, 8.0, 32.0};
  for (auto id : {TermId::N0, TermId::N10, TermId::N30}) {
    const auto sweep = threshold_sweep(id, w, cfg, ms);
    for (std::size_t k = 0; k < ms.size(); ++k) {
      NFRConfig c = cfg;
      c.M = ms[k];
      const std::array one{id};
      CHECK(rel_diff(sweep[k], evaluate_terms(nullptr, w, c, one).at(id).seq) < 1e-15);
    }
  }
}

TEST_CASE("zero data and input validation") {
  const OmegaState z = OmegaState::zeros(8);
  NFRConfig cfg;
  CHECK(l2(trilinear_N(z).seq) == 0.0);
  CHECK(l2(term_N0(z, cfg).seq) == 0.0);
  CHECK_THROWS(term_R1(SpectralField(GridSpec::oversampled(8)), OmegaState::zeros(6), cfg));
  NFRConfig bad;
  bad.M = 0.0;
  CHECK_THROWS(term_N0(z, bad));
  CHECK_THROWS(parse_term_id("N7"));
  CHECK(parse_term_id("N31") == TermId::N31);
}

TEST_CASE("majorant dominates N") {
  const OmegaState w = testing::random_omega(12, 1, 0.4, 0.0);
  const auto n = trilinear_N(w).seq;
  const auto m = trilinear_N_majorant(w).seq;
  for (std::size_t i = 0; i < n.size(); ++i) CHECK(std::abs(n[i]) <= m[i].real() * (1 + 1e-14) + 1e-300);
}

TEST_CASE("N0 of a single non-resonant tuple by hand") {
  // n = 2 from (5, -1, -2): Phi = -16; the slot-3 conjugate reads omega(2).
  OmegaState w = OmegaState::zeros(8);
  w(5) = 1.0;
  w(-1) = 1.0;
  w(2) = 1.0;
  CHECK(mult::phase_raw(2, 5, -1, -2) == -16);
  const cplx m = mult::tilde_m1_raw(2, 5, -1, -2);
  CHECK(std::abs(m - cplx(0.0, 2.4)) < 1e-15);
  NFRConfig cfg;
  cfg.M = 8.0;
  const TermValue v = term_N0(w, cfg);
  CHECK(std::abs(v(2) - cplx(-0.15, 0.0)) < 1e-15);
  for (int n = -8; n <= 8; ++n)
    if (n != 2) CHECK(v(n) == cplx{});
  // (5, 2, -5) also lands on n = 2 but is resonant.
  CHECK(mult::phase_raw(2, 5, 2, -5) == 0);
}

TEST_CASE("large threshold leaves nothing non-resonant; zero R") {
  const OmegaState w = testing::random_omega(12, 9, 0.4, 0.2);
  NFRConfig cfg;
  cfg.M = 4.0 * 12 * 12;  // |Phi| <= 4 n_max^2 on the band
  auto [r, nr] = split_resonant(w, cfg);
  CHECK(l2(nr.seq) == 0.0);
  CHECK(l2(r.seq) > 0.0);
  CHECK(l2(script_R(SpectralField(GridSpec::oversampled(8)), OmegaState::zeros(8)).seq) == 0.0);
}

TEST_CASE("Duhamel residual of the zero trajectory") {
  std::vector<DuhamelSample> tr;
  for (int k = 0; k < 3; ++k) tr.push_back({SpectralField(GridSpec::oversampled(8)), OmegaState::zeros(8, 0.01 * k)});
  for (double r : duhamel_residual(tr, NFRConfig{})) CHECK(r == 0.0);
  CHECK_THROWS(duhamel_residual(std::span(tr).first(1), NFRConfig{}));
}
