#include <doctest.h>

#include <cmath>
#include <vector>

#include "pbo/errors.hpp"
#include "pbo/estimates.hpp"
#include "pbo/gauge.hpp"

using namespace pbo;
using namespace pbo::est;

namespace {

double l2s(const OmegaState& w, double s) { return weighted_seq_norm(w.seq, {s, NormExponent::two}); }

}  // namespace

TEST_CASE("sampler is deterministic with unit weighted norm") {
  for (Profile p : {Profile::flat, Profile::concentrated, Profile::two_bump, Profile::random_phase, Profile::adversarial}) {
    SamplerSpec spec{.n_max = 32, .s = 0.3, .profile = p, .seed = 17};
    const OmegaState a = sample_omega(spec), b = sample_omega(spec);
    CHECK(a.seq == b.seq);
    CHECK(l2s(a, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
    spec.seed = 18;
    if (p != Profile::flat) CHECK(sample_omega(spec).seq != a.seq);
  }
}

TEST_CASE("sampled fields are real, mean zero, with the requested norm") {
  const SpectralField u = sample_field({.n_max = 24, .s = 0.25, .profile = Profile::two_bump, .seed = 3}, 0.7);
  CHECK(u[0] == cplx{});
  CHECK(u.hermitian_defect() < 1e-15);
  CHECK(sobolev_norm(u, 0.25) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("embedding keeps norms") {
  const OmegaState w = sample_omega({.n_max = 8, .seed = 5});
  const OmegaState e = embed(w, 20);
  CHECK(e.n_max() == 20);
  CHECK(l2s(e, 0.25) == doctest::Approx(l2s(w, 0.25)).epsilon(1e-14));
  CHECK(e(3) == w(3));
  CHECK(e(15) == cplx{});
  CHECK_THROWS_AS(embed(w, 4), InputError);
}

TEST_CASE("sample plans are nested across bands") {
  const auto small = sample_plan(32, 5, 0.25, 9);
  const auto big = sample_plan(64, 5, 0.25, 9);
  REQUIRE(small.size() == 10);
  REQUIRE(big.size() == 15);
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].n_max == big[i].n_max);
    CHECK(small[i].seed == big[i].seed);
    CHECK(small[i].profile == big[i].profile);
  }
}

TEST_CASE("lemma names round trip") {
  for (LemmaId id : kAllLemmas) CHECK(parse_lemma(lemma_name(id)) == id);
  CHECK_THROWS_AS(parse_lemma("N9"), InputError);
  CHECK(lemma_needs_u(LemmaId::R));
  CHECK_FALSE(lemma_needs_u(LemmaId::N0));
}

TEST_CASE("zero input gives no quotient") {
  const OmegaState z = OmegaState::zeros(8);
  nfr::NFRConfig cfg;
  cfg.M = 4.0;
  CHECK_FALSE(lemma_ratio(LemmaId::N0, {.omega = &z}, cfg).has_value());
  CHECK_FALSE(lemma_ratio(LemmaId::N1R, {.omega = &z}, cfg).has_value());
}

TEST_CASE("quotients are homogeneous of degree zero for omega-only lemmas") {
  const OmegaState w = sample_omega({.n_max = 12, .profile = Profile::random_phase, .seed = 4});
  OmegaState w2 = w;
  for (auto& z : w2.seq) z *= 0.5;
  nfr::NFRConfig cfg;
  cfg.M = 4.0;
  cfg.K = mult::ComparabilityConstant(2.0);
  for (LemmaId id : {LemmaId::N0, LemmaId::N_R, LemmaId::N2, LemmaId::weak_N2}) {
    auto a = lemma_ratio(id, {.omega = &w}, cfg), b = lemma_ratio(id, {.omega = &w2}, cfg);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == doctest::Approx(*b).epsilon(1e-10));
  }
}

TEST_CASE("difference form of N0 vanishes for equal inputs only") {
  const OmegaState w = sample_omega({.n_max = 12, .seed = 6});
  OmegaState wt = w;
  nfr::NFRConfig cfg;
  cfg.M = 4.0;
  CHECK_FALSE(lemma_ratio(LemmaId::N0, {.omega = &w, .omega_tilde = &wt}, cfg).has_value());
  wt(3) += 0.1;
  auto r = lemma_ratio(LemmaId::N0, {.omega = &w, .omega_tilde = &wt}, cfg);
  REQUIRE(r.has_value());
  CHECK(*r > 0.0);
}

TEST_CASE("summary statistics") {
  const std::vector<double> xs{3.0, 1.0, 2.0, 5.0};
  const RatioReport r = summarize("x", xs);
  CHECK(r.samples == 4);
  CHECK(r.max == 5.0);
  CHECK(r.min == 1.0);
  CHECK(r.median == 2.5);
  const auto j = r.to_json();
  CHECK(j["lemma"] == "x");
  CHECK(j["slope"].is_null());
}

TEST_CASE("log-log slope of a power law") {
  std::vector<std::pair<double, double>> pts;
  for (double m = 2.0; m <= 256.0; m *= 2.0) pts.emplace_back(m, 3.0 * std::pow(m, -0.75));
  CHECK(loglog_slope(pts) == doctest::Approx(-0.75).epsilon(1e-12));
}

TEST_CASE("decay fit validates thresholds") {
  DecayOptions opt{.n_max = 16, .samples = 4};
  const std::vector<double> short_span{2.0, 4.0, 8.0};
  const std::vector<double> unordered{64.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  const std::vector<double> too_small{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  CHECK_THROWS_AS(decay_fit(nfr::TermId::N0, short_span, opt), InputError);
  CHECK_THROWS_AS(decay_fit(nfr::TermId::N0, unordered, opt), InputError);
  CHECK_THROWS_AS(decay_fit(nfr::TermId::N0, too_small, opt), InputError);
  CHECK_THROWS_AS(decay_fit(nfr::TermId::N1, std::vector<double>{2, 4, 8, 16, 32, 64}, opt), InputError);
}

TEST_CASE("decay fit of N0 on a small band") {
  const std::vector<double> Ms{2, 4, 8, 16, 32, 64};
  const RatioReport r = decay_fit(nfr::TermId::N0, Ms, DecayOptions{.n_max = 16, .samples = 12});
  REQUIRE(r.sweep.size() == Ms.size());
  for (std::size_t i = 1; i < r.sweep.size(); ++i) CHECK(r.sweep[i].second <= r.sweep[i - 1].second * (1.0 + 1e-12));
  REQUIRE(r.slope.has_value());
  CHECK(*r.slope < 0.0);
}

TEST_CASE("exhaustive scans reproduce frozen constants") {
  const mult::ComparabilityConstant K(8.0);
  auto bd = exhaustive_bound_scan(Bound::multiplier, 64, K);
  CHECK(bd.samples == 1125792);
  CHECK(*bd.frozen == doctest::Approx(2.8280819209706025).epsilon(1e-12));

  auto phi = exhaustive_bound_scan(Bound::claim_phi, 64, K);
  CHECK(phi.violations == 0);
  CHECK(*phi.frozen == doctest::Approx(1.03125).epsilon(1e-12));
  CHECK(*phi.frozen > 1.0);

  auto sign = exhaustive_bound_scan(Bound::m1_sign, 128, K);
  CHECK(sign.violations == 0);
  CHECK(sign.samples == 1715008);

  auto a1 = exhaustive_bound_scan(Bound::a1_stacked, 32, K);
  CHECK(a1.samples == 2062);
  CHECK(a1.violations == 0);
  CHECK(*a1.frozen == doctest::Approx(1.038647342995169).epsilon(1e-12));

  auto a3 = exhaustive_bound_scan(Bound::a3_stacked, 32, K);
  CHECK(a3.samples == 2173);
  CHECK(*a3.frozen == doctest::Approx(1.6296296296296295).epsilon(1e-12));
}

TEST_CASE("stacked phase constants are monotone in the box") {
  const mult::ComparabilityConstant K(8.0);
  CHECK(exhaustive_bound_scan(Bound::a1_stacked, 64, K).frozen.value() <= 1.038647342995169);
  CHECK(exhaustive_bound_scan(Bound::a3_stacked, 64, K).frozen.value() <= 1.6296296296296295);
}

TEST_CASE("scan limits") {
  CHECK_THROWS_AS(exhaustive_bound_scan(Bound::a1_stacked, 65), InputError);
  CHECK_THROWS_AS(exhaustive_bound_scan(Bound::claim_phi, 257), InputError);
  for (Bound b : {Bound::multiplier, Bound::claim_phi, Bound::a1_stacked, Bound::a3_stacked, Bound::m1_sign})
    CHECK(parse_bound(bound_name(b)) == b);
}

TEST_CASE("flat and concentrated profiles") {
  const OmegaState f = sample_omega({.n_max = 16, .s = 0.25, .profile = Profile::flat, .seed = 3});
  const double c = std::abs(f(1)) * sobolev_weight(1, 0.25);
  for (int n = -16; n <= 16; ++n)
    if (n != 0) CHECK(std::abs(f(n)) * sobolev_weight(n, 0.25) == doctest::Approx(c).epsilon(1e-13));
  const OmegaState g = sample_omega({.n_max = 16, .s = 0.25, .profile = Profile::concentrated, .n0 = 5, .seed = 3});
  for (int n = -16; n <= 16; ++n) CHECK((std::abs(g(n)) > 0.0) == (std::abs(n) == 5));
}

TEST_CASE("weak second-stage quotients are finite at s = 0.2") {
  SuiteOptions opt{.n_max = 16, .s = 0.2, .per_band = 100, .seed = 4};
  const std::array<LemmaId, 3> ids{LemmaId::weak_N1, LemmaId::weak_N2, LemmaId::weak_N3};
  for (const auto& r : lemma_suites(ids, opt)) {
    CHECK(r.samples > 0);
    CHECK(std::isfinite(r.max));
  }
}

TEST_CASE("concentrated omega has no decay to fit") {
  // Every tuple on +-n0 is resonant or outside the support of tilde m1.
  std::vector<OmegaState> ws;
  for (int c : {3, 7}) ws.push_back(sample_omega({.n_max = 16, .s = 0.25, .profile = Profile::concentrated, .n0 = c, .seed = 2}));
  const std::vector<double> Ms{16, 32, 64, 128, 256, 512};
  const RatioReport r = decay_fit(nfr::TermId::N0, Ms, ws, 0.25, mult::ComparabilityConstant{});
  for (const auto& [M, q] : r.sweep) CHECK(q == 0.0);
  CHECK_FALSE(r.slope.has_value());
}

TEST_CASE("m1 sign implications hold on the 64 box") {
  const auto r = exhaustive_bound_scan(Bound::m1_sign, 64);
  CHECK(r.violations == 0);
  CHECK(r.samples > 0);
}
