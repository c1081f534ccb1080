#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pbo/errors.hpp"
#include "pbo/gauge.hpp"
#include "support.hpp"

using namespace pbo;
using namespace pbo::gauge;

namespace {

SpectralField two_cos(int n_max) {
  SpectralField f(GridSpec::oversampled(n_max));
  f[1] = f[-1] = 1.0;
  f.set_flags({true, true});
  return f;
}

}  // namespace

TEST_CASE("remove_mean") {
  SpectralField u(GridSpec::oversampled(4));
  u[0] = 1.0;
  u[1] = u[-1] = 0.5;
  auto [w, rec] = remove_mean(u);
  CHECK(rec.mean == 1.0);
  CHECK(w[0] == cplx{});
  CHECK(w[1] == cplx(0.5));
  CHECK(w.flags().is_mean_zero);

  SpectralField c(GridSpec::oversampled(4));
  c[0] = 3.0;
  auto [z, r3] = remove_mean(c);
  CHECK(r3.mean == 3.0);
  CHECK(sobolev_norm(z, 0.0) == 0.0);
}

TEST_CASE("gauge of zero and of 2 cos x") {
  const GaugePair zero = gauge_forward(SpectralField(GridSpec::oversampled(8)));
  CHECK(std::abs(zero.V[0] - 1.0) < 1e-15);
  CHECK(std::abs(zero.v[0] - cplx(0, 1)) < 1e-15);
  CHECK(sobolev_norm(gauge_inverse(zero), 1.0) < 1e-15);

  const GaugePair p = gauge_forward(two_cos(16));
  for (int k = -6; k <= 6; ++k) {
    const double j = (k > 0 && k % 2 != 0 ? -1.0 : 1.0) * std::cyl_bessel_j(std::abs(k), 2.0);
    CAPTURE(k);
    CHECK(std::abs(p.V[k] - j) < 1e-14);
  }
  CHECK(std::abs(p.V[0] - 0.22389077914123567) < 1e-14);
  CHECK(std::abs(p.v[0] - cplx(0.0, 0.22389077914123567)) < 1e-14);
  CHECK(p.unimodularity_defect < 1e-12);
  CHECK(sobolev_norm(gauge_inverse(p) - two_cos(16), 1.0) < 1e-8);

  SpectralField bad = two_cos(8);
  bad[0] = 0.5;
  CHECK_THROWS_AS(gauge_forward(bad), DomainError);
}

TEST_CASE("round trip on random band-limited data") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const SpectralField u = testing::random_real(64, 16, seed, 1.0);
    const GaugePair p = gauge_forward(u);
    CHECK(p.unimodularity_defect <= 1e-8);
    CHECK(sobolev_norm(gauge_inverse(p) - u, 1.0) <= 1e-8);
    // The defining form agrees with i dhat V up to the band tail.
    const SpectralField vd = v_by_definition(u, p.V);
    CHECK(sobolev_norm(vd - p.v, 0.0) < 1e-8);
  }
}

TEST_CASE("interaction variable") {
  const SpectralField u = testing::random_real(12, 6, 1, 1.0);
  const SpectralField v = gauge_forward(u).v;
  const OmegaState w0 = omega_of(v, 0.0);
  CHECK(w0.seq == v.coeffs());
  const OmegaState w2pi = omega_of(v, 2.0 * std::numbers::pi);
  CHECK(w2pi.seq == v.coeffs());
  const OmegaState w = omega_of(v, 0.77);
  CHECK(testing::rel_diff(v_of(w, v.grid()).coeffs(), v.coeffs()) < 1e-15);

  SpectralField e(GridSpec::oversampled(4));
  e[2] = 1.0;
  CHECK(std::abs(omega_of(e, 0.5)(2) - std::polar(1.0, 2.0)) < 1e-15);
}

TEST_CASE("commutator G_N") {
  const SpectralField u = testing::random_real(16, 4, 2, 1.0);
  CHECK(sobolev_norm(commutator_GN(u, 8), 0.0) < 1e-13);

  SpectralField c(GridSpec::oversampled(16));
  c[6] = c[-6] = 0.5;
  const SpectralField g = commutator_GN(c, 6);
  CHECK(sobolev_norm(g, 0.0) > 0.1);
  for (int n = -g.n_max(); n <= g.n_max(); ++n)
    if (std::abs(n) != 12) CHECK(std::abs(g[n]) < 1e-13);

  // dx^{-1} G_N shrinks with N for smooth data.
  SpectralField smooth(GridSpec::oversampled(32));
  for (int k = 1; k <= 32; ++k) smooth[k] = smooth[-k] = std::exp(-0.5 * k);
  double prev = 1e300;
  for (int cut : {2, 4, 8, 16}) {
    const SpectralField gn = apply_projection(commutator_GN(smooth, cut), Projection::nonmean());
    const double l1 = physical_l1_norm(synthesize(apply_multiplier(gn, MultiplierKind::dx_inv)));
    CHECK(l1 < prev);
    prev = l1;
  }
}

TEST_CASE("exponential bound ratios") {
  const SpectralField z(GridSpec::oversampled(8));
  const ExpRatios r0 = lemma_exp_ratios(z, z, 0.5);
  CHECK(r0.growth == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(r0.difference);
  const ExpRatios r = lemma_exp_ratios(two_cos(8), testing::random_real(8, 4, 3), 0.0);
  CHECK(std::isfinite(r.growth));
  REQUIRE(r.difference);
  CHECK(std::isfinite(*r.difference));
  CHECK_THROWS_AS(lemma_exp_ratios(z, z, 1.5), InputError);
}
