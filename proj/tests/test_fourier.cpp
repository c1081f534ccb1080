#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pbo/errors.hpp"
#include "pbo/fourier.hpp"
#include "support.hpp"

using namespace pbo;

namespace {

std::vector<cplx> sample(int points, auto f) {
  std::vector<cplx> xs(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) xs[static_cast<std::size_t>(j)] = f(2.0 * std::numbers::pi * j / points);
  return xs;
}

SpectralField two_cos(int n_max = 4) {
  SpectralField f(GridSpec::oversampled(n_max));
  f[1] = f[-1] = 1.0;
  return f;
}

}  // namespace

TEST_CASE("analyze: constant, cosine and a single scaled mode") {
  const GridSpec g(4, 16);
  auto one = analyze(sample(16, [](double) { return cplx(1.0); }), g);
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  for (int n = 1; n <= 4; ++n) CHECK(std::abs(one[n]) < 1e-15);

  auto c = analyze(sample(16, [](double x) { return cplx(std::cos(x)); }), g);
  CHECK(std::abs(c[1] - 0.5) < 1e-15);
  CHECK(std::abs(c[-1] - 0.5) < 1e-15);
  CHECK(std::abs(c[0]) < 1e-15);

  auto e = analyze(sample(16, [](double x) { return 3.0 * std::polar(1.0, 2.0 * x); }), g);
  CHECK(std::abs(e[2] - 3.0) < 1e-14);
  CHECK(std::abs(e[-2]) < 1e-14);

  CHECK_THROWS_AS(analyze(sample(15, [](double) { return cplx(1.0); }), g), InputError);
}

TEST_CASE("synthesize inverts analyze and keeps Hermitian fields real") {
  SpectralField f(GridSpec(3, 8));
  f[0] = 1.0;
  for (auto z : synthesize(f)) CHECK(std::abs(z - 1.0) < 1e-15);

  const SpectralField u = testing::random_real(16, 16, 7, 1.0);
  const auto xs = synthesize(u);
  for (auto z : xs) CHECK(std::abs(z.imag()) <= 1e-12);
  const SpectralField back = analyze(xs, u.grid());
  CHECK(testing::rel_diff(back.coeffs(), u.coeffs()) < 1e-14);
  CHECK(physical_l2_norm(xs) == doctest::Approx(std::sqrt(2.0 * std::numbers::pi) * sobolev_norm(u, 0.0)).epsilon(1e-12));
}

TEST_CASE("projections") {
  SpectralField c(GridSpec::oversampled(4));
  c[1] = c[-1] = 0.5;
  auto p = apply_projection(c, Projection::plus());
  CHECK(p[1] == cplx(0.5));
  CHECK(p[-1] == cplx(0.0));
  CHECK(sobolev_norm(apply_projection(c, Projection::mean()), 0.0) == 0.0);

  SpectralField h(GridSpec::oversampled(4));
  h[3] = 2.0;
  CHECK(sobolev_norm(apply_projection(h, Projection::lowpass(2)), 0.0) == 0.0);
  CHECK(apply_projection(h, Projection::highpass(2))[3] == cplx(2.0));

  const SpectralField u = testing::random_real(8, 8, 3, 1.0);
  SpectralField v = u;
  v[0] = cplx(0.3, 0.1);
  const auto sum = apply_projection(v, Projection::plus()) + apply_projection(v, Projection::minus()) +
                   apply_projection(v, Projection::mean());
  CHECK(sum.coeffs() == v.coeffs());
}

TEST_CASE("multipliers") {
  SpectralField e(GridSpec::oversampled(4));
  e[1] = 1.0;
  CHECK(apply_multiplier(e, MultiplierKind::hilbert)[1] == cplx(0.0, -1.0));

  const auto s = apply_multiplier(two_cos(), MultiplierKind::dx_inv);
  CHECK(std::abs(s[1] - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(s[-1] - cplx(0.0, 1.0)) < 1e-15);

  SpectralField with_mean = two_cos();
  with_mean[0] = 1.0;
  CHECK_THROWS_AS(apply_multiplier(with_mean, MultiplierKind::dx_inv), DomainError);

  const SpectralField u = testing::random_real(8, 8, 5, 1.0);
  SpectralField w = u;
  w[0] = cplx(0.7, -0.2);
  const auto back = apply_multiplier(apply_multiplier(w, MultiplierKind::dhat), MultiplierKind::dhat_inv);
  CHECK(testing::rel_diff(back.coeffs(), w.coeffs()) < 1e-15);

  const auto nonmean = apply_multiplier(apply_multiplier(w, MultiplierKind::dx), MultiplierKind::dx_inv);
  CHECK(testing::rel_diff(nonmean.coeffs(), apply_projection(w, Projection::nonmean()).coeffs()) < 1e-15);

  // H = -i P+ + i P-
  const auto hw = apply_multiplier(w, MultiplierKind::hilbert);
  const auto split = cplx(0, -1) * apply_projection(w, Projection::plus()) + cplx(0, 1) * apply_projection(w, Projection::minus());
  CHECK(testing::rel_diff(hw.coeffs(), split.coeffs()) < 1e-15);

  for (auto pr : {Projection::plus(), Projection::minus()}) {
    const auto a = apply_projection(apply_multiplier(w, MultiplierKind::dhat), pr);
    const auto b = apply_projection(apply_multiplier(w, MultiplierKind::dx), pr);
    CHECK(a.coeffs() == b.coeffs());
  }
}

TEST_CASE("Sobolev and weighted sequence norms") {
  CHECK(sobolev_norm(SpectralField(GridSpec::oversampled(4)), 1.3) == 0.0);
  CHECK(sobolev_norm(two_cos(), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sobolev_norm(two_cos(), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  const Sequence seq{1.0, 0.0, 1.0};
  CHECK(weighted_seq_norm(seq, {.s = 0.0, .p = NormExponent::one}) == doctest::Approx(2.0));
  CHECK(weighted_seq_norm(seq, {.s = 2.0, .p = NormExponent::infinity}) == doctest::Approx(2.0));
  CHECK(weighted_seq_norm(seq, {.s = 0.0}, Support::positive) == doctest::Approx(1.0));
}

TEST_CASE("exact product of band-limited fields") {
  const SpectralField a = two_cos(8);
  const auto sq = multiply(a, a, GridSpec::oversampled(8));
  CHECK(std::abs(sq[0] - 2.0) < 1e-14);
  CHECK(std::abs(sq[2] - 1.0) < 1e-14);
  CHECK(std::abs(sq[1]) < 1e-14);
}
