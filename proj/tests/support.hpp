#pragma once

#include <random>

#include "pbo/fourier.hpp"
#include "pbo/omega.hpp"

namespace pbo::testing {

/// Complex Gaussian coefficients with |n|^{-decay} falloff on the full band.
inline OmegaState random_omega(int n_max, unsigned seed, double decay = 0.5, double t = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  OmegaState w = OmegaState::zeros(n_max, t);
  for (int n = -n_max; n <= n_max; ++n) w(n) = cplx(g(rng), g(rng)) * sobolev_weight(n, -decay);
  return w;
}

/// Real mean-zero field with modes 1..band, amplitude scaled to `amp` in l^2.
inline SpectralField random_real(int n_max, int band, unsigned seed, double amp = 0.3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> pos(static_cast<std::size_t>(n_max));
  for (int k = 1; k <= band; ++k) pos[static_cast<std::size_t>(k - 1)] = cplx(g(rng), g(rng)) / (1.0 + k * k);
  SpectralField u = real_field_from_positive(GridSpec::oversampled(n_max), pos);
  const double nrm = sobolev_norm(u, 0.0);
  if (nrm > 0.0) u *= amp / nrm;
  return u;
}

inline double rel_diff(const Sequence& a, const Sequence& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(a[i]) + std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double l2(const Sequence& a) {
  double s = 0.0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace pbo::testing
