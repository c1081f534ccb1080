#pragma once

#include "pbo/fourier.hpp"

namespace pbo {

/// Interaction-representation coefficients omega(t, n) = e^{itn|n|} vhat(t, n)
/// on a band [-n_max, n_max].
struct OmegaState {
  Sequence seq;
  double t = 0.0;

  OmegaState() = default;
  OmegaState(Sequence s, double time) : seq(std::move(s)), t(time) {}
  static OmegaState zeros(int n_max, double time = 0.0) {
    return {Sequence(static_cast<std::size_t>(2 * n_max + 1)), time};
  }

  int n_max() const { return static_cast<int>(seq.size() / 2); }
  cplx operator()(int n) const { return seq[static_cast<std::size_t>(n + n_max())]; }
  cplx& operator()(int n) { return seq[static_cast<std::size_t>(n + n_max())]; }
  /// omega^*(n) = conj(omega(-n)).
  cplx star(int n) const { return std::conj((*this)(-n)); }
};

/// e^{i t n|n|}, with the phase reduced modulo 2pi in exact integer steps when t is a multiple of 2pi.
cplx linear_phase(int n, double t);

}  // namespace pbo
