#pragma once

// Gauge transform u -> (V, v, omega) of a real mean-zero field and its inverse:
//   V = exp(-i dx^{-1} u),   v = i dhat V,   u = conj(V) P_{!=0} v.

#include <optional>
#include <string>
#include <utility>

#include "pbo/fourier.hpp"
#include "pbo/omega.hpp"

namespace pbo::gauge {

struct GaugePair {
  SpectralField V;  // gauge factor, band-truncated
  SpectralField v;  // gauged unknown i dhat V
  double tail_mass = 0.0;              // l^2 mass of V outside the band on the oversampled grid
  double unimodularity_defect = 0.0;   // max_x ||V(x)| - 1| before truncation
};

struct ShiftRecord {
  double mean = 0.0;
  /// The Galilean substitution that removed the mean.
  std::string description() const;
};

/// u0 - mean(u0) together with the removed mean. u0 must be real.
std::pair<SpectralField, ShiftRecord> remove_mean(const SpectralField& u0);

/// Oversampling factor (relative to n_max) for the exponential.
inline constexpr int kExpOversampling = 8;

/// exp(-i dx^{-1} u) evaluated pointwise on an oversampled grid and truncated to `out`.
/// u must be real with zero mean (DomainError otherwise).
GaugePair gauge_forward(const SpectralField& u);
SpectralField gauge_factor(const SpectralField& u, const GridSpec& out, double* tail_mass = nullptr,
                           double* unimodularity_defect = nullptr);

/// conj(V) P_{!=0} v, computed as an exact band-limited product and truncated to v's band.
SpectralField gauge_inverse(const GaugePair& pair);

/// Pair reconstructed from v alone on a band: V = -i dhat^{-1} v.
GaugePair pair_from_v(const SpectralField& v);

/// The defining form i P_c V + V u of the gauged unknown (analytically equal to i dhat V).
SpectralField v_by_definition(const SpectralField& u, const SpectralField& V);

OmegaState omega_of(const SpectralField& v, double t);
SpectralField v_of(const OmegaState& omega, const GridSpec& grid);

/// G_N = P_{<=N} dx(u^2) - dx((P_{<=N} u)^2), exact on the band 2 n_max.
SpectralField commutator_GN(const SpectralField& u, int cutoff);

struct ExpRatios {
  double growth = 0.0;                 // ||e^{-i dx^{-1} f}||_{H^{s+1}} / (1 + ||f||_{H^s}^2)
  std::optional<double> difference;    // empty when f == g
};

/// Quotients of the exponential bounds; 0 <= s <= 1, f and g real and mean-zero.
ExpRatios lemma_exp_ratios(const SpectralField& f, const SpectralField& g, double s);

}  // namespace pbo::gauge
