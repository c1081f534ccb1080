#pragma once

// Time integration of the Benjamin-Ono equation
//   u_t = -H u_xx + (u^2)_x
// in the interaction picture w(n) = e^{itn|n|} uhat(n), and of the omega
// equation either directly or through its normal-form (Duhamel) version.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "pbo/fourier.hpp"
#include "pbo/nfr.hpp"
#include "pbo/omega.hpp"

namespace pbo::solver {

struct SolverConfig {
  GridSpec grid = GridSpec::oversampled(32);
  double dt = 1e-4;
  double T = 1e-2;
  double cfl = 0.5;       // dt <= cfl / n_max^2
  bool dealias = true;    // exact quadratic product; false samples on 2 n_max + 1 points
  int save_every = 1;     // steps between stored states
  double t0 = 0.0;
  bool backward = false;  // integrate from t0 down to t0 - T

  /// Throws ConfigError on dt, T, cfl or save_every out of range, a CFL
  /// violation, or T not an integer multiple of dt.
  void validate() const;
  /// Number of time steps.
  long steps() const;
  nlohmann::json to_json() const;
};

struct ConservationRecord {
  double t = 0.0;
  double mean = 0.0;       // |uhat(0)|
  double l2 = 0.0;         // coefficient l^2 norm of u
  double max_imag = 0.0;   // max |Im u(x_j)| on the grid
};

struct Trajectory {
  SolverConfig config;
  std::vector<double> times;
  std::vector<SpectralField> u;
  std::vector<OmegaState> omega;  // empty for integrate_bo
  std::vector<ConservationRecord> conservation;

  double max_mean_drift() const;
  double max_imag() const;
  /// Relative change of the l^2 norm over the run.
  double l2_drift() const;
};

ConservationRecord measure(const SpectralField& u, double t);

/// Pseudospectral RK4 with integrating factor e^{itn|n|}. u0 must be real;
/// its mean is removed from the evolved state (InputError when it is not real).
/// Throws BlowUpError on a non-finite state.
Trajectory integrate_bo(const SpectralField& u0, const SolverConfig& cfg);

enum class OmegaMode { direct, nfr_form };

/// Evolve omega = e^{itn|n|} vhat with u rebuilt from omega at every stage.
/// direct: RK4 on d/dt omega = N + R.
/// nfr_form: RK4 predictor, then fixed-point iteration of
///   omega(t+dt) = omega(t) + N(0)(t+dt) - N(0)(t) + trapezoid of N(1)   (n > 0)
///   omega(t+dt) = omega(t) + trapezoid of N + R                          (n <= 0)
Trajectory integrate_omega(const SpectralField& u0, const SolverConfig& cfg, const nfr::NFRConfig& ncfg, OmegaMode mode);

/// Real mean-zero u recovered from omega through the inverse gauge.
SpectralField u_from_omega(const OmegaState& omega);

/// Rows t,n,re,im for every stored u (or omega when `use_omega`).
void write_csv(const Trajectory& traj, std::ostream& os, bool use_omega = false);
/// Little-endian: magic "PBOT", u32 version, i32 n_max, u64 count, then per
/// record f64 t and 2 n_max + 1 (f64 re, f64 im).
void write_binary(const Trajectory& traj, std::ostream& os);
/// Reads write_binary output back into times and u; throws InputError on a bad stream.
Trajectory read_binary(std::istream& is);

}  // namespace pbo::solver
