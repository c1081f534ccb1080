#pragma once

// Two discretizations of the same datum compared split at a frequency N, and
// the contraction factor
//   C (T'(N^2 + M) + N^{-s} + sup_t ||P_{>N/2} v||_{H^s} + M^{delta})
// with C = (1 + ||u|| + ||u~||)^4 (sup-in-time H^s norms) and delta the
// fitted M-decay exponent (negative).

#include <optional>
#include <vector>

#include "json.hpp"
#include "pbo/solver.hpp"

namespace pbo::uniq {

struct DifferenceSeries {
  std::vector<double> times;
  std::vector<double> low;    // ||P_{<=N}(u - u~)||_{H^s}
  std::vector<double> high;   // ||P_{>N}(u - u~)||_{H^s}
  std::vector<double> total;  // ||u - u~||_{H^s}
  std::vector<double> omega;  // ||1_{n>0}(omega - omega~)||_{l^2_s}
};

struct ContractionChoice {
  double N = 0.0, M = 0.0, T_prime = 0.0;
  double time_term = 0.0, split_term = 0.0, tail_term = 0.0, decay_term = 0.0;
  double factor = 0.0;
  nlohmann::json to_json() const;
};

struct ExperimentInputs {
  double s = 0.25;
  int N_split = 8;
  double M = 64.0;
  double delta_hat = -0.5;  // fitted slope of the M-decay
  double target = 0.5;      // contraction level sought by the search
};

struct UniquenessReport {
  ExperimentInputs inputs;
  DifferenceSeries series;
  double sup_total = 0.0;
  double orthogonality_defect = 0.0;  // max |total^2 - low^2 - high^2| / max(total^2, tiny)
  double norm_u = 0.0, norm_u_tilde = 0.0;
  double C_tilde = 0.0;
  std::vector<std::pair<int, double>> tail;  // (N, sup_t ||P_{>N/2} v||_{H^s}) over dyadic N
  ContractionChoice at_inputs;  // factor at (N_split, M) with the balanced T'
  ContractionChoice best;

  nlohmann::json to_json() const;
};

/// Runs integrate_bo under both configs and compares at their common stored
/// times (InputError if there are none).
UniquenessReport uniqueness_experiment(const SpectralField& u0, const solver::SolverConfig& a, const solver::SolverConfig& b,
                                       const ExperimentInputs& in);

/// Same on precomputed trajectories.
UniquenessReport compare_trajectories(const solver::Trajectory& a, const solver::Trajectory& b, const ExperimentInputs& in);

/// Factor at (N, M). T' is the largest T / 2^j (j >= 0) whose time term does not
/// exceed the sum of the other three; `tail` gives sup_t ||P_{>N/2} v||_{H^s}.
ContractionChoice contraction_at(double N, double M, double T, double s, double delta_hat, double C_tilde, double tail);

/// Over dyadic N, M in [2, 2^30]: the choice with the smallest N^2 + M (largest T')
/// whose factor is at most `target`, or the overall minimum if none is.
ContractionChoice search_contraction(const UniquenessReport& r, double T, double target);

struct DtSweepRow {
  double dt = 0.0;
  double sup_diff = 0.0;  // sup_t ||u_dt - u_{dt/2}||_{H^s}
};

/// Pairs (dt, dt/2) for each dt in `dts` (decreasing), run in parallel.
std::vector<DtSweepRow> dt_sweep(const SpectralField& u0, const solver::SolverConfig& base, const std::vector<double>& dts,
                                 double s);
/// Strictly decreasing sup_diff along the sweep.
bool monotone_decreasing(const std::vector<DtSweepRow>& rows);

}  // namespace pbo::uniq
