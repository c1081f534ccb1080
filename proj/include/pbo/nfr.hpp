#pragma once

// Right-hand side of the interaction-representation equation and its
// two-stage normal-form reduction, evaluated by direct summation over the
// truncated band.
//
//   d/dt omega = N[omega] + R[u, omega]                       (all n)
//   N_NR = d/dt N0 + N1 + N2 + N3 + R1                          (n > 0)
//   N1 = N1R + N1NR,  N1NR = d/dt N10 + N11  (likewise for N3)
//   N(0) = N0 + N10 + N30
//   N(1) = R + N_R + R1 + N1R + N11 + N2 + N3R + N31

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbo/fourier.hpp"
#include "pbo/multiplier.hpp"
#include "pbo/omega.hpp"

namespace pbo::nfr {

enum class TermId { N, N_R, N_NR, R, N0, N1, N2, N3, R1, N1R, N1NR, N10, N11, N3R, N3NR, N30, N31, Nagg0, Nagg1 };

inline constexpr std::array<TermId, 19> kAllTerms = {
    TermId::N,   TermId::N_R,  TermId::N_NR, TermId::R,   TermId::N0,  TermId::N1,  TermId::N2,
    TermId::N3,  TermId::R1,   TermId::N1R,  TermId::N1NR, TermId::N10, TermId::N11, TermId::N3R,
    TermId::N3NR, TermId::N30, TermId::N31,  TermId::Nagg0, TermId::Nagg1};

std::string_view term_name(TermId id);
/// Throws InputError for an unknown name.
TermId parse_term_id(std::string_view name);
/// Terms of the positive-frequency equation vanish for n <= 0.
bool positive_only(TermId id);
/// Terms that depend on u through the R-part (directly or via d/dt omega).
bool needs_u(TermId id);

struct NFRConfig {
  double M = 64.0;
  double s = 0.25;
  mult::ComparabilityConstant K{};
  int n_max = 0;  // 0: taken from omega

  /// M > 0 and n_max >= 0; throws ConfigError.
  void validate() const;
  /// Estimate suites additionally require 1/6 < s < 1/2.
  void validate_estimate_range() const;
};

struct TermValue {
  TermId id = TermId::N;
  Sequence seq;
  double t = 0.0;

  int n_max() const { return static_cast<int>(seq.size() / 2); }
  cplx operator()(int n) const { return seq[static_cast<std::size_t>(n + n_max())]; }
};

using TermMap = std::map<TermId, TermValue>;

/// Evaluate several terms sharing intermediate sums. u may be null when no
/// requested term needs it (InputError otherwise); u must then be real,
/// mean-zero, on the band of omega.
TermMap evaluate_terms(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg, std::span<const TermId> ids);

TermValue trilinear_N(const OmegaState& omega);
/// sum |m||omega1||omega2||omega3| over the same tuples as N.
TermValue trilinear_N_majorant(const OmegaState& omega);
TermValue script_R(const SpectralField& u, const OmegaState& omega);
/// N[omega] + R[u, omega] on the whole band.
Sequence omega_rhs(const SpectralField& u, const OmegaState& omega);

std::pair<TermValue, TermValue> split_resonant(const OmegaState& omega, const NFRConfig& cfg);
TermValue term_N0(const OmegaState& omega, const NFRConfig& cfg);
/// N1, N2 or N3 by substitution of N into slot j.
TermValue term_Nj(const OmegaState& omega, const NFRConfig& cfg, int j);
TermValue term_R1(const SpectralField& u, const OmegaState& omega, const NFRConfig& cfg);

std::pair<TermValue, TermValue> split_N1(const OmegaState& omega, const NFRConfig& cfg);
TermValue term_N10(const OmegaState& omega, const NFRConfig& cfg);
/// dt_omega supplies d/dt omega on the band (normally omega_rhs).
TermValue term_N11(const OmegaState& omega, const Sequence& dt_omega, const NFRConfig& cfg);
std::pair<TermValue, TermValue> split_N3(const OmegaState& omega, const NFRConfig& cfg);
TermValue term_N30(const OmegaState& omega, const NFRConfig& cfg);
TermValue term_N31(const OmegaState& omega, const Sequence& dt_omega, const NFRConfig& cfg);

struct Aggregate {
  TermValue zero;  // N(0)
  TermValue one;   // N(1)
};
Aggregate aggregate(const SpectralField& u, const OmegaState& omega, const NFRConfig& cfg);

/// N0, N10 or N30 for each threshold in `thresholds` (strictly increasing) in one pass.
std::vector<Sequence> threshold_sweep(TermId id, const OmegaState& omega, const NFRConfig& cfg,
                                      std::span<const double> thresholds);

struct DbpResidual {
  double first_stage = 0.0;  // N_NR - (d/dt N0 + N1 + N2 + N3 + R1)
  double n1_stage = 0.0;     // N1NR - (d/dt N10 + N11)
  double n3_stage = 0.0;     // N3NR - (d/dt N30 + N31)
  double max() const { return std::max({first_stage, n1_stage, n3_stage}); }
};

/// Relative l^2 residuals over n > 0 (residual norm over the sum of the term norms).
DbpResidual dbp_identity_residual(const SpectralField& u, const OmegaState& omega, const NFRConfig& cfg);

struct DuhamelSample {
  SpectralField u;
  OmegaState omega;
};

/// ||omega(t) - omega(0) - [N(0)(t) - N(0)(0)] - int_0^t N(1)||_{l^2_s, n > 0} at each
/// sample, trapezoid rule. Samples must be equally spaced in time; at least two.
std::vector<double> duhamel_residual(std::span<const DuhamelSample> trajectory, const NFRConfig& cfg);

/// Thread-safe memo of evaluated terms keyed by the content of (u, omega, cfg).
class TermCache {
 public:
  explicit TermCache(std::size_t capacity = 64) : capacity_(capacity) {}
  TermMap get_or_compute(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg, std::span<const TermId> ids);
  std::size_t size() const;
  std::size_t hits() const;
  void clear();

 private:
  mutable std::mutex mu_;
  std::size_t capacity_;
  std::size_t hits_ = 0;
  std::unordered_map<std::string, TermMap> entries_;
};

TermCache& default_cache();

}  // namespace pbo::nfr
