#pragma once

// Empirical probes of the multilinear estimates: seeded input profiles,
// normalized quotients per estimate, M-decay fits, and exhaustive scans of the
// pointwise bounds on small frequency boxes.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pbo/fourier.hpp"
#include "pbo/nfr.hpp"
#include "pbo/omega.hpp"

namespace pbo::est {

enum class Profile { flat, concentrated, two_bump, random_phase, adversarial };

std::string_view profile_name(Profile p);

struct SamplerSpec {
  int n_max = 16;
  double s = 0.25;
  Profile profile = Profile::random_phase;
  int n0 = 0;  // concentrated / two-bump centre; 0 picks one from the seed
  int n1 = 0;  // second two-bump centre
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed spec; unit l^2_s norm over the band (zero only if the band is empty).
OmegaState sample_omega(const SamplerSpec& spec);
/// Real mean-zero field with the same profile on n >= 1 and ||u||_{H^s} = amplitude.
SpectralField sample_field(const SamplerSpec& spec, double amplitude = 1.0);

/// Zero-pad omega to a wider band (norms unchanged).
OmegaState embed(const OmegaState& w, int n_max);
SpectralField embed(const SpectralField& u, int n_max);

/// Specs for bands base, 2 base, ... up to n_max, `per_band` each, cycling the profiles.
/// The plan for n_max is a prefix-extension of the plan for n_max / 2 with the same seed,
/// so sups taken over it are monotone in n_max.
std::vector<SamplerSpec> sample_plan(int n_max, int per_band, double s, std::uint64_t seed, int base_band = 16);

enum class LemmaId { R, N_R, N0, R1, weak_N1, weak_N2, weak_N3, N1R, N11, N10, N2, N3R, N31, N30, dtom2 };

inline constexpr std::array<LemmaId, 15> kAllLemmas = {
    LemmaId::R,   LemmaId::N_R, LemmaId::N0,  LemmaId::R1,  LemmaId::weak_N1, LemmaId::weak_N2, LemmaId::weak_N3, LemmaId::N1R,
    LemmaId::N11, LemmaId::N10, LemmaId::N2,  LemmaId::N3R, LemmaId::N31,     LemmaId::N30,     LemmaId::dtom2};

std::string_view lemma_name(LemmaId id);
/// Throws InputError for an unknown name.
LemmaId parse_lemma(std::string_view name);
nfr::TermId lemma_term(LemmaId id);
/// The estimate involves u (directly or through d/dt omega).
bool lemma_needs_u(LemmaId id);

/// omega (and u where needed) with an optional second pair for the difference form.
struct LemmaInputs {
  const SpectralField* u = nullptr;
  const OmegaState* omega = nullptr;
  const SpectralField* u_tilde = nullptr;
  const OmegaState* omega_tilde = nullptr;
};

/// Term norm over its right-hand normalization; powers of M are divided out
/// (M^1 for the resonant part, none for the M^{-delta} terms). Empty for 0/0.
/// With tilde inputs, the difference form is evaluated instead.
std::optional<double> lemma_ratio(LemmaId id, const LemmaInputs& in, const nfr::NFRConfig& cfg);

struct RatioReport {
  std::string lemma;
  std::string kind = "bound";  // bound | difference | decay | scan
  double s = 0.0;
  double M = 0.0;
  int n_max = 0;
  std::size_t samples = 0;  // informative quotients (0/0 skipped)
  double max = 0.0, min = 0.0, median = 0.0;
  std::vector<std::pair<double, double>> sweep;  // (M, max ratio)
  std::optional<double> slope;
  std::optional<double> frozen;  // regression constant for scans
  std::size_t violations = 0;

  nlohmann::json to_json() const;
};

/// Summary statistics of a list of quotients.
RatioReport summarize(std::string lemma, std::span<const double> ratios);

struct SuiteOptions {
  int n_max = 16;
  double s = 0.25;
  double M = 64.0;
  mult::ComparabilityConstant K{};
  int per_band = 20;
  std::uint64_t seed = 1;
  bool difference = false;
  int base_band = 16;
};

/// One report per lemma over the sample plan; terms are evaluated once per sample.
std::vector<RatioReport> lemma_suites(std::span<const LemmaId> ids, const SuiteOptions& opt);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const std::pair<double, double>> points);

struct DecayOptions {
  int n_max = 64;
  double s = 0.25;
  mult::ComparabilityConstant K{};
  int samples = 200;
  std::uint64_t seed = 1;
  int base_band = 16;  // samples are spread evenly over bands base, 2 base, ..., n_max
};

/// max over samples of ||term||_{l^2_s} / ||omega||^{3 or 5} at each M, and the fitted slope.
/// M_list must be increasing, all >= 2, spanning at least five octaves (InputError otherwise).
/// The slope is empty when every maximum vanishes.
RatioReport decay_fit(nfr::TermId term, std::span<const double> M_list, const DecayOptions& opt);
/// Same, on explicit samples.
RatioReport decay_fit(nfr::TermId term, std::span<const double> M_list, std::span<const OmegaState> samples, double s,
                      const mult::ComparabilityConstant& K);

enum class Bound { multiplier, claim_phi, a1_stacked, a3_stacked, m1_sign };

std::string_view bound_name(Bound b);
Bound parse_bound(std::string_view name);

/// Exact extrema over every admissible tuple with all frequencies in [-n_max, n_max].
///   multiplier: sup of |m_k| min<n_j>/<n> over k = 1, 2, 3
///   claim_phi:  min of the lower-bound ratio; violations count factorization mismatches
///   a1_stacked: min |Phi + Phi1| / |Phi1| on A1 within the support of both multipliers;
///               violations count second-branch tuples with Phi Phi1 <= 0
///   a3_stacked: min |Phi + Phi3| / (|n3||n14|) on A3 within the support
///   m1_sign:    violations of (tilde m1 != 0 => n1 > n > 0, n23 < 0)
/// Quads require n_max <= 256, sextics n_max <= 64.
RatioReport exhaustive_bound_scan(Bound b, int n_max, const mult::ComparabilityConstant& K = mult::ComparabilityConstant{});

}  // namespace pbo::est
