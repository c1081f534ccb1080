#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pbo/errors.hpp"
#include "pbo/estimates.hpp"

namespace pbo::est {
namespace {

constexpr std::array<Profile, 5> kCycle = {Profile::flat, Profile::random_phase, Profile::concentrated, Profile::two_bump,
                                           Profile::adversarial};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), salt};
  return std::mt19937_64(seq);
}

/// Amplitudes on n = 0..b (index n) before the <n>^{-s} weight and normalization;
/// `negative` holds n = -1..-b at index |n|.
struct Shape {
  std::vector<cplx> pos, neg;
};

Shape make_shape(const SamplerSpec& spec, bool real_only) {
  const int b = spec.n_max;
  Shape sh{Sequence(static_cast<std::size_t>(b + 1)), Sequence(static_cast<std::size_t>(b + 1))};
  if (b == 0) return sh;
  auto rng = make_rng(spec.seed, 0x5eed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> freq(1, b);
  auto phase = [&] { return std::polar(1.0, angle(rng)); };

  auto set = [&](int n, cplx z) {
    if (n >= 0) sh.pos[static_cast<std::size_t>(n)] += z;
    else sh.neg[static_cast<std::size_t>(-n)] += z;
  };
  auto bump = [&](int centre, double width) {
    for (int n = -b; n <= b; ++n) {
      for (int sign : {1, -1}) {
        const double d = (n - sign * centre) / width;
        if (std::abs(d) <= 3.0) set(n, std::exp(-0.5 * d * d) * phase());
      }
    }
  };

  switch (spec.profile) {
    case Profile::flat:
      for (int n = -b; n <= b; ++n) set(n, 1.0);
      break;
    case Profile::random_phase:
      for (int n = -b; n <= b; ++n) set(n, std::abs(gauss(rng)) * phase());
      break;
    case Profile::concentrated: {
      const int c = spec.n0 > 0 ? std::min(spec.n0, b) : freq(rng);
      set(c, phase());
      set(-c, phase());
      break;
    }
    case Profile::two_bump: {
      const int c0 = spec.n0 > 0 ? std::min(spec.n0, b) : freq(rng);
      const int c1 = spec.n1 > 0 ? std::min(spec.n1, b) : freq(rng);
      const double width = std::max(1.0, b / 16.0);
      bump(c0, width);
      bump(c1, width);
      break;
    }
    case Profile::adversarial: {
      // Coherent low modes against a flat high block: <n1> ~ <n3> >> <n2>.
      // Only the low cutoff varies with the seed, so the family is finite.
      const int low = std::min(b, 1 + static_cast<int>(rng() % 3));
      for (int n = -low; n <= low; ++n)
        if (n != 0) set(n, 2.0);
      for (int n = std::max(1, b / 2); n <= b; ++n) {
        set(n, 1.0);
        set(-n, 1.0);
      }
      break;
    }
  }
  if (real_only) sh.pos[0] = 0.0;
  return sh;
}

}  // namespace

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::flat: return "flat";
    case Profile::concentrated: return "concentrated";
    case Profile::two_bump: return "two-bump";
    case Profile::random_phase: return "random-phase";
    case Profile::adversarial: return "adversarial";
  }
  return "?";
}

OmegaState sample_omega(const SamplerSpec& spec) {
  if (spec.n_max < 0) throw InputError("sample_omega: n_max must be nonnegative");
  const Shape sh = make_shape(spec, false);
  const int b = spec.n_max;
  OmegaState w = OmegaState::zeros(b);
  for (int n = 0; n <= b; ++n) w(n) = sh.pos[static_cast<std::size_t>(n)] * sobolev_weight(n, -spec.s);
  for (int n = 1; n <= b; ++n) w(-n) = sh.neg[static_cast<std::size_t>(n)] * sobolev_weight(n, -spec.s);
  const double nrm = weighted_seq_norm(w.seq, {.s = spec.s});
  if (nrm > 0.0)
    for (auto& z : w.seq) z /= nrm;
  return w;
}

SpectralField sample_field(const SamplerSpec& spec, double amplitude) {
  const Shape sh = make_shape(spec, true);
  const int b = spec.n_max;
  std::vector<cplx> pos(static_cast<std::size_t>(b));
  for (int n = 1; n <= b; ++n) pos[static_cast<std::size_t>(n - 1)] = sh.pos[static_cast<std::size_t>(n)] * sobolev_weight(n, -spec.s);
  SpectralField u = real_field_from_positive(GridSpec::oversampled(b), pos);
  const double nrm = sobolev_norm(u, spec.s);
  if (nrm > 0.0) u *= amplitude / nrm;
  return u;
}

OmegaState embed(const OmegaState& w, int n_max) {
  if (n_max < w.n_max()) throw InputError("embed: target band is narrower");
  OmegaState out = OmegaState::zeros(n_max, w.t);
  for (int n = -w.n_max(); n <= w.n_max(); ++n) out(n) = w(n);
  return out;
}

SpectralField embed(const SpectralField& u, int n_max) {
  if (n_max < u.n_max()) throw InputError("embed: target band is narrower");
  return u.on_grid(GridSpec::oversampled(n_max));
}

std::vector<SamplerSpec> sample_plan(int n_max, int per_band, double s, std::uint64_t seed, int base_band) {
  if (n_max < 1 || per_band < 0 || base_band < 1) throw InputError("sample_plan: invalid sizes");
  std::vector<int> bands;
  for (int b = std::min(base_band, n_max); b < n_max; b *= 2) bands.push_back(b);
  bands.push_back(n_max);
  std::vector<SamplerSpec> plan;
  for (int b : bands) {
    auto rng = make_rng(seed, static_cast<std::uint32_t>(b));
    for (int j = 0; j < per_band; ++j) {
      SamplerSpec spec;
      spec.n_max = b;
      spec.s = s;
      spec.profile = kCycle[static_cast<std::size_t>(j) % kCycle.size()];
      spec.seed = rng();
      plan.push_back(spec);
    }
  }
  return plan;
}

}  // namespace pbo::est
