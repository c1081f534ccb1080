#include "pbo/gauge.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pbo/errors.hpp"
#include "pbo/fft.hpp"

namespace pbo {

cplx linear_phase(int n, double t) {
  // Reduce k t / 2pi to its fractional part in long double. A t that is the double
  // nearest to 2pi j is snapped to j turns, so that e^{itn|n|} is exactly 1 there.
  const long double k = static_cast<long double>(n) * std::abs(n);
  long double r = static_cast<long double>(t) / (2.0L * std::numbers::pi_v<long double>);
  const long double nearest = std::round(r);
  if (std::abs(r - nearest) <= 4.0L * std::numeric_limits<double>::epsilon() * std::max(1.0L, std::abs(r))) r = nearest;
  const long double turns = k * r;
  const long double frac = turns - std::floor(turns);
  if (frac == 0.0L) return {1.0, 0.0};
  const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * frac);
  return {std::cos(angle), std::sin(angle)};
}

namespace gauge {
namespace {

void require_real_mean_zero(const SpectralField& u, const char* who) {
  if (u.value(0) != cplx{}) throw DomainError(std::string(who) + ": field has nonzero mean");
  if (u.hermitian_defect() > 1e-12 * (1.0 + sobolev_norm(u, 0.0)))
    throw InputError(std::string(who) + ": field is not real");
}

std::size_t wrap(int n, int length) { return static_cast<std::size_t>(((n % length) + length) % length); }

}  // namespace

std::string ShiftRecord::description() const {
  std::ostringstream os;
  os << "u(t, x) -> u(t, x - 2 t m) - m with m = " << mean;
  return os.str();
}

std::pair<SpectralField, ShiftRecord> remove_mean(const SpectralField& u0) {
  SpectralField u = u0;
  const ShiftRecord rec{u0.value(0).real()};
  u[0] = 0.0;
  auto flags = u.flags();
  flags.is_mean_zero = true;
  u.set_flags(flags);
  return {u, rec};
}

SpectralField gauge_factor(const SpectralField& u, const GridSpec& out, double* tail_mass, double* unimodularity_defect) {
  require_real_mean_zero(u, "gauge_factor");
  const int length = fft::good_size(std::max({kExpOversampling * std::max(u.n_max(), out.n_max), 2 * out.n_max + 1, 1}));
  const SpectralField theta = apply_multiplier(u, MultiplierKind::dx_inv);

  std::vector<cplx> spec(static_cast<std::size_t>(length)), samples(spec.size());
  for (int n = -theta.n_max(); n <= theta.n_max(); ++n) spec[wrap(n, length)] = theta[n];
  fft::backward(spec, samples);
  double defect = 0.0;
  for (auto& z : samples) {
    z = std::polar(1.0, -z.real());
    defect = std::max(defect, std::abs(std::abs(z) - 1.0));
  }
  fft::forward(samples, spec);

  SpectralField V(out);
  const double scale = 1.0 / length;
  double total = 0.0, kept = 0.0;
  for (int j = 0; j < length; ++j) total += std::norm(spec[static_cast<std::size_t>(j)] * scale);
  for (int n = -out.n_max; n <= out.n_max; ++n) {
    V[n] = spec[wrap(n, length)] * scale;
    kept += std::norm(V[n]);
  }
  if (tail_mass) *tail_mass = std::sqrt(std::max(0.0, total - kept));
  if (unimodularity_defect) *unimodularity_defect = defect;
  return V;
}

GaugePair gauge_forward(const SpectralField& u) {
  GaugePair pair;
  pair.V = gauge_factor(u, u.grid(), &pair.tail_mass, &pair.unimodularity_defect);
  pair.v = cplx(0.0, 1.0) * apply_multiplier(pair.V, MultiplierKind::dhat);
  return pair;
}

SpectralField gauge_inverse(const GaugePair& pair) {
  const SpectralField& V = pair.V;
  SpectralField Vbar(V.grid());
  for (int n = -V.n_max(); n <= V.n_max(); ++n) Vbar[n] = std::conj(V[-n]);
  const SpectralField pv = apply_projection(pair.v, Projection::nonmean());
  SpectralField u = multiply(Vbar, pv, pair.v.grid());
  u.set_flags({});
  return u;
}

GaugePair pair_from_v(const SpectralField& v) {
  GaugePair pair;
  pair.v = v;
  pair.V = cplx(0.0, -1.0) * apply_multiplier(v, MultiplierKind::dhat_inv);
  return pair;
}

SpectralField v_by_definition(const SpectralField& u, const SpectralField& V) {
  SpectralField v = multiply(V, u, V.grid());
  v[0] += cplx(0.0, 1.0) * V[0];
  v.set_flags({});
  return v;
}

OmegaState omega_of(const SpectralField& v, double t) {
  OmegaState w = OmegaState::zeros(v.n_max(), t);
  for (int n = -v.n_max(); n <= v.n_max(); ++n) w(n) = linear_phase(n, t) * v[n];
  return w;
}

SpectralField v_of(const OmegaState& omega, const GridSpec& grid) {
  if (grid.n_max != omega.n_max()) throw InputError("v_of: grid band does not match omega");
  SpectralField v(grid);
  for (int n = -grid.n_max; n <= grid.n_max; ++n) v[n] = std::conj(linear_phase(n, omega.t)) * omega(n);
  return v;
}

SpectralField commutator_GN(const SpectralField& u, int cutoff) {
  if (cutoff < 0) throw InputError("commutator_GN: cutoff must be nonnegative");
  const GridSpec out = GridSpec::oversampled(2 * u.n_max());
  const SpectralField full = apply_multiplier(multiply(u, u, out), MultiplierKind::dx);
  const SpectralField uN = apply_projection(u, Projection::lowpass(cutoff));
  const SpectralField low = apply_multiplier(multiply(uN, uN, out), MultiplierKind::dx);
  return apply_projection(full, Projection::lowpass(cutoff)) - low;
}

ExpRatios lemma_exp_ratios(const SpectralField& f, const SpectralField& g, double s) {
  if (s < 0.0 || s > 1.0) throw InputError("lemma_exp_ratios: s must lie in [0, 1]");
  if (f.n_max() != g.n_max()) throw InputError("lemma_exp_ratios: band mismatch");
  // The exponential is resolved on four times the input band.
  const GridSpec wide = GridSpec::oversampled(4 * std::max(f.n_max(), 1));
  const SpectralField Vf = gauge_factor(f, wide);
  const double nf = sobolev_norm(f, s);
  ExpRatios r;
  r.growth = sobolev_norm(Vf, s + 1.0) / (1.0 + nf * nf);
  const double dfg = sobolev_norm(f - g, s);
  if (dfg > 0.0) {
    const SpectralField Vg = gauge_factor(g, wide);
    const double ng = sobolev_norm(g, s);
    r.difference = sobolev_norm(Vf - Vg, s + 1.0) / ((1.0 + nf * nf + ng * ng) * dfg);
  }
  return r;
}

}  // namespace gauge
}  // namespace pbo
