#include "pbo/fourier.hpp"

#include <algorithm>
#include <numbers>

#include "pbo/errors.hpp"
#include "pbo/fft.hpp"

namespace pbo {
namespace {

std::size_t wrap(int n, int length) { return static_cast<std::size_t>(((n % length) + length) % length); }

std::vector<cplx> synthesize_on(const SpectralField& field, int length) {
  if (length < field.grid().band_size()) throw InputError("synthesize: grid too coarse for band");
  std::vector<cplx> spectrum(static_cast<std::size_t>(length)), samples(spectrum.size());
  for (int n = -field.n_max(); n <= field.n_max(); ++n) spectrum[wrap(n, length)] = field[n];
  fft::backward(spectrum, samples);
  return samples;
}

// Coefficients |n| <= out.n_max of samples of arbitrary length L >= 2 out.n_max + 1.
SpectralField analyze_on(std::span<const cplx> samples, const GridSpec& out) {
  const int length = static_cast<int>(samples.size());
  if (length < out.band_size()) throw InputError("analyze: too few samples for band");
  std::vector<cplx> spectrum(samples.size());
  fft::forward(samples, spectrum);
  SpectralField field(out);
  const double scale = 1.0 / length;
  for (int n = -out.n_max; n <= out.n_max; ++n) field[n] = spectrum[wrap(n, length)] * scale;
  return field;
}

}  // namespace

GridSpec::GridSpec(int n_max_, int grid_points_) : n_max(n_max_), grid_points(grid_points_) {
  if (n_max < 0) throw InputError("GridSpec: n_max must be nonnegative");
  if (grid_points < 2 * n_max + 1) throw InputError("GridSpec: grid_points must be >= 2 n_max + 1");
}

GridSpec GridSpec::oversampled(int n_max, int factor) {
  return GridSpec(n_max, fft::good_size(std::max(factor * n_max, 2 * n_max + 1)));
}

SpectralField::SpectralField(const GridSpec& grid, FieldFlags flags)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.band_size())), flags_(flags) {}

SpectralField::SpectralField(const GridSpec& grid, Sequence coeffs, FieldFlags flags)
    : grid_(grid), coeffs_(std::move(coeffs)), flags_(flags) {
  if (coeffs_.size() != static_cast<std::size_t>(grid.band_size()))
    throw InputError("SpectralField: coefficient count does not match band");
}

double SpectralField::hermitian_defect() const {
  double defect = 0.0;
  for (int n = 0; n <= n_max(); ++n) defect = std::max(defect, std::abs((*this)[-n] - std::conj((*this)[n])));
  return defect;
}

SpectralField& SpectralField::make_real() {
  for (int n = 0; n <= n_max(); ++n) {
    const cplx sym = 0.5 * ((*this)[n] + std::conj((*this)[-n]));
    (*this)[n] = sym;
    (*this)[-n] = std::conj(sym);
  }
  flags_.is_real = true;
  return *this;
}

SpectralField SpectralField::on_grid(const GridSpec& grid) const {
  SpectralField out(grid, flags_);
  const int m = std::min(grid.n_max, n_max());
  for (int n = -m; n <= m; ++n) out[n] = (*this)[n];
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.n_max() != n_max()) throw InputError("SpectralField: band mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  flags_.is_real = flags_.is_real && other.flags_.is_real;
  flags_.is_mean_zero = flags_.is_mean_zero && other.flags_.is_mean_zero;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.n_max() != n_max()) throw InputError("SpectralField: band mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  flags_.is_real = flags_.is_real && other.flags_.is_real;
  flags_.is_mean_zero = flags_.is_mean_zero && other.flags_.is_mean_zero;
  return *this;
}

SpectralField& SpectralField::operator*=(cplx scale) {
  for (auto& c : coeffs_) c *= scale;
  flags_.is_real = flags_.is_real && scale.imag() == 0.0;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(cplx scale, SpectralField a) { return a *= scale; }

SpectralField real_field_from_positive(const GridSpec& grid, std::span<const cplx> positive) {
  SpectralField field(grid, FieldFlags{.is_real = true, .is_mean_zero = true});
  const int m = std::min<int>(grid.n_max, static_cast<int>(positive.size()));
  for (int n = 1; n <= m; ++n) {
    field[n] = positive[static_cast<std::size_t>(n - 1)];
    field[-n] = std::conj(field[n]);
  }
  return field;
}

SpectralField analyze(std::span<const cplx> samples, const GridSpec& grid) {
  if (samples.size() != static_cast<std::size_t>(grid.grid_points))
    throw InputError("analyze: sample count does not match grid_points");
  return analyze_on(samples, grid);
}

std::vector<cplx> synthesize(const SpectralField& field) { return synthesize_on(field, field.grid().grid_points); }

bool projection_keeps(const Projection& p, int n) {
  switch (p.kind) {
    case ProjectionKind::plus: return n > 0;
    case ProjectionKind::minus: return n < 0;
    case ProjectionKind::mean: return n == 0;
    case ProjectionKind::nonmean: return n != 0;
    case ProjectionKind::lowpass: return std::abs(n) <= p.cutoff;
    case ProjectionKind::highpass: return std::abs(n) > p.cutoff;
  }
  return false;
}

SpectralField apply_projection(const SpectralField& field, const Projection& p) {
  if ((p.kind == ProjectionKind::lowpass || p.kind == ProjectionKind::highpass) && p.cutoff < 0)
    throw InputError("apply_projection: cutoff must be nonnegative");
  SpectralField out(field.grid(), field.flags());
  for (int n = -field.n_max(); n <= field.n_max(); ++n)
    if (projection_keeps(p, n)) out[n] = field[n];
  auto flags = field.flags();
  if (p.kind == ProjectionKind::plus || p.kind == ProjectionKind::minus) flags.is_real = false;
  flags.is_mean_zero = flags.is_mean_zero || !projection_keeps(p, 0);
  out.set_flags(flags);
  return out;
}

cplx multiplier_symbol(MultiplierKind kind, int n) {
  const double k = n;
  switch (kind) {
    case MultiplierKind::hilbert: return n == 0 ? cplx{} : cplx{0.0, n > 0 ? -1.0 : 1.0};
    case MultiplierKind::dx: return {0.0, k};
    case MultiplierKind::dx_inv: return n == 0 ? cplx{} : 1.0 / cplx{0.0, k};
    case MultiplierKind::dhat: return n == 0 ? cplx{1.0} : cplx{0.0, k};
    case MultiplierKind::dhat_inv: return n == 0 ? cplx{1.0} : 1.0 / cplx{0.0, k};
  }
  return {};
}

SpectralField apply_multiplier(const SpectralField& field, MultiplierKind kind) {
  if (kind == MultiplierKind::dx_inv && field.value(0) != cplx{})
    throw DomainError("dx_inv: field has nonzero mean");
  SpectralField out(field.grid());
  for (int n = -field.n_max(); n <= field.n_max(); ++n) out[n] = multiplier_symbol(kind, n) * field[n];
  auto flags = field.flags();
  if (kind == MultiplierKind::hilbert || kind == MultiplierKind::dx || kind == MultiplierKind::dx_inv)
    flags.is_mean_zero = true;
  out.set_flags(flags);
  return out;
}

double weighted_seq_norm(std::span<const cplx> seq, const NormParams& params, Support support) {
  if (seq.size() % 2 == 0) throw InputError("weighted_seq_norm: band sequence must have odd length");
  const int n_max = static_cast<int>(seq.size() / 2);
  double acc = 0.0;
  for (int n = (support == Support::positive ? 1 : -n_max); n <= n_max; ++n) {
    const double a = sobolev_weight(n, params.s) * std::abs(seq[static_cast<std::size_t>(n + n_max)]);
    switch (params.p) {
      case NormExponent::one: acc += a; break;
      case NormExponent::two: acc += a * a; break;
      case NormExponent::infinity: acc = std::max(acc, a); break;
    }
  }
  return params.p == NormExponent::two ? std::sqrt(acc) : acc;
}

double sobolev_norm(const SpectralField& field, double s) {
  return weighted_seq_norm(field.coeffs(), {.s = s, .p = NormExponent::two});
}

double physical_l2_norm(std::span<const cplx> samples) {
  double acc = 0.0;
  for (const auto& z : samples) acc += std::norm(z);
  return std::sqrt(2.0 * std::numbers::pi * acc / static_cast<double>(samples.size()));
}

double physical_l1_norm(std::span<const cplx> samples) {
  double acc = 0.0;
  for (const auto& z : samples) acc += std::abs(z);
  return 2.0 * std::numbers::pi * acc / static_cast<double>(samples.size());
}

SpectralField multiply(const SpectralField& a, const SpectralField& b, const GridSpec& out) {
  const int length = fft::good_size(std::max(a.n_max() + b.n_max() + out.n_max + 1, 2 * std::max(a.n_max(), b.n_max()) + 1));
  auto fa = synthesize_on(a, length);
  const auto fb = synthesize_on(b, length);
  for (std::size_t j = 0; j < fa.size(); ++j) fa[j] *= fb[j];
  auto product = analyze_on(fa, out);
  if (a.flags().is_real && b.flags().is_real) product.make_real();
  return product;
}

SpectralField map_pointwise(const SpectralField& field, const std::function<cplx(cplx)>& f, int grid_points,
                            const GridSpec& out) {
  auto samples = synthesize_on(field, grid_points);
  for (auto& z : samples) z = f(z);
  return analyze_on(samples, out);
}

}  // namespace pbo
