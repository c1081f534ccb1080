#pragma once

// Truncated Fourier representation of 2pi-periodic functions.
//
// Convention: coeffs(n) = (1/2pi) int_0^{2pi} f(x) e^{-inx} dx, and
// f(x) = sum_n coeffs(n) e^{inx}. Coefficient norms therefore give the
// constant function norm 1; the physical L^2 norm is sqrt(2pi) times the
// coefficient l^2 norm.

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace pbo {

using cplx = std::complex<double>;

/// Dense storage for a band [-n_max, n_max]; index of frequency n is n + n_max.
using Sequence = std::vector<cplx>;

/// <n> = (1 + n^2)^{1/2}.
inline double japanese(double n) { return std::sqrt(1.0 + n * n); }

/// <n>^s.
inline double sobolev_weight(double n, double s) { return std::pow(1.0 + n * n, 0.5 * s); }

struct GridSpec {
  int n_max = 0;
  int grid_points = 1;

  GridSpec() = default;
  /// Throws InputError unless n_max >= 0 and grid_points >= 2 n_max + 1.
  GridSpec(int n_max, int grid_points);

  /// Band n_max on an FFT-friendly grid of at least factor * n_max points
  /// (never fewer than 2 n_max + 1).
  static GridSpec oversampled(int n_max, int factor = 4);

  int band_size() const { return 2 * n_max + 1; }
  bool operator==(const GridSpec&) const = default;
};

struct FieldFlags {
  bool is_real = false;       // coeffs(-n) == conj(coeffs(n))
  bool is_mean_zero = false;  // coeffs(0) == 0
  bool operator==(const FieldFlags&) const = default;
};

class SpectralField {
 public:
  SpectralField() : SpectralField(GridSpec{}) {}
  explicit SpectralField(const GridSpec& grid, FieldFlags flags = {});
  SpectralField(const GridSpec& grid, Sequence coeffs, FieldFlags flags = {});

  const GridSpec& grid() const { return grid_; }
  int n_max() const { return grid_.n_max; }
  const FieldFlags& flags() const { return flags_; }
  void set_flags(FieldFlags flags) { flags_ = flags; }

  /// Coefficient at n; zero outside the band.
  cplx value(int n) const {
    return (n < -grid_.n_max || n > grid_.n_max) ? cplx{} : coeffs_[static_cast<std::size_t>(n + grid_.n_max)];
  }
  /// In-band access; n must satisfy |n| <= n_max.
  cplx& operator[](int n) { return coeffs_[static_cast<std::size_t>(n + grid_.n_max)]; }
  const cplx& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n + grid_.n_max)]; }

  const Sequence& coeffs() const { return coeffs_; }
  Sequence& coeffs() { return coeffs_; }

  /// max_n |coeffs(-n) - conj(coeffs(n))|.
  double hermitian_defect() const;
  /// Replace coeffs(n) by (coeffs(n) + conj(coeffs(-n)))/2 and mark real.
  SpectralField& make_real();

  /// Same coefficients on a different band/grid (truncating or zero-padding).
  SpectralField on_grid(const GridSpec& grid) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(cplx scale);

 private:
  GridSpec grid_;
  Sequence coeffs_;
  FieldFlags flags_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cplx scale, SpectralField a);

/// Field with the given Hermitian-symmetric coefficients built from n >= 1
/// entries (positive[k] is the coefficient of n = k + 1); mean zero.
SpectralField real_field_from_positive(const GridSpec& grid, std::span<const cplx> positive);

/// Discrete analogue of the coefficient integral on x_j = 2 pi j / grid_points.
/// Exact for band-limited input. Throws InputError on a length mismatch.
SpectralField analyze(std::span<const cplx> samples, const GridSpec& grid);

/// Physical samples on grid.grid_points equispaced nodes.
std::vector<cplx> synthesize(const SpectralField& field);

enum class ProjectionKind { plus, minus, mean, nonmean, lowpass, highpass };

struct Projection {
  ProjectionKind kind;
  int cutoff = 0;  // N for lowpass (|n| <= N) / highpass (|n| > N)

  static Projection plus() { return {ProjectionKind::plus}; }
  static Projection minus() { return {ProjectionKind::minus}; }
  static Projection mean() { return {ProjectionKind::mean}; }
  static Projection nonmean() { return {ProjectionKind::nonmean}; }
  static Projection lowpass(int n) { return {ProjectionKind::lowpass, n}; }
  static Projection highpass(int n) { return {ProjectionKind::highpass, n}; }
};

bool projection_keeps(const Projection& p, int n);
SpectralField apply_projection(const SpectralField& field, const Projection& p);

enum class MultiplierKind { hilbert, dx, dx_inv, dhat, dhat_inv };

/// Fourier symbol of the multiplier at n.
cplx multiplier_symbol(MultiplierKind kind, int n);
/// Throws DomainError for dx_inv on a field with nonzero mean coefficient.
SpectralField apply_multiplier(const SpectralField& field, MultiplierKind kind);

enum class NormExponent { one, two, infinity };

struct NormParams {
  double s = 0.0;
  NormExponent p = NormExponent::two;
};

/// Which frequencies of a band sequence participate in a norm.
enum class Support { all, positive };

/// ||<n>^s seq||_{l^p} for a band sequence of odd length 2 n_max + 1.
double weighted_seq_norm(std::span<const cplx> seq, const NormParams& params, Support support = Support::all);
/// (sum <n>^{2s} |coeffs(n)|^2)^{1/2}.
double sobolev_norm(const SpectralField& field, double s);

/// Physical norms with the 2pi-periodic measure dx (not normalized).
double physical_l2_norm(std::span<const cplx> samples);
double physical_l1_norm(std::span<const cplx> samples);

/// Exact band-limited product a*b restricted to |n| <= out.n_max; the
/// transform length is chosen so that no alias reaches the output band.
SpectralField multiply(const SpectralField& a, const SpectralField& b, const GridSpec& out);

/// Apply f pointwise on `grid_points` samples of `field`, then analyze and
/// truncate to `out`. Not exact for non-polynomial f; aliasing falls off
/// with the oversampling ratio.
SpectralField map_pointwise(const SpectralField& field, const std::function<cplx(cplx)>& f, int grid_points,
                            const GridSpec& out);

}  // namespace pbo
