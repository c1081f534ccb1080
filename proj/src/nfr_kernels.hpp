#pragma once

// Pruned, phase-stripped kernels behind the public term evaluators.
//
// Every sum is carried out on a(k) = e^{-itk|k|} omega(k) (and likewise for
// substituted sequences), which turns e^{itPhi} omega1 omega2 omega3^* into
// E(n) a1 a2 a3^* with E(n) = e^{itn|n|}; the caller applies E(n) once per
// output. Outer quads are enumerated on the support of tilde m1 only, where
// n1 > n > 0 and n23 < 0.

#include <cstdint>
#include <span>
#include <vector>

#include "pbo/fourier.hpp"
#include "pbo/multiplier.hpp"

namespace pbo::nfr::detail {

using i64 = std::int64_t;

/// View of a band sequence with signed indexing.
struct BandView {
  const cplx* mid = nullptr;
  int n_max = 0;

  BandView() = default;
  explicit BandView(const Sequence& s) : mid(s.data() + s.size() / 2), n_max(static_cast<int>(s.size() / 2)) {}
  cplx operator[](int k) const { return mid[k]; }
  cplx star(int k) const { return std::conj(mid[-k]); }
};

/// tilde m1 on its support (n > 0, n1 > n, n23 < 0, n3 != 0, n12 n13 != 0 assumed):
/// 2i n n23 / (n1 nhat(n2)).
inline cplx tilde_m1_on_support(int n, int n1, int n2, int n3) {
  const double c = 2.0 * n * static_cast<double>(n2 + n3) / static_cast<double>(n1);
  return n2 != 0 ? cplx(0.0, c / n2) : cplx(-c, 0.0);
}

/// Calls f(n1, n2, n3) for every quad in the band with tilde m1(n, .) != 0.
template <class F>
inline void for_each_m1_quad(int n_max, int n, F&& f) {
  for (int n1 = n + 1; n1 <= n_max; ++n1) {
    const int n23 = n - n1;
    const int lo = std::max(-n_max, n23 - n_max), hi = std::min(n_max, n23 + n_max);
    for (int n2 = lo; n2 <= hi; ++n2) {
      const int n3 = n23 - n2;
      if (n3 == 0 || n1 + n2 == 0 || n1 + n3 == 0) continue;
      f(n1, n2, n3);
    }
  }
}

/// Threshold list M_0 < M_1 < ...; bucket(phi) counts thresholds strictly below |phi|,
/// so a tuple is non-resonant for M_k iff bucket > k.
class Buckets {
 public:
  explicit Buckets(std::span<const double> thresholds);
  int count() const { return static_cast<int>(m_.size()) + 1; }
  int bucket(i64 phi) const {
    const double a = std::abs(static_cast<double>(phi));
    int b = 0;
    while (b < static_cast<int>(m_.size()) && m_[static_cast<std::size_t>(b)] < a) ++b;
    return b;
  }
  std::size_t thresholds() const { return m_.size(); }

 private:
  std::vector<double> m_;
};

/// Per-bucket partial sums: layers[b] holds the band sequence of tuples in bucket b.
struct Layered {
  std::vector<Sequence> layers;

  Layered() = default;
  Layered(int buckets, int n_max) : layers(static_cast<std::size_t>(buckets), Sequence(static_cast<std::size_t>(2 * n_max + 1))) {}
  /// Sum over buckets > k (non-resonant part for threshold k).
  Sequence above(std::size_t k) const;
  /// Sum over buckets <= k (resonant part for threshold k).
  Sequence at_or_below(std::size_t k) const;
};

enum class PhaseWeight { unit, inverse };

/// One weighted cubic form: sum tilde m1 w(Phi) x(n1) y(n2) z^*(n3).
struct CubicTriple {
  BandView x, y, z;
};

/// Stripped sums over the support of tilde m1 for n > 0, one Layered per triple.
std::vector<Layered> cubic_m1(int n_max, std::span<const CubicTriple> triples, PhaseWeight w, const Buckets& buckets);

/// Stripped full N over the whole band: tilde m1, m2 and m3 families.
/// With `majorant`, every summand is replaced by its modulus.
Sequence cubic_full_N(const BandView& a, bool majorant = false);

/// Stripped degenerate sum of m1 1{n12 n13 = 0} a1 a2 a3^*.
Sequence cubic_degenerate(const BandView& a);

/// Outputs of the second-stage passes; each layered by the outer threshold.
struct SexticOutputs {
  Layered nr;     // i w1 P
  Layered zero;   // w2 P
  Layered one;    // -w2 dP
  Layered dzero;  // analytic time derivative of the zero term
};

/// Expand slot 1 over A1: w1 = tilde m1 tilde m1' / Phi, w2 = w1 / (Phi + Phi1).
/// d is the stripped time derivative of omega.
SexticOutputs sextic_A1(const BandView& a, const BandView& d, double k, const Buckets& buckets);
/// Expand slot 3 over A3 with inner multiplier tilde m1^*.
SexticOutputs sextic_A3(const BandView& a, const BandView& d, double k, const Buckets& buckets);

/// Largest m >= 0 with K<m> < <b> (k2 = K^2), or -1 if there is none.
int much_less_radius(double k2, i64 b);

}  // namespace pbo::nfr::detail
