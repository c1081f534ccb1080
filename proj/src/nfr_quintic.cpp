#include <algorithm>

#include "nfr_kernels.hpp"
#include "pbo/errors.hpp"

namespace pbo::nfr::detail {
namespace {

constexpr cplx kI{0.0, 1.0};

struct Acc {
  std::vector<cplx> nr, zero, one, dzero;
  bool degenerate = false;
  explicit Acc(int nb) : nr(nb), zero(nb), one(nb), dzero(nb) {}
  void store(SexticOutputs& out, int idx) const {
    for (std::size_t b = 0; b < nr.size(); ++b) {
      out.nr.layers[b][static_cast<std::size_t>(idx)] = nr[b];
      out.zero.layers[b][static_cast<std::size_t>(idx)] = zero[b];
      out.one.layers[b][static_cast<std::size_t>(idx)] = one[b];
      out.dzero.layers[b][static_cast<std::size_t>(idx)] = dzero[b];
    }
  }
  void add(int b, cplx w1, i64 stacked, cplx p, cplx dp) {
    if (stacked == 0) {
      degenerate = true;
      return;
    }
    const cplx w2 = w1 / static_cast<double>(stacked);
    const auto ub = static_cast<std::size_t>(b);
    nr[ub] += kI * w1 * p;
    zero[ub] += w2 * p;
    one[ub] -= w2 * dp;
    dzero[ub] += w2 * (kI * static_cast<double>(stacked) * p + dp);
  }
};

SexticOutputs make_outputs(int nb, int n_max) {
  return {Layered(nb, n_max), Layered(nb, n_max), Layered(nb, n_max), Layered(nb, n_max)};
}

}  // namespace

SexticOutputs sextic_A1(const BandView& a, const BandView& d, double k, const Buckets& buckets) {
  const int n_max = a.n_max;
  const int nb = buckets.count();
  const double k2 = k * k;
  SexticOutputs out = make_outputs(nb, n_max);
  bool degenerate = false;

#pragma omp parallel for schedule(dynamic) reduction(|| : degenerate)
  for (int n = 1; n <= n_max; ++n) {
    Acc acc(nb);
    const int r2 = much_less_radius(k2, n);
    for (int n2 = -r2; n2 <= r2; ++n2) {
      for (int n1 = n + 1; n1 <= n_max; ++n1) {
        const int n3 = n - n1 - n2;
        if (n3 < -n_max || n3 > n_max || n3 == 0 || n1 + n2 == 0 || n1 + n3 == 0) continue;
        const i64 phi = mult::phase_raw(n, n1, n2, n3);
        const int b = buckets.bucket(phi);
        if (b == 0) continue;
        const cplx m = tilde_m1_on_support(n, n1, n2, n3);
        const cplx p23 = a[n2] * a.star(n3);
        const cplx dp23 = d[n2] * a.star(n3) + a[n2] * d.star(n3);
        const int r5 = std::min(n_max, much_less_radius(k2, n1));
        for (int n5 = -r5; n5 <= r5; ++n5) {
          for (int n4 = n1 + 1; n4 <= n_max; ++n4) {
            const int n6 = n1 - n4 - n5;
            if (n6 < -n_max || n6 > n_max || n6 == 0 || n4 + n5 == 0 || n4 + n6 == 0) continue;
            if (!mult::a1_first_branch_raw(k2, n, n1, n2, n3, n5, n6) && !mult::a1_second_branch_raw(k2, n, n1, n2, n3, n5, n6))
              continue;
            const cplx w1 = m * tilde_m1_on_support(n1, n4, n5, n6) / static_cast<double>(phi);
            const i64 phi1 = mult::phase_raw(n1, n4, n5, n6);
            const cplx q = a[n4] * a[n5] * a.star(n6);
            const cplx dq = d[n4] * a[n5] * a.star(n6) + a[n4] * d[n5] * a.star(n6) + a[n4] * a[n5] * d.star(n6);
            acc.add(b, w1, phi + phi1, p23 * q, dp23 * q + p23 * dq);
          }
        }
      }
    }
    acc.store(out, n + n_max);
    degenerate = degenerate || acc.degenerate;
  }
  if (degenerate) throw DomainError("stacked phase vanishes on a second-stage tuple");
  return out;
}

SexticOutputs sextic_A3(const BandView& a, const BandView& d, double k, const Buckets& buckets) {
  const int n_max = a.n_max;
  const int nb = buckets.count();
  const double k2 = k * k;
  SexticOutputs out = make_outputs(nb, n_max);
  bool degenerate = false;

#pragma omp parallel for schedule(dynamic) reduction(|| : degenerate)
  for (int n = 1; n <= n_max; ++n) {
    Acc acc(nb);
    const int r2 = much_less_radius(k2, n);
    for (int n2 = -r2; n2 <= r2; ++n2) {
      for (int n1 = n + 1; n1 <= n_max; ++n1) {
        const int n3 = n - n1 - n2;
        // The inner multiplier needs n3 < 0.
        if (n3 < -n_max || n3 >= 0 || n1 + n2 == 0 || n1 + n3 == 0) continue;
        if (!mult::bracket_much_less(k2, n2, n3)) continue;
        const i64 phi = mult::phase_raw(n, n1, n2, n3);
        const int b = buckets.bucket(phi);
        if (b == 0) continue;
        const cplx m = tilde_m1_on_support(n, n1, n2, n3);
        const cplx p12 = a[n1] * a[n2];
        const cplx dp12 = d[n1] * a[n2] + a[n1] * d[n2];
        const int r5 = std::min(n_max, much_less_radius(k2, n3));
        for (int n5 = -r5; n5 <= r5; ++n5) {
          // tilde m1^*(n3, n4, n5, n6) = conj(tilde m1(-n3, -n4, -n5, -n6)) needs n4 < n3.
          for (int n4 = -n_max; n4 < n3; ++n4) {
            const int n6 = n3 - n4 - n5;
            if (n6 < -n_max || n6 > n_max || n6 == 0 || n4 + n5 == 0 || n4 + n6 == 0) continue;
            if (!mult::a3_raw(k, n, n1, n2, n3, n4, n5, n6)) continue;
            const cplx w1 = m * std::conj(tilde_m1_on_support(-n3, -n4, -n5, -n6)) / static_cast<double>(phi);
            const i64 phi3 = mult::phase_raw(n3, n4, n5, n6);
            const cplx q = a.star(n4) * a.star(n5) * a[n6];
            const cplx dq = d.star(n4) * a.star(n5) * a[n6] + a.star(n4) * d.star(n5) * a[n6] + a.star(n4) * a.star(n5) * d[n6];
            acc.add(b, w1, phi + phi3, p12 * q, dp12 * q + p12 * dq);
          }
        }
      }
    }
    acc.store(out, n + n_max);
    degenerate = degenerate || acc.degenerate;
  }
  if (degenerate) throw DomainError("stacked phase vanishes on a second-stage tuple");
  return out;
}

}  // namespace pbo::nfr::detail
