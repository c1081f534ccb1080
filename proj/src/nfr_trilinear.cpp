#include <algorithm>

#include "nfr_kernels.hpp"
#include "pbo/errors.hpp"

namespace pbo::nfr::detail {

Buckets::Buckets(std::span<const double> thresholds) : m_(thresholds.begin(), thresholds.end()) {
  if (m_.empty()) throw InputError("at least one resonance threshold is required");
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (!(m_[i] > 0.0)) throw InputError("resonance thresholds must be positive");
    if (i > 0 && !(m_[i] > m_[i - 1])) throw InputError("resonance thresholds must be strictly increasing");
  }
}

Sequence Layered::above(std::size_t k) const {
  Sequence out(layers.front().size());
  for (std::size_t b = k + 1; b < layers.size(); ++b)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += layers[b][i];
  return out;
}

Sequence Layered::at_or_below(std::size_t k) const {
  Sequence out(layers.front().size());
  for (std::size_t b = 0; b <= k && b < layers.size(); ++b)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += layers[b][i];
  return out;
}

int much_less_radius(double k2, i64 b) {
  if (!mult::bracket_much_less(k2, 0, b)) return -1;
  i64 m = 0;
  while (mult::bracket_much_less(k2, m + 1, b)) ++m;
  return static_cast<int>(m);
}

std::vector<Layered> cubic_m1(int n_max, std::span<const CubicTriple> triples, PhaseWeight w, const Buckets& buckets) {
  const int nb = buckets.count();
  const int nt = static_cast<int>(triples.size());
  std::vector<Layered> out(triples.size(), Layered(nb, n_max));

#pragma omp parallel for schedule(dynamic)
  for (int n = 1; n <= n_max; ++n) {
    std::vector<cplx> acc(static_cast<std::size_t>(nb * nt));
    for_each_m1_quad(n_max, n, [&](int n1, int n2, int n3) {
      const i64 phi = mult::phase_raw(n, n1, n2, n3);
      const int b = buckets.bucket(phi);
      cplx c = tilde_m1_on_support(n, n1, n2, n3);
      if (w == PhaseWeight::inverse) {
        if (b == 0) return;  // only non-resonant tuples carry 1/Phi
        c /= static_cast<double>(phi);
      }
      for (int j = 0; j < nt; ++j) {
        const auto& tr = triples[static_cast<std::size_t>(j)];
        acc[static_cast<std::size_t>(b * nt + j)] += c * tr.x[n1] * tr.y[n2] * tr.z.star(n3);
      }
    });
    for (int j = 0; j < nt; ++j)
      for (int b = 0; b < nb; ++b)
        out[static_cast<std::size_t>(j)].layers[static_cast<std::size_t>(b)][static_cast<std::size_t>(n + n_max)] =
            acc[static_cast<std::size_t>(b * nt + j)];
  }
  return out;
}

Sequence cubic_full_N(const BandView& a, bool majorant) {
  const int n_max = a.n_max;
  Sequence out(static_cast<std::size_t>(2 * n_max + 1));
  auto term = [majorant](cplx m, cplx x, cplx y, cplx z) {
    return majorant ? cplx(std::abs(m) * std::abs(x) * std::abs(y) * std::abs(z)) : m * x * y * z;
  };

#pragma omp parallel for schedule(dynamic)
  for (int n = -n_max; n <= n_max; ++n) {
    cplx acc{};
    if (n > 0) {
      for_each_m1_quad(n_max, n, [&](int n1, int n2, int n3) {
        acc += term(tilde_m1_on_support(n, n1, n2, n3), a[n1], a[n2], a.star(n3));
      });
    } else if (n < 0) {
      // m2: n1 < n < 0 < n23.
      for (int n1 = -n_max; n1 < n; ++n1) {
        const int n23 = n - n1;
        const int lo = std::max(-n_max, n23 - n_max), hi = std::min(n_max, n23 + n_max);
        for (int n2 = lo; n2 <= hi; ++n2) {
          const int n3 = n23 - n2;
          if (n3 == 0) continue;
          const double c = 2.0 * n * static_cast<double>(n23) / static_cast<double>(n1);
          const cplx m = n2 != 0 ? cplx(0.0, c / n2) : cplx(-c, 0.0);
          acc += term(m, a[n1], a.star(n2), a[n3]);
        }
      }
      // m3: any n1, n2 n3 != 0.
      for (int n1 = -n_max; n1 <= n_max; ++n1) {
        const int n23 = n - n1;
        const int lo = std::max(-n_max, n23 - n_max), hi = std::min(n_max, n23 + n_max);
        const cplx m = cplx(0.0, 2.0 * n) / mult::nhat(n1);
        cplx inner{};
        for (int n2 = lo; n2 <= hi; ++n2) {
          const int n3 = n23 - n2;
          if (n2 == 0 || n3 == 0) continue;
          inner += majorant ? cplx(std::abs(a[n2]) * std::abs(a[n3])) : a[n2] * a[n3];
        }
        acc += term(m, a.star(n1), inner, 1.0);
      }
    }
    out[static_cast<std::size_t>(n + n_max)] = acc;
  }
  return out;
}

Sequence cubic_degenerate(const BandView& a) {
  const int n_max = a.n_max;
  Sequence out(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = 1; n <= n_max; ++n) {
    cplx acc{};
    for (int n1 = n + 1; n1 <= n_max; ++n1) {
      acc += mult::m1_raw(n, n1, -n1, n) * a[n1] * a[-n1] * a.star(n);  // n12 = 0
      acc += mult::m1_raw(n, n1, n, -n1) * a[n1] * a[n] * a.star(-n1);  // n13 = 0
    }
    out[static_cast<std::size_t>(n + n_max)] = acc;
  }
  return out;
}

}  // namespace pbo::nfr::detail
