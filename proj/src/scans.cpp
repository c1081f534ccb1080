#include <algorithm>
#include <cmath>
#include <limits>

#include "pbo/errors.hpp"
#include "pbo/estimates.hpp"

namespace pbo::est {
namespace {

using mult::i64;

constexpr double kInf = std::numeric_limits<double>::infinity();

double bracket(i64 n) { return std::sqrt(1.0 + static_cast<double>(n) * static_cast<double>(n)); }

RatioReport finish(Bound b, int n_max, std::size_t count, double lo, double hi, std::size_t violations) {
  RatioReport r;
  r.lemma = std::string(bound_name(b));
  r.kind = "scan";
  r.n_max = n_max;
  r.samples = count;
  r.min = count ? lo : 0.0;
  r.max = count ? hi : 0.0;
  r.median = 0.0;
  r.violations = violations;
  if (count) r.frozen = (b == Bound::multiplier) ? r.max : r.min;
  return r;
}

RatioReport scan_multiplier(int N) {
  double lo = kInf, hi = 0.0;
  std::size_t count = 0;
#pragma omp parallel for schedule(dynamic) reduction(min : lo) reduction(max : hi) reduction(+ : count)
  for (int n1 = -N; n1 <= N; ++n1) {
    for (int n2 = -N; n2 <= N; ++n2) {
      for (int n3 = -N; n3 <= N; ++n3) {
        const i64 n = n1 + n2 + n3;
        if (n < -N || n > N) continue;
        const double mn = std::min({bracket(n1), bracket(n2), bracket(n3)}) / bracket(n);
        for (auto m : {mult::m1_raw(n, n1, n2, n3), mult::m2_raw(n, n1, n2, n3), mult::m3_raw(n, n1, n2, n3)}) {
          if (m == cplx{}) continue;
          const double r = std::abs(m) * mn;
          lo = std::min(lo, r);
          hi = std::max(hi, r);
          ++count;
        }
      }
    }
  }
  return finish(Bound::multiplier, N, count, lo, hi, 0);
}


RatioReport scan_claim_phi(int N) {
  double lo = kInf, hi = 0.0;
  std::size_t count = 0, bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(min : lo) reduction(max : hi) reduction(+ : count, bad)
  for (int n1 = -N; n1 <= N; ++n1) {
    for (int n2 = -N; n2 <= N; ++n2) {
      for (int n3 = -N; n3 <= N; ++n3) {
        const i64 n = n1 + n2 + n3;
        if (n < -N || n > N || !mult::tilde_m1_support(n, n1, n2, n3)) continue;
        const mult::QuadIndex q{n, n1, n2, n3};
        const auto fac = mult::phase_case_identity(q);
        if (!fac || fac->value != mult::phase(q)) ++bad;
        const double r = mult::phase_lower_bound_ratio(q)->value();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++count;
      }
    }
  }
  return finish(Bound::claim_phi, N, count, lo, hi, bad);
}

RatioReport scan_m1_sign(int N) {
  std::size_t count = 0, bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : count, bad)
  for (int n1 = -N; n1 <= N; ++n1) {
    for (int n2 = -N; n2 <= N; ++n2) {
      for (int n3 = -N; n3 <= N; ++n3) {
        const i64 n = n1 + n2 + n3;
        if (n < -N || n > N) continue;
        if (mult::tilde_m1_raw(n, n1, n2, n3) == cplx{}) continue;
        ++count;
        if (!(n1 > n && n > 0 && n2 + n3 < 0)) ++bad;
      }
    }
  }
  return finish(Bound::m1_sign, N, count, 0.0, 0.0, bad);
}

RatioReport scan_a1(int N, const mult::ComparabilityConstant& K) {
  const double k2 = K.value() * K.value();
  double lo = kInf, hi = 0.0;
  std::size_t count = 0, bad = 0;
#pragma omp parallel for schedule(dynamic) reduction(min : lo) reduction(max : hi) reduction(+ : count, bad)
  for (int n = 1; n <= N; ++n) {
    for (int n2 = -N; n2 <= N; ++n2) {
      if (!mult::bracket_much_less(k2, n2, n)) continue;
      for (int n1 = n + 1; n1 <= N; ++n1) {
        const int n3 = n - n1 - n2;
        if (n3 < -N || n3 > N || !mult::tilde_m1_support(n, n1, n2, n3)) continue;
        const i64 phi = mult::phase_raw(n, n1, n2, n3);
        for (int n5 = -N; n5 <= N; ++n5) {
          if (!mult::bracket_much_less(k2, n5, n1)) continue;
          for (int n4 = n1 + 1; n4 <= N; ++n4) {
            const int n6 = n1 - n4 - n5;
            if (n6 < -N || n6 > N || !mult::tilde_m1_support(n1, n4, n5, n6)) continue;
            const bool second = mult::a1_second_branch_raw(k2, n, n1, n2, n3, n5, n6);
            if (!second && !mult::a1_first_branch_raw(k2, n, n1, n2, n3, n5, n6)) continue;
            const i64 phi1 = mult::phase_raw(n1, n4, n5, n6);
            if (second && !(phi * phi1 > 0)) ++bad;
            if (phi1 == 0) continue;
            const double r = std::abs(static_cast<double>(phi + phi1)) / std::abs(static_cast<double>(phi1));
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            ++count;
          }
        }
      }
    }
  }
  return finish(Bound::a1_stacked, N, count, lo, hi, bad);
}

RatioReport scan_a3(int N, const mult::ComparabilityConstant& K) {
  const double k2 = K.value() * K.value();
  double lo = kInf, hi = 0.0;
  std::size_t count = 0;
#pragma omp parallel for schedule(dynamic) reduction(min : lo) reduction(max : hi) reduction(+ : count)
  for (int n = 1; n <= N; ++n) {
    for (int n2 = -N; n2 <= N; ++n2) {
      if (!mult::bracket_much_less(k2, n2, n)) continue;
      for (int n1 = n + 1; n1 <= N; ++n1) {
        const int n3 = n - n1 - n2;
        if (n3 < -N || n3 > N || !mult::tilde_m1_support(n, n1, n2, n3)) continue;
        const i64 phi = mult::phase_raw(n, n1, n2, n3);
        for (int n5 = -N; n5 <= N; ++n5) {
          if (!mult::bracket_much_less(k2, n5, n3)) continue;
          for (int n4 = -N; n4 <= N; ++n4) {
            const int n6 = n3 - n4 - n5;
            if (n6 < -N || n6 > N || !mult::tilde_m1_support(-n3, -n4, -n5, -n6)) continue;
            if (!mult::a3_raw(K.value(), n, n1, n2, n3, n4, n5, n6)) continue;
            const i64 phi3 = mult::phase_raw(n3, n4, n5, n6);
            const double den = std::abs(static_cast<double>(n3)) * std::abs(static_cast<double>(n1 + n4));
            if (den == 0.0) continue;
            const double r = std::abs(static_cast<double>(phi + phi3)) / den;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            ++count;
          }
        }
      }
    }
  }
  return finish(Bound::a3_stacked, N, count, lo, hi, 0);
}

}  // namespace

std::string_view bound_name(Bound b) {
  switch (b) {
    case Bound::multiplier: return "bd-multiplier";
    case Bound::claim_phi: return "claim-Phi";
    case Bound::a1_stacked: return "A1-stacked";
    case Bound::a3_stacked: return "A3-stacked";
    case Bound::m1_sign: return "m1-sign-implications";
  }
  return "?";
}

Bound parse_bound(std::string_view name) {
  for (auto b : {Bound::multiplier, Bound::claim_phi, Bound::a1_stacked, Bound::a3_stacked, Bound::m1_sign})
    if (bound_name(b) == name) return b;
  throw InputError("unknown bound: " + std::string(name));
}

RatioReport exhaustive_bound_scan(Bound b, int n_max, const mult::ComparabilityConstant& K) {
  if (n_max < 1) throw InputError("exhaustive_bound_scan: n_max must be positive");
  const bool sextic = b == Bound::a1_stacked || b == Bound::a3_stacked;
  if (n_max > (sextic ? 64 : 256)) throw InputError("exhaustive_bound_scan: box too large");
  switch (b) {
    case Bound::multiplier: return scan_multiplier(n_max);
    case Bound::claim_phi: return scan_claim_phi(n_max);
    case Bound::m1_sign: return scan_m1_sign(n_max);
    case Bound::a1_stacked: return scan_a1(n_max, K);
    case Bound::a3_stacked: return scan_a3(n_max, K);
  }
  throw InputError("unknown bound");
}

}  // namespace pbo::est
