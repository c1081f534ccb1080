#pragma once

// Exact algebra of the cubic interaction: the multipliers m1, m2, m3 of the
// gauged equation, the resonance function, its factorization on the support
// of m1, and the comparability sets used by the second reduction.
//
// Frequencies are integers; phases are computed in exact 64-bit arithmetic
// (safe for |n_i| <= 2^20). Multipliers are double-precision complex.

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace pbo::mult {

using cplx = std::complex<double>;
using i64 = std::int64_t;

/// (n, n1, n2, n3) with n = n1 + n2 + n3.
struct QuadIndex {
  i64 n = 0, n1 = 0, n2 = 0, n3 = 0;

  static QuadIndex from_parts(i64 n1, i64 n2, i64 n3) { return {n1 + n2 + n3, n1, n2, n3}; }
  bool valid() const { return n == n1 + n2 + n3; }
  QuadIndex negated() const { return {-n, -n1, -n2, -n3}; }
};

/// Which outer slot of a quad is expanded into (n4, n5, n6).
enum class SexticVariant { expand_n1, expand_n3 };

/// (n, n1, ..., n6) with n = n1 + n2 + n3 and n_j = n4 + n5 + n6 for the expanded slot j.
struct SexticIndex {
  i64 n = 0, n1 = 0, n2 = 0, n3 = 0, n4 = 0, n5 = 0, n6 = 0;
  SexticVariant variant = SexticVariant::expand_n1;

  bool valid() const;
  QuadIndex outer() const { return {n, n1, n2, n3}; }
  /// (n_j, n4, n5, n6) for the expanded slot.
  QuadIndex inner() const;
};

/// Reads a << b as K a < b and a >~ b as a >= b / K.
class ComparabilityConstant {
 public:
  explicit ComparabilityConstant(double k = 8.0);
  double value() const { return k_; }
  bool much_less(double a, double b) const { return k_ * a < b; }
  bool gtrsim(double a, double b) const { return a >= b / k_; }

 private:
  double k_;
};

/// nhat(n) = n for n != 0 and -i for n = 0.
inline cplx nhat(i64 n) { return n != 0 ? cplx(static_cast<double>(n), 0.0) : cplx(0.0, -1.0); }

/// k |k|.
inline i64 signed_square(i64 k) { return k < 0 ? -k * k : k * k; }

/// n|n| - n1|n1| - n2|n2| - n3|n3|.
inline i64 phase_raw(i64 n, i64 n1, i64 n2, i64 n3) {
  return signed_square(n) - signed_square(n1) - signed_square(n2) - signed_square(n3);
}

// Unchecked evaluators (n == n1 + n2 + n3 assumed); used inside kernels.
inline cplx m1_raw(i64 n, i64 n1, i64 n2, i64 n3) {
  if (!(n > 0 && n2 + n3 < 0 && n3 != 0)) return {};
  return cplx(0.0, 2.0 * static_cast<double>(n) * static_cast<double>(n2 + n3)) / (nhat(n1) * nhat(n2));
}
inline cplx m2_raw(i64 n, i64 n1, i64 n2, i64 n3) {
  if (!(n < 0 && n2 + n3 > 0 && n3 != 0)) return {};
  return cplx(0.0, 2.0 * static_cast<double>(n) * static_cast<double>(n2 + n3)) / (nhat(n1) * nhat(n2));
}
inline cplx m3_raw(i64 n, i64 n1, i64 n2, i64 n3) {
  if (!(n < 0 && n2 != 0 && n3 != 0)) return {};
  return cplx(0.0, 2.0 * static_cast<double>(n)) / nhat(n1);
}
inline cplx tilde_m1_raw(i64 n, i64 n1, i64 n2, i64 n3) {
  if ((n1 + n2) == 0 || (n1 + n3) == 0) return {};
  return m1_raw(n, n1, n2, n3);
}
/// Support test for tilde m1 without evaluating it.
inline bool tilde_m1_support(i64 n, i64 n1, i64 n2, i64 n3) {
  return n > 0 && n2 + n3 < 0 && n3 != 0 && n1 + n2 != 0 && n1 + n3 != 0;
}

// K<a> < <b>, compared through squares.
inline bool bracket_much_less(double k2, i64 a, i64 b) {
  return k2 * (1.0 + static_cast<double>(a) * static_cast<double>(a)) < 1.0 + static_cast<double>(b) * static_cast<double>(b);
}

// Unchecked set tests on raw frequencies; k2 is K^2.
inline bool a1_first_branch_raw(double k2, i64 n, i64 n1, i64 n2, i64 n3, i64 n5, i64 n6) {
  return bracket_much_less(k2, n2, n) && !bracket_much_less(k2, n2, n3) && bracket_much_less(k2, n5, n1) &&
         bracket_much_less(k2, n5, n6) && bracket_much_less(k2, n2, n6);
}
inline bool a1_second_branch_raw(double k2, i64 n, i64 n1, i64 n2, i64 n3, i64 n5, i64 n6) {
  return bracket_much_less(k2, n2, n) && bracket_much_less(k2, n2, n3) && bracket_much_less(k2, n5, n1) &&
         bracket_much_less(k2, n5, n6);
}
inline bool a3_raw(double k, i64 n, i64 n1, i64 n2, i64 n3, i64 n4, i64 n5, i64 n6) {
  const double k2 = k * k;
  if (!(bracket_much_less(k2, n2, n) && bracket_much_less(k2, n2, n3))) return false;
  if (!(bracket_much_less(k2, n5, n3) && bracket_much_less(k2, n5, n6))) return false;
  const double n25 = std::abs(static_cast<double>(n2 + n5));
  const double n14 = std::abs(static_cast<double>(n1 + n4));
  if (!(k * n25 < n14)) return false;
  return k * std::abs(static_cast<double>(n)) * n25 < std::abs(static_cast<double>(n3)) * n14;
}

/// Multiplier family index k in {1, 2, 3}; throws InputError otherwise or
/// when the quad violates n = n1 + n2 + n3.
cplx multiplier(int k, const QuadIndex& q);
cplx tilde_m1(const QuadIndex& q);
/// m_k^*(q) = conj(m_k(-q)); k = 0 selects tilde m1.
cplx star_multiplier(int k, const QuadIndex& q);

i64 phase(const QuadIndex& q);
/// Phase of the expanded slot: n_j|n_j| - n4|n4| - n5|n5| - n6|n6|.
i64 sub_phase(const SexticIndex& x);

enum class PhaseCase {
  n2_nonneg_n3_neg,  // 2 n13 n23
  n2_neg_n3_nonneg,  // 2 n12 n23
  both_neg,          // 2 (n n23 - n2 n3)
};

struct PhaseFactorization {
  PhaseCase tag;
  i64 value;
};

/// Factored form of the phase on the support of tilde m1; empty off-support.
std::optional<PhaseFactorization> phase_case_identity(const QuadIndex& q);

/// Nonnegative rational with positive denominator, kept in lowest terms.
struct Rational {
  i64 num = 0;
  i64 den = 1;

  static Rational make(i64 num, i64 den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::strong_ordering operator<=>(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};

/// |Phi| / (|n12||n23|) if |n2| >= |n3|, else |Phi| / (|n13||n23|); empty off the support of tilde m1.
std::optional<Rational> phase_lower_bound_ratio(const QuadIndex& q);

/// |m_k(q)| min_j <n_j> / <n>.
double multiplier_bound_ratio(int k, const QuadIndex& q);

/// Membership in the two branches of A1 (expand_n1 sextics only; InputError otherwise).
bool in_A1_first_branch(const SexticIndex& x, const ComparabilityConstant& k);
bool in_A1_second_branch(const SexticIndex& x, const ComparabilityConstant& k);
bool in_A1(const SexticIndex& x, const ComparabilityConstant& k);
/// Membership in A3 (expand_n3 sextics only). Tuples with n3 n14 = 0 never belong.
bool in_A3(const SexticIndex& x, const ComparabilityConstant& k);

/// |Phi + Phi1| / |Phi1| on A1 (expand_n1), or |Phi + Phi3| / (|n3||n14|) on A3
/// (expand_n3; empty when n3 n14 = 0). Throws InputError when x is not a
/// member of the set for its variant.
std::optional<double> stacked_phase_ratio(const SexticIndex& x, const ComparabilityConstant& k);

}  // namespace pbo::mult
