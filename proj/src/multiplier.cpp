#include "pbo/multiplier.hpp"

#include <numeric>

#include "pbo/errors.hpp"
#include "pbo/fourier.hpp"

namespace pbo::mult {
namespace {

void require_valid(const QuadIndex& q) {
  if (!q.valid()) throw InputError("quad index violates n = n1 + n2 + n3");
}

void require_variant(const SexticIndex& x, SexticVariant v) {
  if (!x.valid()) throw InputError("sextic index violates its constraints");
  if (x.variant != v) throw InputError("sextic index has the wrong variant for this set");
}

double bracket(i64 n) { return japanese(static_cast<double>(n)); }

}  // namespace

bool SexticIndex::valid() const {
  if (n != n1 + n2 + n3) return false;
  return variant == SexticVariant::expand_n1 ? n1 == n4 + n5 + n6 : n3 == n4 + n5 + n6;
}

QuadIndex SexticIndex::inner() const {
  return {variant == SexticVariant::expand_n1 ? n1 : n3, n4, n5, n6};
}

ComparabilityConstant::ComparabilityConstant(double k) : k_(k) {
  if (!(k > 1.0)) throw InputError("comparability constant K must exceed 1");
}

cplx multiplier(int k, const QuadIndex& q) {
  require_valid(q);
  switch (k) {
    case 1: return m1_raw(q.n, q.n1, q.n2, q.n3);
    case 2: return m2_raw(q.n, q.n1, q.n2, q.n3);
    case 3: return m3_raw(q.n, q.n1, q.n2, q.n3);
    default: throw InputError("multiplier family must be 1, 2 or 3");
  }
}

cplx tilde_m1(const QuadIndex& q) {
  require_valid(q);
  return tilde_m1_raw(q.n, q.n1, q.n2, q.n3);
}

cplx star_multiplier(int k, const QuadIndex& q) {
  const QuadIndex neg = q.negated();
  return std::conj(k == 0 ? tilde_m1(neg) : multiplier(k, neg));
}

i64 phase(const QuadIndex& q) {
  require_valid(q);
  return phase_raw(q.n, q.n1, q.n2, q.n3);
}

i64 sub_phase(const SexticIndex& x) {
  if (!x.valid()) throw InputError("sextic index violates its constraints");
  const QuadIndex in = x.inner();
  return phase_raw(in.n, in.n1, in.n2, in.n3);
}

std::optional<PhaseFactorization> phase_case_identity(const QuadIndex& q) {
  require_valid(q);
  if (!tilde_m1_support(q.n, q.n1, q.n2, q.n3)) return std::nullopt;
  const i64 n12 = q.n1 + q.n2, n13 = q.n1 + q.n3, n23 = q.n2 + q.n3;
  if (q.n2 >= 0 && q.n3 < 0) return PhaseFactorization{PhaseCase::n2_nonneg_n3_neg, 2 * n13 * n23};
  if (q.n2 < 0 && q.n3 >= 0) return PhaseFactorization{PhaseCase::n2_neg_n3_nonneg, 2 * n12 * n23};
  // n23 < 0 excludes n2, n3 >= 0, so both are negative here.
  return PhaseFactorization{PhaseCase::both_neg, 2 * (q.n * n23 - q.n2 * q.n3)};
}

Rational Rational::make(i64 num, i64 den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) num = -num, den = -den;
  const i64 g = std::gcd(num < 0 ? -num : num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  // Operands here stay far below 2^31, so the cross products cannot overflow.
  return num * o.den <=> o.num * den;
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

std::optional<Rational> phase_lower_bound_ratio(const QuadIndex& q) {
  require_valid(q);
  if (!tilde_m1_support(q.n, q.n1, q.n2, q.n3)) return std::nullopt;
  const i64 abs_phase = std::abs(phase_raw(q.n, q.n1, q.n2, q.n3));
  const i64 n23 = std::abs(q.n2 + q.n3);
  const i64 other = std::abs(q.n2) >= std::abs(q.n3) ? std::abs(q.n1 + q.n2) : std::abs(q.n1 + q.n3);
  return Rational::make(abs_phase, other * n23);
}

double multiplier_bound_ratio(int k, const QuadIndex& q) {
  const double m = std::abs(multiplier(k, q));
  if (m == 0.0) return 0.0;
  const double lo = std::min({bracket(q.n1), bracket(q.n2), bracket(q.n3)});
  return m * lo / bracket(q.n);
}

bool in_A1_first_branch(const SexticIndex& x, const ComparabilityConstant& k) {
  require_variant(x, SexticVariant::expand_n1);
  return a1_first_branch_raw(k.value() * k.value(), x.n, x.n1, x.n2, x.n3, x.n5, x.n6);
}

bool in_A1_second_branch(const SexticIndex& x, const ComparabilityConstant& k) {
  require_variant(x, SexticVariant::expand_n1);
  return a1_second_branch_raw(k.value() * k.value(), x.n, x.n1, x.n2, x.n3, x.n5, x.n6);
}

bool in_A1(const SexticIndex& x, const ComparabilityConstant& k) {
  return in_A1_first_branch(x, k) || in_A1_second_branch(x, k);
}

bool in_A3(const SexticIndex& x, const ComparabilityConstant& k) {
  require_variant(x, SexticVariant::expand_n3);
  return a3_raw(k.value(), x.n, x.n1, x.n2, x.n3, x.n4, x.n5, x.n6);
}

std::optional<double> stacked_phase_ratio(const SexticIndex& x, const ComparabilityConstant& k) {
  const i64 outer = phase(x.outer());
  const i64 inner = sub_phase(x);
  if (x.variant == SexticVariant::expand_n1) {
    if (!in_A1(x, k)) throw InputError("stacked_phase_ratio: tuple is not in A1");
    if (inner == 0) return std::nullopt;
    return std::abs(static_cast<double>(outer + inner)) / std::abs(static_cast<double>(inner));
  }
  if (!in_A3(x, k)) throw InputError("stacked_phase_ratio: tuple is not in A3");
  const i64 denom = std::abs(x.n3) * std::abs(x.n1 + x.n4);
  if (denom == 0) return std::nullopt;
  return std::abs(static_cast<double>(outer + inner)) / static_cast<double>(denom);
}

}  // namespace pbo::mult
