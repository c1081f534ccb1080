#include "doctest.h"
#include "pbo/errors.hpp"
#include "pbo/multiplier.hpp"

using namespace pbo::mult;

TEST_CASE("nhat") {
  CHECK(nhat(0) == cplx(0, -1));
  CHECK(nhat(5) == cplx(5, 0));
  CHECK(nhat(-3) == cplx(-3, 0));
}

TEST_CASE("multiplier values") {
  const QuadIndex q{1, 3, -1, -1};
  CHECK(std::abs(multiplier(1, q) - cplx(0, 4.0 / 3.0)) < 1e-15);
  CHECK(std::abs(tilde_m1(q) - cplx(0, 4.0 / 3.0)) < 1e-15);
  CHECK(multiplier(1, QuadIndex::from_parts(-2, 1, -1)) == cplx{});
  CHECK(multiplier(3, {-2, -1, -1, 0}) == cplx{});
  CHECK_THROWS_AS(multiplier(1, {1, 1, 1, 1}), pbo::InputError);
  CHECK_THROWS_AS(multiplier(4, q), pbo::InputError);
  // tilde m1 drops n12 n13 = 0
  CHECK(multiplier(1, {1, 2, -2, 1}) != cplx{});
  CHECK(tilde_m1({1, 2, -2, 1}) == cplx{});
  for (int k = 1; k <= 3; ++k) {
    const QuadIndex r{-5, -2, 4, -7};
    CHECK(star_multiplier(k, r) == std::conj(multiplier(k, r.negated())));
  }
}

TEST_CASE("phase and its factorization") {
  CHECK(phase({1, 3, -1, -1}) == -6);
  CHECK(phase({4, 4, 0, 0}) == 0);
  CHECK(phase({2, 3, 1, -2}) == -2);

  auto a = phase_case_identity({2, 3, 1, -2});
  REQUIRE(a);
  CHECK(a->tag == PhaseCase::n2_nonneg_n3_neg);
  CHECK(a->value == -2);
  auto b = phase_case_identity({1, 3, -1, -1});
  REQUIRE(b);
  CHECK(b->tag == PhaseCase::both_neg);
  CHECK(b->value == -6);
  auto c = phase_case_identity({2, 4, -3, 1});
  REQUIRE(c);
  CHECK(c->tag == PhaseCase::n2_neg_n3_nonneg);
  CHECK(c->value == -4);
  CHECK(phase({2, 4, -3, 1}) == -4);
  CHECK_FALSE(phase_case_identity({-1, 1, -1, -1}));
}

TEST_CASE("lower-bound and multiplier ratios") {
  CHECK(*phase_lower_bound_ratio({2, 3, 1, -2}) == Rational::make(2, 1));
  CHECK(*phase_lower_bound_ratio({1, 3, -1, -1}) == Rational::make(3, 2));
  CHECK_FALSE(phase_lower_bound_ratio({-1, 1, -1, -1}));
  CHECK(multiplier_bound_ratio(1, {1, 3, -1, -1}) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(multiplier_bound_ratio(2, {1, 3, -1, -1}) == 0.0);
}

TEST_CASE("comparability sets") {
  const ComparabilityConstant k8;
  // n2 = 0 small, n = n3 = 1000-ish, n5 = 0, n1 and n6 large.
  SexticIndex x;
  x.variant = SexticVariant::expand_n1;
  x.n2 = 0;
  x.n3 = -900;
  x.n1 = 1500;
  x.n = x.n1 + x.n2 + x.n3;
  x.n5 = 0;
  x.n4 = 2400;
  x.n6 = x.n1 - x.n4 - x.n5;
  REQUIRE(x.valid());
  CHECK(in_A1_second_branch(x, k8));
  CHECK(in_A1(x, k8));
  auto r = stacked_phase_ratio(x, k8);
  REQUIRE(r);
  CHECK(*r > 1.0);

  SexticIndex y = x;
  y.n5 = y.n1;
  y.n4 = 1;
  y.n6 = y.n1 - y.n4 - y.n5;
  CHECK_FALSE(in_A1_first_branch(y, k8));
  CHECK_FALSE(in_A1_second_branch(y, k8));
  CHECK_THROWS_AS(stacked_phase_ratio(y, k8), pbo::InputError);

  SexticIndex z = x;
  z.variant = SexticVariant::expand_n3;
  CHECK_THROWS_AS(in_A1(z, k8), pbo::InputError);
  CHECK_THROWS_AS(in_A3(x, k8), pbo::InputError);

  // n25 = 0 only requires n14 != 0
  SexticIndex w;
  w.variant = SexticVariant::expand_n3;
  w.n2 = 1;
  w.n1 = 500;
  w.n3 = -400;
  w.n = w.n1 + w.n2 + w.n3;
  w.n5 = -1;
  w.n4 = -1000;
  w.n6 = w.n3 - w.n4 - w.n5;
  REQUIRE(w.valid());
  CHECK(in_A3(w, k8));
  w.n4 = -500;
  w.n6 = w.n3 - w.n4 - w.n5;
  CHECK_FALSE(in_A3(w, k8));
}
