#include "doctest.h"
#include "pbo/errors.hpp"
#include "pbo/nfr.hpp"
#include "pbo/reference.hpp"
#include "support.hpp"

using namespace pbo;
using namespace pbo::nfr;
using testing::l2;
using testing::rel_diff;

namespace {

constexpr int kBand = 8;
constexpr double kTol = 1e-12;

struct Case {
  double K;
  double M;
  double t;
};

void check_all(const Case& c, unsigned seed) {
  const OmegaState w = testing::random_omega(kBand, seed, 0.3, c.t);
  const SpectralField u = testing::random_real(kBand, kBand, seed + 100);
  NFRConfig cfg;
  cfg.M = c.M;
  cfg.K = mult::ComparabilityConstant(c.K);
  const auto terms = evaluate_terms(&u, w, cfg, kAllTerms);
  const Sequence dt = omega_rhs(u, w);

  auto expect = [&](TermId id, const Sequence& ref) {
    CAPTURE(term_name(id));
    CAPTURE(l2(ref));
    CHECK(rel_diff(terms.at(id).seq, ref) < kTol);
  };
  expect(TermId::N, reference::N(w));
  expect(TermId::R, reference::R(u, w));
  expect(TermId::N_R, reference::N_R(w, c.M));
  expect(TermId::N_NR, reference::N_NR(w, c.M));
  expect(TermId::N0, reference::N0(w, c.M));
  expect(TermId::N1, reference::N1(w, c.M));
  expect(TermId::N2, reference::N2(w, c.M));
  expect(TermId::N3, reference::N3(w, c.M));
  expect(TermId::R1, reference::R1(u, w, c.M));
  expect(TermId::N1R, reference::N1R(w, c.M, cfg.K));
  expect(TermId::N1NR, reference::N1NR(w, c.M, cfg.K));
  expect(TermId::N10, reference::N10(w, c.M, cfg.K));
  expect(TermId::N11, reference::N11(w, dt, c.M, cfg.K));
  expect(TermId::N3R, reference::N3R(w, c.M, cfg.K));
  expect(TermId::N3NR, reference::N3NR(w, c.M, cfg.K));
  expect(TermId::N30, reference::N30(w, c.M, cfg.K));
  expect(TermId::N31, reference::N31(w, dt, c.M, cfg.K));
}

}  // namespace

TEST_CASE("fast evaluators match nested-loop sums, default K") {
  check_all({8.0, 4.0, 0.0}, 1);
  check_all({8.0, 16.0, 0.37}, 2);
}

TEST_CASE("fast evaluators match nested-loop sums, small K populates A1 and A3") {
  for (unsigned seed : {3u, 4u}) check_all({2.0, 4.0, 0.61}, seed);
  check_all({2.5, 10.0, 1.3}, 5);
  check_all({2.0, 0.5, 2.0}, 6);
  check_all({3.0, 1.0, 0.2}, 7);
}

TEST_CASE("small K makes the second-stage terms non-trivial") {
  const OmegaState w = testing::random_omega(kBand, 9, 0.3);
  NFRConfig cfg;
  cfg.M = 4.0;
  cfg.K = mult::ComparabilityConstant(2.0);
  CHECK(l2(term_N10(w, cfg).seq) > 1e-3);
  CHECK(l2(term_N30(w, cfg).seq) > 1e-3);
  CHECK(l2(split_N1(w, cfg).first.seq) > 1e-3);
}

TEST_CASE("positive-frequency terms vanish for n <= 0") {
  const OmegaState w = testing::random_omega(kBand, 11);
  NFRConfig cfg;
  cfg.M = 2.0;
  cfg.K = mult::ComparabilityConstant(2.0);
  const auto terms = evaluate_terms(nullptr, w, cfg, std::array{TermId::N0, TermId::N1, TermId::N10, TermId::N30, TermId::N3R});
  for (const auto& [id, v] : terms)
    for (int n = -kBand; n <= 0; ++n) CHECK(v(n) == cplx{});
}

TEST_CASE("a vanishing stacked phase is reported, not divided by") {
  OmegaState w = OmegaState::zeros(kBand);
  for (auto& z : w.seq) z = 1.0;
  NFRConfig cfg;
  cfg.M = 0.5;
  cfg.K = mult::ComparabilityConstant(1.5);
  CHECK_THROWS_AS(term_N30(w, cfg), DomainError);
}
