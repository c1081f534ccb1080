#include "pbo/reference.hpp"

#include "pbo/gauge.hpp"

namespace pbo::reference {
namespace {

using mult::i64;
constexpr cplx kI{0.0, 1.0};

struct Band {
  const Sequence& s;
  int nm;
  explicit Band(const Sequence& seq) : s(seq), nm(static_cast<int>(seq.size() / 2)) {}
  bool in(i64 k) const { return k >= -nm && k <= nm; }
  cplx operator()(i64 k) const { return in(k) ? s[static_cast<std::size_t>(k + nm)] : cplx{}; }
  cplx star(i64 k) const { return std::conj((*this)(-k)); }
};

cplx eph(double t, i64 phi) { return std::polar(1.0, t * static_cast<double>(phi)); }
cplx star_m(int k, i64 n, i64 n1, i64 n2, i64 n3) {
  switch (k) {
    case 0: return std::conj(mult::tilde_m1_raw(-n, -n1, -n2, -n3));
    case 2: return std::conj(mult::m2_raw(-n, -n1, -n2, -n3));
    default: return std::conj(mult::m3_raw(-n, -n1, -n2, -n3));
  }
}

Sequence zeros(int nm) { return Sequence(static_cast<std::size_t>(2 * nm + 1)); }
cplx& at(Sequence& s, int n) { return s[s.size() / 2 + static_cast<std::size_t>(static_cast<long>(n))]; }

// Visits every (n1, n2, n3) in the band with n = n123.
template <class F>
void quads(int nm, int n, F&& f) {
  for (int n1 = -nm; n1 <= nm; ++n1)
    for (int n2 = -nm; n2 <= nm; ++n2) {
      const int n3 = n - n1 - n2;
      if (n3 < -nm || n3 > nm) continue;
      f(n1, n2, n3);
    }
}

// Outer sum of the first reduction: i sum_{|Phi| > M} e^{itPhi} tilde m1 / Phi * slots(n1, n2, n3).
template <class F>
Sequence outer_nr(const OmegaState& w, double M, F&& slots) {
  const int nm = w.n_max();
  Sequence out = zeros(nm);
  for (int n = 1; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const cplx m = mult::tilde_m1_raw(n, n1, n2, n3);
      const i64 phi = mult::phase_raw(n, n1, n2, n3);
      if (m == cplx{} || !(std::abs(static_cast<double>(phi)) > M)) return;
      at(out, n) += kI * eph(w.t, phi) * m / static_cast<double>(phi) * slots(n1, n2, n3);
    });
  return out;
}

enum class Part { complement, member, zero, one };

// Second-stage sums over n1 = n456.
Sequence n1_family(const OmegaState& w, const Sequence* dt, double M, const mult::ComparabilityConstant& K, Part part) {
  const int nm = w.n_max();
  const Band a(w.seq);
  const Sequence none = zeros(nm);
  const Band d(dt ? *dt : none);
  Sequence out = zeros(nm);
  for (int n = 1; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const cplx m = mult::tilde_m1_raw(n, n1, n2, n3);
      const i64 phi = mult::phase_raw(n, n1, n2, n3);
      if (m == cplx{} || !(std::abs(static_cast<double>(phi)) > M)) return;
      quads(nm, n1, [&](int n4, int n5, int n6) {
        const cplx mi = mult::tilde_m1_raw(n1, n4, n5, n6);
        if (mi == cplx{}) return;
        const mult::SexticIndex x{n, n1, n2, n3, n4, n5, n6, mult::SexticVariant::expand_n1};
        const bool inside = mult::in_A1(x, K);
        const i64 phi1 = mult::phase_raw(n1, n4, n5, n6);
        const cplx e = eph(w.t, phi + phi1);
        const cplx p = a(n2) * a.star(n3) * a(n4) * a(n5) * a.star(n6);
        switch (part) {
          case Part::complement:
            if (!inside) at(out, n) += kI * e * m * mi / static_cast<double>(phi) * p;
            break;
          case Part::member:
            if (inside) at(out, n) += kI * e * m * mi / static_cast<double>(phi) * p;
            break;
          case Part::zero:
            if (inside) at(out, n) += e * m * mi / (static_cast<double>(phi) * static_cast<double>(phi + phi1)) * p;
            break;
          case Part::one:
            if (inside) {
              const cplx dp = d(n2) * a.star(n3) * a(n4) * a(n5) * a.star(n6) + a(n2) * d.star(n3) * a(n4) * a(n5) * a.star(n6) +
                              a(n2) * a.star(n3) * d(n4) * a(n5) * a.star(n6) + a(n2) * a.star(n3) * a(n4) * d(n5) * a.star(n6) +
                              a(n2) * a.star(n3) * a(n4) * a(n5) * d.star(n6);
              at(out, n) -= e * m * mi / (static_cast<double>(phi) * static_cast<double>(phi + phi1)) * dp;
            }
            break;
        }
      });
    });
  return out;
}

// Second-stage sums over n3 = n456. The complement part follows the two-branch display.
Sequence n3_family(const OmegaState& w, const Sequence* dt, double M, const mult::ComparabilityConstant& K, Part part) {
  const int nm = w.n_max();
  const Band a(w.seq);
  const Sequence none = zeros(nm);
  const Band d(dt ? *dt : none);
  Sequence out = zeros(nm);
  for (int n = 1; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const cplx m = mult::tilde_m1_raw(n, n1, n2, n3);
      const i64 phi = mult::phase_raw(n, n1, n2, n3);
      if (m == cplx{} || !(std::abs(static_cast<double>(phi)) > M)) return;
      const bool second_branch = K.much_less(japanese(n2), japanese(n3));
      quads(nm, n3, [&](int n4, int n5, int n6) {
        const mult::SexticIndex x{n, n1, n2, n3, n4, n5, n6, mult::SexticVariant::expand_n3};
        const bool inside = mult::in_A3(x, K);
        const i64 phi3 = mult::phase_raw(n3, n4, n5, n6);
        const cplx e = eph(w.t, phi + phi3);
        const cplx m1s = star_m(0, n3, n4, n5, n6);
        if (m1s == cplx{} && part != Part::complement) return;
        const cplx p1 = a(n1) * a(n2) * a.star(n4) * a.star(n5) * a(n6);
        switch (part) {
          case Part::complement: {
            if (inside) return;
            cplx inner = m1s * p1;
            if (!second_branch)
              inner += star_m(2, n3, n4, n5, n6) * a(n1) * a(n2) * a.star(n4) * a(n5) * a.star(n6) +
                       star_m(3, n3, n4, n5, n6) * a(n1) * a(n2) * a(n4) * a.star(n5) * a.star(n6);
            at(out, n) += kI * e * m / static_cast<double>(phi) * inner;
            break;
          }
          case Part::member:
            if (inside) at(out, n) += kI * e * m * m1s / static_cast<double>(phi) * p1;
            break;
          case Part::zero:
            if (inside) at(out, n) += e * m * m1s / (static_cast<double>(phi) * static_cast<double>(phi + phi3)) * p1;
            break;
          case Part::one:
            if (inside) {
              const cplx dp = d(n1) * a(n2) * a.star(n4) * a.star(n5) * a(n6) + a(n1) * d(n2) * a.star(n4) * a.star(n5) * a(n6) +
                              a(n1) * a(n2) * d.star(n4) * a.star(n5) * a(n6) + a(n1) * a(n2) * a.star(n4) * d.star(n5) * a(n6) +
                              a(n1) * a(n2) * a.star(n4) * a.star(n5) * d(n6);
              at(out, n) -= e * m * m1s / (static_cast<double>(phi) * static_cast<double>(phi + phi3)) * dp;
            }
            break;
        }
      });
    });
  return out;
}

}  // namespace

Sequence N(const OmegaState& w) {
  const int nm = w.n_max();
  const Band a(w.seq);
  Sequence out = zeros(nm);
  for (int n = -nm; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const cplx e = eph(w.t, mult::phase_raw(n, n1, n2, n3));
      at(out, n) += e * (mult::tilde_m1_raw(n, n1, n2, n3) * a(n1) * a(n2) * a.star(n3) +
                         mult::m2_raw(n, n1, n2, n3) * a(n1) * a.star(n2) * a(n3) +
                         mult::m3_raw(n, n1, n2, n3) * a.star(n1) * a(n2) * a(n3));
    });
  return out;
}

Sequence R(const SpectralField& u, const OmegaState& w) {
  const int nm = w.n_max();
  const Band a(w.seq);
  Sequence out = zeros(nm);
  for (int n = -nm; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const i64 n12 = n1 + n2, n13 = n1 + n3;
      if (n12 * n13 != 0) return;
      at(out, n) += eph(w.t, mult::phase_raw(n, n1, n2, n3)) * mult::m1_raw(n, n1, n2, n3) * a(n1) * a(n2) * a.star(n3);
    });

  const Band uh(u.coeffs());
  const int wide = 2 * nm;
  const SpectralField V = gauge::gauge_factor(u, GridSpec::oversampled(wide));
  cplx mean_u2{};
  for (int k = -nm; k <= nm; ++k) mean_u2 += uh(k) * uh(-k);
  cplx mean_vw{};
  for (int k = -wide; k <= wide; ++k) {
    cplx wk = static_cast<double>(std::abs(k)) * uh(-k);
    for (int j = -nm; j <= nm; ++j) wk -= uh(j) * uh(-k - j);
    mean_vw += V[k] * wk;
  }
  for (int n = -nm; n <= nm; ++n) {
    cplx fr = -mean_u2 * (n == 0 ? cplx(1.0) : cplx(0.0, n)) * V[n];
    if (n == 0) fr -= mean_vw;
    at(out, n) += linear_phase(n, w.t) * fr;
  }
  return out;
}

Sequence N_R(const OmegaState& w, double M) {
  const int nm = w.n_max();
  const Band a(w.seq);
  Sequence out = zeros(nm);
  for (int n = 1; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const i64 phi = mult::phase_raw(n, n1, n2, n3);
      if (std::abs(static_cast<double>(phi)) <= M)
        at(out, n) += eph(w.t, phi) * mult::tilde_m1_raw(n, n1, n2, n3) * a(n1) * a(n2) * a.star(n3);
    });
  return out;
}

Sequence N_NR(const OmegaState& w, double M) {
  const int nm = w.n_max();
  const Band a(w.seq);
  Sequence out = zeros(nm);
  for (int n = 1; n <= nm; ++n)
    quads(nm, n, [&](int n1, int n2, int n3) {
      const i64 phi = mult::phase_raw(n, n1, n2, n3);
      if (std::abs(static_cast<double>(phi)) > M)
        at(out, n) += eph(w.t, phi) * mult::tilde_m1_raw(n, n1, n2, n3) * a(n1) * a(n2) * a.star(n3);
    });
  return out;
}

Sequence N0(const OmegaState& w, double M) {
  const Band a(w.seq);
  Sequence out = outer_nr(w, M, [&](int n1, int n2, int n3) { return a(n1) * a(n2) * a.star(n3); });
  for (auto& z : out) z *= -1.0;
  return out;
}

Sequence N1(const OmegaState& w, double M) {
  const Band a(w.seq);
  const Sequence nw = N(w);
  const Band nb(nw);
  return outer_nr(w, M, [&](int n1, int n2, int n3) { return nb(n1) * a(n2) * a.star(n3); });
}

Sequence N2(const OmegaState& w, double M) {
  const Band a(w.seq);
  const Sequence nw = N(w);
  const Band nb(nw);
  return outer_nr(w, M, [&](int n1, int n2, int n3) { return a(n1) * nb(n2) * a.star(n3); });
}

Sequence N3(const OmegaState& w, double M) {
  const int nm = w.n_max();
  const Band a(w.seq);
  return outer_nr(w, M, [&](int n1, int n2, int n3) {
    cplx inner{};
    quads(nm, n3, [&](int n4, int n5, int n6) {
      const cplx e = eph(w.t, mult::phase_raw(n3, n4, n5, n6));
      inner += e * (star_m(0, n3, n4, n5, n6) * a.star(n4) * a.star(n5) * a(n6) +
                    star_m(2, n3, n4, n5, n6) * a.star(n4) * a(n5) * a.star(n6) +
                    star_m(3, n3, n4, n5, n6) * a(n4) * a.star(n5) * a.star(n6));
    });
    return a(n1) * a(n2) * inner;
  });
}

Sequence R1(const SpectralField& u, const OmegaState& w, double M) {
  const Band a(w.seq);
  const Sequence rw = R(u, w);
  const Band rb(rw);
  return outer_nr(w, M, [&](int n1, int n2, int n3) {
    return rb(n1) * a(n2) * a.star(n3) + a(n1) * rb(n2) * a.star(n3) + a(n1) * a(n2) * rb.star(n3);
  });
}

Sequence N1R(const OmegaState& w, double M, const mult::ComparabilityConstant& K) {
  return n1_family(w, nullptr, M, K, Part::complement);
}
Sequence N1NR(const OmegaState& w, double M, const mult::ComparabilityConstant& K) {
  return n1_family(w, nullptr, M, K, Part::member);
}
Sequence N10(const OmegaState& w, double M, const mult::ComparabilityConstant& K) {
  return n1_family(w, nullptr, M, K, Part::zero);
}
Sequence N11(const OmegaState& w, const Sequence& dt_w, double M, const mult::ComparabilityConstant& K) {
  return n1_family(w, &dt_w, M, K, Part::one);
}
Sequence N3R(const OmegaState& w, double M, const mult::ComparabilityConstant& K) {
  return n3_family(w, nullptr, M, K, Part::complement);
}
Sequence N3NR(const OmegaState& w, double M, const mult::ComparabilityConstant& K) {
  return n3_family(w, nullptr, M, K, Part::member);
}
Sequence N30(const OmegaState& w, double M, const mult::ComparabilityConstant& K) {
  return n3_family(w, nullptr, M, K, Part::zero);
}
Sequence N31(const OmegaState& w, const Sequence& dt_w, double M, const mult::ComparabilityConstant& K) {
  return n3_family(w, &dt_w, M, K, Part::one);
}

}  // namespace pbo::reference
