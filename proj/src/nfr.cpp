#include "pbo/nfr.hpp"

#include <cstring>
#include <set>

#include "nfr_kernels.hpp"
#include "pbo/errors.hpp"
#include "pbo/gauge.hpp"

namespace pbo::nfr {
namespace {

using detail::BandView;
using detail::Buckets;
using detail::CubicTriple;
using detail::PhaseWeight;

constexpr cplx kI{0.0, 1.0};

constexpr std::array<std::string_view, 19> kNames = {"N",   "N_R",  "N_NR", "R",   "N0",  "N1",  "N2",
                                                     "N3",  "R1",   "N1R",  "N1NR", "N10", "N11", "N3R",
                                                     "N3NR", "N30", "N31",  "Nagg0", "Nagg1"};

Sequence strip(const Sequence& seq, double t) {
  const int nm = static_cast<int>(seq.size() / 2);
  Sequence out(seq.size());
  for (int n = -nm; n <= nm; ++n)
    out[static_cast<std::size_t>(n + nm)] = std::conj(linear_phase(n, t)) * seq[static_cast<std::size_t>(n + nm)];
  return out;
}

Sequence unstrip(Sequence seq, double t) {
  const int nm = static_cast<int>(seq.size() / 2);
  for (int n = -nm; n <= nm; ++n) seq[static_cast<std::size_t>(n + nm)] *= linear_phase(n, t);
  return seq;
}

Sequence& axpy(Sequence& y, cplx a, const Sequence& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

Sequence scaled(cplx a, const Sequence& x) {
  Sequence y(x.size());
  return axpy(y, a, x);
}

double l2_positive(const Sequence& s) { return weighted_seq_norm(s, {.s = 0.0}, Support::positive); }

int resolve_band(const OmegaState& omega, const NFRConfig& cfg) {
  cfg.validate();
  if (omega.seq.size() % 2 == 0 || omega.seq.empty()) throw InputError("omega must have odd length 2 n_max + 1");
  if (cfg.n_max != 0 && cfg.n_max != omega.n_max()) throw InputError("NFRConfig n_max does not match omega");
  return omega.n_max();
}

void check_u(const SpectralField& u, int n_max) {
  if (u.n_max() != n_max) throw InputError("u and omega must share the band");
  if (u.value(0) != cplx{}) throw DomainError("u must have zero mean");
}

/// Fourier coefficients of -P_c(u^2) dhat V - P_c[V (H dx u - u^2)] on the band of u.
Sequence r_of_u(const SpectralField& u) {
  const int nm = u.n_max();
  const GridSpec wide = GridSpec::oversampled(2 * nm);
  const SpectralField V = gauge::gauge_factor(u, wide);
  const SpectralField u2 = multiply(u, u, wide);
  cplx mean_u2{};
  for (int k = -nm; k <= nm; ++k) mean_u2 += u[k] * u[-k];
  // w = H dx u - u^2 on the doubled band; H dx has symbol |n|.
  SpectralField w = -1.0 * u2;
  for (int k = -nm; k <= nm; ++k) w[k] += static_cast<double>(std::abs(k)) * u[k];
  cplx mean_vw{};
  for (int k = -wide.n_max; k <= wide.n_max; ++k) mean_vw += V[k] * w[-k];
  Sequence out(static_cast<std::size_t>(2 * nm + 1));
  for (int n = -nm; n <= nm; ++n) out[static_cast<std::size_t>(n + nm)] = -mean_u2 * multiplier_symbol(MultiplierKind::dhat, n) * V[n];
  out[static_cast<std::size_t>(nm)] -= mean_vw;
  return out;
}

/// Stripped script R: degenerate cubic sum plus F[R[u]].
Sequence stripped_R(const SpectralField& u, const Sequence& a) {
  Sequence sr = detail::cubic_degenerate(BandView(a));
  const Sequence fr = r_of_u(u);
  for (std::size_t i = 0; i < sr.size(); ++i) sr[i] += fr[i];
  return sr;
}

std::set<TermId> expand(std::span<const TermId> ids) {
  std::set<TermId> want(ids.begin(), ids.end());
  if (want.count(TermId::Nagg0)) want.insert({TermId::N0, TermId::N10, TermId::N30});
  if (want.count(TermId::Nagg1))
    want.insert({TermId::R, TermId::N_R, TermId::R1, TermId::N1R, TermId::N11, TermId::N2, TermId::N3R, TermId::N31});
  if (want.count(TermId::N1R)) want.insert({TermId::N1, TermId::N1NR});
  if (want.count(TermId::N3R)) want.insert({TermId::N3, TermId::N3NR});
  return want;
}

}  // namespace

std::string_view term_name(TermId id) { return kNames[static_cast<std::size_t>(id)]; }

TermId parse_term_id(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return kAllTerms[i];
  throw InputError("unknown term id: " + std::string(name));
}

bool positive_only(TermId id) { return id != TermId::N && id != TermId::R; }

bool needs_u(TermId id) {
  switch (id) {
    case TermId::R:
    case TermId::R1:
    case TermId::N11:
    case TermId::N31:
    case TermId::Nagg1: return true;
    default: return false;
  }
}

void NFRConfig::validate() const {
  if (!(M > 0.0)) throw ConfigError("resonance threshold M must be positive");
  if (n_max < 0) throw ConfigError("n_max must be nonnegative");
}

void NFRConfig::validate_estimate_range() const {
  validate();
  if (!(s > 1.0 / 6.0 && s < 0.5)) throw ConfigError("estimate suites require 1/6 < s < 1/2");
}

TermMap evaluate_terms(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg, std::span<const TermId> ids) {
  const int nm = resolve_band(omega, cfg);
  const double t = omega.t;
  const auto want = expand(ids);
  auto wants = [&](std::initializer_list<TermId> l) {
    for (auto id : l)
      if (want.count(id)) return true;
    return false;
  };
  const bool need_d = wants({TermId::N11, TermId::N31});
  const bool need_sn = need_d || wants({TermId::N, TermId::N1, TermId::N2, TermId::N3});
  const bool need_sr = need_d || wants({TermId::R, TermId::R1});
  if (need_sr) {
    if (!u) throw InputError("requested terms need u");
    check_u(*u, nm);
  }

  const Sequence a = strip(omega.seq, t);
  const BandView av(a);
  const Sequence zeros(a.size());
  Sequence sn = need_sn ? detail::cubic_full_N(av) : zeros;
  Sequence sr = need_sr ? stripped_R(*u, a) : zeros;
  Sequence d = zeros;
  if (need_d)
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = sn[i] + sr[i];
  const BandView snv(sn), srv(sr), dv(d);

  const std::array<double, 1> m_list{cfg.M};
  const Buckets buckets(m_list);
  std::map<TermId, Sequence> st;  // stripped values

  if (want.count(TermId::N)) st[TermId::N] = sn;
  if (want.count(TermId::R)) st[TermId::R] = sr;
  if (wants({TermId::N_R, TermId::N_NR})) {
    const std::array<CubicTriple, 1> tr{{{av, av, av}}};
    const auto res = detail::cubic_m1(nm, tr, PhaseWeight::unit, buckets);
    st[TermId::N_R] = res[0].at_or_below(0);
    st[TermId::N_NR] = res[0].above(0);
  }
  {
    std::vector<CubicTriple> tr;
    std::vector<std::pair<TermId, cplx>> owner;
    auto add = [&](TermId id, cplx c, CubicTriple t3) {
      tr.push_back(t3);
      owner.emplace_back(id, c);
    };
    if (want.count(TermId::N0)) add(TermId::N0, -kI, {av, av, av});
    if (want.count(TermId::N1)) add(TermId::N1, kI, {snv, av, av});
    if (want.count(TermId::N2)) add(TermId::N2, kI, {av, snv, av});
    if (want.count(TermId::N3)) add(TermId::N3, kI, {av, av, snv});
    if (want.count(TermId::R1)) {
      add(TermId::R1, kI, {srv, av, av});
      add(TermId::R1, kI, {av, srv, av});
      add(TermId::R1, kI, {av, av, srv});
    }
    if (!tr.empty()) {
      const auto res = detail::cubic_m1(nm, tr, PhaseWeight::inverse, buckets);
      for (std::size_t j = 0; j < tr.size(); ++j) {
        auto [id, c] = owner[j];
        auto it = st.find(id);
        if (it == st.end()) it = st.emplace(id, zeros).first;
        axpy(it->second, c, res[j].above(0));
      }
    }
  }
  const double k = cfg.K.value();
  if (wants({TermId::N1NR, TermId::N10, TermId::N11})) {
    const auto res = detail::sextic_A1(av, dv, k, buckets);
    st[TermId::N1NR] = res.nr.above(0);
    st[TermId::N10] = res.zero.above(0);
    st[TermId::N11] = res.one.above(0);
  }
  if (wants({TermId::N3NR, TermId::N30, TermId::N31})) {
    const auto res = detail::sextic_A3(av, dv, k, buckets);
    st[TermId::N3NR] = res.nr.above(0);
    st[TermId::N30] = res.zero.above(0);
    st[TermId::N31] = res.one.above(0);
  }
  if (want.count(TermId::N1R)) {
    Sequence r = st[TermId::N1];
    st[TermId::N1R] = axpy(r, -1.0, st[TermId::N1NR]);
  }
  if (want.count(TermId::N3R)) {
    Sequence r = st[TermId::N3];
    st[TermId::N3R] = axpy(r, -1.0, st[TermId::N3NR]);
  }

  TermMap out;
  for (auto& [id, seq] : st) {
    if (!want.count(id)) continue;
    out[id] = TermValue{id, unstrip(seq, t), t};
  }
  if (want.count(TermId::Nagg0)) {
    Sequence s(a.size());
    for (auto id : {TermId::N0, TermId::N10, TermId::N30}) axpy(s, 1.0, out.at(id).seq);
    out[TermId::Nagg0] = TermValue{TermId::Nagg0, std::move(s), t};
  }
  if (want.count(TermId::Nagg1)) {
    Sequence s(a.size());
    for (auto id : {TermId::R, TermId::N_R, TermId::R1, TermId::N1R, TermId::N11, TermId::N2, TermId::N3R, TermId::N31})
      axpy(s, 1.0, out.at(id).seq);
    out[TermId::Nagg1] = TermValue{TermId::Nagg1, std::move(s), t};
  }
  return out;
}

namespace {

TermValue single(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg, TermId id) {
  const std::array<TermId, 1> ids{id};
  return evaluate_terms(u, omega, cfg, ids).at(id);
}

std::pair<TermValue, TermValue> pair_of(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg, TermId x, TermId y) {
  const std::array<TermId, 2> ids{x, y};
  auto m = evaluate_terms(u, omega, cfg, ids);
  return {m.at(x), m.at(y)};
}

}  // namespace

TermValue trilinear_N(const OmegaState& omega) { return single(nullptr, omega, {}, TermId::N); }

TermValue trilinear_N_majorant(const OmegaState& omega) {
  resolve_band(omega, {});
  const Sequence a = strip(omega.seq, omega.t);
  return {TermId::N, detail::cubic_full_N(BandView(a), true), omega.t};
}

TermValue script_R(const SpectralField& u, const OmegaState& omega) { return single(&u, omega, {}, TermId::R); }

Sequence omega_rhs(const SpectralField& u, const OmegaState& omega) {
  const int nm = resolve_band(omega, {});
  check_u(u, nm);
  const Sequence a = strip(omega.seq, omega.t);
  Sequence d = detail::cubic_full_N(BandView(a));
  const Sequence sr = stripped_R(u, a);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += sr[i];
  return unstrip(std::move(d), omega.t);
}

std::pair<TermValue, TermValue> split_resonant(const OmegaState& omega, const NFRConfig& cfg) {
  return pair_of(nullptr, omega, cfg, TermId::N_R, TermId::N_NR);
}

TermValue term_N0(const OmegaState& omega, const NFRConfig& cfg) { return single(nullptr, omega, cfg, TermId::N0); }

TermValue term_Nj(const OmegaState& omega, const NFRConfig& cfg, int j) {
  switch (j) {
    case 1: return single(nullptr, omega, cfg, TermId::N1);
    case 2: return single(nullptr, omega, cfg, TermId::N2);
    case 3: return single(nullptr, omega, cfg, TermId::N3);
    default: throw InputError("term_Nj: j must be 1, 2 or 3");
  }
}

TermValue term_R1(const SpectralField& u, const OmegaState& omega, const NFRConfig& cfg) {
  return single(&u, omega, cfg, TermId::R1);
}

std::pair<TermValue, TermValue> split_N1(const OmegaState& omega, const NFRConfig& cfg) {
  return pair_of(nullptr, omega, cfg, TermId::N1R, TermId::N1NR);
}

TermValue term_N10(const OmegaState& omega, const NFRConfig& cfg) { return single(nullptr, omega, cfg, TermId::N10); }

namespace {

TermValue second_stage_one(const OmegaState& omega, const Sequence& dt_omega, const NFRConfig& cfg, bool slot3) {
  const int nm = resolve_band(omega, cfg);
  if (dt_omega.size() != omega.seq.size()) throw InputError("dt_omega must share the band of omega");
  const Sequence a = strip(omega.seq, omega.t), d = strip(dt_omega, omega.t);
  const std::array<double, 1> m_list{cfg.M};
  const Buckets buckets(m_list);
  const auto res = slot3 ? detail::sextic_A3(BandView(a), BandView(d), cfg.K.value(), buckets)
                         : detail::sextic_A1(BandView(a), BandView(d), cfg.K.value(), buckets);
  (void)nm;
  return {slot3 ? TermId::N31 : TermId::N11, unstrip(res.one.above(0), omega.t), omega.t};
}

}  // namespace

TermValue term_N11(const OmegaState& omega, const Sequence& dt_omega, const NFRConfig& cfg) {
  return second_stage_one(omega, dt_omega, cfg, false);
}

std::pair<TermValue, TermValue> split_N3(const OmegaState& omega, const NFRConfig& cfg) {
  return pair_of(nullptr, omega, cfg, TermId::N3R, TermId::N3NR);
}

TermValue term_N30(const OmegaState& omega, const NFRConfig& cfg) { return single(nullptr, omega, cfg, TermId::N30); }

TermValue term_N31(const OmegaState& omega, const Sequence& dt_omega, const NFRConfig& cfg) {
  return second_stage_one(omega, dt_omega, cfg, true);
}

Aggregate aggregate(const SpectralField& u, const OmegaState& omega, const NFRConfig& cfg) {
  const std::array<TermId, 2> ids{TermId::Nagg0, TermId::Nagg1};
  auto m = default_cache().get_or_compute(&u, omega, cfg, ids);
  return {m.at(TermId::Nagg0), m.at(TermId::Nagg1)};
}

std::vector<Sequence> threshold_sweep(TermId id, const OmegaState& omega, const NFRConfig& cfg,
                                      std::span<const double> thresholds) {
  const int nm = resolve_band(omega, cfg);
  const Buckets buckets(thresholds);
  const Sequence a = strip(omega.seq, omega.t);
  const BandView av(a);
  std::vector<Sequence> out;
  if (id == TermId::N0) {
    const std::array<CubicTriple, 1> tr{{{av, av, av}}};
    const auto res = detail::cubic_m1(nm, tr, PhaseWeight::inverse, buckets);
    for (std::size_t k = 0; k < thresholds.size(); ++k) out.push_back(unstrip(scaled(-kI, res[0].above(k)), omega.t));
  } else if (id == TermId::N10 || id == TermId::N30) {
    const Sequence zeros(a.size());
    const auto res = id == TermId::N10 ? detail::sextic_A1(av, BandView(zeros), cfg.K.value(), buckets)
                                       : detail::sextic_A3(av, BandView(zeros), cfg.K.value(), buckets);
    for (std::size_t k = 0; k < thresholds.size(); ++k) out.push_back(unstrip(res.zero.above(k), omega.t));
  } else {
    throw InputError("threshold_sweep supports N0, N10 and N30 only");
  }
  return out;
}

DbpResidual dbp_identity_residual(const SpectralField& u, const OmegaState& omega, const NFRConfig& cfg) {
  const int nm = resolve_band(omega, cfg);
  check_u(u, nm);
  const std::array<TermId, 9> ids{TermId::N_NR, TermId::N1, TermId::N2, TermId::N3, TermId::R1,
                                  TermId::N1NR, TermId::N11, TermId::N3NR, TermId::N31};
  const TermMap terms = evaluate_terms(&u, omega, cfg, ids);

  const Sequence a = strip(omega.seq, omega.t);
  const Sequence d = strip(omega_rhs(u, omega), omega.t);
  const BandView av(a), dv(d);
  const std::array<double, 1> m_list{cfg.M};
  const Buckets buckets(m_list);

  // d/dt N0 in closed form: the phase derivative plus the product rule over the three factors.
  const std::array<CubicTriple, 1> aaa{{{av, av, av}}};
  const std::array<CubicTriple, 3> dslots{{{dv, av, av}, {av, dv, av}, {av, av, dv}}};
  Sequence dn0 = detail::cubic_m1(nm, aaa, PhaseWeight::unit, buckets)[0].above(0);
  for (const auto& r : detail::cubic_m1(nm, dslots, PhaseWeight::inverse, buckets)) axpy(dn0, -kI, r.above(0));
  dn0 = unstrip(std::move(dn0), omega.t);

  auto relative = [](const Sequence& lhs, std::initializer_list<const Sequence*> rhs) {
    Sequence r = lhs;
    double scale = l2_positive(lhs);
    for (const auto* s : rhs) {
      axpy(r, -1.0, *s);
      scale += l2_positive(*s);
    }
    return scale > 0.0 ? l2_positive(r) / scale : 0.0;
  };

  DbpResidual res;
  res.first_stage = relative(terms.at(TermId::N_NR).seq, {&dn0, &terms.at(TermId::N1).seq, &terms.at(TermId::N2).seq,
                                                          &terms.at(TermId::N3).seq, &terms.at(TermId::R1).seq});
  const Sequence dn10 = unstrip(detail::sextic_A1(av, dv, cfg.K.value(), buckets).dzero.above(0), omega.t);
  res.n1_stage = relative(terms.at(TermId::N1NR).seq, {&dn10, &terms.at(TermId::N11).seq});
  const Sequence dn30 = unstrip(detail::sextic_A3(av, dv, cfg.K.value(), buckets).dzero.above(0), omega.t);
  res.n3_stage = relative(terms.at(TermId::N3NR).seq, {&dn30, &terms.at(TermId::N31).seq});
  return res;
}

std::vector<double> duhamel_residual(std::span<const DuhamelSample> trajectory, const NFRConfig& cfg) {
  if (trajectory.size() < 2) throw InputError("duhamel_residual needs at least two samples");
  const double h = trajectory[1].omega.t - trajectory[0].omega.t;
  if (!(h > 0.0)) throw InputError("duhamel_residual: times must increase");
  for (std::size_t j = 1; j < trajectory.size(); ++j) {
    const double hj = trajectory[j].omega.t - trajectory[j - 1].omega.t;
    if (std::abs(hj - h) > 1e-9 * h) throw InputError("duhamel_residual: samples must be equally spaced");
  }
  std::vector<Aggregate> agg;
  agg.reserve(trajectory.size());
  for (const auto& smp : trajectory) agg.push_back(aggregate(smp.u, smp.omega, cfg));

  const auto& w0 = trajectory[0].omega.seq;
  Sequence integral(w0.size());
  std::vector<double> out{0.0};
  for (std::size_t j = 1; j < trajectory.size(); ++j) {
    axpy(integral, 0.5 * h, agg[j - 1].one.seq);
    axpy(integral, 0.5 * h, agg[j].one.seq);
    Sequence r = trajectory[j].omega.seq;
    axpy(r, -1.0, w0);
    axpy(r, -1.0, agg[j].zero.seq);
    axpy(r, 1.0, agg[0].zero.seq);
    axpy(r, -1.0, integral);
    out.push_back(weighted_seq_norm(r, {.s = cfg.s}, Support::positive));
  }
  return out;
}

namespace {

std::string cache_key(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg) {
  std::string key;
  auto put = [&key](const void* p, std::size_t n) { key.append(static_cast<const char*>(p), n); };
  const double params[4] = {cfg.M, cfg.s, cfg.K.value(), omega.t};
  put(params, sizeof params);
  put(&cfg.n_max, sizeof cfg.n_max);
  put(omega.seq.data(), omega.seq.size() * sizeof(cplx));
  const char has_u = u ? 1 : 0;
  put(&has_u, 1);
  if (u) put(u->coeffs().data(), u->coeffs().size() * sizeof(cplx));
  return key;
}

}  // namespace

TermMap TermCache::get_or_compute(const SpectralField* u, const OmegaState& omega, const NFRConfig& cfg,
                                  std::span<const TermId> ids) {
  const std::string key = cache_key(u, omega, cfg);
  std::vector<TermId> missing;
  TermMap out;
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    for (auto id : ids) {
      if (it != entries_.end() && it->second.count(id))
        out[id] = it->second.at(id);
      else
        missing.push_back(id);
    }
    if (missing.empty()) {
      ++hits_;
      return out;
    }
  }
  TermMap fresh = evaluate_terms(u, omega, cfg, missing);
  std::lock_guard lock(mu_);
  if (entries_.size() >= capacity_ && !entries_.count(key)) entries_.clear();
  auto& slot = entries_[key];
  for (auto& [id, v] : fresh) slot.insert_or_assign(id, v);
  for (auto id : missing) out[id] = fresh.at(id);
  return out;
}

std::size_t TermCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::size_t TermCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

void TermCache::clear() {
  std::lock_guard lock(mu_);
  entries_.clear();
  hits_ = 0;
}

TermCache& default_cache() {
  static TermCache cache;
  return cache;
}

}  // namespace pbo::nfr
