#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pbo/errors.hpp"
#include "pbo/estimates.hpp"
#include "pbo/gauge.hpp"

namespace pbo::est {
namespace {

using nfr::TermId;

constexpr std::array<std::string_view, 15> kLemmaNames = {"R",   "N_R", "N0",  "R1",  "weak-N1", "weak-N2", "weak-N3", "N1R",
                                                          "N11", "N10", "N2",  "N3R", "N31",     "N30",     "dtom2"};

// Perturbation size for the difference form.
constexpr double kTildeEps = 0.25;

enum class Target { s_norm, alpha, beta };

Target target_of(LemmaId id) {
  switch (id) {
    case LemmaId::weak_N1:
    case LemmaId::weak_N2:
    case LemmaId::weak_N3: return Target::alpha;
    case LemmaId::dtom2: return Target::beta;
    default: return Target::s_norm;
  }
}

double target_index(Target t, double s) {
  switch (t) {
    case Target::alpha: return 3.0 * s - 1.0 - 0.01;
    case Target::beta: return 2.0 * s - 1.5;
    case Target::s_norm: break;
  }
  return s;
}

struct Sizes {
  double u = 0.0;  // ||u||_{H^s}
  double w = 0.0;  // ||omega||_{l^2_s}
};

double pw(double x, int k) { return std::pow(x, k); }

double bound_denominator(LemmaId id, Sizes a, double M) {
  const double w = a.w, u4 = pw(a.u, 4);
  switch (id) {
    case LemmaId::R: return 1.0 + u4 + pw(w, 3);
    case LemmaId::N_R: return M * pw(w, 3);
    case LemmaId::N0:
    case LemmaId::dtom2: return pw(w, 3);
    case LemmaId::R1: return (1.0 + u4 + pw(w, 3)) * pw(w, 2);
    case LemmaId::N11:
    case LemmaId::N31: return (1.0 + u4 + pw(w, 3)) * pw(w, 4);
    default: return pw(w, 5);
  }
}

std::optional<double> difference_denominator(LemmaId id, Sizes a, Sizes b, double du, double dw, double M) {
  const double U = 1.0 + pw(a.u, 4) + pw(b.u, 4);
  const double W3 = pw(a.w, 3) + pw(b.w, 3);
  switch (id) {
    case LemmaId::R: return U * du + (pw(a.w, 2) + pw(b.w, 2)) * dw;
    case LemmaId::N_R: return M * (pw(a.w, 2) + pw(b.w, 2)) * dw;
    case LemmaId::N0: return (pw(a.w, 2) + pw(b.w, 2)) * dw;
    case LemmaId::R1: return U * (pw(a.w, 2) + pw(b.w, 2)) * du + (U + W3) * (a.w + b.w) * dw;
    case LemmaId::N11:
    case LemmaId::N31: return U * (pw(a.w, 4) + pw(b.w, 4)) * du + (U + W3) * W3 * dw;
    case LemmaId::N1R:
    case LemmaId::N10:
    case LemmaId::N2:
    case LemmaId::N3R:
    case LemmaId::N30: return (pw(a.w, 4) + pw(b.w, 4)) * dw;
    default: return std::nullopt;  // no difference display
  }
}

std::optional<double> quotient(double num, double den) {
  if (num == 0.0 && den == 0.0) return std::nullopt;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

double term_norm(LemmaId id, const Sequence& seq, double s) {
  return weighted_seq_norm(seq, {.s = target_index(target_of(id), s)});
}

Sequence minus(const Sequence& a, const Sequence& b) {
  Sequence d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

std::vector<TermId> terms_for(std::span<const LemmaId> ids, bool with_u) {
  std::vector<TermId> out;
  for (auto id : ids)
    if (lemma_needs_u(id) == with_u) out.push_back(lemma_term(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Everything lemma_ratio needs for one input pair.
struct Evaluated {
  nfr::TermMap terms;
  Sizes sizes;
};

Evaluated evaluate(const SpectralField* u, const OmegaState& w, std::span<const TermId> terms, const nfr::NFRConfig& cfg) {
  Evaluated e;
  if (!terms.empty()) e.terms = nfr::evaluate_terms(u, w, cfg, terms);
  e.sizes.w = weighted_seq_norm(w.seq, {.s = cfg.s});
  e.sizes.u = u ? sobolev_norm(*u, cfg.s) : 0.0;
  return e;
}

std::optional<double> ratio_from(LemmaId id, const Evaluated& a, const Evaluated* b, double du, double dw,
                                 const nfr::NFRConfig& cfg) {
  const Sequence& ta = a.terms.at(lemma_term(id)).seq;
  if (!b) return quotient(term_norm(id, ta, cfg.s), bound_denominator(id, a.sizes, cfg.M));
  const auto den = difference_denominator(id, a.sizes, b->sizes, du, dw, cfg.M);
  if (!den) return std::nullopt;
  const Sequence& tb = b->terms.at(lemma_term(id)).seq;
  return quotient(term_norm(id, minus(ta, tb), cfg.s), *den);
}

OmegaState omega_from_u(const SpectralField& u) { return gauge::omega_of(gauge::gauge_forward(u).v, 0.0); }

void check_M_list(std::span<const double> M_list) {
  if (M_list.size() < 2) throw InputError("decay_fit: need at least two thresholds");
  for (std::size_t i = 0; i < M_list.size(); ++i) {
    if (!(M_list[i] >= 2.0)) throw InputError("decay_fit: thresholds must be >= 2");
    if (i > 0 && !(M_list[i] > M_list[i - 1])) throw InputError("decay_fit: thresholds must increase");
  }
  if (M_list.back() / M_list.front() < 32.0 * (1.0 - 1e-12)) throw InputError("decay_fit: sweep must span five octaves");
}

int degree_of(TermId t) {
  if (t == TermId::N0) return 3;
  if (t == TermId::N10 || t == TermId::N30) return 5;
  throw InputError("decay_fit supports N0, N10 and N30 only");
}

}  // namespace

std::string_view lemma_name(LemmaId id) { return kLemmaNames[static_cast<std::size_t>(id)]; }

LemmaId parse_lemma(std::string_view name) {
  for (std::size_t i = 0; i < kLemmaNames.size(); ++i)
    if (kLemmaNames[i] == name) return kAllLemmas[i];
  throw InputError("unknown lemma id: " + std::string(name));
}

TermId lemma_term(LemmaId id) {
  switch (id) {
    case LemmaId::R: return TermId::R;
    case LemmaId::N_R: return TermId::N_R;
    case LemmaId::N0: return TermId::N0;
    case LemmaId::R1: return TermId::R1;
    case LemmaId::weak_N1: return TermId::N1;
    case LemmaId::weak_N2:
    case LemmaId::N2: return TermId::N2;
    case LemmaId::weak_N3: return TermId::N3;
    case LemmaId::N1R: return TermId::N1R;
    case LemmaId::N11: return TermId::N11;
    case LemmaId::N10: return TermId::N10;
    case LemmaId::N3R: return TermId::N3R;
    case LemmaId::N31: return TermId::N31;
    case LemmaId::N30: return TermId::N30;
    case LemmaId::dtom2: return TermId::N;
  }
  throw InputError("unknown lemma id");
}

bool lemma_needs_u(LemmaId id) { return nfr::needs_u(lemma_term(id)); }

std::optional<double> lemma_ratio(LemmaId id, const LemmaInputs& in, const nfr::NFRConfig& cfg) {
  if (!in.omega) throw InputError("lemma_ratio: omega is required");
  if (lemma_needs_u(id) && !in.u) throw InputError("lemma_ratio: this estimate needs u");
  const bool diff = in.omega_tilde != nullptr;
  if (diff && lemma_needs_u(id) && !in.u_tilde) throw InputError("lemma_ratio: difference form needs u_tilde");
  const std::array terms{lemma_term(id)};
  const SpectralField* u = lemma_needs_u(id) ? in.u : nullptr;
  const Evaluated a = evaluate(u, *in.omega, terms, cfg);
  if (!diff) return ratio_from(id, a, nullptr, 0.0, 0.0, cfg);
  const SpectralField* ut = lemma_needs_u(id) ? in.u_tilde : nullptr;
  const Evaluated b = evaluate(ut, *in.omega_tilde, terms, cfg);
  const double du = (u && ut) ? sobolev_norm(*u - *ut, cfg.s) : 0.0;
  const double dw = weighted_seq_norm(minus(in.omega->seq, in.omega_tilde->seq), {.s = cfg.s});
  return ratio_from(id, a, &b, du, dw, cfg);
}

RatioReport summarize(std::string lemma, std::span<const double> ratios) {
  RatioReport r;
  r.lemma = std::move(lemma);
  r.samples = ratios.size();
  if (ratios.empty()) return r;
  std::vector<double> v(ratios.begin(), ratios.end());
  std::sort(v.begin(), v.end());
  r.min = v.front();
  r.max = v.back();
  const std::size_t mid = v.size() / 2;
  r.median = v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
  return r;
}

nlohmann::json RatioReport::to_json() const {
  nlohmann::json j{{"lemma", lemma}, {"kind", kind}, {"s", s}, {"M", M}, {"n_max", n_max}, {"samples", samples},
                   {"max", max},     {"min", min},   {"median", median}};
  j["slope"] = slope ? nlohmann::json(*slope) : nlohmann::json(nullptr);
  if (!sweep.empty()) {
    auto& arr = j["sweep"] = nlohmann::json::array();
    for (auto [m, v] : sweep) arr.push_back({{"M", m}, {"max", v}});
  }
  if (frozen) j["frozen"] = *frozen;
  if (kind == "scan") j["violations"] = violations;
  return j;
}

std::vector<RatioReport> lemma_suites(std::span<const LemmaId> ids, const SuiteOptions& opt) {
  nfr::NFRConfig cfg;
  cfg.M = opt.M;
  cfg.s = opt.s;
  cfg.K = opt.K;
  cfg.validate_estimate_range();
  const auto plan = sample_plan(opt.n_max, opt.per_band, opt.s, opt.seed, opt.base_band);
  const auto w_terms = terms_for(ids, false);
  const auto u_terms = terms_for(ids, true);

  std::map<LemmaId, std::vector<double>> bound, diff;
  for (const auto& spec : plan) {
    const OmegaState w = embed(sample_omega(spec), opt.n_max);
    SamplerSpec alt = spec;
    alt.profile = Profile::random_phase;
    alt.seed = spec.seed + 1;

    Evaluated ew, ewt, eu, eut;
    std::optional<OmegaState> wt;
    if (!w_terms.empty()) {
      ew = evaluate(nullptr, w, w_terms, cfg);
      if (opt.difference) {
        wt = w;
        const OmegaState eta = embed(sample_omega(alt), opt.n_max);
        for (std::size_t i = 0; i < wt->seq.size(); ++i) wt->seq[i] += kTildeEps * eta.seq[i];
        ewt = evaluate(nullptr, *wt, w_terms, cfg);
      }
    }
    std::optional<SpectralField> u, ut;
    std::optional<OmegaState> wu, wut;
    if (!u_terms.empty()) {
      u = embed(sample_field(spec), opt.n_max);
      wu = omega_from_u(*u);
      eu = evaluate(&*u, *wu, u_terms, cfg);
      if (opt.difference) {
        ut = *u + kTildeEps * embed(sample_field(alt), opt.n_max);
        wut = omega_from_u(*ut);
        eut = evaluate(&*ut, *wut, u_terms, cfg);
      }
    }
    for (auto id : ids) {
      const bool with_u = lemma_needs_u(id);
      const Evaluated& a = with_u ? eu : ew;
      if (auto r = ratio_from(id, a, nullptr, 0.0, 0.0, cfg)) bound[id].push_back(*r);
      if (!opt.difference) continue;
      const Evaluated& b = with_u ? eut : ewt;
      const double du = with_u ? sobolev_norm(*u - *ut, cfg.s) : 0.0;
      const double dw = with_u ? weighted_seq_norm(minus(wu->seq, wut->seq), {.s = cfg.s})
                               : weighted_seq_norm(minus(w.seq, wt->seq), {.s = cfg.s});
      if (auto r = ratio_from(id, a, &b, du, dw, cfg)) diff[id].push_back(*r);
    }
  }

  std::vector<RatioReport> out;
  auto finish = [&](LemmaId id, const std::vector<double>& v, const char* kind) {
    RatioReport r = summarize(std::string(lemma_name(id)), v);
    r.kind = kind;
    r.s = opt.s;
    r.M = opt.M;
    r.n_max = opt.n_max;
    out.push_back(std::move(r));
  };
  for (auto id : ids) {
    finish(id, bound[id], "bound");
    if (opt.difference && difference_denominator(id, {}, {}, 0, 0, 1).has_value()) finish(id, diff[id], "difference");
  }
  return out;
}

double loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw InputError("loglog_slope: need two points");
  double sx = 0, sy = 0;
  for (auto [x, y] : points) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (auto [x, y] : points) {
    sxy += (std::log(x) - mx) * (std::log(y) - my);
    sxx += (std::log(x) - mx) * (std::log(x) - mx);
  }
  if (sxx == 0.0) throw InputError("loglog_slope: abscissae coincide");
  return sxy / sxx;
}

RatioReport decay_fit(TermId term, std::span<const double> M_list, std::span<const OmegaState> samples, double s,
                      const mult::ComparabilityConstant& K) {
  check_M_list(M_list);
  const int deg = degree_of(term);
  nfr::NFRConfig cfg;
  cfg.s = s;
  cfg.K = K;
  std::vector<double> best(M_list.size(), 0.0);
  std::size_t used = 0;
  for (const auto& w : samples) {
    const double wn = weighted_seq_norm(w.seq, {.s = s});
    if (wn == 0.0) continue;
    ++used;
    const auto vals = nfr::threshold_sweep(term, w, cfg, M_list);
    for (std::size_t k = 0; k < M_list.size(); ++k)
      best[k] = std::max(best[k], weighted_seq_norm(vals[k], {.s = s}) / std::pow(wn, deg));
  }
  RatioReport r;
  r.lemma = std::string(nfr::term_name(term));
  r.kind = "decay";
  r.s = s;
  r.M = M_list.front();
  r.n_max = samples.empty() ? 0 : samples.front().n_max();
  r.samples = used;
  std::vector<std::pair<double, double>> positive;
  for (std::size_t k = 0; k < M_list.size(); ++k) {
    r.sweep.emplace_back(M_list[k], best[k]);
    if (best[k] > 0.0) positive.emplace_back(M_list[k], best[k]);
  }
  if (!best.empty()) {
    r.max = *std::max_element(best.begin(), best.end());
    r.min = *std::min_element(best.begin(), best.end());
    std::vector<double> sorted = best;
    std::sort(sorted.begin(), sorted.end());
    r.median = sorted[sorted.size() / 2];
  }
  if (positive.size() >= 2) r.slope = loglog_slope(positive);
  return r;
}

RatioReport decay_fit(TermId term, std::span<const double> M_list, const DecayOptions& opt) {
  int bands = 1;
  for (int b = std::min(opt.base_band, opt.n_max); b < opt.n_max; b *= 2) ++bands;
  const int per_band = (opt.samples + bands - 1) / bands;
  const auto plan = sample_plan(opt.n_max, per_band, opt.s, opt.seed, opt.base_band);
  std::vector<OmegaState> samples;
  samples.reserve(plan.size());
  for (const auto& spec : plan) samples.push_back(embed(sample_omega(spec), opt.n_max));
  return decay_fit(term, M_list, samples, opt.s, opt.K);
}

}  // namespace pbo::est
