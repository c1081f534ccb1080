#include "pbo/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "pbo/errors.hpp"
#include "pbo/gauge.hpp"

namespace pbo::solver {
namespace {

bool finite(const Sequence& s) {
  return std::all_of(s.begin(), s.end(), [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// y + a x
Sequence axpy(const Sequence& y, cplx a, const Sequence& x) {
  Sequence r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] + a * x[i];
  return r;
}

Sequence rk4_combine(const Sequence& y, double h, const Sequence& k1, const Sequence& k2, const Sequence& k3,
                     const Sequence& k4) {
  Sequence r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

template <class F>
Sequence rk4_step(const Sequence& y, double t, double h, F&& f) {
  const Sequence k1 = f(t, y);
  const Sequence k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const Sequence k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const Sequence k4 = f(t + h, axpy(y, h, k3));
  return rk4_combine(y, h, k1, k2, k3, k4);
}

void require_real(const SpectralField& u0, const char* who) {
  if (u0.hermitian_defect() > 1e-12 * (1.0 + sobolev_norm(u0, 0.0))) throw InputError(std::string(who) + ": u0 is not real");
}

SpectralField prepare(const SpectralField& u0, const SolverConfig& cfg, const char* who) {
  require_real(u0, who);
  SpectralField u = u0.on_grid(cfg.grid);
  u[0] = 0.0;
  u.set_flags({true, true});
  return u;
}

// Physical-space square restricted to the band.
SpectralField square(const SpectralField& u, bool dealias) {
  if (dealias) return multiply(u, u, u.grid());
  return map_pointwise(u, [](cplx z) { return z * z; }, u.grid().band_size(), u.grid());
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be positive");
  if (!(cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (save_every < 1) throw ConfigError("save_every must be at least 1");
  if (grid.n_max < 1) throw ConfigError("grid band must be at least 1");
  const double limit = cfl / (static_cast<double>(grid.n_max) * grid.n_max);
  if (dt > limit * (1.0 + 1e-12))
    throw ConfigError("dt = " + std::to_string(dt) + " exceeds cfl / n_max^2 = " + std::to_string(limit));
  const double r = T / dt;
  if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r)) throw ConfigError("T must be an integer multiple of dt");
}

long SolverConfig::steps() const { return std::lround(T / dt); }

nlohmann::json SolverConfig::to_json() const {
  return {{"n_max", grid.n_max}, {"grid_points", grid.grid_points}, {"dt", dt},         {"T", T},
          {"cfl", cfl},          {"dealias", dealias},              {"save_every", save_every}, {"t0", t0},
          {"backward", backward}, {"scheme", "rk4-integrating-factor"}};
}

double Trajectory::max_mean_drift() const {
  double m = 0.0;
  for (const auto& c : conservation) m = std::max(m, c.mean);
  return m;
}

double Trajectory::max_imag() const {
  double m = 0.0;
  for (const auto& c : conservation) m = std::max(m, c.max_imag);
  return m;
}

double Trajectory::l2_drift() const {
  if (conservation.empty() || conservation.front().l2 == 0.0) return 0.0;
  return std::abs(conservation.back().l2 - conservation.front().l2) / conservation.front().l2;
}

ConservationRecord measure(const SpectralField& u, double t) {
  ConservationRecord c;
  c.t = t;
  c.mean = std::abs(u[0]);
  c.l2 = sobolev_norm(u, 0.0);
  for (const auto& z : synthesize(u)) c.max_imag = std::max(c.max_imag, std::abs(z.imag()));
  return c;
}

Trajectory integrate_bo(const SpectralField& u0, const SolverConfig& cfg) {
  cfg.validate();
  const SpectralField start = prepare(u0, cfg, "integrate_bo");
  const int nm = cfg.grid.n_max;
  const double h = cfg.backward ? -cfg.dt : cfg.dt;

  auto to_u = [&](const Sequence& w, double t) {
    SpectralField u(cfg.grid);
    for (int n = -nm; n <= nm; ++n) u[n] = std::conj(linear_phase(n, t)) * w[static_cast<std::size_t>(n + nm)];
    u[0] = 0.0;
    return u;
  };
  auto rhs = [&](double t, const Sequence& w) {
    const SpectralField sq = square(to_u(w, t), cfg.dealias);
    Sequence d(w.size());
    for (int n = -nm; n <= nm; ++n)
      if (n != 0) d[static_cast<std::size_t>(n + nm)] = linear_phase(n, t) * cplx(0.0, n) * sq[n];
    return d;
  };

  Trajectory tr;
  tr.config = cfg;
  Sequence w(start.coeffs().size());
  for (int n = -nm; n <= nm; ++n) w[static_cast<std::size_t>(n + nm)] = linear_phase(n, cfg.t0) * start[n];

  auto save = [&](double t) {
    SpectralField u = to_u(w, t);
    tr.times.push_back(t);
    tr.conservation.push_back(measure(u, t));
    tr.u.push_back(std::move(u));
  };
  save(cfg.t0);
  const long steps = cfg.steps();
  for (long k = 0; k < steps; ++k) {
    const double t = cfg.t0 + static_cast<double>(k) * h;
    Sequence next = rk4_step(w, t, h, rhs);
    if (!finite(next)) throw BlowUpError("integrate_bo: non-finite state", t);
    next[static_cast<std::size_t>(nm)] = 0.0;
    w = std::move(next);
    if ((k + 1) % cfg.save_every == 0 || k + 1 == steps) save(cfg.t0 + static_cast<double>(k + 1) * h);
  }
  return tr;
}

SpectralField u_from_omega(const OmegaState& omega) {
  const GridSpec grid = GridSpec::oversampled(omega.n_max());
  SpectralField u = gauge::gauge_inverse(gauge::pair_from_v(gauge::v_of(omega, grid)));
  u.make_real();
  u[0] = 0.0;
  u.set_flags({true, true});
  return u;
}

Trajectory integrate_omega(const SpectralField& u0, const SolverConfig& cfg, const nfr::NFRConfig& ncfg, OmegaMode mode) {
  cfg.validate();
  ncfg.validate();
  const SpectralField start = prepare(u0, cfg, "integrate_omega");
  const int nm = cfg.grid.n_max;
  const double h = cfg.backward ? -cfg.dt : cfg.dt;

  auto rhs = [&](double t, const Sequence& y) {
    const OmegaState w(y, t);
    return nfr::omega_rhs(u_from_omega(w), w);
  };

  Trajectory tr;
  tr.config = cfg;
  OmegaState w = gauge::omega_of(gauge::gauge_forward(start).v, cfg.t0);

  auto save = [&](const OmegaState& s) {
    SpectralField u = u_from_omega(s);
    tr.times.push_back(s.t);
    tr.conservation.push_back(measure(u, s.t));
    tr.u.push_back(std::move(u));
    tr.omega.push_back(s);
  };
  save(w);

  // N(0), N(1) and the full right-hand side at one state.
  struct Parts {
    Sequence zero, one, full;
  };
  const std::array<nfr::TermId, 2> agg_ids{nfr::TermId::Nagg0, nfr::TermId::Nagg1};
  auto parts = [&](const OmegaState& s) {
    const SpectralField u = u_from_omega(s);
    auto m = nfr::evaluate_terms(&u, s, ncfg, agg_ids);
    return Parts{std::move(m.at(nfr::TermId::Nagg0).seq), std::move(m.at(nfr::TermId::Nagg1).seq), nfr::omega_rhs(u, s)};
  };

  Parts here;
  if (mode == OmegaMode::nfr_form) here = parts(w);

  const long steps = cfg.steps();
  for (long k = 0; k < steps; ++k) {
    const double t = cfg.t0 + static_cast<double>(k) * h;
    const double t1 = cfg.t0 + static_cast<double>(k + 1) * h;
    OmegaState next(rk4_step(w.seq, t, h, rhs), t1);
    if (mode == OmegaMode::nfr_form) {
      Parts there;
      for (int it = 0; it < 50; ++it) {
        there = parts(next);
        Sequence upd(w.seq.size());
        for (int n = -nm; n <= nm; ++n) {
          const auto i = static_cast<std::size_t>(n + nm);
          upd[i] = n > 0 ? w.seq[i] + there.zero[i] - here.zero[i] + 0.5 * h * (here.one[i] + there.one[i])
                         : w.seq[i] + 0.5 * h * (here.full[i] + there.full[i]);
        }
        double change = 0.0, size = 0.0;
        for (std::size_t i = 0; i < upd.size(); ++i) {
          change += std::norm(upd[i] - next.seq[i]);
          size += std::norm(upd[i]);
        }
        next.seq = std::move(upd);
        if (!finite(next.seq)) break;
        if (std::sqrt(change) <= 1e-14 * std::sqrt(size)) break;
      }
    }
    if (!finite(next.seq)) throw BlowUpError("integrate_omega: non-finite state", t);
    w = std::move(next);
    if (mode == OmegaMode::nfr_form) here = parts(w);
    if ((k + 1) % cfg.save_every == 0 || k + 1 == steps) save(w);
  }
  return tr;
}

void write_csv(const Trajectory& traj, std::ostream& os, bool use_omega) {
  if (use_omega && traj.omega.size() != traj.times.size()) throw InputError("write_csv: trajectory has no omega states");
  os << "t,n,re,im\n";
  os.precision(17);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Sequence& c = use_omega ? traj.omega[k].seq : traj.u[k].coeffs();
    const int nm = static_cast<int>(c.size() / 2);
    for (int n = -nm; n <= nm; ++n) {
      const cplx z = c[static_cast<std::size_t>(n + nm)];
      os << traj.times[k] << ',' << n << ',' << z.real() << ',' << z.imag() << '\n';
    }
  }
}

namespace {

static_assert(std::endian::native == std::endian::little, "binary trajectories assume a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw InputError("read_binary: truncated stream");
  return v;
}

}  // namespace

void write_binary(const Trajectory& traj, std::ostream& os) {
  const int nm = traj.u.empty() ? 0 : traj.u.front().n_max();
  os.write("PBOT", 4);
  put<std::uint32_t>(os, 1);
  put<std::int32_t>(os, nm);
  put<std::uint64_t>(os, traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    put<double>(os, traj.times[k]);
    for (const cplx& z : traj.u[k].coeffs()) {
      put<double>(os, z.real());
      put<double>(os, z.imag());
    }
  }
}

Trajectory read_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "PBOT", 4) != 0) throw InputError("read_binary: bad magic");
  if (get<std::uint32_t>(is) != 1) throw InputError("read_binary: unsupported version");
  const int nm = get<std::int32_t>(is);
  if (nm < 0) throw InputError("read_binary: negative band");
  const auto count = get<std::uint64_t>(is);
  Trajectory tr;
  tr.config.grid = GridSpec::oversampled(nm);
  for (std::uint64_t k = 0; k < count; ++k) {
    tr.times.push_back(get<double>(is));
    SpectralField u(tr.config.grid);
    for (int n = -nm; n <= nm; ++n) {
      const double re = get<double>(is);
      u[n] = cplx(re, get<double>(is));
    }
    tr.u.push_back(std::move(u));
  }
  return tr;
}

}  // namespace pbo::solver
