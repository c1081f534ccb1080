#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pbo/errors.hpp"
#include "pbo/estimates.hpp"
#include "pbo/fourier.hpp"

namespace pbo::tools {

/// Initial data: zero, cos (amp cos x), smooth (three low modes), random
/// (random-phase profile on the lowest quarter of the band, H^s norm amp).
inline SpectralField make_datum(const std::string& kind, int n_max, double amp, double s, std::uint64_t seed) {
  const GridSpec grid = GridSpec::oversampled(n_max);
  std::vector<cplx> pos(static_cast<std::size_t>(n_max));
  if (kind == "zero") return SpectralField(grid);
  if (kind == "cos") {
    if (n_max >= 1) pos[0] = 0.5 * amp;
    return real_field_from_positive(grid, pos);
  }
  if (kind == "smooth") {
    if (n_max < 3) throw ConfigError("smooth datum needs n_max >= 3");
    pos[0] = amp;
    pos[1] = cplx(0.0, 0.5 * amp);
    pos[2] = 0.25 * amp;
    return real_field_from_positive(grid, pos);
  }
  if (kind == "random") {
    est::SamplerSpec spec{.n_max = std::max(1, n_max / 4), .s = s, .profile = est::Profile::random_phase, .seed = seed};
    return est::embed(est::sample_field(spec, amp), n_max).on_grid(grid);
  }
  throw ConfigError("unknown datum '" + kind + "' (zero, cos, smooth, random)");
}

/// "lo:hi:k" -> lo, lo 2^{1/k}, ..., hi (k points per octave; k defaults to 1).
inline std::vector<double> parse_m_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError("--m-sweep expects lo:hi or lo:hi:points-per-octave");
  double lo = 0, hi = 0;
  int k = 1;
  try {
    lo = std::stod(parts[0]);
    hi = std::stod(parts[1]);
    if (parts.size() == 3) k = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("--m-sweep: malformed number in '" + text + "'");
  }
  if (!(lo > 0 && hi > lo) || k < 1) throw ConfigError("--m-sweep: need 0 < lo < hi and k >= 1");
  const int steps = static_cast<int>(std::lround(k * std::log2(hi / lo)));
  std::vector<double> out;
  for (int i = 0; i <= steps; ++i) out.push_back(lo * std::exp2(static_cast<double>(i) / k));
  return out;
}

}  // namespace pbo::tools
