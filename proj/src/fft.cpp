#include "pbo/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "pbo/errors.hpp"

namespace pbo::fft {
namespace {

// The FFTW planner is not re-entrant; plans are created under a lock and
// executed through the new-array interface, which is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int size, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(size, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<cplx> a(static_cast<std::size_t>(size)), b(a.size());
    fftw_plan plan = fftw_plan_dft_1d(size, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size() || in.empty()) throw InputError("fft: size mismatch");
  if (in.data() == out.data()) throw InputError("fft: in-place transform not supported");
  fftw_plan plan = cache().get(static_cast<int>(in.size()), sign);
  // FFTW does not modify the input of an out-of-place complex transform.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_FORWARD); }

void backward(std::span<const cplx> in, std::span<cplx> out) { execute(in, out, FFTW_BACKWARD); }

int good_size(int min_size) {
  for (int n = std::max(min_size, 1);; ++n) {
    int m = n;
    for (int p : {2, 3, 5})
      while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

}  // namespace pbo::fft
