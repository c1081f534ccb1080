#pragma once

#include <complex>
#include <span>

namespace pbo::fft {

using cplx = std::complex<double>;

// Unnormalized complex DFTs of length out.size() == in.size():
//   forward:  out[k] = sum_j in[j] e^{-2 pi i jk/L}
//   backward: out[j] = sum_k in[k] e^{+2 pi i jk/L}
// Plans are cached per length; execution is thread-safe.
void forward(std::span<const cplx> in, std::span<cplx> out);
void backward(std::span<const cplx> in, std::span<cplx> out);

/// Smallest L >= min_size of the form 2^a 3^b 5^c.
int good_size(int min_size);

}  // namespace pbo::fft
