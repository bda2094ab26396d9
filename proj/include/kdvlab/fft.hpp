#pragma once

#include <complex>
#include <vector>

namespace kdvlab {

// Unnormalized c2c DFTs backed by cached plans.  Plans are created once per
// (size, direction) with deterministic planning, so repeated runs produce
// bit-identical results.  Execution is safe to call concurrently on distinct
// buffers.
namespace fft {

// out[s] = sum_i in[i] e^{-2 pi I s i / N}
void forward(const std::complex<double>* in, std::complex<double>* out, std::size_t n);
// out[i] = sum_s in[s] e^{+2 pi I s i / N}
void backward(const std::complex<double>* in, std::complex<double>* out, std::size_t n);

}  // namespace fft
}  // namespace kdvlab
