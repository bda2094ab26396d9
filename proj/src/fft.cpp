#include "kdvlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace kdvlab {
namespace fft {
namespace {

// FFTW planner is not thread-safe; executing a plan on new arrays is.
// FFTW_UNALIGNED keeps plans valid for arbitrarily aligned caller buffers.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan p = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const std::complex<double>* in, std::complex<double>* out, std::size_t n,
         int sign) {
  fftw_plan p = cache().get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const std::complex<double>* in, std::complex<double>* out, std::size_t n) {
  run(in, out, n, FFTW_FORWARD);
}

void backward(const std::complex<double>* in, std::complex<double>* out, std::size_t n) {
  run(in, out, n, FFTW_BACKWARD);
}

}  // namespace fft
}  // namespace kdvlab
