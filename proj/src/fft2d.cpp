#include "landau/fft2d.hpp"

#include <cmath>
#include <stdexcept>

#include <fftw3.h>

namespace landau {

Fft2d::Fft2d(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("Fft2d: n must be >= 2");
  // Plan on a scratch buffer; execution uses the new-array interface.
  // FFTW_UNALIGNED keeps the plan valid for any std::vector storage.
  std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * n);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  plan_forward_ = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_inverse_ = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_forward_ || !plan_inverse_) throw std::runtime_error("Fft2d: planning failed");
}

Fft2d::~Fft2d() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inverse_));
}

void Fft2d::forward(std::vector<std::complex<double>>& data) const {
  if (data.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("Fft2d::forward: size mismatch");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_forward_), ptr, ptr);
}

void Fft2d::inverse(std::vector<std::complex<double>>& data) const {
  if (data.size() != static_cast<std::size_t>(n_) * n_)
    throw std::invalid_argument("Fft2d::inverse: size mismatch");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_inverse_), ptr, ptr);
  const double scale = 1.0 / (static_cast<double>(n_) * n_);
  for (auto& v : data) v *= scale;
}

double Fft2d::frequency(int j, int n, double l) {
  const int alias = j < n / 2 ? j : j - n;
  return 2.0 * M_PI * alias / l;
}

}  // namespace landau
