#pragma once

#include <complex>
#include <vector>

namespace landau {

/// In-place complex 2D DFT on square row-major data (index = row*n + col),
/// FFTW backend. forward() is the unnormalized DFT; inverse() applies the
/// 1/n^2 factor, so inverse(forward(x)) == x.
class Fft2d {
 public:
  explicit Fft2d(int n);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  void forward(std::vector<std::complex<double>>& data) const;
  void inverse(std::vector<std::complex<double>>& data) const;

  int size() const { return n_; }

  /// Angular frequency of DFT index j on a grid of physical extent l:
  /// 2*pi*j/l for j < n/2, negative alias above.
  static double frequency(int j, int n, double l);

 private:
  int n_;
  void* plan_forward_;
  void* plan_inverse_;
};

}  // namespace landau
