#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace landau {

/// Rotates a grid function counterclockwise by a fixed angle about the
/// grid center using separable local Lagrange interpolation: dst(x) =
/// src(R(-angle) x). Stencils and weights are precomputed per output
/// point, so repeated application (one per time step) costs one
/// multiply-accumulate sweep. Values sampled outside the grid are zero,
/// consistent with the negligible-boundary assumption.
class RotationResampler {
 public:
  /// taps: stencil width per axis (4 = bicubic-order, 6, or 8).
  RotationResampler(int n, double extent, double angle, int taps);

  void apply(const std::vector<std::complex<double>>& src,
             std::vector<std::complex<double>>& dst) const;

  int taps() const { return taps_; }
  double angle() const { return angle_; }

 private:
  int n_;
  int taps_;
  double angle_;
  // Per output point: base grid index of the stencil corner, or -1 when
  // the whole stencil misses the grid; weights are the tensor factors.
  std::vector<std::int32_t> base_row_;
  std::vector<std::int32_t> base_col_;
  std::vector<double> weights_row_;
  std::vector<double> weights_col_;
  std::vector<std::uint8_t> interior_;
};

}  // namespace landau
