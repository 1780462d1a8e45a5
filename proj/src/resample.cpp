#include "landau/resample.hpp"

#include <cmath>
#include <stdexcept>

namespace landau {

RotationResampler::RotationResampler(int n, double extent, double angle, int taps)
    : n_(n), taps_(taps), angle_(angle) {
  if (n < 2) throw std::invalid_argument("RotationResampler: n must be >= 2");
  if (!(extent > 0.0)) throw std::invalid_argument("RotationResampler: extent must be > 0");
  if (taps != 4 && taps != 5 && taps != 6 && taps != 8)
    throw std::invalid_argument("RotationResampler: taps must be 4, 5, 6 or 8");

  const std::size_t points = static_cast<std::size_t>(n) * n;
  base_row_.resize(points);
  base_col_.resize(points);
  weights_row_.resize(points * taps);
  weights_col_.resize(points * taps);
  interior_.resize(points);

  const double dx = extent / n;
  const double half = 0.5 * extent;
  const double c = std::cos(angle), s = std::sin(angle);
  const int lead = (taps - 1) / 2;  // stencil points at or below floor(u)

  auto lagrange = [taps](double frac, double* w) {
    // frac = u - base; nodes sit at offsets 0..taps-1.
    for (int k = 0; k < taps; ++k) {
      double acc = 1.0;
      for (int j = 0; j < taps; ++j)
        if (j != k) acc *= (frac - j) / (k - j);
      w[k] = acc;
    }
  };

  for (int r = 0; r < n; ++r) {
    const double y = -half + r * dx;
    for (int col = 0; col < n; ++col) {
      const double x = -half + col * dx;
      // Pull back through the inverse rotation R(-angle).
      const double xs = c * x + s * y;
      const double ys = -s * x + c * y;
      const double u = (xs + half) / dx;  // column axis
      const double v = (ys + half) / dx;  // row axis
      const std::size_t idx = static_cast<std::size_t>(r) * n + col;
      const int bu = static_cast<int>(std::floor(u)) - lead;
      const int bv = static_cast<int>(std::floor(v)) - lead;
      base_col_[idx] = bu;
      base_row_[idx] = bv;
      lagrange(u - bu, &weights_col_[idx * taps]);
      lagrange(v - bv, &weights_row_[idx * taps]);
      interior_[idx] = bu >= 0 && bv >= 0 && bu + taps <= n && bv + taps <= n;
    }
  }
}

void RotationResampler::apply(const std::vector<std::complex<double>>& src,
                              std::vector<std::complex<double>>& dst) const {
  const std::size_t points = static_cast<std::size_t>(n_) * n_;
  if (src.size() != points) throw std::invalid_argument("RotationResampler: size mismatch");
  dst.resize(points);
  for (std::size_t idx = 0; idx < points; ++idx) {
    const int br = base_row_[idx], bc = base_col_[idx];
    const double* wr = &weights_row_[idx * taps_];
    const double* wc = &weights_col_[idx * taps_];
    std::complex<double> acc(0.0, 0.0);
    if (interior_[idx]) {
      for (int kr = 0; kr < taps_; ++kr) {
        const std::complex<double>* row = &src[static_cast<std::size_t>(br + kr) * n_ + bc];
        std::complex<double> line(0.0, 0.0);
        for (int kc = 0; kc < taps_; ++kc) line += wc[kc] * row[kc];
        acc += wr[kr] * line;
      }
    } else {
      for (int kr = 0; kr < taps_; ++kr) {
        const int rr = br + kr;
        if (rr < 0 || rr >= n_) continue;
        std::complex<double> line(0.0, 0.0);
        for (int kc = 0; kc < taps_; ++kc) {
          const int cc = bc + kc;
          if (cc < 0 || cc >= n_) continue;
          line += wc[kc] * src[static_cast<std::size_t>(rr) * n_ + cc];
        }
        acc += wr[kr] * line;
      }
    }
    dst[idx] = acc;
  }
}

}  // namespace landau
