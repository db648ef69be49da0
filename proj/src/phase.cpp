#include "raman/phase.hpp"

#include <algorithm>
#include <cmath>

namespace raman {

cplx phase_integral(double delta, double t, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double x = delta * t;
  if (std::abs(x) > kSeriesThreshold) {
    // exp(i y) - 1 = -2 sin^2(y/2) + i sin y avoids the cancellation in cos y - 1.
    const double half = std::sin(0.5 * s * x);
    return {-2.0 * half * half / delta, std::sin(s * x) / delta};
  }
  const double re = -0.5 * x * t + x * x * x * t / 24.0;
  const double im = s * (t - x * x * t / 6.0);
  return {re, im};
}

cplx phase_dd1(int sign, double x0, double x1, double t) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return std::polar(1.0, s * x0 * t) * phase_integral(x1 - x0, t, sign);
}

cplx phase_dd2(int sign, double x0, double x1, double x2, double t) {
  double x[3] = {x0, x1, x2};
  std::sort(x, x + 3);
  const double spread = x[2] - x[0];
  if (std::abs(spread * t) > kSeriesThreshold)
    return (phase_dd1(sign, x[1], x[2], t) - phase_dd1(sign, x[0], x[1], t)) / spread;

  // Taylor expansion about the node mean:
  // f[x0,x1,x2] = sum_k f^(k+2)(mean) / (k+2)! * h_k(d), d_i = x_i - mean,
  // with h_k the complete homogeneous symmetric polynomial (h_1 = 0).
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double mean = (x[0] + x[1] + x[2]) / 3.0;
  const double d[3] = {x[0] - mean, x[1] - mean, x[2] - mean};
  double h[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  // h_k(d0,d1,d2) via h_k(d0..dj) = h_k(d0..dj-1) + dj h_{k-1}(d0..dj).
  {
    double hk[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
    for (double dj : d)
      for (int k = 1; k < 5; ++k) hk[k] += dj * hk[k - 1];
    for (int k = 0; k < 5; ++k) h[k] = hk[k];
  }
  const cplx ist{0.0, s * t};
  const cplx base = std::polar(1.0, s * mean * t);
  cplx sum = 0.0;
  cplx deriv = ist * ist;  // (i s t)^(k+2)
  double fact = 2.0;       // (k+2)!
  for (int k = 0; k < 5; ++k) {
    sum += deriv / fact * h[k];
    deriv *= ist;
    fact *= static_cast<double>(k + 3);
  }
  return base * sum;
}

}  // namespace raman
