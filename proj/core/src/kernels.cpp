#include "tc/kernels.hpp"

#include <cmath>

#include "tc/errors.hpp"

namespace tc {

SpectralData spectral(long m) {
  if (m < -1) throw UsageError("spectral data is only reached for m >= -1");
  const auto x = static_cast<double>(m);
  SpectralData s;
  s.d = 16.0 * x * x + 9.0;
  s.sqrt_d = std::sqrt(s.d);
  s.lambda_plus = 5.0 * x + s.sqrt_d;
  s.lambda_minus = 5.0 * x - s.sqrt_d;
  s.v_plus = -2.0 * x - 3.0 + s.sqrt_d;
  s.v_minus = -2.0 * x - 3.0 - s.sqrt_d;
  s.w_plus = 2.0 * x - 3.0 + s.sqrt_d;
  s.w_minus = 2.0 * x - 3.0 - s.sqrt_d;
  return s;
}

double cosk(double lambda, double theta) {
  if (lambda >= 0.0) return std::cos(theta * std::sqrt(lambda));
  return std::cosh(theta * std::sqrt(-lambda));
}

double sinck(double lambda, double theta) {
  if (std::abs(lambda) < kSinckSeriesCutoff) {
    const double t2 = theta * theta;
    return theta * (1.0 - lambda * t2 / 6.0 + lambda * lambda * t2 * t2 / 120.0);
  }
  if (lambda > 0.0) {
    const double root = std::sqrt(lambda);
    return std::sin(theta * root) / root;
  }
  const double root = std::sqrt(-lambda);
  return std::sinh(theta * root) / root;
}

double msin(double lambda, double theta) { return lambda * sinck(lambda, theta); }

}  // namespace tc
