#pragma once

namespace tc {

/// Spectral data of the spin-3/2 block at integer argument m:
///   d = 16 m^2 + 9,  lambda_pm = 5m +- sqrt(d),
///   v_pm = -2m - 3 +- sqrt(d),  w_pm = 2m - 3 +- sqrt(d).
struct SpectralData {
  double d = 0.0;
  double sqrt_d = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double v_plus = 0.0;
  double v_minus = 0.0;
  double w_plus = 0.0;
  double w_minus = 0.0;
};

/// Precondition m >= -1 (the smallest argument reached by any grid entry).
SpectralData spectral(long m);

// Entire functions of lambda. For lambda >= 0:
//   cosk = cos(theta sqrt(lambda)), sinck = sin(theta sqrt(lambda))/sqrt(lambda),
// continued to cosh/sinh for lambda < 0; sinck(0, theta) = theta.
double cosk(double lambda, double theta);
double sinck(double lambda, double theta);
/// lambda * sinck(lambda, theta), i.e. sqrt(lambda) sin(theta sqrt(lambda)).
double msin(double lambda, double theta);

/// |lambda| below this uses the truncated even series for sinck.
inline constexpr double kSinckSeriesCutoff = 1e-8;

}  // namespace tc
