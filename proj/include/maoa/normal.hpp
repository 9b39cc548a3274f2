#pragma once

// Standard normal distribution functions accurate deep into the tails.
//
// The cdf is evaluated through the complementary error function so that
// lower-tail probabilities keep full relative precision down to ~1e-300.
// The quantile starts from Acklam's rational approximation (relative error
// ~1.15e-9) and polishes it with two Halley steps against that cdf.

namespace maoa::normal {

double pdf(double x);

/// P(Z < x).
double cdf(double x);

/// P(Z > x), computed without cancellation for large positive x.
double sf(double x);

/// Inverse of cdf. quantile(0) = -inf, quantile(1) = +inf.
/// Throws std::domain_error outside [0, 1] or for NaN.
double quantile(double p);

/// Inverse of sf: returns x with P(Z > x) = q. Accurate for tiny q.
double upper_quantile(double q);

}  // namespace maoa::normal
