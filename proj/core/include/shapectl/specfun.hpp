#pragma once

namespace shapectl {

/// Complementary error function, (2/sqrt(pi)) * int_z^inf exp(-t^2) dt.
double erfc(double z) noexcept;

/// Standard normal CDF, computed as erfc(-d / sqrt 2) / 2.
double norm_cdf(double d) noexcept;

/// Standard normal density.
double norm_pdf(double d) noexcept;

}  // namespace shapectl
