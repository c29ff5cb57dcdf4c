#pragma once

namespace shapectl {

/// Physical definition of a European call under Black-Scholes.
///
/// Rates and volatility are annualized; `day_count` converts day-denominated
/// inputs into years.
struct MarketParams {
    double rate = 0.0;       ///< risk-free rate r, per year
    double sigma = 0.0;      ///< volatility, per sqrt(year)
    double strike = 0.0;     ///< exercise price E
    double maturity = 0.0;   ///< horizon T, years
    double day_count = 365.0;

    /// Throws Error(InvalidParams) naming the first violated field.
    void validate() const;

    [[nodiscard]] double days_to_years(double days) const noexcept { return days / day_count; }

    /// Heat time at t = 0, i.e. sigma^2 T / 2.
    [[nodiscard]] double tau_max() const noexcept { return 0.5 * sigma * sigma * maturity; }
};

/// Coefficients of the reduction to the normalized heat equation.
struct HeatConstants {
    double k = 0.0;      ///< 2r / sigma^2
    double alpha = 0.0;  ///< (1 - k) / 2
    double beta = 0.0;   ///< -(k + 1)^2 / 4
};

struct HeatPoint {
    double x = 0.0;    ///< log-moneyness ln(S/E)
    double tau = 0.0;  ///< sigma^2 (T - t) / 2
};

struct PhysicalPoint {
    double spot = 0.0;  ///< S
    double time = 0.0;  ///< calendar time t in years, 0 <= t <= T
};

HeatConstants derive_constants(const MarketParams& params);

/// k alone, for callers that only need the heat-space payoff.
[[nodiscard]] inline double rate_ratio(const MarketParams& params) noexcept {
    return 2.0 * params.rate / (params.sigma * params.sigma);
}

HeatPoint to_heat(const PhysicalPoint& p, const MarketParams& params);
PhysicalPoint from_heat(const HeatPoint& h, const MarketParams& params);

/// E * exp(alpha x + beta tau) * u.
double heat_value_to_price(const HeatPoint& h, double u, const MarketParams& params);

}  // namespace shapectl
