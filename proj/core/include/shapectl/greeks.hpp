#pragma once

#include <functional>
#include <optional>
#include <span>

#include "shapectl/market.hpp"
#include "shapectl/profiles.hpp"
#include "shapectl/solution.hpp"

namespace shapectl {

/// Price sensitivities at one point.
///
/// Theta is dC/dt in calendar time (per year), so it is negative for a call
/// before expiry. Vega is per unit volatility, rho per unit rate.
struct GreeksReport {
    double delta = 0.0;
    double gamma = 0.0;
    double vega = 0.0;
    double theta = 0.0;
    double rho = 0.0;
    std::optional<ScaleSpec> scale;  ///< empty for the classical variant
};

// All closed forms below accept t = T away from the strike and return the
// expiry limits; at (S = E, t = T) they throw Error(ExpiryKink).

double delta_classical(const PhysicalPoint& p, const MarketParams& params);
double gamma_classical(const PhysicalPoint& p, const MarketParams& params);

/// Delta - Delta_classical: the derivative in S of the perturbation term,
///   epsilon (E/S) e^{alpha x + beta tau} sum_j [alpha lambda^-j u + lambda^-2j u_x],
/// with u and u_x the classical heat solution at (x/lambda^j, tau/lambda^2j).
double delta_shift(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec);
double delta_perturbed(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec);

/// Gamma - Gamma_classical; the lambda^-3j u_xx terms carry the leading part.
double gamma_shift(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec);
double gamma_perturbed(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec);

struct VegaThetaRho {
    double vega = 0.0;
    double theta = 0.0;
    double rho = 0.0;
};

VegaThetaRho vega_theta_rho(const PhysicalPoint& p, const MarketParams& params);

GreeksReport classical_greeks(const PhysicalPoint& p, const MarketParams& params);

/// Delta, gamma and theta are closed form (theta via the heat equation
/// u_tau = u_xx). Vega and rho are finite differences of the perturbed price.
GreeksReport perturbed_greeks(const PhysicalPoint& p, const MarketParams& params,
                              const ScaleSpec& spec);

enum class FdGreek { Spot, Spot2, Sigma, Time, Rate };

using PriceFunction = std::function<double(const PhysicalPoint&, const MarketParams&)>;

/// Centered finite difference of `price` in the chosen variable.
///
/// Time and Rate fall back to a second-order one-sided stencil when the
/// centered stencil would leave t in [0, T] or r >= 0. Throws
/// Error(StepUnderflow) if step < 1e-12 * max(|variable|, 1).
double fd_greek(const PriceFunction& price, const PhysicalPoint& p, const MarketParams& params,
                FdGreek which, double step);

/// Delta - Delta_classical on a grid (quantity "delta_shift").
SolutionSurface delta_shift_surface(std::span<const double> spots, std::span<const double> times,
                                    const MarketParams& params, const ScaleSpec& spec);

}  // namespace shapectl
