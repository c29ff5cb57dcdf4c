#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shapectl/market.hpp"
#include "shapectl/profiles.hpp"

namespace shapectl {

/// Value of a heat-space function and its first two x-derivatives.
struct HeatJet {
    double value = 0.0;
    double dx = 0.0;
    double dxx = 0.0;
};

/// Classical solution of the normalized heat equation for the call payoff.
/// At tau = 0 it returns the payoff itself.
double classical_heat(double x, double tau, double k);

/// classical_heat with its x-derivatives. At tau = 0 the derivatives are the
/// one-sided payoff derivatives (the kink at x = 0 is the caller's problem).
HeatJet classical_heat_jet(double x, double tau, double k);

/// sum_{j=1..n0} lambda^-j classical_heat(x / lambda^j, tau / lambda^2j), unsigned.
double perturbation_heat(double x, double tau, const ScaleSpec& spec, double k);

/// x-derivatives of perturbation_heat; the j-th profile contributes
/// lambda^-j u, lambda^-2j u_x and lambda^-3j u_xx at the scaled point.
HeatJet perturbation_jet(double x, double tau, const ScaleSpec& spec, double k);

/// Exact heat solution for the scale-perturbed initial data, written as the
/// classical solution plus rescaled copies of itself.
double perturbed_heat(double x, double tau, const ScaleSpec& spec, double k);

/// One profile in Erfc form, for profile scale `scale` = lambda^j:
///   (1 / 2 scale) [ e^{a+ x/scale + a+^2 tau/scale^2} erfc(-x/(2 sqrt tau) - a+ sqrt(tau)/scale)
///                 - e^{a- x/scale + a-^2 tau/scale^2} erfc(-x/(2 sqrt tau) - a- sqrt(tau)/scale) ]
/// with a+- = (k +- 1) / 2. Requires tau > 0.
double erfc_profile(double x, double tau, double scale, double k);

/// Same solution as perturbed_heat, summed from erfc_profile terms.
/// Throws Error(DegenerateTime) at tau = 0.
double perturbed_heat_erfc(double x, double tau, const ScaleSpec& spec, double k);

/// Call price at p; with a spec, the price of the perturbed problem.
double call_price(const PhysicalPoint& p, const MarketParams& params,
                  const std::optional<ScaleSpec>& spec = std::nullopt);

/// Values on an (S, t) grid, row-major over (t, S).
struct SolutionSurface {
    std::vector<double> spots;
    std::vector<double> times;
    std::vector<double> values;
    MarketParams params;
    std::optional<ScaleSpec> scale;
    std::string quantity = "price";
    std::string units = "currency";

    [[nodiscard]] double at(std::size_t time_index, std::size_t spot_index) const {
        return values[time_index * spots.size() + spot_index];
    }
};

/// Throws Error(GridDomain) unless both grids are non-empty, strictly
/// ascending, S > 0 and t in [0, T].
void validate_grid(std::span<const double> spots, std::span<const double> times,
                   const MarketParams& params);

SolutionSurface price_surface(std::span<const double> spots, std::span<const double> times,
                              const MarketParams& params,
                              const std::optional<ScaleSpec>& spec = std::nullopt);

}  // namespace shapectl
