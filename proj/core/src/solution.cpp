#include "shapectl/solution.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "shapectl/error.hpp"
#include "shapectl/specfun.hpp"

namespace shapectl {

HeatJet classical_heat_jet(double x, double tau, double k) {
    const double ap = 0.5 * (k + 1.0);
    const double am = 0.5 * (k - 1.0);
    if (tau <= 0.0) {
        if (x < 0.0) return {};
        const double ep = std::exp(ap * x);
        const double em = std::exp(am * x);
        if (x == 0.0) {
            // Midpoint of the one-sided slopes, matching the tau -> 0 limit.
            return {0.0, 0.5 * (ap - am), std::numeric_limits<double>::infinity()};
        }
        return {heat_payoff(x, k), ap * ep - am * em, ap * ap * ep - am * am * em};
    }
    const double s = std::sqrt(2.0 * tau);
    const double ep = std::exp(ap * x + ap * ap * tau);
    const double em = std::exp(am * x + am * am * tau);
    const double np = norm_cdf(x / s + ap * s);
    const double nm = norm_cdf(x / s + am * s);
    // e+ phi(d+) = e- phi(d-) is the heat kernel at (x, tau); it cancels in u_x.
    const double kernel = std::exp(-x * x / (4.0 * tau)) / (2.0 * std::sqrt(std::numbers::pi * tau));
    return {ep * np - em * nm, ap * ep * np - am * em * nm,
            ap * ap * ep * np - am * am * em * nm + kernel};
}

double classical_heat(double x, double tau, double k) {
    if (tau <= 0.0) return heat_payoff(x, k);
    return classical_heat_jet(x, tau, k).value;
}

HeatJet perturbation_jet(double x, double tau, const ScaleSpec& spec, double k) {
    spec.validate();
    HeatJet sum;
    double scale = 1.0;
    for (int j = 1; j <= spec.n0; ++j) {
        scale *= spec.lambda;
        const HeatJet u = classical_heat_jet(x / scale, tau / (scale * scale), k);
        sum.value += u.value / scale;
        sum.dx += u.dx / (scale * scale);
        sum.dxx += u.dxx / (scale * scale * scale);
    }
    return sum;
}

double perturbation_heat(double x, double tau, const ScaleSpec& spec, double k) {
    spec.validate();
    double sum = 0.0;
    double scale = 1.0;
    for (int j = 1; j <= spec.n0; ++j) {
        scale *= spec.lambda;
        sum += classical_heat(x / scale, tau / (scale * scale), k) / scale;
    }
    return sum;
}

double perturbed_heat(double x, double tau, const ScaleSpec& spec, double k) {
    return classical_heat(x, tau, k) + spec.epsilon * perturbation_heat(x, tau, spec, k);
}

double erfc_profile(double x, double tau, double scale, double k) {
    if (!(tau > 0.0)) throw Error(ErrorCode::DegenerateTime, "Erfc form needs tau > 0", "tau");
    const double ap = 0.5 * (k + 1.0);
    const double am = 0.5 * (k - 1.0);
    const double root = std::sqrt(tau);
    const double z0 = -x / (2.0 * root);
    const double tp = std::exp(ap * x / scale + ap * ap * tau / (scale * scale)) *
                      erfc(z0 - ap * root / scale);
    const double tm = std::exp(am * x / scale + am * am * tau / (scale * scale)) *
                      erfc(z0 - am * root / scale);
    return (tp - tm) / (2.0 * scale);
}

double perturbed_heat_erfc(double x, double tau, const ScaleSpec& spec, double k) {
    spec.validate();
    if (!(tau > 0.0)) throw Error(ErrorCode::DegenerateTime, "Erfc form needs tau > 0", "tau");
    double sum = 0.0;
    double scale = 1.0;
    for (int j = 1; j <= spec.n0; ++j) {
        scale *= spec.lambda;
        sum += erfc_profile(x, tau, scale, k);
    }
    return erfc_profile(x, tau, 1.0, k) + spec.epsilon * sum;
}

double call_price(const PhysicalPoint& p, const MarketParams& params,
                  const std::optional<ScaleSpec>& spec) {
    const HeatPoint h = to_heat(p, params);
    const double k = rate_ratio(params);
    double u = classical_heat(h.x, h.tau, k);
    if (spec) u += spec->epsilon * perturbation_heat(h.x, h.tau, *spec, k);
    return heat_value_to_price(h, u, params);
}

void validate_grid(std::span<const double> spots, std::span<const double> times,
                   const MarketParams& params) {
    params.validate();
    if (spots.empty() || times.empty())
        throw Error(ErrorCode::GridDomain, "grids must be non-empty", "grid");
    for (std::size_t i = 0; i < spots.size(); ++i) {
        if (!(spots[i] > 0.0) || !std::isfinite(spots[i]))
            throw Error(ErrorCode::GridDomain, "S grid must be finite and > 0", "grid_s");
        if (i > 0 && !(spots[i] > spots[i - 1]))
            throw Error(ErrorCode::GridDomain, "S grid must be strictly ascending", "grid_s");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0 && times[i] <= params.maturity))
            throw Error(ErrorCode::GridDomain, "t grid must lie in [0, T]", "grid_t");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw Error(ErrorCode::GridDomain, "t grid must be strictly ascending", "grid_t");
    }
}

SolutionSurface price_surface(std::span<const double> spots, std::span<const double> times,
                              const MarketParams& params, const std::optional<ScaleSpec>& spec) {
    validate_grid(spots, times, params);
    if (spec) spec->validate();
    SolutionSurface surface{{spots.begin(), spots.end()}, {times.begin(), times.end()}, {},
                            params, spec};
    surface.values.reserve(spots.size() * times.size());
    for (double t : times)
        for (double s : spots) surface.values.push_back(call_price({s, t}, params, spec));
    return surface;
}

}  // namespace shapectl
