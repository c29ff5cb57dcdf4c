#include "shapectl/greeks.hpp"

#include <cmath>

#include "shapectl/error.hpp"
#include "shapectl/specfun.hpp"

namespace shapectl {

namespace {

struct BlackScholesTerms {
    double remaining;  // T - t, years
    double sqrt_remaining;
    double d1;
    double d2;
};

bool at_expiry(const PhysicalPoint& p, const MarketParams& params) {
    params.validate();
    if (!(p.spot > 0.0)) throw Error(ErrorCode::Domain, "S must be > 0", "S");
    if (!(p.time >= 0.0 && p.time <= params.maturity))
        throw Error(ErrorCode::Domain, "t must lie in [0, T]", "t");
    if (p.time < params.maturity) return false;
    if (p.spot == params.strike)
        throw Error(ErrorCode::ExpiryKink, "greeks are undefined at S = E, t = T", "t");
    return true;
}

BlackScholesTerms terms(const PhysicalPoint& p, const MarketParams& params) {
    const double remaining = params.maturity - p.time;
    const double root = std::sqrt(remaining);
    const double vol_root = params.sigma * root;
    const double d1 = (std::log(p.spot / params.strike) +
                       (params.rate + 0.5 * params.sigma * params.sigma) * remaining) /
                      vol_root;
    return {remaining, root, d1, d1 - vol_root};
}

struct ShiftParts {
    double prefactor;  // E e^{alpha x + beta tau}
    HeatConstants c;
    HeatJet w;
};

ShiftParts shift_parts(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec) {
    at_expiry(p, params);
    const HeatPoint h = to_heat(p, params);
    const HeatConstants c = derive_constants(params);
    return {params.strike * std::exp(c.alpha * h.x + c.beta * h.tau), c,
            perturbation_jet(h.x, h.tau, spec, c.k)};
}

}  // namespace

double delta_classical(const PhysicalPoint& p, const MarketParams& params) {
    if (at_expiry(p, params)) return p.spot > params.strike ? 1.0 : 0.0;
    return norm_cdf(terms(p, params).d1);
}

double gamma_classical(const PhysicalPoint& p, const MarketParams& params) {
    if (at_expiry(p, params)) return 0.0;
    const BlackScholesTerms bs = terms(p, params);
    return norm_pdf(bs.d1) / (p.spot * params.sigma * bs.sqrt_remaining);
}

double delta_shift(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec) {
    const ShiftParts s = shift_parts(p, params, spec);
    return spec.epsilon * s.prefactor / p.spot * (s.c.alpha * s.w.value + s.w.dx);
}

double delta_perturbed(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec) {
    return delta_classical(p, params) + delta_shift(p, params, spec);
}

double gamma_shift(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec) {
    const ShiftParts s = shift_parts(p, params, spec);
    const double a = s.c.alpha;
    return spec.epsilon * s.prefactor / (p.spot * p.spot) *
           ((a * a - a) * s.w.value + (2.0 * a - 1.0) * s.w.dx + s.w.dxx);
}

double gamma_perturbed(const PhysicalPoint& p, const MarketParams& params, const ScaleSpec& spec) {
    return gamma_classical(p, params) + gamma_shift(p, params, spec);
}

VegaThetaRho vega_theta_rho(const PhysicalPoint& p, const MarketParams& params) {
    if (at_expiry(p, params))
        return {0.0, p.spot > params.strike ? -params.rate * params.strike : 0.0, 0.0};
    const BlackScholesTerms bs = terms(p, params);
    const double discount = std::exp(-params.rate * bs.remaining);
    const double pdf = norm_pdf(bs.d1);
    return {p.spot * pdf * bs.sqrt_remaining,
            -p.spot * pdf * params.sigma / (2.0 * bs.sqrt_remaining) -
                params.rate * params.strike * discount * norm_cdf(bs.d2),
            params.strike * bs.remaining * discount * norm_cdf(bs.d2)};
}

GreeksReport classical_greeks(const PhysicalPoint& p, const MarketParams& params) {
    const VegaThetaRho vtr = vega_theta_rho(p, params);
    return {delta_classical(p, params), gamma_classical(p, params), vtr.vega, vtr.theta, vtr.rho,
            std::nullopt};
}

GreeksReport perturbed_greeks(const PhysicalPoint& p, const MarketParams& params,
                              const ScaleSpec& spec) {
    GreeksReport report = classical_greeks(p, params);
    report.scale = spec;
    report.delta += delta_shift(p, params, spec);
    report.gamma += gamma_shift(p, params, spec);

    // Each profile solves u_tau = u_xx, so dC/dt = -(sigma^2/2) E e^{..} (beta w + w_xx).
    const ShiftParts s = shift_parts(p, params, spec);
    report.theta += -0.5 * params.sigma * params.sigma * spec.epsilon * s.prefactor *
                    (s.c.beta * s.w.value + s.w.dxx);

    const PriceFunction shift_price = [&spec](const PhysicalPoint& q, const MarketParams& m) {
        return call_price(q, m, spec) - call_price(q, m);
    };
    report.vega += fd_greek(shift_price, p, params, FdGreek::Sigma, 1e-5);
    report.rho += fd_greek(shift_price, p, params, FdGreek::Rate, 1e-6);
    return report;
}

double fd_greek(const PriceFunction& price, const PhysicalPoint& p, const MarketParams& params,
                FdGreek which, double step) {
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidParams, "step must be > 0", "step");
    auto check_scale = [step](double variable) {
        if (step < 1e-12 * std::max(std::abs(variable), 1.0))
            throw Error(ErrorCode::StepUnderflow, "finite-difference step too small", "step");
    };
    auto at_spot = [&](double s) { return price({s, p.time}, params); };
    auto at_time = [&](double t) { return price({p.spot, t}, params); };
    auto at_sigma = [&](double v) {
        MarketParams q = params;
        q.sigma = v;
        return price(p, q);
    };
    auto at_rate = [&](double r) {
        MarketParams q = params;
        q.rate = r;
        return price(p, q);
    };
    auto centered = [step](auto&& f, double v) { return (f(v + step) - f(v - step)) / (2.0 * step); };
    // Second-order one-sided stencils, direction +1 (forward) or -1 (backward).
    auto one_sided = [step](auto&& f, double v, double dir) {
        return dir * (-3.0 * f(v) + 4.0 * f(v + dir * step) - f(v + 2.0 * dir * step)) / (2.0 * step);
    };

    switch (which) {
        case FdGreek::Spot:
        case FdGreek::Spot2: {
            check_scale(p.spot);
            if (!(p.spot - step > 0.0))
                throw Error(ErrorCode::Domain, "S - step must stay > 0", "step");
            if (which == FdGreek::Spot) return centered(at_spot, p.spot);
            return (at_spot(p.spot + step) - 2.0 * at_spot(p.spot) + at_spot(p.spot - step)) /
                   (step * step);
        }
        case FdGreek::Sigma:
            check_scale(params.sigma);
            if (!(params.sigma - step > 0.0))
                throw Error(ErrorCode::Domain, "sigma - step must stay > 0", "step");
            return centered(at_sigma, params.sigma);
        case FdGreek::Time:
            check_scale(p.time);
            if (2.0 * step > params.maturity)
                throw Error(ErrorCode::Domain, "time step too large for [0, T]", "step");
            if (p.time - step < 0.0) return one_sided(at_time, p.time, +1.0);
            if (p.time + step > params.maturity) return one_sided(at_time, p.time, -1.0);
            return centered(at_time, p.time);
        case FdGreek::Rate:
            check_scale(params.rate);
            if (params.rate - step < 0.0) return one_sided(at_rate, params.rate, +1.0);
            return centered(at_rate, params.rate);
    }
    throw Error(ErrorCode::InvalidParams, "unknown finite-difference target");
}

SolutionSurface delta_shift_surface(std::span<const double> spots, std::span<const double> times,
                                    const MarketParams& params, const ScaleSpec& spec) {
    validate_grid(spots, times, params);
    spec.validate();
    SolutionSurface surface{{spots.begin(), spots.end()}, {times.begin(), times.end()}, {},
                            params, spec, "delta_shift", "dimensionless"};
    surface.values.reserve(spots.size() * times.size());
    for (double t : times)
        for (double s : spots) surface.values.push_back(delta_shift({s, t}, params, spec));
    return surface;
}

}  // namespace shapectl
