#include "shapectl/market.hpp"

#include <cmath>
#include <string>

#include "shapectl/error.hpp"

namespace shapectl {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidParams, std::string(field) + " " + what, field);
}

}  // namespace

void MarketParams::validate() const {
    require(std::isfinite(rate) && rate >= 0.0, "r", "must be finite and >= 0");
    require(std::isfinite(sigma) && sigma > 0.0, "sigma", "must be finite and > 0");
    require(std::isfinite(strike) && strike > 0.0, "E", "must be finite and > 0");
    require(std::isfinite(maturity) && maturity > 0.0, "T", "must be finite and > 0");
    require(std::isfinite(day_count) && day_count > 0.0, "day_count", "must be finite and > 0");
}

HeatConstants derive_constants(const MarketParams& params) {
    params.validate();
    const double k = rate_ratio(params);
    return {k, 0.5 * (1.0 - k), -0.25 * (k + 1.0) * (k + 1.0)};
}

HeatPoint to_heat(const PhysicalPoint& p, const MarketParams& params) {
    params.validate();
    if (!(p.spot > 0.0) || !std::isfinite(p.spot))
        throw Error(ErrorCode::Domain, "S must be finite and > 0", "S");
    if (!(p.time >= 0.0 && p.time <= params.maturity))
        throw Error(ErrorCode::Domain, "t must lie in [0, T]", "t");
    return {std::log(p.spot / params.strike),
            0.5 * params.sigma * params.sigma * (params.maturity - p.time)};
}

PhysicalPoint from_heat(const HeatPoint& h, const MarketParams& params) {
    params.validate();
    if (!std::isfinite(h.x)) throw Error(ErrorCode::Domain, "x must be finite", "x");
    if (!(h.tau >= 0.0 && h.tau <= params.tau_max() * (1.0 + 1e-14)))
        throw Error(ErrorCode::Domain, "tau must lie in [0, sigma^2 T / 2]", "tau");
    const double t = params.maturity - 2.0 * h.tau / (params.sigma * params.sigma);
    return {params.strike * std::exp(h.x), t < 0.0 ? 0.0 : t};
}

double heat_value_to_price(const HeatPoint& h, double u, const MarketParams& params) {
    const HeatConstants c = derive_constants(params);
    return params.strike * std::exp(c.alpha * h.x + c.beta * h.tau) * u;
}

}  // namespace shapectl
