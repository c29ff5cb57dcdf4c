#include "shapectl/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "shapectl/error.hpp"
#include "shapectl/quadrature.hpp"

namespace shapectl {

void ScaleSpec::validate() const {
    if (!(std::isfinite(lambda) && lambda > 1.0))
        throw Error(ErrorCode::InvalidParams, "lambda must be finite and > 1", "lambda");
    if (n0 < 1) throw Error(ErrorCode::InvalidParams, "n0 must be >= 1", "n0");
    if (epsilon != 1 && epsilon != -1)
        throw Error(ErrorCode::InvalidParams, "eps must be +1 or -1", "eps");
}

double heat_payoff(double x, double k) noexcept {
    if (x <= 0.0) return 0.0;
    return std::max(std::exp(0.5 * (k + 1.0) * x) - std::exp(0.5 * (k - 1.0) * x), 0.0);
}

double profile_sum(double x, const ScaleSpec& spec, double k) {
    spec.validate();
    double sum = 0.0;
    double scale = 1.0;
    for (int j = 1; j <= spec.n0; ++j) {
        scale *= spec.lambda;
        sum += heat_payoff(x / scale, k) / scale;
    }
    return sum;
}

double scaled_initial_data(double x, const ScaleSpec& spec, double k) {
    return heat_payoff(x, k) + spec.epsilon * profile_sum(x, spec, k);
}

L2Report l2_consistency(const ScaleSpec& spec, double k, Interval interval, double quad_tol) {
    spec.validate();
    if (!(interval.lo >= 0.0 && interval.lo < interval.hi))
        throw Error(ErrorCode::InvalidParams, "interval must satisfy 0 <= a < b", "interval");
    if (!(quad_tol > 0.0)) throw Error(ErrorCode::InvalidParams, "quad_tol must be > 0", "quad_tol");

    auto integrate = [&](auto&& f) {
        return integrate_adaptive_simpson(f, interval.lo, interval.hi, quad_tol).value;
    };

    L2Report report;
    report.interval = interval;
    report.base_norm_sq = integrate([k](double x) {
        const double c0 = heat_payoff(x, k);
        return c0 * c0;
    });
    report.deviation_sq = integrate([&](double x) {
        const double d = profile_sum(x, spec, k);
        return d * d;
    });

    const double inv = 1.0 / spec.lambda;
    report.upper_bound =
        inv * (1.0 - std::pow(inv, spec.n0)) / (1.0 - inv) * report.base_norm_sq;

    double cross = 0.0;
    for (int j = 1; j <= spec.n0; ++j) {
        const double sj = std::pow(spec.lambda, j);
        for (int m = j + 1; m <= spec.n0; ++m) {
            const double sm = std::pow(spec.lambda, m);
            cross += 2.0 / (sj * sm) * integrate([&](double x) {
                return heat_payoff(x / sj, k) * heat_payoff(x / sm, k);
            });
        }
    }
    report.cross_term = cross;
    return report;
}

double find_lambda0(double eps_tol, int n0, double k, Interval interval,
                    const Lambda0Options& options) {
    if (!(eps_tol > 0.0)) throw Error(ErrorCode::InvalidParams, "eps_tol must be > 0", "eps_tol");
    if (!(options.lambda_lo > 1.0 && options.lambda_lo < options.lambda_hi))
        throw Error(ErrorCode::InvalidParams, "need 1 < lambda_lo < lambda_hi", "lambda_lo");

    auto passes = [&](double lambda) {
        return l2_consistency({lambda, n0, +1}, k, interval, options.quad_tol).deviation_sq <=
               eps_tol;
    };

    const double decades = std::log10(options.lambda_hi / options.lambda_lo);
    const int n = std::max(1, static_cast<int>(std::ceil(decades * options.points_per_decade)));
    std::vector<double> grid(n + 1);
    for (int i = 0; i <= n; ++i)
        grid[i] = options.lambda_lo * std::pow(options.lambda_hi / options.lambda_lo,
                                               static_cast<double>(i) / n);

    // Walk down from the top: the answer is the start of the passing tail.
    int first_pass = n + 1;
    for (int i = n; i >= 0; --i) {
        if (!passes(grid[i])) break;
        first_pass = i;
    }
    if (first_pass == n + 1)
        throw Error(ErrorCode::NotFound, "deviation tolerance unreachable below lambda_hi");
    if (first_pass == 0) return grid[0];

    double lo = grid[first_pass - 1];
    double hi = grid[first_pass];
    while (hi / lo > 1.0 + options.refine_rel) {
        const double mid = std::sqrt(lo * hi);
        (passes(mid) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<CurvePoint> initial_condition_curve(std::span<const double> spots,
                                                const ScaleSpec& spec,
                                                const MarketParams& params) {
    spec.validate();
    params.validate();
    const double k = rate_ratio(params);
    std::vector<CurvePoint> out;
    out.reserve(spots.size());
    for (double s : spots) {
        if (s < 0.0) throw Error(ErrorCode::GridDomain, "S must be >= 0", "S");
        // S = 0 maps to x = -inf where both curves vanish.
        if (s == 0.0) {
            out.push_back({s, 0.0, 0.0});
            continue;
        }
        const double x = std::log(s / params.strike);
        out.push_back({s, heat_payoff(x, k), scaled_initial_data(x, spec, k)});
    }
    return out;
}

}  // namespace shapectl
