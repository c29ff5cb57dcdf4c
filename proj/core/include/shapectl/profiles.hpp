#pragma once

#include <span>
#include <vector>

#include "shapectl/market.hpp"

namespace shapectl {

/// Shape parameter of the perturbation family
///   C0 + epsilon * sum_{j=1..n0} lambda^-j C0(x / lambda^j).
struct ScaleSpec {
    double lambda = 10.0;
    int n0 = 1;
    int epsilon = +1;

    /// Throws Error(InvalidParams): lambda > 1, n0 >= 1, epsilon in {-1, +1}.
    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Squared L2 distance between the perturbed and unperturbed initial data.
struct L2Report {
    double deviation_sq = 0.0;  ///< ||F(C0) - C0||^2 on the interval
    double upper_bound = 0.0;   ///< lambda^-1 (1 - lambda^-n0) / (1 - lambda^-1) * ||C0||^2
    double cross_term = 0.0;    ///< 2 sum_{j<m} lambda^{-j-m} (C0(./lambda^j), C0(./lambda^m))
    double base_norm_sq = 0.0;  ///< ||C0||^2
    Interval interval;
};

/// Heat-space call payoff max(e^{(k+1)x/2} - e^{(k-1)x/2}, 0).
double heat_payoff(double x, double k) noexcept;

/// sum_{j=1..n0} lambda^-j C0(x / lambda^j), without the sign.
double profile_sum(double x, const ScaleSpec& spec, double k);

/// C0(x) + epsilon * profile_sum(x).
double scaled_initial_data(double x, const ScaleSpec& spec, double k);

L2Report l2_consistency(const ScaleSpec& spec, double k, Interval interval, double quad_tol);

struct Lambda0Options {
    double lambda_lo = 1.01;
    double lambda_hi = 1e8;
    int points_per_decade = 8;
    double refine_rel = 0.01;
    double quad_tol = 1e-12;
};

/// Smallest lambda past which the L2 deviation stays below `eps_tol`.
///
/// Scans a logarithmic grid from `lambda_lo` to `lambda_hi`, takes the lowest
/// grid point whose whole upper tail passes, then bisects geometrically
/// against its failing neighbour to `refine_rel`. Throws Error(NotFound) when
/// even `lambda_hi` fails.
double find_lambda0(double eps_tol, int n0, double k, Interval interval,
                    const Lambda0Options& options = {});

/// One sample of the initial-condition comparison plotted against S.
struct CurvePoint {
    double spot = 0.0;
    double c0 = 0.0;
    double c0_lambda = 0.0;
};

std::vector<CurvePoint> initial_condition_curve(std::span<const double> spots,
                                                const ScaleSpec& spec,
                                                const MarketParams& params);

}  // namespace shapectl
