#pragma once

#include <functional>

namespace shapectl {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Adaptive Simpson integration of f over [a, b].
///
/// Each panel is split until the Richardson estimate |S2 - S1| / 15 fits its
/// share of `abs_tol`. Throws Error(QuadratureFailure) when a panel still
/// misses its share at `max_depth`.
QuadratureResult integrate_adaptive_simpson(const std::function<double(double)>& f, double a,
                                            double b, double abs_tol, int max_depth = 50);

}  // namespace shapectl
